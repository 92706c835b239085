"""Completely unadmissible sequences, their generating series, the EHP
recurrences, and the admissible-monomial series of the Steenrod algebra.

At p = 2, I(n) holds sequences (i_1, ..., i_k), k >= 0, with i_k >= n and
i_s > 2 i_{s+1}; dim(J) = sum (i_s - 1).  At odd p the entries are pairs
(eps_s, i_s) with eps_s in {0,1}, 2 i_k >= n and i_s > p i_{s+1} - eps_{s+1};
dim(J) = sum (2(p-1) i_s - eps_s - 1).

The A-series are computed by direct enumeration with dimension pruning; the
EHP recurrences do not ground out (they refer to larger excess), so they are
kept as verification oracles instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .series import TruncatedSeries, SeriesError

__all__ = [
    "CUSeq",
    "enumerate_I",
    "a_series",
    "verify_ehp_recurrence",
    "admissible_series",
    "unstable_ext_bound",
    "unstable_rank_bound",
    "default_varpi_a",
]


@dataclass(frozen=True)
class CUSeq:
    """A completely unadmissible sequence of excess n.

    At p = 2, entries are the i_s; at odd p they are (eps_s, i_s) pairs.
    """

    p: int
    n: int
    entries: tuple

    @property
    def dim(self) -> int:
        if self.p == 2:
            return sum(i - 1 for i in self.entries)
        return sum(2 * (self.p - 1) * i - eps - 1 for eps, i in self.entries)

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "entries": [list(e) if isinstance(e, tuple) else e for e in self.entries],
            "dim": self.dim,
        }


def enumerate_I(p: int, n: int, max_dim: int) -> list[CUSeq]:
    """Every J in I(n) with dim(J) <= max_dim, exactly once, lexicographically."""
    if n < 1:
        raise ValueError("excess must be >= 1")
    if max_dim < 0:
        raise ValueError("dimension cap must be >= 0")
    out: list[CUSeq] = [CUSeq(p, n, ())]
    if p == 2:
        # Build right to left: last entry i_k >= n, each prepend i > 2 * head.
        def grow(suffix: tuple[int, ...], dim: int) -> None:
            lo = 2 * suffix[0] + 1
            i = lo
            while dim + (i - 1) <= max_dim:
                seq = (i,) + suffix
                out.append(CUSeq(p, n, seq))
                grow(seq, dim + i - 1)
                i += 1

        i = n
        while i - 1 <= max_dim:
            out.append(CUSeq(p, n, (i,)))
            grow((i,), i - 1)
            i += 1
    else:

        def grow_odd(suffix: tuple, dim: int) -> None:
            head_eps, head_i = suffix[0]
            for eps in (0, 1):
                i = p * head_i - head_eps + 1  # i > p*head_i - eps_{s+1}
                while dim + (2 * (p - 1) * i - eps - 1) <= max_dim:
                    seq = ((eps, i),) + suffix
                    out.append(CUSeq(p, n, seq))
                    grow_odd(seq, dim + 2 * (p - 1) * i - eps - 1)
                    i += 1

        last_lo = (n + 1) // 2  # smallest i_k with 2*i_k >= n
        for eps in (0, 1):
            i = max(last_lo, 1)
            while 2 * (p - 1) * i - eps - 1 <= max_dim:
                out.append(CUSeq(p, n, ((eps, i),)))
                grow_odd(((eps, i),), 2 * (p - 1) * i - eps - 1)
                i += 1
    out.sort(key=lambda J: J.entries)
    return out


@lru_cache(maxsize=4096)
def _a_counts(p: int, n: int, max_dim: int) -> tuple[int, ...]:
    counts = [0] * (max_dim + 1)
    for J in enumerate_I(p, n, max_dim):
        counts[J.dim] += 1
    return tuple(counts)


def a_series(p: int, n: int, trunc: int) -> TruncatedSeries:
    """A(n; t): coefficient d counts the sequences in I(n) of dimension d."""
    return TruncatedSeries(_a_counts(p, n, trunc))


def verify_ehp_recurrence(p: int, n: int, trunc: int) -> bool:
    """Check the EHP identity at excess parameter n through degree trunc.

    p = 2:  A(n) = A(n+1) + A(2n+1) * t^(n-1).
    p odd:  A(2n-1) = A(2n)  and
            A(2n) = A(2n+1) + A(2pn) * t^(2(p-1)n-2) + A(2pn+1) * t^(2(p-1)n-1).
    """
    if n < 1:
        raise ValueError("excess must be >= 1")
    if p == 2:
        lhs = a_series(2, n, trunc)
        rhs = a_series(2, n + 1, trunc).add(
            a_series(2, 2 * n + 1, trunc).shift(n - 1)
        )
        return lhs == rhs
    if a_series(p, 2 * n - 1, trunc) != a_series(p, 2 * n, trunc):
        return False
    lhs = a_series(p, 2 * n, trunc)
    rhs = (
        a_series(p, 2 * n + 1, trunc)
        .add(a_series(p, 2 * p * n, trunc).shift(2 * (p - 1) * n - 2))
        .add(a_series(p, 2 * p * n + 1, trunc).shift(2 * (p - 1) * n - 1))
    )
    return lhs == rhs


@lru_cache(maxsize=64)
def _admissible_counts(p: int, trunc: int) -> tuple[int, ...]:
    counts = [0] * (trunc + 1)
    if p == 2:
        # Admissible sequences i_s >= 2 i_{s+1}, i_k >= 1, graded by sum i_s.
        def grow(head: int, total: int) -> None:
            counts[total] += 1
            i = 2 * head
            while total + i <= trunc:
                grow(i, total + i)
                i += 1

        counts[0] += 1  # empty monomial
        for i in range(1, trunc + 1):
            grow(i, i)
    else:
        # Admissible monomials b^e0 P^{i_1} b^e1 ... P^{i_k} b^ek with
        # i_s >= p i_{s+1} + eps_s, graded by e0 + sum (2(p-1) i_s + eps_s).
        w = 2 * (p - 1)

        def grow_odd(head_i: int, head_eps: int, total: int) -> None:
            # sequence finished: both choices of the leading Bockstein e0
            counts[total] += 1
            if total + 1 <= trunc:
                counts[total + 1] += 1
            for eps in (0, 1):
                i = p * head_i + eps
                while total + w * i + eps <= trunc:
                    grow_odd(i, eps, total + w * i + eps)
                    i += 1

        counts[0] += 1  # empty monomial
        if trunc >= 1:
            counts[1] += 1  # the bare Bockstein
        for eps in (0, 1):
            i = 1
            while w * i + eps <= trunc:
                grow_odd(i, eps, w * i + eps)
                i += 1
    return tuple(counts)


def admissible_series(p: int, trunc: int) -> TruncatedSeries:
    """Coefficient n counts admissible Steenrod monomials of grading n; agrees
    with the Hilbert series of the dual Steenrod algebra."""
    return TruncatedSeries(_admissible_counts(p, trunc))


def default_varpi_a(p: int, trunc: int) -> TruncatedSeries:
    """Default upper-bound series for the stable Ext rank: the may_e1
    (drop_q0) Hilbert series."""
    from .presets import preset
    from .algebra import hilbert

    return hilbert(preset("may_e1", p, drop_q0=True), trunc)


def unstable_ext_bound(
    p: int, m_series: TruncatedSeries, varpi_a: TruncatedSeries, trunc: int
) -> TruncatedSeries:
    """P(A;t) * varpi_A(t) * P(M;t): an upper bound for the unstable Ext rank
    series of the module M.  varpi_a must be a caller-declared upper bound
    for the stable Ext rank series."""
    return admissible_series(p, trunc).mul(varpi_a).mul(m_series)


def unstable_rank_bound(
    p: int, loops_homology: TruncatedSeries, varpi_a: TruncatedSeries, trunc: int
) -> TruncatedSeries:
    """2 * P(A;t) * varpi_A(t) * h(Omega X;t); coefficient n bounds the rank
    of pi_{n+1} X for a simply-connected finite-type X."""
    if loops_homology[0] != 1:
        raise SeriesError(
            "loop-space homology must have coefficient 1 in degree 0 "
            "(connected loop space)"
        )
    return unstable_ext_bound(p, loops_homology, varpi_a, trunc).scale(2)
