"""Torsion-exponent formulas: stable bounds driven by an E-infinity vanishing
curve, the image-of-J lower bound, the integral assembly, and the unstable
bounds (Barratt, the Goodwillie-tower bound, norm torsion orders).

All real-valued outputs are upper or lower bounds with a documented
direction; closed forms are never rounded toward the unsafe side.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from math import isqrt
from typing import Callable

from .algebra import is_prime

__all__ = [
    "TorsionError",
    "VanishingCurve",
    "LinearCurve",
    "PowerLawCurve",
    "TableCurve",
    "TorsionReport",
    "val_p",
    "an_e2_exponent",
    "counting_lemma",
    "stable_torsion_bound",
    "im_j_lower",
    "integral_log_bound",
    "default_rank_model",
    "barratt_bound",
    "goodwillie_bound",
    "norm_torsion_order",
]


class TorsionError(ValueError):
    pass


def val_p(p: int, m: int) -> int:
    """p-adic valuation |m|_p: largest k with p^k | m."""
    if m < 1:
        raise TorsionError(f"valuation needs m >= 1, got {m}")
    if p == 2:
        return (m & -m).bit_length() - 1
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# vanishing curves
# ---------------------------------------------------------------------------


class VanishingCurve:
    """A model of the E-infinity vanishing curve g(n); 1 <= g(n) <= n and
    nondecreasing on the queried range."""

    def raw(self, n: int) -> int:
        raise NotImplementedError

    def __call__(self, n: int) -> int:
        g = self.raw(n)
        if not 1 <= g <= n:
            raise TorsionError(
                f"vanishing curve value g({n}) = {g} violates 1 <= g(n) <= n"
            )
        return g

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class LinearCurve(VanishingCurve):
    """g(n) = n, the unconditional (nilpotence-theorem) envelope."""

    def raw(self, n: int) -> int:
        return n

    def describe(self) -> dict:
        return {"model": "linear"}


@dataclass(frozen=True)
class PowerLawCurve(VanishingCurve):
    """g(n) = ceil(c * n^e); exponent 1/2 with c = 1 models the conjectured
    square-root curve."""

    exponent: float
    coefficient: float = 1.0

    def __post_init__(self) -> None:
        if not 0 < self.exponent <= 1:
            raise TorsionError("power-law exponent must lie in (0, 1]")
        if self.coefficient <= 0:
            raise TorsionError("power-law coefficient must be positive")

    def raw(self, n: int) -> int:
        if self.exponent == 0.5 and self.coefficient == 1.0:
            return n if n <= 1 else isqrt(n - 1) + 1  # exact ceil(sqrt(n))
        return math.ceil(self.coefficient * n**self.exponent)

    def describe(self) -> dict:
        return {
            "model": "power_law",
            "exponent": self.exponent,
            "coefficient": self.coefficient,
        }


@dataclass(frozen=True)
class TableCurve(VanishingCurve):
    values: tuple[int, ...]  # values[i] = g(i + 1)

    def __post_init__(self) -> None:
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise TorsionError("table curve must be nondecreasing")

    def raw(self, n: int) -> int:
        if not 1 <= n <= len(self.values):
            raise TorsionError(f"table curve has no entry for n = {n}")
        return self.values[n - 1]

    def describe(self) -> dict:
        return {"model": "table", "length": len(self.values)}


@dataclass(frozen=True)
class TorsionReport:
    p: int
    n: int
    exact_sum: int
    closed_form: float
    curve: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "n": self.n,
                "exact_sum": self.exact_sum,
                "closed_form": self.closed_form,
                "curve": self.curve,
            }
        )


# ---------------------------------------------------------------------------
# stable bounds
# ---------------------------------------------------------------------------


def an_e2_exponent(p: int, u: int) -> int | None:
    """Torsion exponent bound for the weight-u column of the E2 page.

    p = 2: 1 for odd u, 2 + |u|_2 for even u.  Odd p: 0 unless (p-1) | u,
    else 1 + |u|_p.  u = 0 holds the non-torsion unit, so None is returned
    as the unbounded-by-this-formula sentinel.
    """
    if u == 0:
        return None
    u = abs(u)
    if p == 2:
        return 1 if u % 2 else 2 + val_p(2, u)
    if u % (p - 1):
        return 0
    return 1 + val_p(p, u)


def sum_val_p(p: int, b: int) -> int:
    """Sum of |i|_p over 1 <= i <= b (Legendre)."""
    total = 0
    power = p
    while power <= b:
        total += b // power
        power *= p
    return total


def counting_lemma(p: int, a: int, b: int) -> tuple[int, float]:
    """exact = sum_{i=a+1}^{b} (1 + |i|_p), together with the closed bound
    p/(p-1) * (b-a) + log_p(b); exact <= bound always."""
    if not 0 <= a < b:
        raise TorsionError(f"need 0 <= a < b, got a={a}, b={b}")
    exact = (b - a) + sum_val_p(p, b) - sum_val_p(p, a)
    bound = p / (p - 1) * (b - a) + math.log(b, p)
    return exact, bound


def _e2_term(p: int, i: int) -> int:
    if p == 2:
        return 1 + val_p(2, i) + (1 if i % 2 == 0 else 0)
    return 1 + val_p(p, i)


def stable_torsion_bound(p: int, n: int, curve: VanishingCurve) -> TorsionReport:
    """Torsion exponent bound for the degree-n stable stem.

    exact_sum amalgamates the per-column exponents over the window of
    columns reachable below the vanishing curve; closed_form is
    (5/4)g(n) + log_2(n) + 2 at p = 2 and p/(2(p-1)^2) g(n) + log_p(n) + 1
    at odd p.  exact_sum <= closed_form.
    """
    if n < 1:
        raise TorsionError("degree must be >= 1")
    g = curve(n)
    span = 2 if p == 2 else 2 * p - 2
    lo = n // span + 1
    hi = (n + g) // span
    exact = sum(_e2_term(p, i) for i in range(lo, hi + 1))
    if p == 2:
        closed = 1.25 * g + math.log2(n) + 2
    else:
        closed = p / (2 * (p - 1) ** 2) * g + math.log(n, p) + 1
    return TorsionReport(p, n, exact, closed, curve.describe())


def im_j_lower(p: int, n: int) -> int:
    """Image-of-J lower bound for the p-torsion exponent in degree n: in
    degrees n = -1 mod 2p-2 there is a cyclic summand of order p^(v_p(n+1)+1).

    Only stated at odd primes; p = 2 is rejected rather than approximated.
    """
    if p == 2:
        raise TorsionError(
            "the 2-primary image-of-J statement is more complicated and is "
            "not provided; use an odd prime"
        )
    if not is_prime(p):
        raise TorsionError(f"p = {p} is not prime")
    if n < 1:
        raise TorsionError("degree must be >= 1")
    if (n + 1) % (2 * p - 2):
        return 0
    return val_p(p, n + 1) + 1


def default_rank_model(p: int, n: int) -> int:
    """Cumulative rank of the may_e1 (drop_q0) model through degree n; the
    default per-prime rank upper bound for the integral assembly."""
    from .presets import preset
    from .algebra import hilbert_cumulative

    return hilbert_cumulative(preset("may_e1", p, drop_q0=True), n)[n]


def integral_log_bound(
    n: int, rank_model: Callable[[int, int], int] | None = None
) -> float:
    """Upper bound for ln|pi_n| under the model: sum over primes p <= n of
    ln(p) * n * rank_model(p, n)."""
    if n < 1:
        raise TorsionError("degree must be >= 1")
    model = rank_model if rank_model is not None else default_rank_model
    total = 0.0
    for p in range(2, n + 1):
        if is_prime(p):
            total += math.log(p) * n * model(p, n)
    return total


# ---------------------------------------------------------------------------
# unstable bounds
# ---------------------------------------------------------------------------


def barratt_bound(
    s: int, m: int, n: int, p: int = 2, double_suspension: bool = False
) -> int:
    """Torsion exponent for pi_n of a suspension of an (s-1)-connected space
    whose suspension identity is p^m-torsion.

    Default: m*k with the least k such that n <= 2^k s.  If the space is
    itself a suspension: m + k with the least k >= 0 such that n <= p^(k+1) s.
    """
    if s < 1 or m < 1 or n < 1:
        raise TorsionError("need s >= 1, m >= 1, n >= 1")
    if double_suspension:
        k = 0
        while n > p ** (k + 1) * s:
            k += 1
        return m + k
    k = 0
    while n > (1 << k) * s:
        k += 1
    return m * k


def goodwillie_bound(s: int, m: int, n: int, p: int) -> tuple[int, float]:
    """Goodwillie-tower torsion bound for an s-connected space: exact =
    sum over k >= 1 with s*k < n of (m + |k|_p), and the linear envelope
    (m+1) * n / s; exact <= linear."""
    if s < 1:
        raise TorsionError("connectivity s must be >= 1")
    top = (n - 1) // s  # largest k with s*k < n
    if top < 1:
        exact = 0
    else:
        exact = m * top + sum_val_p(p, top)
    return exact, (m + 1) * n / s


def norm_torsion_order(p: int, m: int, n: int) -> int:
    """Torsion order of the n-th tensor power of a p^m-torsion map: m + |n|_p."""
    if n < 1:
        raise TorsionError("tensor power must be >= 1")
    return m + val_p(p, n)
