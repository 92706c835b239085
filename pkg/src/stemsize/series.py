"""Truncated formal power series with arbitrary-precision nonnegative integer
coefficients.

A series carries coefficients c_0..c_N for a fixed truncation N.  All rank
and cell-count bookkeeping in this package is done with these; there is no
subtraction and no negative coefficient anywhere.  Binary operations align
to the minimum truncation of their operands.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

__all__ = [
    "GeneratorKind",
    "POLYNOMIAL",
    "EXTERIOR",
    "SeriesError",
    "TruncatedSeries",
    "factor_series",
]

_LN2 = math.log(2)


class SeriesError(ValueError):
    """Invalid series construction or operation."""


@dataclass(frozen=True)
class GeneratorKind:
    """One of the three generator species: polynomial, exterior, truncated(k).

    ``order`` is the nilpotence order k (x^k = 0) and is only set for the
    truncated kind, where k >= 2 is required.
    """

    name: str
    order: int | None = None

    def __post_init__(self) -> None:
        if self.name not in ("poly", "ext", "trunc"):
            raise SeriesError(f"unknown generator kind {self.name!r}")
        if self.name == "trunc":
            if self.order is None or self.order < 2:
                raise SeriesError("truncated generator needs order k >= 2")
        elif self.order is not None:
            raise SeriesError(f"kind {self.name!r} takes no order")

    @classmethod
    def polynomial(cls) -> "GeneratorKind":
        return cls("poly")

    @classmethod
    def exterior(cls) -> "GeneratorKind":
        return cls("ext")

    @classmethod
    def truncated(cls, k: int) -> "GeneratorKind":
        return cls("trunc", k)

    def __str__(self) -> str:
        return f"trunc({self.order})" if self.name == "trunc" else self.name


POLYNOMIAL = GeneratorKind.polynomial()
EXTERIOR = GeneratorKind.exterior()


class TruncatedSeries:
    """Immutable degree-indexed sequence c_0..c_N of nonnegative integers."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        tup = tuple(coeffs)
        if not tup:
            raise SeriesError("series needs at least the degree-0 coefficient")
        for c in tup:
            if not isinstance(c, int) or isinstance(c, bool):
                raise SeriesError(f"coefficient {c!r} is not an integer")
            if c < 0:
                raise SeriesError(f"negative coefficient {c}")
        self._coeffs = tup

    # -- construction helpers ------------------------------------------------

    @classmethod
    def unit(cls, trunc: int) -> "TruncatedSeries":
        """The series 1 (multiplicative identity)."""
        return cls((1,) + (0,) * trunc)

    @classmethod
    def zero(cls, trunc: int) -> "TruncatedSeries":
        return cls((0,) * (trunc + 1))

    @classmethod
    def ones(cls, trunc: int) -> "TruncatedSeries":
        """The series 1/(1-t)."""
        return cls((1,) * (trunc + 1))

    # -- basic access --------------------------------------------------------

    @property
    def trunc(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def __getitem__(self, n: int) -> int:
        return self._coeffs[n]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        if len(self._coeffs) <= 12:
            return f"TruncatedSeries({list(self._coeffs)})"
        head = ", ".join(map(str, self._coeffs[:10]))
        return f"TruncatedSeries([{head}, ...], trunc={self.trunc})"

    def truncate(self, trunc: int) -> "TruncatedSeries":
        if trunc >= self.trunc:
            return self
        return TruncatedSeries(self._coeffs[: trunc + 1])

    # -- arithmetic ----------------------------------------------------------

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.trunc, other.trunc)
        return TruncatedSeries(
            a + b for a, b in zip(self._coeffs[: n + 1], other._coeffs[: n + 1])
        )

    def scale(self, c: int) -> "TruncatedSeries":
        if c < 0:
            raise SeriesError("negative scalar")
        return TruncatedSeries(c * a for a in self._coeffs)

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Convolution product, truncated at the shorter operand."""
        n = min(self.trunc, other.trunc)
        a = self._coeffs
        b = other._coeffs
        out = [0] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai:
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out)

    __mul__ = mul

    def mul_factor(self, kind: GeneratorKind, d: int) -> "TruncatedSeries":
        """Multiply by the Hilbert factor of one generator in degree d.

        polynomial -> 1/(1-t^d), exterior -> 1+t^d,
        truncated(k) -> 1+t^d+...+t^(d(k-1)).
        The polynomial case runs in O(N) coefficient additions.
        """
        if d < 1:
            raise SeriesError("generator degree must be >= 1")
        n = self.trunc
        if kind.name == "poly":
            out = list(self._coeffs)
            for r in range(min(d, n + 1)):
                out[r::d] = accumulate(out[r::d])
            return TruncatedSeries(out)
        if kind.name == "ext":
            c = self._coeffs
            return TruncatedSeries(c[:d] + tuple(x + y for x, y in zip(c[d:], c)))
        # truncated(k): out[n] = sum_{j<k} c[n-jd] via out[n] = out[n-d]+c[n]-c[n-kd]
        k = kind.order
        assert k is not None
        c = self._coeffs
        kd = k * d
        out = list(c)
        for m in range(d, n + 1):
            out[m] = out[m - d] + c[m] - (c[m - kd] if m >= kd else 0)
        return TruncatedSeries(out)

    def cumulative(self) -> "TruncatedSeries":
        """Running sum: c'_n = sum_{k <= n} c_k."""
        return TruncatedSeries(accumulate(self._coeffs))

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k; truncation unchanged, high coefficients fall off."""
        if k < 0:
            raise SeriesError("shift must be nonnegative")
        if k == 0:
            return self
        n = self.trunc
        return TruncatedSeries((0,) * min(k, n + 1) + self._coeffs[: n + 1 - k])

    def hadamard(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.trunc, other.trunc)
        return TruncatedSeries(
            a * b for a, b in zip(self._coeffs[: n + 1], other._coeffs[: n + 1])
        )

    def leq(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise <= on the common truncation."""
        n = min(self.trunc, other.trunc)
        return all(a <= b for a, b in zip(self._coeffs[: n + 1], other._coeffs[: n + 1]))

    def coeff_log(self, n: int) -> float:
        """Natural log of c_n, relative error below 2^-50.

        Large coefficients are handled through their top 64 bits plus the
        exact bit length, so the value never overflows a float.
        """
        if not 0 <= n <= self.trunc:
            raise SeriesError(f"degree {n} outside truncation {self.trunc}")
        c = self._coeffs[n]
        if c == 0:
            raise SeriesError(f"log of zero coefficient at degree {n}")
        bl = c.bit_length()
        if bl <= 64:
            return math.log(c)
        e = bl - 64
        return (e + math.log2(c >> e)) * _LN2

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"trunc": self.trunc, "coeffs": [str(c) for c in self._coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TruncatedSeries":
        coeffs = [int(c) for c in obj["coeffs"]]
        if len(coeffs) != obj["trunc"] + 1:
            raise SeriesError("coeffs length does not match trunc")
        return cls(coeffs)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_json_obj(json.loads(text))

    def csv_rows(self) -> Iterator[tuple[int, str]]:
        for n, c in enumerate(self._coeffs):
            yield n, str(c)


def factor_series(kind: GeneratorKind, d: int, trunc: int) -> TruncatedSeries:
    """Explicit Hilbert factor of a single generator, for cross-checks."""
    if d < 1:
        raise SeriesError("generator degree must be >= 1")
    out = [0] * (trunc + 1)
    if kind.name == "poly":
        out[::d] = [1] * len(out[::d])
    elif kind.name == "ext":
        out[0] = 1
        if d <= trunc:
            out[d] = 1
    else:
        assert kind.order is not None
        for j in range(kind.order):
            if j * d <= trunc:
                out[j * d] = 1
    return TruncatedSeries(out)
