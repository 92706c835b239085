"""Leading-order growth constants, finite-size ratio profiles, and the exact
bracketing inequalities that pin the cumulative-rank growth of the model
algebras between explicit products.

Everything that feeds an inequality here is exact integer arithmetic; floats
only appear in reported ratios and in the constants themselves.  Big-O error
terms are never asserted — profiles are emitted for inspection, inequalities
are checked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    hilbert,
    hilbert_cumulative,
    is_prime,
    tensor_bracket,
)
from .presets import max_over_h, preset
from .series import TruncatedSeries

__all__ = [
    "Constants",
    "constants",
    "RatioRow",
    "RatioProfile",
    "ratio_profile",
    "BracketCheck",
    "BracketReport",
    "bracketing_check",
    "BRACKET_MODELS",
    "ResourceLimitError",
    "DEFAULT_LOWER_CEILING",
]

BRACKET_MODELS = ("may_model", "r_h_e2", "r_h_einf")
DEFAULT_LOWER_CEILING = 1 << 21


class ResourceLimitError(RuntimeError):
    """Raised when an exact check would exceed its declared size ceiling."""


@dataclass(frozen=True)
class Constants:
    """The three ln(n)^3 growth coefficients at the prime p."""

    p: int
    k1: float  # lower-bound coefficient: 2 / (75 ln(p)^2)
    k2: float  # conjectural coefficient: (9 + 4*sqrt(2)) / (294 ln(p)^2)
    k3: float  # upper-bound coefficient: 1 / (6 ln(p)^2)

    def to_json_obj(self) -> dict:
        return {"p": self.p, "K1": self.k1, "K2": self.k2, "K3": self.k3}


def constants(p: int) -> Constants:
    if not is_prime(p):
        raise AlgebraError(f"p = {p} is not prime")
    lp2 = math.log(p) ** 2
    return Constants(
        p=p,
        k1=2.0 / (75.0 * lp2),
        k2=(9.0 + 4.0 * math.sqrt(2.0)) / (294.0 * lp2),
        k3=1.0 / (6.0 * lp2),
    )


@dataclass(frozen=True)
class RatioRow:
    n: int
    log_rank: float
    log_n_pow: float
    ratio: float


@dataclass(frozen=True)
class RatioProfile:
    p: int
    label: str
    exponent: int
    rows: tuple[RatioRow, ...] = field(default_factory=tuple)

    def csv_rows(self):
        yield ("n", "log_rank", f"log_n_pow_{self.exponent}", "ratio")
        for r in self.rows:
            yield (str(r.n), repr(r.log_rank), repr(r.log_n_pow), repr(r.ratio))

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "label": self.label,
            "exponent": self.exponent,
            "rows": [
                {
                    "n": r.n,
                    "log_rank": r.log_rank,
                    "log_n_pow": r.log_n_pow,
                    "ratio": r.ratio,
                }
                for r in self.rows
            ],
        }


def _resolve_spec(
    spec_or_preset,
    p: int,
    *,
    h: int | None = None,
    k: int | None = None,
    drop_q0: bool = False,
    simplify_odd: bool = False,
) -> AlgebraSpec:
    if isinstance(spec_or_preset, AlgebraSpec):
        return spec_or_preset
    return preset(
        spec_or_preset, p, h=h, k=k, drop_q0=drop_q0, simplify_odd=simplify_odd
    )


def ratio_profile(
    spec_or_preset,
    p: int,
    exponent: int,
    points: list[int],
    **preset_kwargs,
) -> RatioProfile:
    """ln(cumulative rank through n) against ln(n)^exponent at each point.

    The cumulative Hilbert series is computed once at max(points) and read
    off exactly; only the final logarithms are floating point.
    """
    if exponent not in (2, 3):
        raise ValueError("exponent must be 2 or 3")
    if not points:
        raise ValueError("at least one sample point is required")
    pts = sorted(set(points))
    if pts[0] < 2:
        raise ValueError("sample points must be >= 2")
    spec = _resolve_spec(spec_or_preset, p, **preset_kwargs)
    label = spec.label or "spec"
    series = hilbert_cumulative(spec, pts[-1])
    rows = []
    for n in pts:
        log_rank = series.coeff_log(n)
        log_n_pow = math.log(n) ** exponent
        rows.append(RatioRow(n, log_rank, log_n_pow, log_rank / log_n_pow))
    return RatioProfile(p=p, label=label, exponent=exponent, rows=tuple(rows))


@dataclass(frozen=True)
class BracketCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class BracketReport:
    p: int
    m: int
    model: str
    checks: tuple[BracketCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "model": self.model,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail}
                for c in self.checks
            ],
        }


def _may_model_product(p: int, m: int) -> int:
    # prod_{i=1}^{m-1} p^{(m-i) i}
    return p ** sum((m - i) * i for i in range(1, m))


def _check_may_model(
    p: int, m: int, lower_ceiling: int, require_lower: bool
) -> list[BracketCheck]:
    checks = []
    top = p**m - 1
    product = _may_model_product(p, m)
    spec = preset("may_model", p)
    upper_rank = hilbert_cumulative(spec, top)[top]
    checks.append(
        BracketCheck(
            "may_model_upper",
            upper_rank <= product,
            f"cumrank({top}) = {upper_rank} <= {product}",
        )
    )
    lower_deg = (m * (m - 1) // 2) * top
    if lower_deg > lower_ceiling:
        if require_lower:
            raise ResourceLimitError(
                f"may_model lower check needs the series through degree "
                f"{lower_deg}, above the ceiling {lower_ceiling}"
            )
        checks.append(
            BracketCheck(
                "may_model_lower",
                True,
                f"skipped: degree {lower_deg} exceeds ceiling {lower_ceiling}",
            )
        )
        return checks
    lower_rank = hilbert_cumulative(spec, lower_deg)[lower_deg]
    checks.append(
        BracketCheck(
            "may_model_lower",
            lower_rank >= product,
            f"cumrank({lower_deg}) = {lower_rank} >= {product}",
        )
    )
    return checks


def _check_r_h_einf(p: int, m: int) -> list[BracketCheck]:
    top = p**m - 1
    best = max_over_h("r_h_einf", p, top)
    lnp = math.log(p)
    bound = (2.0 * lnp / 75.0) * m**3 + lnp * m**2
    value = best.series.coeff_log(top)
    return [
        BracketCheck(
            "r_h_einf_final",
            value <= bound,
            f"ln cumrank({top}) = {value:.6f} <= {bound:.6f} "
            f"(margin {bound - value:.6f}, argmax h = {best.argmax[top]})",
        )
    ]


def _check_r_h_e2(p: int, m: int) -> list[BracketCheck]:
    # Tensor decomposition S^h x ... x S^{2h-1} of the rank-h model.
    h = max(m // 2, 1)
    top = min(p**m - 1, 1 << 14)
    factors = [preset("s_k", p, k=k) for k in range(h, 2 * h)]
    bracket = tensor_bracket(factors, [top] * len(factors))
    checks = [
        BracketCheck(
            "r_h_e2_tensor_bracket",
            bracket.ok,
            f"h = {h}: lower {bracket.lower}, middle {bracket.middle} <= "
            f"upper {bracket.upper}",
        )
    ]
    prod_series = TruncatedSeries.unit(top)
    for f in factors:
        prod_series = prod_series.mul(hilbert(f, top))
    same = hilbert(preset("r_h_e2", p, h=h), top) == prod_series
    checks.append(
        BracketCheck(
            "r_h_e2_factorisation",
            same,
            f"hilbert(r_h_e2, h={h}) == prod hilbert(s_k), N = {top}",
        )
    )
    return checks


def bracketing_check(
    p: int,
    m: int,
    model: str,
    *,
    lower_ceiling: int = DEFAULT_LOWER_CEILING,
    require_lower: bool = False,
) -> BracketReport:
    """Exact sandwich inequalities at scale m for one model algebra.

    may_model: cumulative rank through p^m - 1 is at most
    prod_{i<m} p^{(m-i)i}, and the rank through C(m,2)(p^m - 1) is at least
    that product.  The lower check is skipped (or raises, with
    require_lower) when its truncation exceeds lower_ceiling.

    r_h_einf: ln of the best-over-h cumulative rank at p^m - 1 is at most
    (2 ln p / 75) m^3 + (ln p) m^2.

    r_h_e2: the tensor bracketing for S^h x ... x S^{2h-1} with h = m // 2,
    plus the factorisation of the rank-h Hilbert series into the S^k ones.
    """
    if m < 2:
        raise ValueError("scale parameter m must be >= 2")
    if model == "may_model":
        checks = _check_may_model(p, m, lower_ceiling, require_lower)
    elif model == "r_h_einf":
        checks = _check_r_h_einf(p, m)
    elif model == "r_h_e2":
        checks = _check_r_h_e2(p, m)
    else:
        raise ValueError(f"unknown bracketing model {model!r}; "
                         f"expected one of {BRACKET_MODELS}")
    return BracketReport(p=p, m=m, model=model, checks=tuple(checks))
