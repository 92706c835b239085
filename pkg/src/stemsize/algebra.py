"""Graded-algebra specifications and the exact Hilbert-series engine.

An `AlgebraSpec` describes a free graded-commutative algebra over F_p as a
list of generator families (polynomial / exterior / truncated species, a
degree expression, an optional multiplicity expression, and index ranges).
`hilbert` folds single-generator Hilbert factors over the instantiated
generator list; `oracle_hilbert` recounts monomials by brute-force multiset
enumeration as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

from .dsl import (
    BinOp,
    DegreeExpr,
    DslError,
    Lit,
    Min,
    Tokenizer,
    Var,
    eval_expr,
    expr_free_vars,
    expr_to_text,
    parse_expr,
)
from .series import EXTERIOR, POLYNOMIAL, GeneratorKind, TruncatedSeries

__all__ = [
    "AlgebraError",
    "AlgebraSpec",
    "GeneratorFamily",
    "GeneratorKind",
    "Generator",
    "TensorBracket",
    "parse_spec",
    "spec_to_text",
    "instantiate",
    "hilbert",
    "hilbert_cumulative",
    "oracle_hilbert",
    "tensor_bracket",
    "is_prime",
]

ORACLE_MAX_TRUNC = 60

# Iteration budget per unbounded index variable before the
# eventually-increasing validation gives up on a family.
_WALK_BUDGET_FLOOR = 64
_INCREASE_STREAK = 3


class AlgebraError(ValueError):
    """Invalid algebra specification or instantiation failure."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GeneratorFamily:
    """An indexed family of generators of one species.

    `ranges` lists (name, lower, upper) with upper None for unbounded.  The
    degree expression must evaluate to a positive integer on every admissible
    index tuple and, for unbounded indices, be eventually strictly increasing
    so that only finitely many generators land below any truncation.
    """

    kind: GeneratorKind
    degree: DegreeExpr
    multiplicity: DegreeExpr = field(default_factory=lambda: Lit(1))
    ranges: tuple[tuple[str, int, int | None], ...] = ()

    def free_vars(self) -> frozenset[str]:
        return expr_free_vars(self.degree) | expr_free_vars(self.multiplicity)


@dataclass(frozen=True)
class AlgebraSpec:
    p: int
    families: tuple[GeneratorFamily, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise AlgebraError(f"p = {self.p} is not prime")
        for fam in self.families:
            names = [name for name, _, _ in fam.ranges]
            if len(set(names)) != len(names):
                raise AlgebraError(f"duplicate index variable in family ranges {names}")
            unknown = fam.free_vars() - set(names) - {"p"}
            if unknown:
                raise AlgebraError(f"unknown identifier {sorted(unknown)[0]!r}")


class Generator(NamedTuple):
    kind: GeneratorKind
    degree: int
    multiplicity: int


class TensorBracket(NamedTuple):
    lower: int
    middle: int
    upper: int
    ok: bool


# ---------------------------------------------------------------------------
# parsing / printing
# ---------------------------------------------------------------------------


def parse_spec(text: str) -> AlgebraSpec:
    """Parse DSL text (see `stemsize.dsl` for the grammar)."""
    lines = text.splitlines()
    header_no = None
    p = None
    families: list[GeneratorFamily] = []
    for no, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        tok = Tokenizer(raw, no)
        if p is None:
            if tok.expect("ident") != "p":
                raise DslError("spec must start with 'p = <prime>'", no, 1)
            tok.expect("=")
            p = int(tok.expect("int"))
            if tok.peek()[0] != "eof":
                raise tok.error("trailing input after prime declaration")
            if not is_prime(p):
                raise DslError(f"p = {p} is not prime", no, 1)
            header_no = no
            continue
        families.append(_parse_gen_line(tok))
    if p is None:
        raise DslError("empty spec: missing 'p = <prime>' line")
    try:
        return AlgebraSpec(p, tuple(families))
    except AlgebraError as exc:
        raise DslError(str(exc), header_no) from None


def _parse_gen_line(tok: Tokenizer) -> GeneratorFamily:
    word = tok.expect("ident")
    if word != "gen":
        raise DslError(f"expected 'gen', found {word!r}", tok.line_no, 1)
    kind_word = tok.expect("ident")
    if kind_word == "poly":
        kind = POLYNOMIAL
    elif kind_word == "ext":
        kind = EXTERIOR
    elif kind_word == "trunc":
        tok.expect("(")
        k = int(tok.expect("int"))
        tok.expect(")")
        if k < 2:
            raise DslError(f"truncation order {k} < 2", tok.line_no)
        kind = GeneratorKind.truncated(k)
    else:
        raise DslError(f"unknown generator kind {kind_word!r}", tok.line_no)
    if tok.expect("ident") != "deg":
        raise tok.error("expected 'deg'")
    tok.expect("=")
    degree = parse_expr(tok)
    mult: DegreeExpr = Lit(1)
    ranges: list[tuple[str, int, int | None]] = []
    kind_tok, value, _ = tok.peek()
    if kind_tok == "ident" and value == "mult":
        tok.next()
        tok.expect("=")
        mult = parse_expr(tok)
        kind_tok, value, _ = tok.peek()
    if kind_tok == "ident" and value == "for":
        tok.next()
        while True:
            name = tok.expect("ident")
            tok.expect("=")
            lo = int(tok.expect("int"))
            tok.expect("..")
            kind_tok, value, _ = tok.next()
            if kind_tok == "int":
                hi: int | None = int(value)
            elif kind_tok == "ident" and value == "inf":
                hi = None
            else:
                raise tok.error("expected integer or 'inf' as range upper bound")
            ranges.append((name, lo, hi))
            if tok.peek()[0] != ",":
                break
            tok.next()
    if tok.peek()[0] != "eof":
        raise tok.error("trailing input on generator line")
    return GeneratorFamily(kind, degree, mult, tuple(ranges))


def spec_to_text(spec: AlgebraSpec) -> str:
    """Canonical printer; `parse_spec(spec_to_text(s))` reproduces `s`."""
    lines = [f"p = {spec.p}"]
    for fam in spec.families:
        parts = [f"gen {fam.kind} deg = {expr_to_text(fam.degree)}"]
        if fam.multiplicity != Lit(1):
            parts.append(f"mult = {expr_to_text(fam.multiplicity)}")
        if fam.ranges:
            rendered = ", ".join(
                f"{name} = {lo}..{'inf' if hi is None else hi}"
                for name, lo, hi in fam.ranges
            )
            parts.append(f"for {rendered}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# instantiation
# ---------------------------------------------------------------------------


def instantiate(spec: AlgebraSpec, trunc: int) -> list[Generator]:
    """All generators of degree <= trunc, each once, in deterministic order
    (degree, then family position, then index tuple)."""
    if trunc < 0:
        raise AlgebraError("truncation must be nonnegative")
    out: list[tuple[int, int, tuple[int, ...], Generator]] = []
    for fam_idx, fam in enumerate(spec.families):
        for indices, deg, mult in _family_generators(spec, fam, trunc):
            out.append((deg, fam_idx, indices, Generator(fam.kind, deg, mult)))
    out.sort(key=lambda row: row[:3])
    return [row[3] for row in out]


def _family_label(fam: GeneratorFamily) -> str:
    return f"gen {fam.kind} deg = {expr_to_text(fam.degree)}"


def _family_generators(
    spec: AlgebraSpec, fam: GeneratorFamily, trunc: int
) -> Iterator[tuple[tuple[int, ...], int, int]]:
    env = {"p": spec.p}
    budget = max(_WALK_BUDGET_FLOOR, 4 * trunc)

    def eval_at_floor(level: int) -> int | None:
        """Smallest degree over the subtree below `level`: bounded indices are
        enumerated exactly, unbounded ones sit at their lower bound (the spec
        requires degrees to increase in unbounded indices).  None for an
        empty subtree."""
        deeper = fam.ranges[level:]
        best: int | None = None

        def go(k: int) -> None:
            nonlocal best
            if k == len(deeper):
                d = eval_expr(fam.degree, env)
                if best is None or d < best:
                    best = d
                return
            name, lo, hi = deeper[k]
            if hi is None:
                env[name] = lo
                go(k + 1)
            else:
                for v in range(lo, hi + 1):
                    env[name] = v
                    go(k + 1)

        go(0)
        return best

    def emit(indices: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], int, int]]:
        deg = eval_expr(fam.degree, env)
        if deg < 1:
            raise AlgebraError(
                f"{_family_label(fam)}: degree {deg} at indices {indices} is not positive"
            )
        mult = eval_expr(fam.multiplicity, env)
        if mult < 0:
            raise AlgebraError(
                f"{_family_label(fam)}: negative multiplicity at indices {indices}"
            )
        if deg <= trunc and mult > 0:
            yield indices, deg, mult

    def walk(level: int, indices: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], int, int]]:
        if level == len(fam.ranges):
            yield from emit(indices)
            return
        name, lo, hi = fam.ranges[level]
        if hi is not None:
            for v in range(lo, hi + 1):
                env[name] = v
                yield from walk(level + 1, indices + (v,))
            return
        prev_floor: int | None = None
        streak = 0
        v = lo
        while True:
            if v - lo > budget:
                raise AlgebraError(
                    f"{_family_label(fam)}: index {name!r} is not eventually "
                    f"increasing within the window [1, {trunc}]"
                )
            env[name] = v
            floor_deg = eval_at_floor(level + 1)
            if floor_deg is None:
                return  # an empty bounded range below: no generators at all
            if prev_floor is not None and floor_deg > prev_floor:
                streak += 1
            elif prev_floor is not None:
                streak = 0
            if floor_deg > trunc and streak >= _INCREASE_STREAK:
                return
            if floor_deg <= trunc:
                env[name] = v  # eval_at_floor clobbered deeper vars only
                yield from walk(level + 1, indices + (v,))
            prev_floor = floor_deg
            v += 1

    yield from walk(0, ())


# ---------------------------------------------------------------------------
# Hilbert series
# ---------------------------------------------------------------------------


def hilbert(spec: AlgebraSpec, trunc: int) -> TruncatedSeries:
    """Monomial counts per degree of the free graded algebra on the
    instantiated generators."""
    series = TruncatedSeries.unit(trunc)
    for kind, deg, mult in instantiate(spec, trunc):
        for _ in range(mult):
            series = series.mul_factor(kind, deg)
    return series


def hilbert_cumulative(spec: AlgebraSpec, trunc: int) -> TruncatedSeries:
    """Monomial counts through degree n (the cumulative rank)."""
    return hilbert(spec, trunc).cumulative()


def oracle_hilbert(spec: AlgebraSpec, trunc: int) -> TruncatedSeries:
    """Brute-force monomial count by explicit multiset enumeration.

    Deliberately avoids all series arithmetic; guarded at trunc <= 60 because
    it walks every monomial.
    """
    if trunc > ORACLE_MAX_TRUNC:
        raise AlgebraError(
            f"oracle truncation {trunc} exceeds the guard {ORACLE_MAX_TRUNC}"
        )
    gens: list[tuple[int, int]] = []  # (degree, max exponent)
    for kind, deg, mult in instantiate(spec, trunc):
        if kind.name == "poly":
            cap = trunc // deg
        elif kind.name == "ext":
            cap = 1
        else:
            cap = kind.order - 1  # type: ignore[operator]
        gens.extend([(deg, cap)] * mult)
    counts = [0] * (trunc + 1)
    total_gens = len(gens)

    def count(idx: int, total: int) -> None:
        if idx == total_gens:
            counts[total] += 1
            return
        deg, cap = gens[idx]
        e = 0
        while e <= cap and total + e * deg <= trunc:
            count(idx + 1, total + e * deg)
            e += 1

    count(0, 0)
    return TruncatedSeries(counts)


def tensor_bracket(
    subspecs: Sequence[AlgebraSpec], budgets: Sequence[int]
) -> TensorBracket:
    """Exact counts for the truncated-tensor containments

        (A^1 x ... x A^h)_{<= n_i column budgets}  vs  per-factor truncations.

    lower = prod_i cumrank(A^i, n_i), which must be <= cumrank(tensor, sum n_i);
    middle = cumrank(tensor, max n_i) and upper = prod_i cumrank(A^i, max n_i),
    with middle <= upper.  `ok` reports both containments.
    """
    if len(subspecs) != len(budgets):
        raise AlgebraError("need one degree budget per tensor factor")
    if not subspecs:
        raise AlgebraError("tensor bracket needs at least one factor")
    p = subspecs[0].p
    for s in subspecs:
        if s.p != p:
            raise AlgebraError(f"prime mismatch: {s.p} != {p}")
    n = max(budgets)
    total = sum(budgets)
    joint = AlgebraSpec(p, tuple(f for s in subspecs for f in s.families), "tensor")
    lower = 1
    upper = 1
    for s, budget in zip(subspecs, budgets):
        cum = hilbert_cumulative(s, max(budget, n))
        lower *= cum[budget]
        upper *= cum[n]
    joint_cum = hilbert_cumulative(joint, total)
    middle = joint_cum[n]
    ok = lower <= joint_cum[total] and middle <= upper
    return TensorBracket(lower, middle, upper, ok)
