import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stemsize.algebra import (
    AlgebraError,
    AlgebraSpec,
    hilbert,
    hilbert_cumulative,
    instantiate,
    oracle_hilbert,
    parse_spec,
    spec_to_text,
    tensor_bracket,
)
from stemsize.dsl import DslError
from stemsize.series import TruncatedSeries
from stemsize.verify import random_spec

import random


DUAL_STEENROD_2 = """\
p = 2
gen poly deg = 2^i - 1 for i = 1..inf
"""


class TestParsing:
    def test_non_prime_rejected(self):
        with pytest.raises((AlgebraError, DslError)):
            parse_spec("p = 4\ngen poly deg = 1\n")
        with pytest.raises(AlgebraError):
            AlgebraSpec(4, ())

    def test_missing_header_rejected(self):
        with pytest.raises((AlgebraError, DslError)):
            parse_spec("gen poly deg = 1\n")

    def test_truncated_order_below_two_rejected(self):
        with pytest.raises((AlgebraError, DslError)):
            parse_spec("p = 2\ngen trunc(1) deg = 3\n")

    def test_unknown_identifier_rejected(self):
        with pytest.raises((AlgebraError, DslError)):
            parse_spec("p = 2\ngen poly deg = 2^j for i = 1..inf\n")

    def test_blank_lines_ignored(self):
        spec = parse_spec("p = 3\n\ngen ext deg = 1\n\n")
        assert spec.p == 3
        assert len(spec.families) == 1

    def test_round_trip_is_canonical(self):
        text = "p = 2\ngen poly deg = 2 ^ i - 1 for i = 1 .. inf\n"
        canon = spec_to_text(parse_spec(text))
        assert canon == spec_to_text(parse_spec(canon))

    def test_min_and_mult(self):
        spec = parse_spec(
            "p = 5\ngen trunc(5) deg = min(2*i, 10) mult = i for i = 1..4\n"
        )
        gens = instantiate(spec, 12)
        assert [(g.degree, g.multiplicity) for g in gens] == [
            (2, 1),
            (4, 2),
            (6, 3),
            (8, 4),
        ]


class TestInstantiate:
    def test_dual_steenrod_degrees(self):
        gens = instantiate(parse_spec(DUAL_STEENROD_2), 7)
        assert [g.degree for g in gens] == [1, 3, 7]
        assert all(str(g.kind) == "poly" for g in gens)

    def test_sorted_by_degree(self):
        spec = parse_spec("p = 2\ngen ext deg = 5\ngen poly deg = 2\n")
        assert [g.degree for g in instantiate(spec, 6)] == [2, 5]

    def test_never_increasing_budget_guard(self):
        spec = parse_spec("p = 2\ngen poly deg = min(3, i) for i = 1..inf\n")
        with pytest.raises(AlgebraError):
            instantiate(spec, 8)

    def test_empty_spec(self):
        assert instantiate(AlgebraSpec(2, ()), 10) == []


class TestHilbert:
    def test_exterior_times_polynomial(self):
        spec = parse_spec("p = 2\ngen ext deg = 3\ngen poly deg = 2\n")
        assert hilbert(spec, 5) == TruncatedSeries([1, 0, 1, 1, 1, 1])

    def test_dual_steenrod_initial_segment(self):
        spec = parse_spec(DUAL_STEENROD_2)
        assert hilbert(spec, 7) == TruncatedSeries([1, 1, 1, 2, 2, 2, 3, 4])

    def test_dual_steenrod_cumulative(self):
        spec = parse_spec(DUAL_STEENROD_2)
        assert hilbert_cumulative(spec, 7) == TruncatedSeries([1, 2, 3, 5, 7, 9, 12, 16])

    def test_empty_spec_is_unit(self):
        assert hilbert(AlgebraSpec(3, ()), 4) == TruncatedSeries([1, 0, 0, 0, 0])

    def test_truncated_generator(self):
        spec = parse_spec("p = 2\ngen trunc(3) deg = 2\n")
        assert hilbert(spec, 6) == TruncatedSeries([1, 0, 1, 0, 1, 0, 0])

    def test_exterior_cumulative(self):
        spec = parse_spec("p = 2\ngen ext deg = 2\n")
        assert hilbert_cumulative(spec, 4) == TruncatedSeries([1, 1, 2, 2, 2])

    def test_multiplicity(self):
        spec = parse_spec("p = 2\ngen poly deg = 1 mult = 2\n")
        assert hilbert(spec, 3) == TruncatedSeries([1, 2, 3, 4])


class TestOracle:
    def test_matches_engine_on_dual_steenrod(self):
        spec = parse_spec(DUAL_STEENROD_2)
        assert oracle_hilbert(spec, 20) == hilbert(spec, 20)

    def test_trunc_guard(self):
        with pytest.raises(AlgebraError):
            oracle_hilbert(parse_spec(DUAL_STEENROD_2), 61)

    @given(st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=40, deadline=None)
    def test_matches_engine_on_random_specs(self, seed):
        spec = random_spec(random.Random(seed))
        trunc = 18
        while hilbert_cumulative(spec, trunc)[trunc] > 10**5:
            trunc -= 2
        assert oracle_hilbert(spec, trunc) == hilbert(spec, trunc)


class TestTensorBracket:
    def test_two_polynomial_lines(self):
        factor = parse_spec("p = 2\ngen poly deg = 1\n")
        rep = tensor_bracket([factor, factor], [2, 2])
        assert (rep.lower, rep.middle, rep.upper) == (9, 6, 9)
        assert rep.ok

    def test_middle_between_bounds(self):
        a = parse_spec("p = 3\ngen poly deg = 1\ngen ext deg = 3\n")
        b = parse_spec("p = 3\ngen trunc(3) deg = 2\n")
        rep = tensor_bracket([a, b], [5, 4])
        assert rep.middle <= rep.upper
        assert rep.ok

    def test_prime_mismatch_rejected(self):
        a = parse_spec("p = 2\ngen poly deg = 1\n")
        b = parse_spec("p = 3\ngen poly deg = 1\n")
        with pytest.raises(AlgebraError):
            tensor_bracket([a, b], [2, 2])

    def test_budget_length_mismatch_rejected(self):
        a = parse_spec("p = 2\ngen poly deg = 1\n")
        with pytest.raises(AlgebraError):
            tensor_bracket([a, a], [2])
