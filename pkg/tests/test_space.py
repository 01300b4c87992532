from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from epspace.configs import DESK, TOY, WITNESS, load_config
from epspace.space import (
    Admissible,
    PMeasure,
    SpaceConfig,
    SparseVector,
    StructuralError,
    Unit,
    admissible_check,
    check_functional,
    config_validate,
    format_config,
    functional_atoms,
    functional_restrict,
    functional_value,
    parse_config,
)

T = TOY


def adm(*ms):
    return Admissible(PMeasure(m) for m in ms)


class TestConfig:
    def test_toy_ok(self):
        assert config_validate(T).ok
        assert T.blocks == ((2, 3), (4, 5, 6), (7, 8, 9, 10))

    def test_toy_in_section4_mode_fails_threshold(self):
        cfg = SpaceConfig(p=2, blocks=T.blocks, mode="section4", theta=Fraction(1, 2),
                          alpha=Fraction(6, 5), beta=Fraction(2, 5), gamma=Fraction(2, 5))
        rep = config_validate(cfg)
        assert any("min F_1 = 2 not > 1 + 2/eps_1" in v for v in rep.violations)
        assert mpmath.almosteq(cfg.eps(1), mpmath.mpf("0.435275281648062"), 1e-12)

    def test_not_successive(self):
        cfg = SpaceConfig(p=2, blocks=((2, 3), (3, 4)))
        assert any("not successive" in v for v in config_validate(cfg).violations)

    def test_shipped_section4_config_valid(self):
        assert config_validate(DESK).ok
        assert DESK.alpha + DESK.beta * (DESK.p - 1) + DESK.gamma == DESK.p

    def test_growth_flag(self):
        assert config_validate(WITNESS, growth=True).ok
        shrink = SpaceConfig(p=2, blocks=((2, 3, 4), (5, 6)))
        assert not config_validate(shrink, growth=True).ok

    def test_section4_parameter_checks(self):
        bad = SpaceConfig(p=2, blocks=DESK.blocks, mode="section4", theta=Fraction(1, 2),
                          alpha=Fraction(6, 5), beta=Fraction(2, 5), gamma=Fraction(1, 2))
        assert any("!= p" in v for v in config_validate(bad).violations)

    def test_round_trip(self, tmp_path):
        text = format_config(DESK)
        assert parse_config(text) == DESK
        path = tmp_path / "g.txt"
        path.write_text("# comment\n" + text)
        assert load_config(str(path)) == DESK

    @pytest.mark.parametrize("text", ["p = 2", "blocks = [1-2]", "p = 2\nblocks = 1-2", "p = 2\nblocks = [3-1]",
                                      "p = 2\nblocks = [1-2]\ncolour = red"])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            parse_config(text)

    def test_weights(self):
        assert T.weight(1, 1) == Fraction(1, 4)
        assert T.weight_denominator == 4 * 9 * 16 // 4
        half = SpaceConfig(p=Fraction(3, 2), blocks=T.blocks)
        assert not half.exact
        assert mpmath.almosteq(half.weight(1, 1), mpmath.mpf(1) / mpmath.sqrt(8), 1e-50)


class TestVector:
    def test_parse_and_format(self):
        x = SparseVector.parse("3:1,6:-1/2,7:0")
        assert dict(x) == {3: 1, 6: Fraction(-1, 2)}
        assert x.format() == "3:1,6:-1/2"

    def test_rejects(self):
        with pytest.raises(TypeError):
            SparseVector({1: 0.5})
        with pytest.raises(ValueError):
            SparseVector({0: 1})

    def test_parts(self):
        x = SparseVector.parse("2:1,3:-2")
        assert x.positive_part() - x.negative_part() == x
        assert x.max_abs() == 2


class TestFunctionals:
    def test_value_examples(self):
        x = SparseVector.parse("3:1,6:1")
        assert functional_value(adm({1: 2}), x, T) == 1
        assert functional_value(adm({1: 1}), SparseVector.parse("2:1"), T) == Fraction(1, 4)
        assert functional_value(adm({1: 2}, {2: 3}), x, T) == 2
        assert functional_value(Unit(6), x, T) == 1

    def test_value_outside_window(self):
        with pytest.raises(StructuralError):
            functional_value(adm({4: 1}), SparseVector.parse("3:1"), T)

    def test_admissible_examples(self):
        assert admissible_check([PMeasure({1: 2}), PMeasure({2: 3})], T)
        assert not admissible_check([PMeasure({1: 1}), PMeasure({2: 1}), PMeasure({3: 1})], T)
        assert admissible_check([PMeasure({2: 1}), PMeasure({3: 2})], T)

    def test_shared_block_not_successive(self):
        assert not admissible_check([PMeasure({1: 1, 2: 1}), PMeasure({2: 2})], T)

    def test_restrict_examples(self):
        fn = adm({1: 2}, {2: 3})
        assert functional_restrict(fn, {6}, T) == adm({2: 3})
        assert functional_restrict(Unit(5), {5}, T) == Unit(5)
        assert functional_restrict(Unit(5), {6}, T) is None

    def test_budget_rejected(self):
        with pytest.raises(ValueError, match="budget"):
            check_functional(adm({1: 2, 2: 1}), T)

    def test_pmeasure_validation(self):
        with pytest.raises(ValueError):
            PMeasure({})
        with pytest.raises(ValueError):
            PMeasure({1: 0})


def _functionals(cfg):
    from epspace.norm import enumerate_admissible

    return [Unit(c) for c in cfg.window] + list(enumerate_admissible(cfg, cfg.window))


ALL_T = _functionals(T)


@given(st.sampled_from(ALL_T), st.sets(st.sampled_from(T.window)))
def test_restriction_stays_in_norming_set(fn, I):
    r = functional_restrict(fn, I, T)
    if r is not None:
        check_functional(r, T)
        assert set(functional_atoms(r, T)) <= set(I)


@given(st.sampled_from(ALL_T), st.dictionaries(st.sampled_from(T.window), st.fractions(-3, 3, max_denominator=5)))
def test_mass_and_value_bounds(fn, entries):
    atoms = functional_atoms(fn, T)
    assert all(0 < v <= 1 for v in atoms.values())
    x = SparseVector(entries)
    k = 1 if isinstance(fn, Unit) else len(fn.measures)
    assert abs(functional_value(fn, x, T)) <= k * x.max_abs()
