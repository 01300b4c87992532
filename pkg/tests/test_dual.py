import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from epspace.configs import DESK, TOY
from epspace.constructions import u_star
from epspace.norm import (
    DualNormDidNotConverge,
    MAX_EXTREME_DIM,
    dual_norm,
    norm_bb,
    section_extreme_points,
    window_measures,
)
from epspace.schreier import ResourceLimitError
from epspace.space import SparseVector, StructuralError, functional_atoms

T = TOY
F = Fraction


def lp_oracle(f, cfg):
    coords = sorted(f)
    rows = []
    for atoms in window_measures(cfg, coords):
        r = [float(atoms.get(c, 0)) for c in coords]
        rows += [r, [-v for v in r]]
    res = linprog([-float(f[c]) for c in coords], A_ub=rows, b_ub=[1.0] * len(rows),
                  bounds=[(None, None)] * len(coords), method="highs")
    return -res.fun


def certify(res, f, cfg):
    x = res.witness_point
    assert sum(f[c] * x.get(c, 0) for c in f) == res.value
    assert norm_bb(x, cfg).value <= 1
    # multipliers: non-negative, summing to the value, dominating f
    total = {}
    for sign, fn, y in res.multipliers:
        assert y > 0
        for c, w in functional_atoms(fn, cfg).items():
            total[c] = total.get(c, 0) + sign * y * w
    assert sum(y for _, _, y in res.multipliers) == res.value
    for c, v in f.items():
        assert total.get(c, 0) * (1 if v > 0 else -1) >= abs(v)


class TestExamples:
    def test_unit(self):
        assert dual_norm({2: 1}, T).value == 1

    def test_u1_star(self):
        assert u_star(1, T) == {2: F(1, 2), 3: F(1, 2)}
        assert dual_norm(u_star(1, T), T).value == 1

    def test_sum_of_two(self):
        res = dual_norm({2: 1, 3: 1}, T)
        assert res.value == 2
        certify(res, {2: 1, 3: 1}, T)

    def test_zero(self):
        assert dual_norm({}, T).value == 0

    def test_outside_window(self):
        with pytest.raises(StructuralError):
            dual_norm({12: 1}, T)

    def test_iteration_cap_reports_interval(self):
        f = {c: 1 for c in T.window}
        with pytest.raises(DualNormDidNotConverge) as info:
            dual_norm(f, T, max_iter=1)
        assert info.value.upper >= dual_norm(f, T).value


COEF = st.fractions(-3, 3, max_denominator=6)


@settings(max_examples=120)
@given(st.dictionaries(st.sampled_from(T.window), COEF, min_size=1))
def test_matches_lp_oracle_and_certifies(f):
    f = {k: v for k, v in f.items() if v}
    res = dual_norm(f, T)
    if f:
        assert abs(float(res.value) - lp_oracle(f, T)) < 1e-7
    certify(res, f, T)


@settings(max_examples=60)
@given(st.dictionaries(st.sampled_from(DESK.window[:14]), COEF, min_size=1))
def test_desk_prefix_certifies(f):
    f = {k: v for k, v in f.items() if v}
    res = dual_norm(f, DESK)
    if f:
        assert abs(float(res.value) - lp_oracle(f, DESK)) < 1e-7
    certify(res, f, DESK)


@given(st.dictionaries(st.sampled_from(T.window), COEF))
def test_sign_split_identity(f):
    pos = {k: v for k, v in f.items() if v > 0}
    neg = {k: -v for k, v in f.items() if v < 0}
    # suppression-unconditional basis: the dual norm adds over the sign split
    assert dual_norm(f, T).value == dual_norm(pos, T).value + dual_norm(neg, T).value


class TestExtremePoints:
    def test_one_dimensional(self):
        assert {v.format() for v in section_extreme_points(T, [2])} == {"2:1", "2:-1"}

    def test_square(self):
        got = {v.format() for v in section_extreme_points(T, [2, 3])}
        assert got == {"2:1,3:1", "2:1,3:-1", "2:-1,3:1", "2:-1,3:-1"}

    def test_hexagon(self):
        verts = section_extreme_points(T, [3, 6])
        assert {v.format() for v in verts} == {"3:1", "3:-1", "6:1", "6:-1", "3:1,6:-1", "3:-1,6:1"}

    @pytest.mark.parametrize("coords", [[2], [2, 3], [3, 6], [2, 4, 7], [3, 6, 10], [4, 5, 6]])
    def test_vertex_properties(self, coords):
        verts = section_extreme_points(T, coords)
        keys = {tuple(sorted(v.items())) for v in verts}
        assert len(keys) == len(verts)
        for v in verts:
            assert norm_bb(v, T).value == 1
            assert tuple(sorted(v.scale(-1).items())) in keys
        for a, b, c in itertools.permutations(verts, 3):
            assert (b + c).scale(F(1, 2)) != a

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            section_extreme_points(T, range(2, 3 + MAX_EXTREME_DIM))


def test_random_pairs_reproducible():
    rng = random.Random(11)
    for _ in range(30):
        f = {c: F(rng.randint(-4, 4), rng.randint(1, 3)) for c in rng.sample(T.window, 3)}
        a, b = dual_norm(f, T), dual_norm(f, T)
        assert a.value == b.value and a.witness_point == b.witness_point
