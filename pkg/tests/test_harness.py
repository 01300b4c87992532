import json
from fractions import Fraction

import mpmath
import pytest

from epspace.configs import DESK, TOY
from epspace.harness import (
    MARGIN,
    b_constant,
    check_C2_T3,
    check_L1,
    check_L2_lower,
    check_L3,
    check_L4_L5,
    default_n_max,
    holds,
    l3_terms,
    level_data,
    random_segment_choice,
    run_suite,
)
from epspace.norm import norm_exhaustive
from epspace.space import SpaceConfig, SparseVector

F = Fraction
T = TOY
G = DESK
SIZES_567 = SpaceConfig(p=2, blocks=(tuple(range(5, 10)), tuple(range(10, 16)), tuple(range(16, 23))))


def assert_pass(rep, instances=None):
    assert rep.verdict == "pass", rep.failures[:3]
    if instances is not None:
        assert rep.instances == instances


class TestHolds:
    def test_exact(self):
        assert holds(F(1, 3), "<=", F(1, 3))
        assert not holds(F(1, 3), "<", F(1, 3))
        assert holds(F(2), ">=", F(1))

    def test_irrational_needs_margin(self):
        r2 = mpmath.sqrt(2)
        assert holds(r2, "<=", F(3, 2))
        assert not holds(r2, "<=", r2)
        assert not holds(r2, "<=", r2 + MARGIN / 2)
        assert holds(r2, "<=", r2 + MARGIN * 2)

    def test_relative_tolerance(self):
        assert holds(mpmath.mpf(1) + mpmath.mpf("1e-12"), "<=", 1, F(1, 10**9))
        assert not holds(mpmath.mpf(1) + mpmath.mpf("1e-6"), "<=", 1, F(1, 10**9))


class TestL1:
    def test_example_segments(self):
        rep = check_L1(T, choices=[{1: 1, 2: 2}])
        assert_pass(rep, 1)
        assert norm_exhaustive(SparseVector.parse("2:1,4:1,5:1"), T).value == 1

    def test_empty_segments(self):
        assert_pass(check_L1(T, choices=[{1: 0, 2: 0}]), 1)

    def test_over_budget_skipped(self):
        rep = check_L1(T, choices=[{1: 2, 2: 3}])
        assert rep.skipped == 1 and rep.instances == 0

    def test_random(self):
        assert_pass(check_L1(T, count=100, seed=4), 100)

    def test_generator_respects_budget(self):
        import random

        rng = random.Random(0)
        for _ in range(200):
            ch = random_segment_choice(G, rng)
            assert sum(G.weight(n, g) for n, g in ch.items()) <= 1


class TestL2:
    def test_unit_coefficient(self):
        assert_pass(check_L2_lower(SIZES_567, coeffs=[[1, 0, 0]]), 1)

    def test_float_coefficients(self):
        a = mpmath.mpf(2) ** (-1 / mpmath.mpf(2))
        assert_pass(check_L2_lower(SIZES_567, coeffs=[[a, a, 0]]), 1)

    def test_zero(self):
        assert_pass(check_L2_lower(SIZES_567, coeffs=[[0, 0, 0]]), 1)

    def test_random_on_toy_and_desk(self):
        assert_pass(check_L2_lower(T, count=30, seed=1), 30)
        assert_pass(check_L2_lower(G, count=15, seed=1), 15)

    def test_fractional_p(self):
        cfg = SpaceConfig(p=F(3, 2), blocks=SIZES_567.blocks)
        assert_pass(check_L2_lower(cfg, count=10, seed=2), 10)


class TestL3:
    def test_block_indicator(self):
        u = SparseVector.indicator(G.block(1))
        I, js = [1], {1: G.block(1)[-1]}
        assert l3_terms(u, I, js, G) == 1
        assert_pass(check_L3(G, instances=[(u, 1, I, js)]), 1)

    def test_empty_index_set(self):
        u = SparseVector.indicator(G.block(2))
        assert_pass(check_L3(G, instances=[(u, 1, [], {})]), 1)

    def test_random(self):
        assert_pass(check_L3(G, count=30, seed=3), 30)

    def test_precondition_violation_skipped(self):
        u = SparseVector({G.block(1)[0]: F(1, 10**6)})
        rep = check_L3(G, instances=[(u, 1, [1], {1: G.block(1)[0]})])
        assert rep.skipped == 1 and rep.ok

    def test_needs_section4(self):
        with pytest.raises(ValueError):
            check_L3(T, count=1)


class TestL4L5:
    def test_zero_rho(self):
        u = SparseVector.indicator(G.block(1))
        assert_pass(check_L4_L5(G, instances=[(u, [1, 2], {1: 0, 2: 0}, None)]), 1)

    def test_zero_vector(self):
        assert_pass(check_L4_L5(G, instances=[(SparseVector(), [1, 2, 3], {1: 1, 2: 2, 3: 0}, None)]), 1)

    def test_random(self):
        assert_pass(check_L4_L5(G, count=20, seed=5), 20)

    def test_levels_partition_entries(self):
        u = SparseVector({6: 1, 7: F(1, 2), 8: F(1, 10)})
        n_max = default_n_max(u, G)
        ld = level_data(u, [1], G, n_max)
        # no mass is left below eps_{n_max+1}
        assert ld.lam[n_max + 1][1] == 0
        assert ld.lam0[1] + ld.lam[1][1] == sum(u.values()) / G.size(1)


class TestC2T3:
    def test_b_constant_certified(self):
        B = b_constant(G)
        assert B.lower < B.upper
        assert B.upper - B.lower < mpmath.mpf("1e-12")
        assert B.lower > 4

    def test_first_coordinate(self):
        assert_pass(check_C2_T3(G, rhos=[[1, 0, 0, 0]]), 1)

    def test_zero(self):
        assert_pass(check_C2_T3(G, rhos=[[0, 0, 0, 0]]), 1)

    def test_random(self):
        assert_pass(check_C2_T3(G, count=20, seed=6), 20)


class TestSuites:
    def test_toy_l1(self):
        rep = run_suite(T, ["L1"], seed=0, count=50)
        assert_pass(rep, 50)

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite(T, ["unknown"])

    def test_section4_suites_skipped_on_basic(self):
        rep = run_suite(T, ["L3", "C2T3"], count=2)
        assert rep.skipped == 2 and rep.ok

    def test_deterministic_and_serialisable(self):
        a = run_suite(G, ["L1", "L3", "C2T3"], seed=9, count=5)
        b = run_suite(G, ["L1", "L3", "C2T3"], seed=9, count=5)
        da, db = a.to_dict(), b.to_dict()
        for d in (da, db):
            d.pop("runtime")
            for p in d["parts"]:
                p.pop("runtime")
        assert da == db
        back = json.loads(a.to_json())
        assert back["seed"] == 9 and back["verdict"] == "pass" and back["config"] == G.digest

    def test_failure_entries_are_replayable(self):
        # a deliberately false bound: the witness vector of a block has norm 1, not <= 1/2
        from epspace.harness import CheckReport, _Recorder

        rep = CheckReport(id="demo", config=T.digest)
        _Recorder(rep).check(F(1), "<=", F(1, 2), {"u": "2:1"})
        assert rep.verdict == "fail"
        assert rep.failures[0].input == {"u": "2:1"} and rep.failures[0].lhs == "1"
