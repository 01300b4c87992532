import itertools
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epspace.ordinals import Ordinal, fundamental_sequence, parse_ordinal
from epspace.schreier import (
    ResourceLimitError,
    _member,
    min_pieces,
    schreier_enumerate,
    schreier_maximal,
    schreier_member,
    schreier_subsets,
)


@lru_cache(maxsize=None)
def oracle(F, a):
    """Membership by trying every split into successive pieces."""
    if not F:
        return True
    if a.is_zero:
        return len(F) == 1
    if a.is_limit:
        return oracle(F, fundamental_sequence(a, F[0]))
    b = a.predecessor()
    n = len(F)
    for k in range(1, min(F[0], n) + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            if all(oracle(F[s:e], b) for s, e in zip(bounds, bounds[1:])):
                return True
    return False


def subsets(N):
    for r in range(N + 1):
        yield from itertools.combinations(range(1, N + 1), r)


ALPHAS = ["0", "1", "2", "3", "w", "w+1", "w*2", "w^2"]


class TestMember:
    def test_examples(self):
        assert schreier_member({3, 5, 9}, 1)
        assert not schreier_member({2, 3, 4}, 1)
        assert schreier_member({2, 3, 4, 5, 6, 7}, 2)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_matches_decomposition_oracle(self, alpha):
        a = parse_ordinal(alpha)
        for F in subsets(10):
            assert schreier_member(F, a) == oracle(F, a), F

    def test_closed_form_agrees_with_recursion(self):
        one = Ordinal.finite(1)
        for F in subsets(12):
            expected = not F or len(F) <= F[0]
            assert schreier_member(F, 1) == expected
            assert _member(F, one) == expected

    def test_membership_ignores_choice_of_new_max(self):
        # the fact behind testing only max F + 1 for maximality
        for alpha in ("1", "2", "w"):
            a = parse_ordinal(alpha)
            for F in subsets(8):
                if F and schreier_member(F, a):
                    results = {schreier_member(F + (m,), a) for m in range(F[-1] + 1, F[-1] + 12)}
                    assert len(results) == 1

    def test_greedy_piece_count_is_minimal(self):
        b = Ordinal.finite(1)
        for F in subsets(9):
            if not F:
                continue
            best = min(
                k
                for k in range(1, len(F) + 1)
                for cuts in itertools.combinations(range(1, len(F)), k - 1)
                if all(oracle(F[s:e], b) for s, e in zip((0,) + cuts, cuts + (len(F),)))
            )
            assert min_pieces(F, b) == best

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            schreier_member({0, 1}, 1)


class TestMaximal:
    def test_examples(self):
        assert schreier_maximal({2, 3}, 1)
        assert not schreier_maximal({3, 5}, 1)
        assert schreier_maximal({1}, 1)

    def test_rejects_non_members(self):
        with pytest.raises(ValueError):
            schreier_maximal({2, 3, 4}, 1)

    def test_definition(self):
        for F in subsets(8):
            if F and schreier_member(F, 2):
                direct = all(not schreier_member(F + (m,), 2) for m in range(F[-1] + 1, F[-1] + 10))
                assert schreier_maximal(F, 2) == direct


class TestEnumerate:
    def test_examples(self):
        assert schreier_enumerate(1, 4) == [(), (1,), (2,), (3,), (4,), (2, 3), (2, 4), (3, 4)]
        assert schreier_enumerate(0, 3) == [(), (1,), (2,), (3,)]
        assert schreier_enumerate(2, 3) == [(), (1,), (2,), (3,), (2, 3)]

    @pytest.mark.parametrize("alpha", ["0", "1", "2", "w"])
    def test_matches_filter(self, alpha):
        a = parse_ordinal(alpha)
        expected = sorted((F for F in subsets(9) if oracle(F, a)), key=lambda s: (len(s), s))
        assert schreier_enumerate(a, 9) == expected

    def test_cap(self):
        with pytest.raises(ResourceLimitError, match="cap=10"):
            schreier_enumerate(1, 8, cap=10)

    def test_subsets_of_M(self):
        M = (2, 5, 6, 9, 11)
        expected = [F for F in schreier_enumerate(2, 11) if set(F) <= set(M)]
        assert schreier_subsets(2, M) == expected


@given(st.lists(st.integers(1, 30), max_size=8, unique=True), st.sampled_from(["1", "2", "w", "w+2"]))
def test_hereditary_and_spreading(elems, alpha):
    a = parse_ordinal(alpha)
    F = tuple(sorted(elems))
    if not schreier_member(F, a):
        return
    for i in range(len(F)):
        assert schreier_member(F[:i] + F[i + 1:], a)
    shifted = tuple(x + i for i, x in enumerate(F))
    assert schreier_member(shifted, a)


MONO = ["0", "1", "2", "3", "w", "w+1", "w+2", "w*2", "w*2+1", "w*3", "w*3+2"]


def _shift_needed(N):
    """Per pair a < b: 1 + the largest min F over F in S_a, F not in S_b, inside {1..N}."""
    subs = [S for S in subsets(N) if S]
    mem = {a: {S for S in subs if schreier_member(S, parse_ordinal(a))} for a in MONO}
    out = {}
    for i, a in enumerate(MONO):
        for b in MONO[i + 1:]:
            out[(a, b)] = 1 + max((S[0] for S in mem[a] - mem[b]), default=0)
    return out


def test_monotone_in_alpha_after_shift():
    small, large = _shift_needed(9), _shift_needed(12)
    # the shift does not grow with the window
    assert small == large
    assert all(t <= 3 for t in large.values())
    # S_3 meets S_w = S_2 on sets starting at 2; this is the only gap
    assert {k for k, t in large.items() if t > 1} == {("3", "w")}
