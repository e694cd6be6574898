"""The seven local conditions: decision, enumeration, coverage."""

import pytest

from mahlercf.conditions import (
    check_pair,
    covered,
    covered_up_to,
    iter_witnesses,
    satisfying_pairs,
)
from mahlercf.fields import primes_between
from mahlercf.recurrence import first_beta_zero

# hand-enumerated condition sets for small primes
PAIRS_P3 = {(0, 1), (0, 2), (1, 0), (2, 0), (1, 2), (2, 2)}
PAIRS_P7 = {
    (2, 6), (5, 6),                     # C2: u^2 = -3, v = -1
    (2, 0), (5, 0), (4, 0), (3, 0),     # C3: u = +-phi, v = 0
    (0, 2), (0, 5), (0, 4), (0, 3),     # C6: u = 0, v = +-delta
    (1, 2), (6, 2), (4, 4), (3, 4),     # C7: u = +-2 delta^2, v = delta
}


class TestCheckPair:
    def test_c1_at_11(self):
        ws = check_pair(5, 1, 11)
        assert [w.case for w in ws] == ["C1"]
        assert ws[0].pair == (5, 1)

    def test_c3_at_7(self):
        ws = check_pair(2, 0, 7)
        assert [w.case for w in ws] == ["C3"]
        assert ws[0].phi == 2 and ws[0].sign == 1

    def test_c4_at_11(self):
        ws = check_pair(2, -1, 11)
        assert [w.case for w in ws] == ["C4"]
        assert ws[0].phi == 2

    def test_uncovered_witness_pair_at_11(self):
        assert check_pair(2, -2, 11) == []

    def test_negative_sign_parameterisations(self):
        # u = -phi for phi = 2 at p = 7: u = 5
        ws = check_pair(5, 0, 7)
        assert ws[0].case == "C3" and ws[0].sign == -1 and ws[0].phi == 2
        # v = -delta at p = 7: delta in {2, 4}, so v in {5, 3}
        ws = check_pair(0, 5, 7)
        assert ws[0].case == "C6" and ws[0].sign == -1 and ws[0].delta == 2


class TestSatisfyingPairs:
    def test_p5_empty(self):
        assert satisfying_pairs(5) == {}

    def test_p7_exact_set(self):
        assert set(satisfying_pairs(7)) == PAIRS_P7

    def test_p3_exact_set_and_no_c7(self):
        pairs = satisfying_pairs(3)
        assert set(pairs) == PAIRS_P3
        assert all(w.case != "C7" for ws in pairs.values() for w in ws)

    def test_overlaps_preserved(self):
        # (1, 2) mod 3 satisfies both C4 and C5
        cases = {w.case for w in satisfying_pairs(3)[(1, 2)]}
        assert {"C4", "C5"} <= cases

    @pytest.mark.parametrize("p", primes_between(3, 50))
    def test_agreement_with_check_pair(self, p):
        enumerated = set(satisfying_pairs(p))
        decided = {
            (u, v) for u in range(p) for v in range(p) if check_pair(u, v, p)
        }
        assert enumerated == decided

    @pytest.mark.parametrize("p", primes_between(3, 50))
    def test_sign_closure(self, p):
        pairs = set(satisfying_pairs(p))
        assert {((-u) % p, v) for (u, v) in pairs} == pairs

    @pytest.mark.parametrize("p", primes_between(3, 100))
    def test_witness_validity(self, p):
        for w in iter_witnesses(p):
            assert w.validate(), w

    def test_each_case_contributes_few_pairs(self):
        for p in primes_between(3, 100):
            per_case = {}
            for w in iter_witnesses(p):
                per_case.setdefault(w.case, set()).add(w.pair)
            for case, pairs in per_case.items():
                assert len(pairs) <= 4, (p, case)


class TestCovered:
    def test_5_1_covered_at_11(self):
        w = covered_up_to(5, 1, 1000)
        assert w is not None and w.p == 11 and w.case == "C1"

    def test_2_minus2_uncovered_below_1000(self):
        assert covered_up_to(2, -2, 1000) is None

    def test_1_1_uncovered(self):
        # v = u^2 forces beta_2 = 0, which no condition admits
        assert covered_up_to(1, 1, 1000) is None

    def test_scans_ascending(self):
        w = covered(5, 1, [31, 11, 13])
        assert w.p == 11


class TestSoundness:
    @pytest.mark.parametrize("p", primes_between(3, 50))
    def test_condition_pairs_survive(self, p):
        # the conditions force beta_i != 0 mod p for every i: zero tolerance
        for (u, v) in satisfying_pairs(p):
            assert first_beta_zero(u, v, p, 2000) is None, (u, v, p)
