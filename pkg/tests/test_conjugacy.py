import json
import os

import pytest

from weyldl.conjugacy import (
    class_of,
    closure_min_check,
    compute_I_J_x,
    cyclic_shift_step,
    elementarily_strongly_conjugate,
    enumerate_delta_classes,
    is_cuspidal,
    load_class_cache,
    partition_memo,
    pi_of,
    save_class_cache,
    shift_closure,
    shift_descend_to_min,
    supp_delta,
)
from weyldl.rootdata import build_twist
from weyldl.weyl import WeylGroup

from conftest import group, twist_of


def identity_pi(W):
    return {i: i for i in range(1, W.rank + 1)}


class TestCyclicShift:
    def test_identity_fixed_nodes(self, A2):
        pi = identity_pi(A2)
        assert cyclic_shift_step(A2, pi, A2.identity, 1) == A2.identity

    def test_identity_swapped_nodes(self, A2):
        t = build_twist("A", 2, 2)
        pi = pi_of(t)
        # s_1 e s_2 has length 2 > 0: no non-increasing shift.
        assert cyclic_shift_step(A2, pi, A2.identity, 1) is None

    def test_length_preserving(self, A2):
        pi = identity_pi(A2)
        w = A2.from_word([1, 2])
        assert cyclic_shift_step(A2, pi, w, 1) == A2.from_word([2, 1])

    def test_length_decreasing(self, A2):
        pi = identity_pi(A2)
        w = A2.from_word([1, 2, 1])
        out = cyclic_shift_step(A2, pi, w, 1)
        assert out == A2.simple(2)


class TestClosure:
    def test_coxeter_closure_a2(self, A2):
        pi = identity_pi(A2)
        closure = shift_closure(A2, pi, A2.from_word([1, 2]))
        assert closure == {A2.from_word([1, 2]), A2.from_word([2, 1])}

    def test_closure_reaches_minimum(self, A2):
        pi = identity_pi(A2)
        closure = shift_closure(A2, pi, A2.from_word([1, 2, 1]))
        assert A2.simple(1) in closure or A2.simple(2) in closure

    def test_descend(self, G2):
        pi = identity_pi(G2)
        w0 = G2.longest_element([1, 2])
        cls = class_of(G2, pi, w0)
        down = shift_descend_to_min(G2, pi, G2.multiply(w0, G2.identity))
        assert down.length == cls.min_length


class TestEnumeration:
    def test_a2_untwisted(self, A2):
        classes = enumerate_delta_classes(A2, identity_pi(A2))
        assert len(classes) == 3
        assert [c.min_length for c in classes] == [0, 1, 2]
        assert [c.size for c in classes] == [1, 3, 2]

    def test_g2_untwisted(self, G2):
        classes = enumerate_delta_classes(G2, identity_pi(G2))
        assert len(classes) == 6
        assert sum(1 for c in classes if c.cuspidal) == 3

    def test_f4_untwisted(self, F4):
        classes = partition_memo(F4, identity_pi(F4))
        assert len(classes) == 25
        assert sum(1 for c in classes if c.cuspidal) == 9

    def test_partition_is_exhaustive(self, B2):
        classes = enumerate_delta_classes(B2, identity_pi(B2))
        assert sum(c.size for c in classes) == len(B2.elements())

    def test_length_parity_constant_on_classes(self, F4, D4):
        for W, order in ((F4, 1), (F4, 2), (D4, 3)):
            pi = pi_of(twist_of(W, order))
            for cls in partition_memo(W, pi):
                assert all(w.length % 2 == cls.min_length % 2 for w in cls.elements)

    def test_identity_closure_is_identity(self, A2):
        assert shift_closure(A2, identity_pi(A2), A2.identity) == {A2.identity}

    def test_union_find_matches_brute_conjugation_rank2(self, A2, B2, G2):
        # Independent oracle: orbits of w -> x w pi(x)^{-1} over all x.
        for W, order in ((A2, 1), (A2, 2), (B2, 1), (G2, 1)):
            t = twist_of(W, order)
            pi = pi_of(t)
            elements = list(W.elements().values())
            def orbit(w):
                out = set()
                for x in elements:
                    tx = W.from_word([pi[i] for i in x.word])
                    out.add(W.multiply(W.multiply(x, w), W.invert(tx)))
                return out
            classes = enumerate_delta_classes(W, pi)
            for cls in classes:
                assert set(cls.elements) == orbit(cls.representative)


class TestSupport:
    def test_identity(self, A2):
        assert supp_delta(A2, identity_pi(A2), A2.identity) == frozenset()

    def test_twisted_a3(self):
        W = group("A", 3)
        pi = pi_of(build_twist("A", 3, 2))
        assert supp_delta(W, pi, W.simple(1)) == frozenset({1, 3})

    def test_triality(self, D4):
        pi = pi_of(build_twist("D", 4, 3))
        assert supp_delta(D4, pi, D4.from_word([2, 1])) == frozenset({1, 2, 3, 4})


class TestCuspidality:
    def test_identity_class_not_cuspidal(self, A2):
        pi = identity_pi(A2)
        classes = enumerate_delta_classes(A2, pi)
        assert classes[0].representative == A2.identity
        assert not classes[0].cuspidal
        assert not is_cuspidal(A2, pi, classes[0], definitional=True)

    def test_coxeter_class_cuspidal(self, A2):
        pi = identity_pi(A2)
        cls = class_of(A2, pi, A2.from_word([1, 2]))
        assert cls.cuspidal
        assert is_cuspidal(A2, pi, cls, definitional=True)

    def test_g2_longest_cuspidal(self, G2):
        pi = identity_pi(G2)
        cls = class_of(G2, pi, G2.longest_element([1, 2]))
        assert cls.cuspidal

    def test_flag_matches_definition_rank_le_4(self):
        for family, rank, order in [
            ("A", 3, 1), ("A", 3, 2), ("B", 3, 1), ("D", 4, 1), ("D", 4, 2),
            ("D", 4, 3), ("F", 4, 1), ("F", 4, 2), ("G", 2, 2), ("B", 2, 2),
        ]:
            W = group(family, rank)
            pi = pi_of(build_twist(family, rank, order))
            for cls in partition_memo(W, pi):
                assert cls.cuspidal == is_cuspidal(W, pi, cls, definitional=True), (
                    family, rank, order, cls.representative.word,
                )


class TestStrongConjugacy:
    def test_reflexive(self, A2):
        pi = identity_pi(A2)
        w = A2.from_word([1, 2])
        assert elementarily_strongly_conjugate(A2, pi, w, w) == A2.identity

    def test_a2_coxeter_pair(self, A2):
        pi = identity_pi(A2)
        x = elementarily_strongly_conjugate(
            A2, pi, A2.from_word([1, 2]), A2.from_word([2, 1])
        )
        assert x is not None

    def test_length_mismatch(self, A2):
        pi = identity_pi(A2)
        assert (
            elementarily_strongly_conjugate(A2, pi, A2.simple(1), A2.from_word([1, 2]))
            is None
        )


class TestFixedNodeSet:
    def test_triality_case(self, D4):
        pi = pi_of(build_twist("D", 4, 3), "delta_inv")
        w1 = D4.from_word([3, 2, 1])
        assert compute_I_J_x(D4, pi, {1, 2, 3}, w1) == frozenset({1, 2})

    def test_identity_fixes_everything(self, A2):
        pi = identity_pi(A2)
        assert compute_I_J_x(A2, pi, {1}, A2.identity) == frozenset({1})

    def test_twisted_a4(self):
        W = group("A", 4)
        pi = pi_of(build_twist("A", 4, 2), "delta_inv")
        w1 = W.from_word([3, 2, 1])
        assert compute_I_J_x(W, pi, {1, 2, 3}, w1) == frozenset({2})

    def test_precondition(self, A2):
        pi = identity_pi(A2)
        with pytest.raises(ValueError):
            compute_I_J_x(A2, pi, {1}, A2.simple(1))


class TestInverseMap:
    def test_min_lengths_match_rank_le_3(self):
        for family, rank, order in [("A", 3, 1), ("A", 3, 2), ("B", 3, 1), ("G", 2, 2)]:
            W = group(family, rank)
            t = build_twist(family, rank, order)
            fwd = partition_memo(W, pi_of(t, "delta"))
            bwd = partition_memo(W, pi_of(t, "delta_inv"), direction="delta_inv")
            for cls in fwd:
                winv = W.invert(cls.representative)
                other = next(c for c in bwd if c.contains(winv))
                assert other.min_length == cls.min_length
                assert other.size == cls.size


class TestClosureMinCheck:
    def test_support_fast_path(self, G2):
        pi = identity_pi(G2)
        assert closure_min_check(G2, pi, G2.from_word([1, 2])) == "minimal"

    def test_agrees_with_enumeration_f4(self, F4):
        pi = identity_pi(F4)
        classes = partition_memo(F4, pi)
        for cls in classes[:12]:
            for w in cls.min_elements()[:2]:
                assert closure_min_check(F4, pi, w) == "minimal"
        # A non-minimal element must be detected.
        w0 = F4.longest_element(range(1, 5))
        big = F4.multiply(F4.simple(1), F4.multiply(w0, F4.simple(1)))
        cls = class_of(F4, pi, big)
        if big.length > cls.min_length:
            assert closure_min_check(F4, pi, big) == "not_minimal"

    def test_budget(self, F4):
        pi = identity_pi(F4)
        w = F4.from_word([2, 3, 2, 4, 3, 2, 1, 2])
        cls = class_of(F4, pi, w)
        picked = [x for x in cls.elements if x.length == cls.min_length][0]
        if picked.length > supp_len(F4, pi, picked):
            assert closure_min_check(F4, pi, picked, budget=1) == "budget"


def supp_len(W, pi, w):
    supp = supp_delta(W, pi, w)
    seen, orbits = set(), 0
    for i in sorted(supp):
        if i not in seen:
            orbits += 1
            j = i
            while j not in seen:
                seen.add(j)
                j = pi[j]
    return orbits


class TestShiftsStayInClass:
    def test_exhaustive_rank_le_4(self):
        for family, rank, order in [
            ("A", 3, 2), ("B", 3, 1), ("D", 4, 3), ("F", 4, 2), ("G", 2, 1),
        ]:
            W = group(family, rank)
            pi = pi_of(build_twist(family, rank, order))
            classes = partition_memo(W, pi)
            owner = {}
            for k, cls in enumerate(classes):
                for w in cls.elements:
                    owner[w] = k
            for w, k in owner.items():
                for j in range(1, rank + 1):
                    u = cyclic_shift_step(W, pi, w, j)
                    if u is not None:
                        assert owner[u] == k


class TestBudgets:
    def test_closure_budget_reported(self, F4):
        pi = identity_pi(F4)
        w0 = F4.longest_element(range(1, 5))
        big = F4.multiply(F4.simple(1), w0)
        with pytest.raises(Exception) as err:
            shift_closure(F4, pi, big, budget=2)
        assert "budget" in str(err.value)

    def test_enumeration_budget(self):
        from weyldl.rootdata import build_root_system
        from weyldl.weyl import EnumerationBudgetError

        fresh = WeylGroup(build_root_system("F", 4))
        with pytest.raises(EnumerationBudgetError):
            enumerate_delta_classes(fresh, identity_pi(fresh), budget=10)


class TestCache:
    def test_round_trip(self, tmp_path, G2):
        os.environ["WEYL_DL_CACHE"] = str(tmp_path)
        try:
            pi = identity_pi(G2)
            classes = enumerate_delta_classes(G2, pi)
            path = save_class_cache("G", 2, 1, "delta", classes)
            assert os.path.exists(path)
            rows = load_class_cache("G", 2, 1, "delta")
            assert len(rows) == len(classes)
            assert rows[0] == {"rep": [], "min_length": 0, "cuspidal": False, "size": 1}
            with open(path) as fh:
                header = json.loads(fh.readline())
            assert header["format_version"] == 1
            assert header["group"] == {"family": "G", "rank": 2, "twist": 1}
        finally:
            del os.environ["WEYL_DL_CACHE"]

    def test_missing_cache(self, tmp_path):
        os.environ["WEYL_DL_CACHE"] = str(tmp_path)
        try:
            assert load_class_cache("E", 8, 1, "delta") is None
        finally:
            del os.environ["WEYL_DL_CACHE"]
