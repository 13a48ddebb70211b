import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyldl.rootdata import weyl_order

from conftest import group


class TestAction:
    def test_simple_reflection_negates_own_root(self, A2):
        s1 = A2.simple(1)
        assert A2.act_on_root(s1, (1, 0)) == (-1, 0)

    def test_two_step_action(self, A2):
        w = A2.from_word([1, 2])
        assert A2.act_on_root(w, (0, 1)) == (-1, -1)

    def test_f4_cartan_entry(self, F4):
        s2 = F4.simple(2)
        assert F4.act_on_root(s2, (0, 0, 1, 0)) == (0, 1, 1, 0)

    def test_not_a_root(self, A2):
        with pytest.raises(ValueError):
            A2.act_on_root(A2.identity, (2, 0))

    def test_negative_root_input(self, A2):
        w = A2.from_word([1])
        assert A2.act_on_root(w, (-1, 0)) == (1, 0)


class TestInversions:
    def test_identity(self, A2):
        assert A2.inversions(A2.identity) == ()

    def test_longest(self, A2):
        w0 = A2.longest_element([1, 2])
        assert len(A2.inversions(w0)) == 3

    def test_a2_example(self, A2):
        w = A2.from_word([1, 2])
        roots = {A2.roots[p] for p in A2.inversions(w)}
        assert roots == {(0, 1), (1, 1)}

    def test_length_equals_inversion_count(self, G2):
        for word_len in range(5):
            rng = random.Random(word_len)
            w = G2.from_word([rng.randint(1, 2) for _ in range(word_len)])
            assert w.length == len(G2.inversions(w))


class TestWords:
    def test_canonical_word_round_trip_small(self, G2):
        for perm, w in G2.elements().items():
            assert G2.from_word(w.word) == w

    @given(st.lists(st.integers(1, 4), max_size=14))
    @settings(max_examples=120, deadline=None)
    def test_canonical_round_trip_f4(self, word):
        W = group("F", 4)
        w = W.from_word(word)
        assert W.from_word(w.word) == w
        assert len(w.word) == w.length

    def test_lex_smallest(self, A2):
        # s1 s2 s1 = s2 s1 s2; canonical form must be the lex-smaller word.
        w = A2.from_word([2, 1, 2])
        assert w.word == (1, 2, 1)

    def test_bracket_words(self, F4):
        assert F4.word_from_bracket(3, 1) == (3, 2, 1)
        assert F4.word_from_bracket(3, 1, inverse=True) == (1, 2, 3)
        assert F4.word_from_bracket(1, 3) == ()
        with pytest.raises(ValueError):
            F4.word_from_bracket(5, 1)

    def test_bracket_instantiation(self):
        W = group("A", 3)
        assert W.word_from_bracket(3, 1) == (3, 2, 1)


class TestGroupOps:
    def test_inverse_round_trip(self, B2):
        for w in B2.elements().values():
            assert B2.multiply(w, B2.invert(w)) == B2.identity
            assert B2.invert(w).length == w.length

    def test_inverse_word(self, A2):
        w = A2.from_word([1, 2])
        assert A2.invert(w).word == (2, 1)

    def test_action_homomorphism(self, G2):
        rng = random.Random(999)
        elems = list(G2.elements().values())
        for _ in range(50):
            a, b = rng.choice(elems), rng.choice(elems)
            ab = G2.multiply(a, b)
            for p in range(G2.nroots):
                assert ab.perm[p] == G2.act_signed(a, b.perm[p])


class TestLongestAndCosets:
    def test_longest_empty(self, A2):
        assert A2.longest_element([]) == A2.identity

    def test_longest_full_a2(self, A2):
        assert A2.longest_element([1, 2]).length == 3

    def test_longest_parabolic_e6(self):
        W = group("E", 6)
        w = W.longest_element({2, 3, 4, 5})
        assert w.length == 12  # D4 subdiagram
        inv = {W.roots[p] for p in W.inversions(w)}
        sub = {
            r
            for r in W.system.positive_roots
            if all(c == 0 for k, c in enumerate(r) if k + 1 not in {2, 3, 4, 5})
        }
        assert inv == sub

    def test_min_coset_rep(self, A2):
        assert A2.is_min_coset_rep(A2.identity, [1, 2])
        assert not A2.is_min_coset_rep(A2.simple(1), [1])

    def test_a_n_bracket_rep(self):
        # s_{[n,1]} is a minimal coset representative for J = I - {1},
        # which is the twisted image of I - {n} under the reversal.
        W = group("A", 4)
        w1 = W.from_word(W.word_from_bracket(4, 1))
        assert W.is_min_coset_rep(w1, {2, 3, 4})


class TestOrders:
    @pytest.mark.parametrize(
        "family,rank",
        [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4)],
    )
    def test_group_orders(self, family, rank):
        W = group(family, rank)
        assert len(W.elements()) == weyl_order(family, rank)


@given(st.lists(st.integers(1, 3), max_size=10), st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_length_changes_by_one_b3(word, i):
    W = group("B", 3)
    w = W.from_word(word)
    ws = W.multiply(w, W.simple(i))
    assert abs(ws.length - w.length) == 1


def test_length_changes_by_one_random_e8():
    W = group("E", 8)
    rng = random.Random(4242)
    for _ in range(40):
        w = W.from_word([rng.randint(1, 8) for _ in range(rng.randint(0, 30))])
        i = rng.randint(1, 8)
        assert abs(W.multiply(w, W.simple(i)).length - w.length) == 1


def test_inversions_of_inverse_exhaustive_rank2(A2, B2, G2):
    # inv(w^{-1}) = { -w(beta) : beta in inv(w) }
    for W in (A2, B2, G2):
        for w in W.elements().values():
            winv = W.invert(w)
            lhs = {W.roots[p] for p in W.inversions(winv)}
            rhs = {
                tuple(-c for c in W.act_on_root(w, W.roots[p]))
                for p in W.inversions(w)
            }
            assert lhs == rhs
