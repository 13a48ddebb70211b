import json
import random
from fractions import Fraction

import pytest

from weyldl.conjugacy import partition_memo, pi_of
from weyldl.criterion import (
    FORM_FORWARD,
    FORM_INVERSE,
    Certificate,
    CertificateError,
    build_forward_system,
    build_inverse_system,
    build_star_system,
    certify_min_element,
    check_certificate,
    feasible,
    minimal_q,
    parse_q_literal,
)
from weyldl.exactnum import SQRT2, SQRT3, qext
from weyldl.rootdata import Coweight, build_twist

from conftest import group


def idpi(W):
    return {i: i for i in range(1, W.rank + 1)}


class TestForwardSystem:
    def test_identity_element(self, A2):
        system = build_forward_system(A2, A2.identity, idpi(A2), qext(2))
        point = {1: qext(1), 2: qext(1)}
        assert system.satisfied_by(point)
        assert len(system.pure_rows) == 0
        assert len(system.q_rows) == 2

    def test_g2_fourth_power_row(self, G2):
        # One q-row of (s2 s1)^2 collapses to q m1 - m1 - m2 at any q.
        w = G2.from_word([2, 1, 2, 1])
        system = build_forward_system(G2, w, idpi(G2), qext(2))
        combined = system.combined_rows()
        assert (qext(1), qext(-1)) in combined  # q=2: 2m1 - m1 - m2
        assert system.satisfied_by({1: qext(2), 2: qext(1)})

    def test_a2_longest(self, A2):
        w0 = A2.longest_element([1, 2])
        system = build_forward_system(A2, w0, idpi(A2), qext(2))
        assert len(system.pure_rows) == 3
        mu = feasible(system)
        assert mu is not None


class TestTransferIdentity:
    @pytest.mark.parametrize(
        "family,rank,order",
        [("A", 2, 1), ("A", 2, 2), ("B", 2, 1), ("B", 2, 2), ("G", 2, 1),
         ("G", 2, 2), ("A", 3, 1), ("A", 3, 2), ("B", 3, 1), ("C", 3, 1)],
    )
    def test_exhaustive_small_rank(self, family, rank, order):
        W = group(family, rank)
        twist = build_twist(family, rank, order)
        q = minimal_q(family, order)
        fwd_pi = pi_of(twist, "delta")
        inv_pi = pi_of(twist, "delta_inv")
        for w in W.elements().values():
            a = build_inverse_system(W, w, inv_pi, q)
            b = build_forward_system(W, W.invert(w), fwd_pi, q)
            # Same pure rows; q-rows match after re-indexing i -> delta(i).
            assert sorted(a.pure_rows) == sorted(b.pure_rows)
            assert sorted(a.combined_rows()[0:len(a.q_rows)]) == sorted(
                b.combined_rows()[0:len(b.q_rows)]
            )


class TestStarSystem:
    def test_a_n_chain(self):
        # Type A reduction: rows reduce to q m_i - m_{i-1} for i != 1.
        W = group("A", 4)
        pi = idpi(W)
        w1 = W.from_word(W.word_from_bracket(4, 1))
        system = build_star_system(W, frozenset({2, 3, 4}), w1, pi, qext(2))
        ones = {i: qext(1) for i in range(1, 5)}
        assert system.satisfied_by(ones)

    def test_3d4_case(self, D4):
        pi = pi_of(build_twist("D", 4, 3), "delta_inv")
        w1 = D4.from_word([2, 1])
        system = build_star_system(D4, frozenset({1, 2, 3}), w1, pi, qext(2))
        assert system.satisfied_by({1: qext(3), 2: qext(2), 3: qext(2), 4: qext(1)})

    def test_f4_case3_infeasible_at_two(self, F4):
        pi = idpi(F4)
        w1 = F4.from_word((2, 3, 2, 4, 3, 2, 1))
        system = build_star_system(F4, frozenset({2, 3, 4}), w1, pi, qext(2))
        assert feasible(system) is None
        # ... but feasible at q = 4.
        system4 = build_star_system(F4, frozenset({2, 3, 4}), w1, pi, qext(4))
        assert feasible(system4) is not None

    def test_empty_system(self, A2):
        # J = {} on the identity: no K, positivity rows only.
        system = build_star_system(A2, frozenset(), A2.identity, idpi(A2), qext(2))
        mu = feasible(system)
        assert mu is not None


class TestFeasibleOracle:
    def test_suzuki_point_accepted(self, B2):
        pi = pi_of(build_twist("B", 2, 2), "delta_inv")
        w1 = B2.simple(1)
        system = build_star_system(B2, frozenset({1}), w1, pi, SQRT2)
        assert system.satisfied_by({1: qext(3), 2: qext(1)})
        assert feasible(system) is not None

    def test_homogeneity(self, G2):
        w = G2.from_word([2, 1, 2, 1])
        system = build_forward_system(G2, w, idpi(G2), qext(2))
        mu = feasible(system)
        point = {i: mu[i] for i in system.varset}
        scaled = {i: mu[i] * Fraction(7, 3) for i in system.varset}
        assert system.satisfied_by(point) and system.satisfied_by(scaled)


class TestCertificates:
    def cert(self, W, word, mu, q=2, family="G", rank=2, twist=1):
        return Certificate(
            family=family, rank=rank, twist=twist, direction="delta",
            q=qext(q), w=word, form=FORM_FORWARD, mu=Coweight.of(mu),
        )

    def test_round_trip_bit_exact(self, G2):
        cert = self.cert(G2, (2, 1, 2, 1), [2, 1])
        text = cert.to_json()
        again = Certificate.from_json(text)
        assert again == cert
        assert again.to_json() == text

    def test_accept(self, G2):
        assert check_certificate(self.cert(G2, (2, 1, 2, 1), [2, 1]))

    def test_reject_bad_point(self, G2):
        result = check_certificate(self.cert(G2, (2, 1, 2, 1), [1, 2]))
        assert not result and "violated" in result.reason

    def test_reject_malformed(self):
        with pytest.raises(CertificateError):
            Certificate.from_json("not json at all")
        with pytest.raises(CertificateError):
            Certificate.from_json(json.dumps({"format_version": 1}))

    def test_reject_wrong_rank(self, G2):
        cert = self.cert(G2, (1, 2), [1, 2, 3])
        assert not check_certificate(cert)

    def test_reject_bad_word(self, G2):
        cert = self.cert(G2, (1, 5), [1, 1])
        assert not check_certificate(cert)

    def test_reject_mixed_radicands(self, G2):
        cert = Certificate(
            family="G", rank=2, twist=1, direction="delta", q=SQRT2,
            w=(1, 2), form=FORM_FORWARD,
            mu=Coweight.of([SQRT3, qext(1)]),
        )
        assert not check_certificate(cert)

    def test_inverse_form_paper_point(self, F4):
        # The pinned exact witness for the deepest twisted F4 spade row.
        cert = Certificate(
            family="F", rank=4, twist=2, direction="delta_inv", q=SQRT2,
            w=tuple(F4.from_word((3, 2, 1, 2, 3, 2, 4, 3, 2, 1)).word),
            form=FORM_INVERSE,
            mu=Coweight.of([3, 1, 3, -3]),
        )
        assert check_certificate(cert)
        flipped = Certificate(
            family="F", rank=4, twist=2, direction="delta_inv", q=SQRT2,
            w=cert.w, form=FORM_INVERSE, mu=Coweight.of([3, 1, 3, 3]),
        )
        assert not check_certificate(flipped)


class TestCertify:
    def test_identity_class(self, A2):
        pi = pi_of(build_twist("A", 2, 1))
        classes = partition_memo(A2, pi)
        cert = certify_min_element(A2, build_twist("A", 2, 1), classes[0], qext(2))
        assert cert.w == ()
        assert check_certificate(cert)

    def test_suzuki_class(self, B2):
        twist = build_twist("B", 2, 2)
        pi = pi_of(twist)
        classes = partition_memo(B2, pi)
        target = next(c for c in classes if c.representative == B2.simple(1))
        cert = certify_min_element(B2, twist, target, SQRT2)
        assert check_certificate(cert)
        # The printed witness must satisfy the same rebuilt system.
        manual = Certificate(
            family="B", rank=2, twist=2, direction="delta", q=SQRT2,
            w=(1,), form=FORM_FORWARD, mu=Coweight.of([3, 1]),
        )
        assert check_certificate(manual)

    def test_below_minimal_q(self, G2):
        twist = build_twist("G", 2, 2)
        classes = partition_memo(G2, pi_of(twist))
        with pytest.raises(ValueError):
            certify_min_element(G2, twist, classes[0], qext(1))

    def test_monotone_in_q(self, G2):
        # Certificates whose q-row u-parts evaluate nonnegatively stay
        # valid at larger q.
        twist = build_twist("G", 2, 1)
        classes = partition_memo(G2, pi_of(twist))
        for cls in classes:
            cert = certify_min_element(G2, twist, cls, qext(2))
            system = build_forward_system(G2, G2.from_word(cert.w), pi_of(twist), cert.q)
            point = {i: cert.mu[i] for i in system.varset}
            u_ok = all(
                sum((qext(c) * point[i] for c, i in zip(u, system.varset)), qext(0)).sign() >= 0
                for u, _ in system.q_rows
            )
            if u_ok:
                bigger = Certificate(
                    family="G", rank=2, twist=1, direction="delta", q=qext(5),
                    w=cert.w, form=FORM_FORWARD, mu=cert.mu,
                )
                assert check_certificate(bigger)


class TestSolverCheckerAgreement:
    def test_randomized(self):
        rng = random.Random(777)
        W = group("B", 3)
        twist = build_twist("B", 3, 1)
        pi = pi_of(twist)
        elements = list(W.elements().values())
        accepted = 0
        for _ in range(60):
            w = rng.choice(elements)
            system = build_forward_system(W, w, pi, qext(2))
            mu = feasible(system)
            if mu is None:
                continue
            cert = Certificate(
                family="B", rank=3, twist=1, direction="delta", q=qext(2),
                w=w.word, form=FORM_FORWARD, mu=mu,
            )
            assert check_certificate(cert)
            accepted += 1
        assert accepted > 10


class TestQLiterals:
    def test_parse(self):
        assert parse_q_literal("2") == qext(2)
        assert parse_q_literal("3/2") == qext(Fraction(3, 2))
        assert parse_q_literal("sqrt2") == SQRT2
        assert parse_q_literal("2*sqrt2") == SQRT2 * 2
        assert parse_q_literal("3/2*sqrt3") == SQRT3 * Fraction(3, 2)

    def test_bad(self):
        with pytest.raises(ValueError):
            parse_q_literal("sqrt5")
        with pytest.raises(ValueError):
            parse_q_literal("two")

    def test_minimal_values(self):
        assert minimal_q("A", 1) == 2
        assert minimal_q("B", 2) == SQRT2
        assert minimal_q("F", 2) == SQRT2
        assert minimal_q("G", 2) == SQRT3
        assert minimal_q("E", 2) == 2
