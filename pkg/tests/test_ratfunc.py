"""Exact q-rational arithmetic: kernel and public value types."""

import random
from fractions import Fraction

import pytest

from qdeq import _intpoly as K
from qdeq.errors import DivisionByZero
from qdeq.ratfunc import (
    NEG_INF,
    POS_INF,
    Q,
    QLaurent,
    QPoly,
    RatQ,
    deg_q,
    norm,
    ord_q,
    pochhammer,
)


# ---------------------------------------------------------------------------
# integer-polynomial kernel


def test_kernel_basics():
    assert K.trim([1, 2, 0, 0]) == [1, 2]
    assert K.trim([0, 0]) == []
    assert K.deg([]) == -1
    assert K.deg([0, 0, 5]) == 2
    assert K.low([0, 0, 5]) == 2
    assert K.add([1, 2], [3, -2]) == [4]
    assert K.mul([1, 1], [-1, 1]) == [-1, 0, 1]
    assert K.mul([], [1, 2]) == []
    assert K.content([6, -9, 12]) == 3
    assert K.primitive_part([6, -9, 12]) == [2, -3, 4]
    assert K.primitive_part([-6, -9]) == [-2, -3]


def test_kernel_mul_kronecker_agrees_with_schoolbook():
    rng = random.Random(7)
    for _ in range(20):
        a = [rng.randint(-10**6, 10**6) for _ in range(rng.randint(1, 200))]
        b = [rng.randint(-10**6, 10**6) for _ in range(rng.randint(1, 200))]
        assert K.trim(K._kron_mul(a, b)) == K.trim(K._school_mul(a, b))


def test_kernel_kronecker_negative_coefficients():
    assert K._kron_mul([-5, 3], [7, -2]) == [-35, 31, -6]


def test_kernel_divexact():
    assert K.divexact([-1, 0, 1], [1, 1]) == [-1, 1]
    assert K.divexact([0, -1, 0, 1], [0, 1]) == [-1, 0, 1]
    with pytest.raises(ValueError):
        K.divexact([1, 0, 1], [1, 1])
    with pytest.raises(ValueError):
        K.divexact([1, 1], [0, 1])
    rng = random.Random(3)
    for _ in range(20):
        a = [rng.randint(-50, 50) for _ in range(rng.randint(1, 30))]
        b = [rng.randint(-50, 50) for _ in range(rng.randint(1, 30))]
        K.trim(a)
        K.trim(b)
        if not a or not b:
            continue
        assert K.divexact(K.mul(a, b), b) == a


def test_kernel_gcd_values():
    assert K.gcd([-1, 0, 1], [1, -2, 1]) == [-1, 1]
    assert K.gcd([0, 0, -1, 1], [0, 0, 1]) == [0, 0, 1]
    assert K.gcd([2, 2], [4]) == [1]
    assert K.gcd([], [3, -6]) == [-1, 2]
    assert K.gcd([-2, 1], []) == [-2, 1]


def test_kernel_gcd_prs_vs_modular():
    rng = random.Random(11)
    for _ in range(10):
        g = [rng.randint(-9, 9) for _ in range(6)] + [1]
        a = K.mul(g, [rng.randint(-9, 9) for _ in range(5)] + [1])
        b = K.mul(g, [rng.randint(-9, 9) for _ in range(4)] + [1])
        if a[0] == 0 or b[0] == 0:
            continue
        pa, pb = K.primitive_part(a), K.primitive_part(b)
        g1 = K._pos(K._prs_gcd(list(pa), list(pb)))
        g2 = K._modular_gcd(list(pa), list(pb))
        assert g1 == g2
        assert K.divexact(a, g1) is not None


def test_kernel_gcd_large_coefficients():
    # force the modular path: degree > 24 with a planted factor
    rng = random.Random(5)
    g = [rng.randint(-10**8, 10**8) for _ in range(20)] + [1]
    while g[0] == 0:
        g[0] = rng.randint(-10**8, 10**8)
    u = [rng.randint(-10**8, 10**8) for _ in range(15)] + [1]
    v = [rng.randint(-10**8, 10**8) for _ in range(14)] + [3]
    a, b = K.mul(g, u), K.mul(g, v)
    got = K.gcd(a, b)
    # u and v are coprime with overwhelming likelihood, so gcd == +-g
    assert got == K._pos(K.primitive_part(g))


def test_kernel_primes():
    it = K.primes_31()
    ps = [next(it) for _ in range(5)]
    assert ps == sorted(ps, reverse=True)
    assert all(p > 1 << 30 for p in ps)
    assert all(K._is_prime(p) for p in ps)
    assert not K._is_prime(3215031751)  # strong pseudoprime to bases 2,3,5,7


def test_kernel_eval_mod_vector():
    import numpy as np

    p = next(K.primes_31())
    a = [3, -1, 0, 7, 2]
    xs = np.array([0, 1, 5, 12345, p - 1], dtype=np.int64)
    got = K.eval_many_mod(a, xs, p)
    for x, g in zip(xs, got):
        assert int(g) == K.eval_mod(a, int(x), p)


# ---------------------------------------------------------------------------
# QPoly


def test_qpoly_canonical_form():
    assert QPoly((2, 4), 6).ints == (1, 2)
    assert QPoly((2, 4), 6).den == 3
    assert QPoly((1, 2, 0)).ints == (1, 2)
    assert QPoly((1,), -2) == QPoly((-1,), 2)
    assert QPoly((0, 0)).is_zero()
    assert QPoly((0, 0)).den == 1
    with pytest.raises(DivisionByZero):
        QPoly((1,), 0)


def test_qpoly_from_fractions():
    p = QPoly.from_fractions([Fraction(1, 2), Fraction(1, 3)])
    assert p.ints == (3, 2) and p.den == 6
    assert p.coeffs == (Fraction(1, 2), Fraction(1, 3))
    assert QPoly.from_fractions([]).is_zero()


def test_qpoly_arith():
    qm1 = QPoly((-1, 1))
    qp1 = QPoly((1, 1))
    assert qm1 * qp1 == QPoly((-1, 0, 1))
    assert qp1 ** 2 == QPoly((1, 2, 1))
    assert qp1 - qp1 == QPoly()
    assert (qm1 + 1) == QPoly((0, 1))
    assert 2 * qp1 == QPoly((2, 2))
    assert qp1 ** 0 == QPoly((1,))


def test_qpoly_degree_ord():
    assert QPoly((0, 0, 3)).degree == 2
    assert QPoly((0, 0, 3)).ord == 2
    assert QPoly().degree is NEG_INF
    assert QPoly().ord is POS_INF
    assert QPoly((5,)).degree == 0


def test_qpoly_eval():
    p = QPoly((1, 0, 1), 2)  # (1 + q^2)/2
    assert p.eval(Fraction(3)) == Fraction(5)
    assert p.eval(2.0) == pytest.approx(2.5)
    assert QPoly().eval(Fraction(7)) == 0


# ---------------------------------------------------------------------------
# QLaurent


def test_qlaurent_normalizes_shift():
    l = QLaurent(QPoly((0, 1, 1)), -3)
    assert l.shift == -2
    assert l.body == QPoly((1, 1))
    assert l.deg_q == -1
    assert l.ord_q == -2
    z = QLaurent(QPoly(), 5)
    assert z.is_zero() and z.shift == 0
    assert z.deg_q is NEG_INF and z.ord_q is POS_INF


def test_qlaurent_arith():
    qinv = QLaurent.q_power(-1)
    qq = QLaurent.q_power(1)
    s = qinv + qq
    assert s.shift == -1 and s.body == QPoly((1, 0, 1))
    assert (qq * qinv) == QLaurent.q_power(0)
    assert (qinv ** 3).shift == -3
    assert (s - s).is_zero()
    assert qq.coeff(1) == 1 and qq.coeff(0) == 0


def test_qlaurent_to_ratq():
    l = QLaurent(QPoly((1, 1)), -2)
    r = l.to_ratq()
    assert r.num == QPoly((1, 1))
    assert r.den == QPoly((0, 0, 1))
    assert QLaurent(QPoly((1, 1)), 2).to_ratq() == RatQ(QPoly((0, 0, 1, 1)))


def test_qlaurent_text():
    assert QLaurent(QPoly((1, -1, 1)), -1).to_text() == "q-1+q^-1"
    assert QLaurent(QPoly((1,), 2), -2).to_text() == "1/2*q^-2"
    assert QLaurent(QPoly()).to_text() == "0"


# ---------------------------------------------------------------------------
# RatQ


def test_ratq_reduces():
    r = RatQ(QPoly((-1, 0, 1)), QPoly((-1, 1)))
    assert r == RatQ(QPoly((1, 1)))
    assert r.den == QPoly((1,))


def test_ratq_den_primitive_positive_leading():
    r = RatQ(QPoly((1,)), QPoly((-2, 0, 4)))
    assert r.num == QPoly((1,), 2)
    assert r.den == QPoly((-1, 0, 2))
    r2 = RatQ(QPoly((1,)), QPoly((1, -1)))
    assert r2.den == QPoly((-1, 1))
    assert r2.num == QPoly((-1,))
    # rational scalar content lives in the numerator
    r3 = RatQ(QPoly((1, 2)), 3)
    assert r3.num == QPoly((1, 2), 3) and r3.den == QPoly((1,))


def test_ratq_zero_is_0_over_1():
    z = RatQ(QPoly(), QPoly((5, 3)))
    assert z.is_zero()
    assert z.den == QPoly((1,))
    assert z == RatQ(0)


def test_ratq_valuations():
    r = RatQ(QPoly((-1, 0, 1)), QPoly((0, 2, 0, 1)))  # (q^2-1)/(q^3+2q)
    assert r.deg_q == -1
    assert r.ord_q == -1
    assert deg_q(r) == -1 and ord_q(r) == -1
    assert deg_q(RatQ(0)) is NEG_INF
    assert ord_q(RatQ(0)) is POS_INF
    assert deg_q(Q ** 3) == 3 and ord_q(Q ** 3) == 3
    assert deg_q(5) == 0 and ord_q(Fraction(1, 3)) == 0


def test_valuations_additive_on_products():
    a = RatQ(QPoly((-1, 0, 1)), QPoly((0, 2)))
    b = RatQ(QPoly((0, 0, 3)), QPoly((1, 1)))
    assert deg_q(a * b) == deg_q(a) + deg_q(b)
    assert ord_q(a * b) == ord_q(a) + ord_q(b)


def test_ratq_arith():
    one = RatQ(1)
    qm1 = RatQ(QPoly((-1, 1)))
    qp1 = RatQ(QPoly((1, 1)))
    assert one / qm1 + one / qp1 == RatQ(QPoly((0, 2)), QPoly((-1, 0, 1)))
    assert (qm1 / qp1) * (qp1 / qm1) == one
    assert Q / Q == one
    assert (Q ** 2) / Q == Q
    assert Q ** -2 == RatQ(QPoly((1,)), QPoly((0, 0, 1)))
    assert qm1 - qm1 == RatQ(0)
    assert 1 - Q == -(Q - 1)
    assert (one + Q) ** 2 == RatQ(QPoly((1, 2, 1)))


def test_ratq_division_by_zero():
    with pytest.raises(DivisionByZero):
        RatQ(1) / RatQ(0)
    with pytest.raises(DivisionByZero):
        RatQ(QPoly((1,)), QPoly())
    with pytest.raises(DivisionByZero):
        RatQ(0) ** -1


def test_ratq_shift_q():
    assert Q.shift_q(-2) == RatQ(QPoly((1,)), QPoly((0, 1)))
    assert Q.shift_q(2) == Q ** 3
    assert RatQ(1).shift_q(-1).ord_q == -1


def test_ratq_eval():
    r = RatQ(QPoly((-1, 0, 1)), QPoly((1, 1)))  # reduces to q - 1
    assert r.eval(Fraction(2)) == Fraction(1)
    with pytest.raises(ZeroDivisionError):
        RatQ(QPoly((1,)), QPoly((1, 1))).eval(Fraction(-1))


def test_ratq_text():
    assert RatQ(QPoly((-1, 0, 1)), QPoly((0, 2, 0, 1))).to_text() == "(q^2-1)/(q^3+2*q)"
    assert RatQ(Fraction(3, 4)).to_text() == "3/4"
    assert RatQ(QPoly((1, 2)), 3).to_text() == "(2*q+1)/3"
    assert RatQ(0).to_text() == "0"
    assert Q.to_text() == "q"
    assert (Q ** 2 - Q).to_text() == "q^2-q"
    assert (1 / Q).to_text() == "1/q"


def test_ratq_json():
    r = RatQ(QPoly((-1, 0, 1), 2))
    assert r.to_json() == {"num": [[0, "-1/2"], [2, "1/2"]], "den": [[0, "1"]]}


def test_ratq_hash_eq():
    a = RatQ(QPoly((-1, 0, 1)), QPoly((-1, 1)))
    b = RatQ(QPoly((1, 1)))
    assert a == b and hash(a) == hash(b)
    assert RatQ(2) == 2
    assert RatQ(2) != Q


# ---------------------------------------------------------------------------
# sentinels, norm, pochhammer


def test_sentinel_algebra():
    assert NEG_INF < 0 < POS_INF
    assert NEG_INF < POS_INF
    assert not NEG_INF < NEG_INF
    assert -NEG_INF is POS_INF
    assert -POS_INF is NEG_INF
    assert NEG_INF + 3 is NEG_INF
    assert 3 + POS_INF is POS_INF
    assert POS_INF - 7 is POS_INF
    with pytest.raises(ArithmeticError):
        POS_INF + NEG_INF
    assert max(NEG_INF, 5) == 5
    assert min(POS_INF, 5) == 5


def test_norm_exact_log_form():
    assert norm(Q, "at_q", 0.5) == 1
    assert norm(Q ** 2 * 3, "at_q", Fraction(1, 2)) == 2
    assert norm(Q ** 2 * 3, "at_q_inv", 0.5) == -2
    assert norm(RatQ(QPoly((1, 1)), QPoly((0, 0, 1))), "at_q", 0.9) == -2
    assert norm(RatQ(0), "at_q", 0.5) is POS_INF
    assert norm(RatQ(0), "at_q_inv", 0.5) is POS_INF
    with pytest.raises(ValueError):
        norm(Q, "at_q", 1.5)
    with pytest.raises(ValueError):
        norm(Q, "at_q", 0)
    with pytest.raises(ValueError):
        norm(Q, "somewhere", 0.5)


def test_pochhammer():
    one = QLaurent(QPoly((1,)))
    assert pochhammer(one, "q", 0) == one
    assert pochhammer(QLaurent.q_power(-1), "q", 2).is_zero()
    got = pochhammer(QLaurent.q_power(1), "q", 2)
    assert got == QLaurent(QPoly((1, -1, -1, 1)))  # (1-q)(1-q^2)
    assert pochhammer(QLaurent.q_power(1), "q_inv", 2).is_zero()
    got2 = pochhammer(QLaurent.q_power(2), "q_inv", 2)
    assert got2 == QLaurent(QPoly((1, -1, -1, 1)))  # (1-q^2)(1-q)
    with pytest.raises(ValueError):
        pochhammer(one, "q", -1)
    with pytest.raises(ValueError):
        pochhammer(one, "p", 1)
