from fractions import Fraction

import numpy as np
import pytest

from qdeq import _intpoly as K
from qdeq import _probes as P
from qdeq.ratfunc import Q, RatQ
from qdeq.series import TruncSeries
from qdeq.solver import check_solution, extend

from test_solver import geometric_step, painleve_like

MP = 2147483647  # 2**31 - 1, prime


def test_batch_inv():
    rng = np.random.default_rng(7)
    a = rng.integers(1, MP, size=300, dtype=np.int64)
    inv = P._batch_inv(a, MP)
    assert (a * inv % MP == 1).all()


def test_newton_interp_matches_eval():
    rng = np.random.default_rng(11)
    poly = rng.integers(0, MP, size=9, dtype=np.int64)
    xs = np.arange(2, 2 + 15, dtype=np.int64)
    ys = P._np_eval(poly, xs, MP)
    got = P._newton_interp(xs, ys, MP)
    assert len(got) <= 15
    assert (P._np_eval(got, xs, MP) == ys).all()
    # degree-8 data through 15 points comes back exactly
    assert list(got) == list(poly)


def test_rat_interp_recovers_planted():
    num = np.array([1, 0, 3], dtype=np.int64)
    den = np.array([5, 1], dtype=np.int64)  # monic
    xs = np.arange(2, 2 + 24, dtype=np.int64)
    ys = P._np_eval(num, xs, MP) * P._batch_inv(P._np_eval(den, xs, MP), MP) % MP
    got = P._rat_interp(xs, ys, MP)
    assert got is not None
    assert list(got[0]) == [1, 0, 3] and list(got[1]) == [5, 1]


def test_wang_lift():
    M = 2147483647 * 2147483629
    for frac in (Fraction(-3, 7), Fraction(22, 1), Fraction(0),
                 Fraction(10**6, 10**6 + 1)):
        c = frac.numerator * pow(frac.denominator, -1, M) % M
        assert P._wang(c, M) == frac
    # a numerator past the bound cannot lift
    assert P._wang(Fraction(2**40, 3).numerator * pow(3, -1, M) % M, M) is None


def test_probe_domain_roundtrip():
    rng = np.random.default_rng(3)
    dom = P.ProbeDomain(MP, P._lane_points(MP, 64, rng))
    val = (Q ** 2 - 1) / (Q ** 3 + 2 * Q)
    lanes = dom.from_ratq(val)
    x = dom.q
    num = (x * x - 1) % MP
    den = (x * x % MP * x + 2 * x) % MP
    assert (lanes * den % MP == num % MP)[dom.alive].all()


def test_probe_matches_exact_linear():
    rep = extend(geometric_step(), [1], 20, engine="probe")
    assert rep.resolved_through == 20
    for h, c in enumerate(rep.solution.coeffs):
        assert c == RatQ(1).shift_q(h * (h - 1) // 2)


def test_probe_matches_exact_nonlinear():
    F = painleve_like()
    a = RatQ(1).shift_q(1) / (RatQ(1) + RatQ(1).shift_q(1))
    fast = extend(F, [RatQ(1), a], 14, engine="probe")
    slow = extend(F, [RatQ(1), a], 14, engine="exact")
    assert fast.solution.coeffs == slow.solution.coeffs
    assert [(e["h"], e["kind"]) for e in fast.events] == \
        [(e["h"], e["kind"]) for e in slow.events]


def test_probe_deterministic():
    F = painleve_like()
    a = RatQ(1).shift_q(1) / (RatQ(1) + RatQ(1).shift_q(1))
    r1 = extend(F, [RatQ(1), a], 13)
    r2 = extend(F, [RatQ(1), a], 13)
    assert r1.solution.coeffs == r2.solution.coeffs


def test_probe_check_solution():
    F = painleve_like()
    a = RatQ(1).shift_q(1) / (RatQ(1) + RatQ(1).shift_q(1))
    rep = extend(F, [RatQ(1), a], 16)
    assert check_solution(F, rep.solution, mode="probe") == 16
    bad = list(rep.solution.coeffs)
    bad[9] = bad[9] + RatQ(1)
    # the linearized operator starts at x^1, so the damage surfaces at order 10
    assert check_solution(F, TruncSeries(bad, 16), mode="probe") == 9
