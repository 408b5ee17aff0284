"""Skew operators: composition normal form, Newton polygons, T-polynomials."""

from fractions import Fraction

import pytest

from qdeq.errors import EmptyOperator, UncertainOrder
from qdeq.ratfunc import Q, RatQ
from qdeq.series import TruncSeries, XPoly
from qdeq.skewop import (
    NewtonPolygon,
    ResonancePoly,
    SkewOp,
    apply,
    bb_polynomial,
    lowest_vertex,
    newton_polygon,
    op_mul,
    resonance_poly,
)


def xp(*vals):
    return XPoly([RatQ.from_value(v) if not isinstance(v, RatQ) else v for v in vals])


ONE = xp(1)
X = xp(0, 1)


def test_commutation_rule():
    # sigma o x = q*x o sigma
    A = SkewOp({1: ONE})
    B = SkewOp({0: X})
    got = op_mul(A, B)
    assert got == SkewOp({1: XPoly([RatQ(0), Q])})
    # and in the other order nothing moves
    assert op_mul(B, A) == SkewOp({1: X})


def test_op_mul_cross_terms():
    # (sigma - 1)(sigma + 1) = sigma^2 - 1, with exact zero middle dropped
    A = SkewOp({1: ONE, 0: -ONE})
    B = SkewOp({1: ONE, 0: ONE})
    got = A * B
    assert got == SkewOp({2: ONE, 0: -ONE})
    assert 1 not in got.terms


def test_op_add_neg():
    A = SkewOp({1: X, 0: ONE})
    assert (A - A).is_zero()
    assert (A + SkewOp({})) == A
    with pytest.raises(EmptyOperator):
        SkewOp({}).support_min


def test_apply_exact():
    # x*S[1] - 1 on y = 1 + x + x^2
    A = SkewOp({1: X, 0: -ONE})
    y = TruncSeries([RatQ(1), RatQ(1), RatQ(1)])
    got = apply(A, y)
    assert got.trunc == 2
    assert got.coeffs == (RatQ(-1), RatQ(0), Q - 1)


def test_apply_series_flavor_min_trunc():
    a = TruncSeries([RatQ(1)], trunc=1)
    A = SkewOp({0: a})
    y = TruncSeries([RatQ(2), RatQ(3), RatQ(4)])
    got = apply(A, y)
    assert got.trunc == 1
    assert got.coeffs == (RatQ(2), RatQ(3))


def test_flavor_mixing_rejected():
    with pytest.raises(ValueError):
        SkewOp({0: ONE, 1: TruncSeries.zero(2)})
    with pytest.raises(ValueError):
        op_mul(SkewOp({0: ONE}), SkewOp({0: TruncSeries.zero(2)}))


def test_newton_polygon_vertices_and_slopes():
    A = SkewOp({0: X, 1: ONE, 2: xp(0, 0, 1)})
    P = newton_polygon(A)
    assert P.vertices == [(0, 1), (1, 0), (2, 2)]
    assert P.sides == [(Fraction(-1), 1), (Fraction(2), 1)]
    assert P.slopes == [Fraction(-1), Fraction(2)]
    assert (P.support_min, P.support_max) == (0, 2)
    assert P.uncertain == []


def test_newton_polygon_collinear_points_are_not_vertices():
    A = SkewOp({0: ONE, 1: X, 2: xp(0, 0, 1)})
    P = newton_polygon(A)
    assert P.vertices == [(0, 0), (2, 2)]
    assert P.sides == [(Fraction(1), 2)]


def test_newton_polygon_single_point():
    P = newton_polygon(SkewOp({3: X}))
    assert P.vertices == [(3, 1)]
    assert P.sides == []
    assert P.slopes == []


def test_newton_polygon_empty():
    with pytest.raises(EmptyOperator):
        newton_polygon(SkewOp({}))
    allz = SkewOp({0: TruncSeries.zero(3), 1: TruncSeries.zero(3)})
    with pytest.raises(EmptyOperator):
        newton_polygon(allz)


def test_newton_polygon_uncertain_indices():
    A = SkewOp({0: TruncSeries([RatQ(1)], trunc=3), 1: TruncSeries.zero(3)})
    P = newton_polygon(A)
    assert P.vertices == [(0, 0)]
    assert P.uncertain == [1]
    assert P.to_json() == {"vertices": [[0, "0"]], "slopes": [], "uncertain": [1]}


def test_polygon_json():
    A = SkewOp({0: X, 1: ONE, 2: xp(0, 0, 1)})
    assert newton_polygon(A).to_json() == {
        "vertices": [[0, "1"], [1, "0"], [2, "2"]],
        "slopes": ["-1", "2"],
        "uncertain": [],
    }


def test_lowest_vertex():
    A = SkewOp({0: xp(0, 0, 1), 2: xp(0, 3), 3: X})
    assert lowest_vertex(A) == (3, 1)


def test_lowest_vertex_uncertainty():
    # masked coefficient with trunc 1 cannot certify orders below 2
    A = SkewOp({0: TruncSeries([RatQ(0), RatQ(0), RatQ(1)], trunc=2),
                1: TruncSeries.zero(1)})
    with pytest.raises(UncertainOrder):
        lowest_vertex(A)
    # with a deep enough truncation the same shape is fine
    B = SkewOp({0: TruncSeries([RatQ(0), RatQ(0), RatQ(1)], trunc=2),
                1: TruncSeries.zero(5)})
    assert lowest_vertex(B) == (0, 2)


def test_resonance_poly_support_shift():
    # qx*S[-1] + (1+q)x*S[0] + x*S[1]: after the sigma^{+1} normalization
    # L(T) = q^2 + q(1+q)T + qT^2 = q(T+1)(T+q)
    A = SkewOp({-1: XPoly([RatQ(0), Q]),
                0: XPoly([RatQ(0), 1 + Q]),
                1: X})
    L = resonance_poly(A)
    assert L.coeffs == (Q ** 2, Q + Q ** 2, Q)
    for h in range(1, 11):
        assert not L.at_qpow(h).is_zero()


def test_resonance_poly_eval():
    L = ResonancePoly([RatQ(-1), RatQ(0), RatQ(1)])  # T^2 - 1
    assert L.at_qpow(0).is_zero()
    assert L.at_qpow(3) == Q ** 6 - 1
    assert L.eval_ratq(RatQ(2)) == RatQ(3)
    assert L.degree == 2
    assert abs(L.eval_numeric(0.5 + 0j, 1.0 + 0j)) < 1e-15


def test_resonance_poly_trims_lead():
    assert ResonancePoly([RatQ(1), RatQ(0)]).degree == 0
    assert ResonancePoly([]).degree == -1


def test_bb_polynomial():
    # x*S[1] - 1: body -1 + T, so (T-1)*(T-1) = 1 - 2T + T^2
    A = SkewOp({1: X, 0: -ONE})
    P = bb_polynomial(A)
    assert P.coeffs == (RatQ(1), RatQ(-2), RatQ(1))
    with pytest.raises(ValueError):
        bb_polynomial(SkewOp({0: TruncSeries([RatQ(1)], 1)}))
    with pytest.raises(EmptyOperator):
        bb_polynomial(SkewOp({}))


def test_bb_polynomial_support_shift():
    # lowest coefficients scale by q^{-m0*j_i} under the normalization:
    # a_{-1} = x has j = 1 and becomes q; a_0 = 1 has j = 0 and stays 1;
    # body = q + T, so (T-1)(q + T) = -q + (q-1)T + T^2
    A = SkewOp({-1: X, 0: ONE})
    P = bb_polynomial(A)
    assert P.coeffs == (-Q, Q - 1, RatQ(1))


def test_operator_text():
    A = SkewOp({1: X, 0: -ONE})
    assert A.to_text() == "(-1)*S[0] + x*S[1]"
    assert SkewOp({}).to_text() == "0"
