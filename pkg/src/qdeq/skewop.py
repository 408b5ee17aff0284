"""Linear q-difference operators in sigma_q-normal form, and their
Newton polygons.

A SkewOp is a finite sum  sum_i  a_i(x) * sigma^i  with the coefficient
written on the left.  The coefficients are either all exact x-polynomials
(XPoly, "exact" flavor) or all truncated series (TruncSeries, "series"
flavor, the shape produced by linearizing a nonlinear equation along an
approximate solution).

Composition uses the commutation rule  sigma^i o a(x) = a(q^i x) o sigma^i,
which is what op_mul implements.

In series flavor, a coefficient whose stored part is identically zero is
not discarded: the truncated data cannot distinguish a structural zero
from a series of high order, so such indices are kept and reported as
uncertain by the polygon routines instead of being silently dropped.
"""

from fractions import Fraction

from .errors import EmptyOperator, UncertainOrder
from .ratfunc import RatQ
from .series import ABOVE_TRUNCATION, TruncSeries, XPoly


def _fmt_coeff_poly(coeffs, var):
    """Polynomial over RatQ -> text, ascending powers of var."""
    parts = []
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        t = c.to_text()
        if k == 0:
            parts.append(t)
            continue
        vs = var if k == 1 else f"{var}^{k}"
        if c.is_one():
            parts.append(vs)
        else:
            if "+" in t or "-" in t[1:] or t.startswith("-") or "/" in t:
                t = f"({t})"
            parts.append(f"{t}*{vs}")
    return " + ".join(parts) if parts else "0"


class SkewOp:
    """Finite sum of a_i(x) * sigma^i terms, all of one coefficient flavor."""

    __slots__ = ("terms", "flavor")

    def __init__(self, terms):
        exact = {}
        series = {}
        for i, a in terms.items():
            i = int(i)
            if isinstance(a, XPoly):
                if not a.is_zero():
                    exact[i] = a
            elif isinstance(a, TruncSeries):
                series[i] = a
            else:
                raise TypeError(
                    f"operator coefficient must be XPoly or TruncSeries, "
                    f"not {type(a).__name__}")
        if exact and series:
            raise ValueError("cannot mix exact and series coefficients")
        if series:
            self.terms = series
            self.flavor = "series"
        else:
            self.terms = exact
            self.flavor = "exact"

    @classmethod
    def single(cls, i, coeff):
        return cls({i: coeff})

    @classmethod
    def identity(cls):
        return cls({0: XPoly([RatQ(1)])})

    def is_zero(self):
        return not self.terms

    @property
    def support_min(self):
        if not self.terms:
            raise EmptyOperator("zero operator has no support")
        return min(self.terms)

    @property
    def support_max(self):
        if not self.terms:
            raise EmptyOperator("zero operator has no support")
        return max(self.terms)

    def __add__(self, other):
        if not isinstance(other, SkewOp):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.flavor != other.flavor:
            raise ValueError("cannot mix exact and series operators")
        out = dict(self.terms)
        for i, a in other.terms.items():
            out[i] = out[i] + a if i in out else a
        return SkewOp(out)

    def __neg__(self):
        return SkewOp({i: -a for i, a in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SkewOp):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SkewOp):
            return NotImplemented
        return op_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SkewOp):
            return NotImplemented
        return self.flavor == other.flavor and self.terms == other.terms

    def __hash__(self):
        return hash((self.flavor, tuple(sorted(self.terms.items()))))

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms):
            a = self.terms[i]
            t = a.to_text()
            if "+" in t or "-" in t[1:] or t.startswith("-") or "/" in t or "*" in t:
                t = f"({t})"
            parts.append(f"{t}*S[{i}]")
        return " + ".join(parts)

    def to_json(self):
        if self.flavor == "exact":
            terms = {str(i): [c.to_text() for c in a.coeffs]
                     for i, a in sorted(self.terms.items())}
        else:
            terms = {str(i): a.to_json() for i, a in sorted(self.terms.items())}
        return {"flavor": self.flavor, "terms": terms}

    def __repr__(self):
        return f"SkewOp({self.to_text()})"


def op_mul(A, B):
    """Compose operators: (A o B), normalizing with sigma^i o b = b(q^i x) o sigma^i."""
    if not isinstance(A, SkewOp) or not isinstance(B, SkewOp):
        raise TypeError("op_mul needs two SkewOp operands")
    if A.is_zero() or B.is_zero():
        return SkewOp({})
    if A.flavor != B.flavor:
        raise ValueError("cannot mix exact and series operators")
    out = {}
    for i, a in A.terms.items():
        for j, b in B.terms.items():
            c = a * b.sigma(i)
            k = i + j
            out[k] = out[k] + c if k in out else c
    return SkewOp(out)


def apply(A, y):
    """A acting on a series:  sum_i a_i(x) * y(q^i x), truncation-honest."""
    if not isinstance(y, TruncSeries):
        raise TypeError("apply expects a TruncSeries argument")
    out = TruncSeries.zero(y.trunc)
    for i, a in A.terms.items():
        sy = y.sigma(i)
        if A.flavor == "exact":
            term = a.to_series(sy.trunc) * sy
        else:
            term = a * sy
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Newton polygon


class NewtonPolygon:
    """Lower convex hull of the points (i, ord_x a_i).

    vertices   strictly convex corner points, left to right;
    sides      (slope, horizontal_length) pairs, slopes strictly increasing
               (vertical jumps at the ends are not stored);
    uncertain  indices whose coefficient vanishes through its truncation,
               excluded from the hull but reported so callers know the
               picture could change beyond the truncation.

    uncertain_bounds maps each uncertain index to the lowest order its
    hidden coefficient could still have (one past the truncation); growth
    prediction uses it to decide whether the hidden point matters.
    """

    __slots__ = ("vertices", "sides", "support_min", "support_max", "uncertain",
                 "uncertain_bounds")

    def __init__(self, vertices, sides, support_min, support_max, uncertain,
                 uncertain_bounds=None):
        self.vertices = list(vertices)
        self.sides = list(sides)
        self.support_min = support_min
        self.support_max = support_max
        self.uncertain = list(uncertain)
        self.uncertain_bounds = dict(uncertain_bounds or {})

    @property
    def slopes(self):
        return [s for s, _ in self.sides]

    def to_json(self):
        return {
            "vertices": [[i, str(Fraction(h))] for i, h in self.vertices],
            "slopes": [str(s) for s in self.slopes],
            "uncertain": list(self.uncertain),
        }

    def to_text(self):
        vs = ", ".join(f"({i}, {h})" for i, h in self.vertices)
        if not self.sides:
            return f"vertices: {vs}; no finite sides"
        ss = ", ".join(f"slope {s} (length {l})" for s, l in self.sides)
        out = f"vertices: {vs}; sides: {ss}"
        if self.uncertain:
            out += f"; uncertain indices: {sorted(self.uncertain)}"
        return out

    def __repr__(self):
        return f"NewtonPolygon({self.to_text()})"


def _points(op):
    """(certain points, uncertain indices) of the valuation diagram."""
    if op.is_zero():
        raise EmptyOperator("cannot take the Newton polygon of the zero operator")
    pts = []
    uncertain = []
    for i in sorted(op.terms):
        o = op.terms[i].ord_x
        if o is ABOVE_TRUNCATION:
            uncertain.append(i)
        else:
            pts.append((i, o))
    if not pts:
        raise EmptyOperator(
            "every coefficient vanishes through its truncation; "
            "nothing certain to build a polygon from")
    return pts, uncertain


def _lower_hull(pts):
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(op):
    pts, uncertain = _points(op)
    hull = _lower_hull(pts)
    sides = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        sides.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    bounds = {i: op.terms[i].trunc + 1 for i in uncertain}
    return NewtonPolygon(hull, sides, pts[0][0], pts[-1][0], uncertain, bounds)


def lowest_vertex(op):
    """(n', l): l the least coefficient order, n' the greatest index
    attaining it.  Raises UncertainOrder when a truncation-masked
    coefficient could change the answer."""
    pts, uncertain = _points(op)
    l = min(h for _, h in pts)
    n1 = max(i for i, h in pts if h == l)
    for i in uncertain:
        if op.terms[i].trunc + 1 <= l:
            raise UncertainOrder(
                f"coefficient of sigma^{i} vanishes through truncation "
                f"{op.terms[i].trunc}, not enough to certify orders below {l}")
    return n1, l


# ---------------------------------------------------------------------------
# characteristic-style polynomials in T over Q(q)


class ResonancePoly:
    """Polynomial in T with coefficients in Q(q), trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [c if isinstance(c, RatQ) else RatQ.from_value(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def at_qpow(self, h):
        """Exact value at T = q**h."""
        out = RatQ(0)
        for j, c in enumerate(self.coeffs):
            out = out + c.shift_q(j * h)
        return out

    def eval_ratq(self, v):
        out = RatQ(0)
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    def eval_numeric(self, qv, tv):
        """Value at q = qv, T = tv (floats/complex)."""
        out = 0j
        for c in reversed(self.coeffs):
            out = out * tv + c.eval(qv)
        return out

    def coeffs_at(self, qv):
        """Numeric coefficient list at q = qv, ascending in T."""
        return [c.eval(qv) for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, ResonancePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_text(self):
        return _fmt_coeff_poly(self.coeffs, "T")

    def __repr__(self):
        return f"ResonancePoly({self.to_text()})"


def resonance_poly(op):
    """The polynomial L(T) whose values L(q^h) drive the order-h step.

    Built from the lowest vertex (n', l): shift the support to start at 0
    by composing with sigma^(-m0) on the left (which also substitutes
    q^(-m0) x into every coefficient), then collect the x^l coefficient
    of each term with index up to n'.
    """
    n1, l = lowest_vertex(op)
    m0 = min(i for i in op.terms
             if not (op.flavor == "series" and op.terms[i].is_zero_through_trunc()))
    coeffs = []
    for i in range(m0, n1 + 1):
        a = op.terms.get(i)
        if a is None:
            coeffs.append(RatQ(0))
            continue
        if op.flavor == "series" and a.is_zero_through_trunc():
            # lowest_vertex certified trunc >= l here, so x^l is known zero
            coeffs.append(RatQ(0))
            continue
        c = a.coeff(l) if l <= _top_index(a) else RatQ(0)
        coeffs.append(c.shift_q(-m0 * l))
    return ResonancePoly(coeffs)


def _top_index(a):
    if isinstance(a, TruncSeries):
        return a.trunc
    return len(a.coeffs) - 1


def bb_polynomial(op):
    """(T - 1) times the per-coefficient lowest-order polynomial.

    Exact flavor only: each a_i contributes its own lowest coefficient
    a_{i, j_i} at exponent i, after the same support normalization as
    resonance_poly; the result has degree span + 1.
    """
    if op.flavor != "exact":
        raise ValueError("bb_polynomial needs exact polynomial coefficients")
    if op.is_zero():
        raise EmptyOperator("cannot form the boundary polynomial of zero")
    m0 = op.support_min
    span = op.support_max - m0
    body = [RatQ(0)] * (span + 1)
    for i, a in op.terms.items():
        j = a.ord_x
        body[i - m0] = a.coeff(j).shift_q(-m0 * j)
    out = [RatQ(0)] * (span + 2)
    for k, c in enumerate(body):
        out[k] = out[k] - c
        out[k + 1] = out[k + 1] + c
    return ResonancePoly(out)
