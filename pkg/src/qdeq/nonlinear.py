"""Polynomial q-difference equations in a solution and its q-shifts.

A QdeqPoly is a polynomial over Q(q) in the symbols

    x,  w_m, ..., w_n        (the window [m, n] of shift indices),

where w_i stands for y(q^i x).  Monomials are stored sparsely as

    (e_x, ((i_1, k_1), ..., (i_r, k_r)))  ->  coefficient in Q(q)

with the shift exponents sorted by index and all k_j >= 1; zero
coefficients are never stored.  The window may be wider than the set of
indices actually used, but never narrower.

eval_at substitutes a truncated series phi for y (so w_i becomes
phi(q^i x)) and returns a series with the same truncation as phi.
linearize produces the series-flavor SkewOp of partial derivatives
along phi; a partial that is structurally zero (the symbol w_i never
occurs) contributes no term, while one that merely evaluates to zero
through the truncation is kept and lands in the polygon's uncertain
set.
"""

import enum

from .errors import IndexOutOfWindow, NegativeXPower
from .ratfunc import RatQ
from .series import TruncSeries
from .skewop import SkewOp


class Vanishing(enum.Enum):
    """Three-valued answer for 'does this derivative vanish along phi?'."""

    YES_STRUCTURAL = "yes_structural"
    NO = "no"
    UNKNOWN_THROUGH_TRUNC = "unknown_through_trunc"


def _ratq(v):
    return v if isinstance(v, RatQ) else RatQ.from_value(v)


def _canon_exps(exps):
    if isinstance(exps, dict):
        items = exps.items()
    else:
        items = exps
    out = {}
    for i, k in items:
        i, k = int(i), int(k)
        if k < 0:
            raise ValueError("shift exponents must be nonnegative")
        if k:
            out[i] = out.get(i, 0) + k
    return tuple(sorted(out.items()))


class QdeqPoly:
    """Polynomial in x and the shifted unknowns w_m .. w_n over Q(q)."""

    __slots__ = ("window", "monomials")

    def __init__(self, window, monomials):
        m, n = int(window[0]), int(window[1])
        if m > n:
            raise ValueError(f"window [{m}, {n}] is empty")
        store = {}
        for (e, exps), c in monomials.items():
            e = int(e)
            if e < 0:
                raise NegativeXPower("monomials cannot carry negative x-powers")
            c = _ratq(c)
            if c.is_zero():
                continue
            exps = _canon_exps(exps)
            for i, _ in exps:
                if not m <= i <= n:
                    raise IndexOutOfWindow(
                        f"shift index {i} outside window [{m}, {n}]")
            key = (e, exps)
            if key in store:
                s = store[key] + c
                if s.is_zero():
                    del store[key]
                else:
                    store[key] = s
            else:
                store[key] = c
        self.window = (m, n)
        self.monomials = store

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, v):
        return cls((0, 0), {(0, ()): _ratq(v)})

    @classmethod
    def x(cls, e=1):
        return cls((0, 0), {(e, ()): RatQ(1)})

    @classmethod
    def w(cls, i, k=1):
        return cls((min(i, 0), max(i, 0)), {(0, ((i, k),)): RatQ(1)})

    @classmethod
    def from_operator(cls, op):
        """View an exact linear operator sum a_i(x) S^i as the equation
        sum a_i(x) w_i = 0, so linear problems run through the nonlinear
        solver unchanged."""
        if op.flavor != "exact":
            raise ValueError("only exact-flavor operators define an equation")
        mons = {}
        lo, hi = 0, 0
        for i, a in op.terms.items():
            lo, hi = min(lo, i), max(hi, i)
            for e, c in enumerate(a.coeffs):
                if not c.is_zero():
                    mons[(e, ((i, 1),))] = c
        return cls((lo, hi), mons)

    # -- ring structure ----------------------------------------------------

    def is_zero(self):
        return not self.monomials

    def _merged_window(self, other):
        return (min(self.window[0], other.window[0]),
                max(self.window[1], other.window[1]))

    def __add__(self, other):
        if isinstance(other, (int, RatQ)):
            other = QdeqPoly.const(other)
        if not isinstance(other, QdeqPoly):
            return NotImplemented
        out = dict(self.monomials)
        for key, c in other.monomials.items():
            out[key] = out[key] + c if key in out else c
        return QdeqPoly(self._merged_window(other), out)

    __radd__ = __add__

    def __neg__(self):
        return QdeqPoly(self.window, {k: -c for k, c in self.monomials.items()})

    def __sub__(self, other):
        if isinstance(other, (int, RatQ)):
            other = QdeqPoly.const(other)
        if not isinstance(other, QdeqPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, RatQ)):
            other = QdeqPoly.const(other)
        if not isinstance(other, QdeqPoly):
            return NotImplemented
        out = {}
        for (e1, x1), c1 in self.monomials.items():
            for (e2, x2), c2 in other.monomials.items():
                d = dict(x1)
                for i, k in x2:
                    d[i] = d.get(i, 0) + k
                key = (e1 + e2, tuple(sorted(d.items())))
                c = c1 * c2
                out[key] = out[key] + c if key in out else c
        return QdeqPoly(self._merged_window(other), out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a QdeqPoly")
        out = QdeqPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, QdeqPoly):
            return NotImplemented
        return self.window == other.window and self.monomials == other.monomials

    def __hash__(self):
        return hash((self.window, frozenset(self.monomials.items())))

    def used_indices(self):
        out = set()
        for (_, exps) in self.monomials:
            for i, _ in exps:
                out.add(i)
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self):
        mons = []
        for (e, exps), c in sorted(self.monomials.items()):
            mons.append({"x": e,
                         "w": {str(i): k for i, k in exps},
                         "coeff": c.to_text()})
        return {"window": list(self.window), "monomials": mons}

    @classmethod
    def from_json(cls, obj):
        from .dsl import parse_ratq
        mons = {}
        for m in obj["monomials"]:
            key = (m["x"], tuple((int(i), k) for i, k in m["w"].items()))
            mons[key] = mons.get(key, RatQ(0)) + parse_ratq(m["coeff"])
        return cls(tuple(obj["window"]), mons)

    def to_text(self):
        if not self.monomials:
            return "0"
        parts = []
        for (e, exps), c in sorted(self.monomials.items()):
            factors = []
            if e:
                factors.append("x" if e == 1 else f"x^{e}")
            for i, k in exps:
                factors.append(f"y[{i}]" if k == 1 else f"y[{i}]^{k}")
            t = c.to_text()
            if factors:
                if not c.is_one():
                    if "+" in t or "-" in t[1:] or t.startswith("-") or "/" in t:
                        t = f"({t})"
                    factors.insert(0, t)
            else:
                if "+" in t or "-" in t[1:] or t.startswith("-") or "/" in t:
                    t = f"({t})"
                factors.append(t)
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"QdeqPoly({self.to_text()})"


# ---------------------------------------------------------------------------
# evaluation and linearization along a series


class _Evaluator:
    """Substitution engine for one base series.

    Caches sigma-shifts, powers, and whole monomial products so that
    evaluating several polynomials along the same phi (as linearize does
    with every partial) never recomputes a product.
    """

    def __init__(self, phi):
        if not isinstance(phi, TruncSeries):
            raise TypeError("eval_at expects a TruncSeries")
        self.phi = phi
        self.powers = {}
        self.products = {}

    def _power(self, i, k):
        got = self.powers.get((i, k))
        if got is None:
            got = self._power(i, k - 1) * self._power(i, 1) if k > 1 \
                else self.phi.sigma(i)
            self.powers[(i, k)] = got
        return got

    def _product(self, exps):
        got = self.products.get(exps)
        if got is None:
            if len(exps) == 1:
                got = self._power(*exps[0])
            else:
                got = self._product(exps[:-1]) * self._power(*exps[-1])
            self.products[exps] = got
        return got

    def eval(self, F):
        N = self.phi.trunc
        acc = TruncSeries.zero(N)
        for (e, exps), c in F.monomials.items():
            if e > N:
                continue
            if exps:
                term = self._product(exps) * c
            else:
                term = TruncSeries.constant(c, N)
            if e:
                term = term.shift_x(e).truncate(N)
            acc = acc + term
        return acc


def eval_at(F, phi):
    """Substitute w_i -> phi(q^i x); the result keeps phi's truncation."""
    return _Evaluator(phi).eval(F)


def partial(F, i):
    """Formal partial derivative with respect to w_i (window preserved)."""
    m, n = F.window
    if not m <= i <= n:
        raise IndexOutOfWindow(f"shift index {i} outside window [{m}, {n}]")
    out = {}
    for (e, exps), c in F.monomials.items():
        d = dict(exps)
        k = d.get(i, 0)
        if not k:
            continue
        if k == 1:
            del d[i]
        else:
            d[i] = k - 1
        key = (e, tuple(sorted(d.items())))
        v = c * k
        out[key] = out[key] + v if key in out else v
    return QdeqPoly((m, n), out)


def linearize(F, phi):
    """Series-flavor operator of partials along phi:  sum_i (dF/dw_i)(phi) sigma^i.

    Indices whose partial is structurally zero are omitted; partials that
    merely evaluate to zero through the truncation stay, flagged later by
    the polygon as uncertain.
    """
    m, n = F.window
    ev = _Evaluator(phi)  # one product cache across all the partials
    terms = {}
    for i in range(m, n + 1):
        P = partial(F, i)
        if P.is_zero():
            continue
        terms[i] = ev.eval(P)
    return SkewOp(terms)


def derivative_vanishes(F, i, phi):
    """Does dF/dw_i vanish along phi?  Never upgrades a truncated zero to
    a structural claim."""
    P = partial(F, i)
    if P.is_zero():
        return Vanishing.YES_STRUCTURAL
    if eval_at(P, phi).is_zero_through_trunc():
        return Vanishing.UNKNOWN_THROUGH_TRUNC
    return Vanishing.NO
