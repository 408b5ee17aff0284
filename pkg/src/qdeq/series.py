"""Power series in x over Q(q), truncated, plus exact x-polynomials.

TruncSeries stores the coefficients c_0 .. c_N of a formal series
together with its truncation order N.  Everything is dense and eager;
arithmetic propagates the minimum truncation of the operands, because a
sum or product is only trustworthy as far as both inputs are.

ord_x on a TruncSeries is honest about what a truncated object can
know: if every stored coefficient vanishes it returns the
ABOVE_TRUNCATION sentinel ("the order is at least N+1"), never 0 and
never a made-up number.

XPoly is the exact companion: a genuine polynomial in x over Q(q), with
no truncation, used for operator coefficients that are known exactly.
"""

from .ratfunc import NEG_INF, POS_INF, RatQ


class _AboveTruncation:
    """ord_x sentinel: every coefficient up to the truncation vanishes."""

    __slots__ = ()

    def __repr__(self):
        return "ABOVE_TRUNCATION"

    # ranks above every stored order, mirroring "at least N+1"
    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


ABOVE_TRUNCATION = _AboveTruncation()


def _ratq(v):
    return v if isinstance(v, RatQ) else RatQ.from_value(v)


class TruncSeries:
    """c_0 + c_1 x + ... + c_N x^N + O(x^(N+1)) with c_h in Q(q)."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc=None):
        coeffs = [_ratq(c) for c in coeffs]
        if trunc is None:
            if not coeffs:
                raise ValueError("empty series needs an explicit truncation")
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        if len(coeffs) < trunc + 1:
            coeffs += [RatQ(0)] * (trunc + 1 - len(coeffs))
        elif len(coeffs) > trunc + 1:
            del coeffs[trunc + 1:]
        self.coeffs = tuple(coeffs)
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc):
        return cls([], trunc)

    @classmethod
    def constant(cls, v, trunc):
        return cls([_ratq(v)], trunc)

    def coeff(self, h):
        if not 0 <= h <= self.trunc:
            raise IndexError(f"coefficient {h} is beyond truncation {self.trunc}")
        return self.coeffs[h]

    @property
    def ord_x(self):
        for h, c in enumerate(self.coeffs):
            if not c.is_zero():
                return h
        return ABOVE_TRUNCATION

    def is_zero_through_trunc(self):
        return self.ord_x is ABOVE_TRUNCATION

    def truncate(self, m):
        """Forget coefficients above m (m <= current truncation)."""
        if m > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {m}")
        if m == self.trunc:
            return self
        return TruncSeries(list(self.coeffs[:m + 1]), m)

    def _pad(self, m):
        """Assert-zero padding to truncation m; the solver uses this when
        the missing coefficients are provably irrelevant.  Not public API."""
        if m <= self.trunc:
            return self.truncate(m)
        return TruncSeries(list(self.coeffs), m)

    def shift_x(self, k):
        """Multiply by x**k (k >= 0); knowledge extends to trunc + k."""
        if k < 0:
            raise ValueError("series cannot absorb a negative x-power")
        return TruncSeries([RatQ(0)] * k + list(self.coeffs), self.trunc + k)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        return TruncSeries(
            [self.coeffs[h] + other.coeffs[h] for h in range(n + 1)], n)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        return TruncSeries(
            [self.coeffs[h] - other.coeffs[h] for h in range(n + 1)], n)

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.trunc)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.trunc, other.trunc)
            out = [RatQ(0)] * (n + 1)
            for i, a in enumerate(self.coeffs[:n + 1]):
                if a.is_zero():
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return TruncSeries(out, n)
        c = _ratq(other)
        return TruncSeries([c * a for a in self.coeffs], self.trunc)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def scale_x(self, lam):
        """x -> lam * x: coefficient c_h picks up lam**h."""
        lam = _ratq(lam)
        out = []
        p = RatQ(1)
        for c in self.coeffs:
            out.append(c * p)
            p = p * lam
        return TruncSeries(out, self.trunc)

    def sigma(self, i):
        """The q-shift sigma^i: y(x) -> y(q^i x), so c_h -> c_h * q^(i*h)."""
        return TruncSeries(
            [c.shift_q(i * h) for h, c in enumerate(self.coeffs)], self.trunc)

    def to_json(self):
        return {"trunc": self.trunc, "coeffs": [c.to_text() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        from .dsl import parse_ratq
        return cls([parse_ratq(t) for t in obj["coeffs"]], obj["trunc"])

    def to_text(self):
        parts = []
        for h, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            t = c.to_text()
            if h == 0:
                parts.append(t)
                continue
            xs = "x" if h == 1 else f"x^{h}"
            if c.is_one():
                parts.append(xs)
            else:
                if "+" in t or "-" in t[1:] or t.startswith("-") or "/" in t:
                    t = f"({t})"
                parts.append(f"{t}*{xs}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(x^{self.trunc + 1})"

    def __repr__(self):
        return f"TruncSeries({self.to_text()})"


def sigma_pow(s, i):
    """Apply sigma_q^i to a series or x-polynomial; i may be negative."""
    return s.sigma(i)


class XPoly:
    """Exact polynomial in x with coefficients in Q(q)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [_ratq(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    def is_zero(self):
        return not self.coeffs

    @property
    def deg_x(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def ord_x(self):
        for h, c in enumerate(self.coeffs):
            if not c.is_zero():
                return h
        return POS_INF

    def coeff(self, h):
        if 0 <= h < len(self.coeffs):
            return self.coeffs[h]
        return RatQ(0)

    def __add__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self.coeff(h) + other.coeff(h) for h in range(n)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, XPoly):
            if self.is_zero() or other.is_zero():
                return XPoly()
            out = [RatQ(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return XPoly(out)
        c = _ratq(other)
        return XPoly([c * a for a in self.coeffs])

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def shift_x(self, k):
        if k < 0:
            raise ValueError("XPoly cannot absorb a negative x-power")
        if self.is_zero():
            return self
        return XPoly([RatQ(0)] * k + list(self.coeffs))

    def scale_x(self, lam):
        lam = _ratq(lam)
        out = []
        p = RatQ(1)
        for c in self.coeffs:
            out.append(c * p)
            p = p * lam
        return XPoly(out)

    def sigma(self, i):
        """a(x) -> a(q^i x)."""
        return XPoly([c.shift_q(i * h) for h, c in enumerate(self.coeffs)])

    def to_series(self, trunc):
        return TruncSeries([self.coeff(h) for h in range(trunc + 1)], trunc)

    def to_text(self):
        return self.to_series(max(0, len(self.coeffs) - 1)).to_text().rsplit(" + O(", 1)[0]

    def __repr__(self):
        return f"XPoly({self.to_text()})"
