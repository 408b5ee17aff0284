"""Coefficient-by-coefficient solution of nonlinear q-difference equations.

extend() grows a seed c_0..c_k into a series solution of F = 0 through
order N.  Each step treats the next coefficient c as an unknown and
asks how the residual depends on it:

* in the steady regime (certified lowest coefficient order l of the
  linearization, step h > l) the dependence is exactly affine at the
  single new residual order h + l, with slope A_h = sum_i alpha_i q^{ih}
  built from the frozen x^l coefficients alpha_i of the linearized
  operator, so one residual evaluation decides the step;
* in the early or uncertain regime the solver samples the residual at
  c = 0, 1, 2, fits a quadratic, and reads the outcome off the first
  order where anything is nonzero or c-dependent.

Outcomes per step (the events of the report):

    unique                   affine with A != 0, c = -B/A
    resonant_free            no constraint through the window; c = 0
    obstruction_no_solution  a nonzero residual order no coefficient
                             can reach; the run stops
    nonaffine_step           c enters nonlinearly at its first
                             constraining order; the run stops

The same control flow runs over two coefficient domains: exact Q(q)
arithmetic, and (for large nonlinear runs) vectors of modular
evaluations handled by the companion probe engine, whose results are
reconstructed to exact coefficients and verified before being reported.
"""

from .errors import EngineError, SeedRejected
from .nonlinear import eval_at, partial
from .ratfunc import RatQ
from .series import TruncSeries
from .skewop import ResonancePoly


class ExactDomain:
    """Coefficient domain Q(q) itself; zero tests are definitive."""

    name = "exact"

    def __init__(self):
        self._qpow = {0: RatQ(1)}

    def from_ratq(self, r):
        return r

    def from_int(self, v):
        return RatQ(v)

    def zero(self):
        return RatQ(0)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a.is_zero()

    def qpow(self, e):
        got = self._qpow.get(e)
        if got is None:
            got = self._qpow[e] = RatQ(1).shift_q(e)
        return got

    def healthy(self):
        return True


def _eval_poly(F, phi, trunc, dom):
    """Evaluate F along the coefficient list phi, through x^trunc, in dom."""
    width = trunc + 1
    base = list(phi[:width]) + [dom.zero()] * max(0, width - len(phi))
    sig_cache = {0: base}
    pow_cache = {}
    bulk = getattr(dom, "series_mul", None)

    def sig(i):
        got = sig_cache.get(i)
        if got is None:
            got = sig_cache[i] = [dom.mul(c, dom.qpow(i * h))
                                  for h, c in enumerate(base)]
        return got

    def smul(a, b):
        if bulk is not None:
            return bulk(a, b, width)
        out = [dom.zero()] * width
        for i, ai in enumerate(a):
            for j in range(width - i):
                out[i + j] = dom.add(out[i + j], dom.mul(ai, b[j]))
        return out

    def spow(i, k):
        got = pow_cache.get((i, k))
        if got is None:
            got = sig(i)
            for _ in range(k - 1):
                got = smul(got, sig(i))
            pow_cache[(i, k)] = got
        return got

    acc = [dom.zero()] * width
    for (e, exps), coeff in F.monomials.items():
        if e > trunc:
            continue
        term = None
        for i, k in exps:
            p = spow(i, k)
            term = p if term is None else smul(term, p)
        cval = dom.from_ratq(coeff)
        if term is None:
            acc[e] = dom.add(acc[e], cval)
        else:
            for idx in range(width - e):
                acc[e + idx] = dom.add(acc[e + idx], dom.mul(term[idx], cval))
    return acc


def _w_degree(F):
    return max((sum(k for _, k in exps) for (_, exps) in F.monomials), default=0)


class _Diag:
    """Lazily-refreshed linearization diagnostics in a domain."""

    __slots__ = ("l", "certified", "alpha")

    def __init__(self):
        self.l = None
        self.certified = False
        self.alpha = None


def _refresh_diag(F, partials, phi, dom, diag):
    trunc = len(phi) - 1
    rows = {}
    uncertain = []
    certain_ord = {}
    for i, P in partials.items():
        row = _eval_poly(P, phi, trunc, dom)
        rows[i] = row
        o = None
        for m, v in enumerate(row):
            if not dom.is_zero(v):
                o = m
                break
        if o is None:
            uncertain.append(i)
        else:
            certain_ord[i] = o
    if not certain_ord:
        diag.l = None
        diag.certified = False
        return
    l = min(certain_ord.values())
    diag.l = l
    # an all-zero row only hides coefficient orders > trunc
    diag.certified = (not uncertain) or trunc + 1 > l
    if diag.certified:
        diag.alpha = {i: row[l] for i, row in rows.items()}


def _linear_slope(dom, diag, h):
    out = None
    for i, a in diag.alpha.items():
        t = dom.mul(a, dom.qpow(i * h))
        out = t if out is None else dom.add(out, t)
    return out


class _Stop(Exception):
    """Internal: a step event ends the run early."""

    def __init__(self, event):
        self.event = event


def _extend_core(F, seed, N, dom):
    """Run the solve loop; returns (coefficient list in dom, events, cleared)."""
    partials = {i: partial(F, i)
                for i in range(F.window[0], F.window[1] + 1)}
    partials = {i: P for i, P in partials.items() if not P.is_zero()}
    if not partials:
        raise SeedRejected("the equation does not involve the unknown at all")
    k = len(seed) - 1
    phi = [dom.from_ratq(c) for c in seed]
    events = []

    # orders 0..k depend on the seed alone: reject now if any is nonzero
    r = _eval_poly(F, phi, k, dom)
    for m, v in enumerate(r):
        if not dom.is_zero(v):
            raise SeedRejected(
                f"seed leaves a nonzero residual at order {m}")
    cleared = k

    diag = _Diag()
    first_step = True
    try:
        for h in range(k + 1, N + 1):
            if not diag.certified:
                _refresh_diag(F, partials, phi, dom, diag)
            if diag.certified:
                W = h + diag.l
            else:
                W = h + max(diag.l if diag.l is not None else 0, k + 1)
            steady = diag.certified and h > diag.l
            if steady:
                c = _steady_step(F, phi, dom, diag, h, W, cleared,
                                 first_step, k, events)
            else:
                c = _scan_step(F, phi, dom, diag, h, W, cleared,
                               first_step, k, events)
            phi.append(c)
            cleared = events[-1].get("cleared", W)
            first_step = False
    except _Stop as stop:
        events.append(stop.event)
        return phi, events, cleared
    return phi, events, cleared


def _steady_step(F, phi, dom, diag, h, W, cleared, first_step, k, events):
    R = _eval_poly(F, phi, W, dom)
    for m in range(cleared + 1, W):
        if not dom.is_zero(R[m]):
            if first_step and m <= k + diag.l:
                raise SeedRejected(
                    f"seed leaves a nonzero residual at order {m}")
            raise _Stop({"h": h, "kind": "obstruction_no_solution",
                         "order": m})
    B = R[W]
    A = _linear_slope(dom, diag, h)
    if dom.is_zero(A):
        if dom.is_zero(B):
            events.append({"h": h, "kind": "resonant_free", "order": W,
                           "cleared": W})
            return dom.zero()
        raise _Stop({"h": h, "kind": "obstruction_no_solution", "order": W,
                     "residual": B})
    events.append({"h": h, "kind": "unique", "order": W, "cleared": W})
    return dom.div(dom.neg(B), A)


def _scan_step(F, phi, dom, diag, h, W, cleared, first_step, k, events):
    samples = {}
    for cv in (0, 1, 2):
        samples[cv] = _eval_poly(F, phi + [dom.from_int(cv)], W, dom)
    r0, r1, r2 = samples[0], samples[1], samples[2]
    seed_bound = k + diag.l if (first_step and diag.certified) else k
    for m in range(cleared + 1, W + 1):
        g = r0[m]
        d1 = dom.sub(r1[m], g)
        d2 = dom.sub(r2[m], g)
        if dom.is_zero(d1) and dom.is_zero(d2):
            if dom.is_zero(g):
                continue
            if first_step and m <= seed_bound:
                raise SeedRejected(
                    f"seed leaves a nonzero residual at order {m}")
            raise _Stop({"h": h, "kind": "obstruction_no_solution",
                         "order": m, "residual": g})
        # fit r(c) = alpha c^2 + beta c + gamma through c = 0, 1, 2
        alpha = dom.div(dom.sub(d2, dom.add(d1, d1)), dom.from_int(2))
        beta = dom.sub(d1, alpha)
        if not dom.is_zero(alpha):
            raise _Stop({"h": h, "kind": "nonaffine_step", "order": m,
                         "alpha": alpha, "beta": beta, "gamma": g})
        events.append({"h": h, "kind": "unique", "order": m, "cleared": m})
        return dom.div(dom.neg(g), beta)
    events.append({"h": h, "kind": "resonant_free", "order": W, "cleared": W})
    return dom.zero()


# ---------------------------------------------------------------------------
# public API


class SolveReport:
    """Outcome of extend(): the solution found and the per-step events."""

    __slots__ = ("solution", "resolved_through", "events")

    def __init__(self, solution, resolved_through, events):
        self.solution = solution
        self.resolved_through = resolved_through
        self.events = events

    def kinds(self):
        return [e["kind"] for e in self.events]

    def halted(self):
        return bool(self.events) and self.events[-1]["kind"] in (
            "obstruction_no_solution", "nonaffine_step")

    def to_json(self):
        def clean(v):
            if isinstance(v, RatQ):
                return v.to_text()
            if isinstance(v, (int, str)):
                return v
            return "(modular data)"

        events = []
        for e in self.events:
            events.append({key: clean(v) for key, v in e.items()
                           if key != "cleared"})
        return {
            "coeffs": [c.to_text() for c in self.solution.coeffs],
            "resolved_through": self.resolved_through,
            "events": events,
        }

    def to_text(self):
        lines = [f"resolved through order {self.resolved_through}"]
        kinds = set(self.kinds())
        if kinds == {"unique"}:
            lines.append("steps: all unique")
        else:
            for e in self.events:
                extra = "".join(f" {k}={v}" for k, v in e.items()
                                if k in ("order", "witness"))
                lines.append(f"  h={e['h']}  {e['kind']}{extra}")
        lines.append("coefficients:")
        for h, c in enumerate(self.solution.coeffs):
            lines.append(f"  c[{h}] = {c.to_text()}")
        return "\n".join(lines)

    def __repr__(self):
        return (f"SolveReport(resolved_through={self.resolved_through}, "
                f"kinds={self.kinds()})")


def extend(F, seed, N, engine="auto"):
    """Extend seed coefficients c_0..c_k of F = 0 through order N.

    engine: "exact", "probe", or "auto" (probe for nonlinear equations
    past order 12, exact otherwise; probe results are reconstructed to
    exact coefficients and verified, falling back to exact on any
    engine failure).
    """
    seed = [c if isinstance(c, RatQ) else RatQ.from_value(c) for c in seed]
    if not seed:
        raise ValueError("seed must contain at least c_0")
    k = len(seed) - 1
    if N < k:
        raise ValueError(f"target order {N} is below the seed order {k}")
    if engine not in ("auto", "exact", "probe"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "auto":
        engine = "probe" if (_w_degree(F) >= 2 and N > 12) else "exact"
    if engine == "probe":
        from . import _probes
        try:
            coeffs, events = _probes.solve(F, seed, N)
        except EngineError:
            engine = "exact"
        else:
            resolved = len(coeffs) - 1
            return SolveReport(TruncSeries(coeffs, resolved), resolved, events)
    dom = ExactDomain()
    coeffs, events, _ = _extend_core(F, seed, N, dom)
    resolved = len(coeffs) - 1
    return SolveReport(TruncSeries(coeffs, resolved), resolved, events)


def check_solution(F, phi, mode="auto"):
    """Largest order V with residual coefficients 0..V all zero.

    mode "exact" recomputes the residual in Q(q); mode "probe" tests it
    at random modular points (sound for nonzero detection, zero with
    overwhelming likelihood), which is the default for large nonlinear
    inputs.
    """
    if mode not in ("auto", "exact", "probe"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "probe" if (_w_degree(F) >= 2 and phi.trunc > 12) else "exact"
    if mode == "probe":
        from . import _probes
        return _probes.check(F, phi)
    r = eval_at(F, phi)
    for m, c in enumerate(r.coeffs):
        if not c.is_zero():
            return m - 1
    return phi.trunc


def resonance_set(L, h_max):
    """{h in [1, h_max] : L(q^h) = 0}, decided exactly."""
    if not isinstance(L, ResonancePoly):
        raise TypeError("resonance_set expects a ResonancePoly")
    return {h for h in range(1, h_max + 1) if L.at_qpow(h).is_zero()}
