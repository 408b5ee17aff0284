"""Modular evaluation engine behind the solver's "probe" mode.

The solve loop of solver._extend_core is generic in its coefficient
domain.  This module supplies a domain whose values are numpy vectors
of evaluations at random points q = x_j modulo a 31-bit prime, so one
step costs a handful of vectorized convolutions instead of exact Q(q)
arithmetic.  A nonzero lane proves a value nonzero; an all-zero vector
means zero with overwhelming likelihood, and every "zero" the engine
acts on is later backed by verification:

* the run is repeated over at least two primes and the event sequences
  must agree;
* each solved coefficient, a rational function of q, is recovered by
  Newton interpolation plus extended-Euclidean rational reconstruction
  per prime, lifted to integer coefficients by CRT and rational number
  reconstruction, then checked against reserved lanes that took no part
  in the fit;
* the reconstructed solution's residual is re-probed on a fresh prime.

Any failure raises EngineError and the caller falls back to the exact
domain.  Lane counts and prime counts escalate on demand, so small
answers stay cheap and large ones stay correct.
"""

import hashlib
import json
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from . import _intpoly as K
from .errors import EngineError
from .nonlinear import eval_at
from .ratfunc import QPoly, RatQ
from .series import TruncSeries

_RESERVE = 64  # lanes per prime kept out of every interpolation


class _NeedLanes(Exception):
    pass


class _NeedPrimes(Exception):
    pass


# ---------------------------------------------------------------------------
# vectorized GF(p) helpers


def _pow_vec(a, e, p):
    """Elementwise a**e mod p for scalar e >= 0."""
    out = np.ones(len(a), dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    return out


def _prefix_prod(a, p):
    out = a.copy()
    s = 1
    while s < len(out):
        out[s:] = out[s:] * out[:-s] % p
        s *= 2
    return out


def _batch_inv(a, p):
    """Elementwise inverses of a vector of nonzero residues."""
    n = len(a)
    pref = _prefix_prod(a, p)
    suff = _prefix_prod(a[::-1], p)[::-1]
    total_inv = pow(int(pref[-1]), p - 2, p)
    left = np.ones(n, dtype=np.int64)
    left[1:] = pref[:-1]
    right = np.ones(n, dtype=np.int64)
    right[:-1] = suff[1:]
    return left * total_inv % p * right % p


def _np_eval(poly, xs, p):
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in poly[::-1]:
        acc = (acc * xs + int(c)) % p
    return acc


def _trim_np(a):
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return np.zeros(0, dtype=np.int64)
    return a[: int(nz[-1]) + 1]


def _poly_mul_mod(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if len(a) > len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, c in enumerate(a):
        c = int(c)
        if c:
            out[i: i + len(b)] = (out[i: i + len(b)] + c * b) % p
    return _trim_np(out)


def _poly_divmod(u, v, p):
    """(quotient, remainder) of ascending GF(p) polys; v nonzero."""
    dv = len(v) - 1
    if len(u) < len(v):
        return np.zeros(0, dtype=np.int64), u.copy()
    inv = pow(int(v[-1]), p - 2, p)
    r = u.copy()
    q = np.zeros(len(u) - dv, dtype=np.int64)
    for k in range(len(u) - dv - 1, -1, -1):
        c = int(r[k + dv]) * inv % p
        if c:
            q[k] = c
            r[k: k + dv + 1] = (r[k: k + dv + 1] - c * v) % p
    return q, _trim_np(r[:dv] if dv else r[:0])


def _poly_divexact(u, v, p):
    q, r = _poly_divmod(u, v, p)
    if len(r):
        raise _NeedPrimes("inexact division during normalization")
    return q


# ---------------------------------------------------------------------------
# the lane domain


class ProbeDomain:
    """Vectors of GF(p) evaluations at fixed random points q = x_j.

    Lanes where a division hits zero are marked dead and ignored by
    zero tests from then on; healthy() reports whether enough survive.
    """

    name = "probe"

    def __init__(self, prime, qvals):
        self.p = prime
        self.q = qvals.astype(np.int64) % prime
        self.n = len(qvals)
        self.alive = np.ones(self.n, dtype=bool)
        qinv = _pow_vec(self.q, prime - 2, prime)
        self._qpow = {0: np.ones(self.n, dtype=np.int64),
                      1: self.q, -1: qinv}
        self._zero = np.zeros(self.n, dtype=np.int64)

    def qpow(self, e):
        got = self._qpow.get(e)
        if got is None:
            step = 1 if e > 0 else -1
            base = max((k for k in self._qpow if k * step > 0 and abs(k) < abs(e)),
                       key=abs, default=0)
            got = self._qpow[base]
            for k in range(base + step, e + step, step):
                got = got * self._qpow[step] % self.p
                self._qpow[k] = got
        return got

    def from_ratq(self, r):
        num = K.eval_many_mod(r.num.ints, self.q, self.p)
        num = num * pow(r.num.den, self.p - 2, self.p) % self.p
        den = K.eval_many_mod(r.den.ints, self.q, self.p)
        return self.div(num, den)

    def from_int(self, v):
        return np.full(self.n, v % self.p, dtype=np.int64)

    def zero(self):
        return self._zero

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return (self.p - a) % self.p

    def div(self, a, b):
        hit = (b == 0) & self.alive
        if hit.any():
            self.alive &= ~hit
        safe = np.where(b == 0, 1, b)
        return a * _pow_vec(safe, self.p - 2, self.p) % self.p

    def is_zero(self, a):
        return not a[self.alive].any()

    def series_mul(self, a, b, width):
        A = np.stack(a)
        B = np.stack(b)
        out = []
        for m in range(width):
            t = A[: m + 1] * B[m::-1] % self.p
            out.append(t.sum(axis=0) % self.p)
        return out

    def healthy(self):
        return int(self.alive.sum()) >= max(self.n // 2, _RESERVE + 32)


# ---------------------------------------------------------------------------
# rational function reconstruction inside one prime


def _dd_inverses(xs, p):
    """Flat inverse table of the node differences Newton's scheme divides by."""
    n = len(xs)
    if n == 1:
        return np.zeros(0, dtype=np.int64)
    diffs = np.concatenate([(xs[j:] - xs[:n - j]) % p for j in range(1, n)])
    return _batch_inv(diffs, p)


def _newton_interp(xs, ys, p, inv=None):
    """Ascending GF(p) poly through (xs[i], ys[i]); distinct xs."""
    n = len(xs)
    c = ys.astype(np.int64).copy()
    if n == 1:
        return _trim_np(c)
    if inv is None:
        inv = _dd_inverses(xs, p)
    off = 0
    for j in range(1, n):
        c[j:] = (c[j:] - c[j - 1: n - 1]) % p * inv[off: off + n - j] % p
        off += n - j
    poly = np.array([c[n - 1]], dtype=np.int64)
    for i in range(n - 2, -1, -1):
        nxt = np.zeros(len(poly) + 1, dtype=np.int64)
        nxt[1:] = poly
        nxt[:-1] = (nxt[:-1] - xs[i] * poly) % p
        nxt[0] = (nxt[0] + c[i]) % p
        poly = nxt
    return _trim_np(poly)


def _node_poly(xs, p):
    m = np.ones(1, dtype=np.int64)
    for xi in xs:
        nxt = np.zeros(len(m) + 1, dtype=np.int64)
        nxt[1:] = m
        nxt[:-1] = (nxt[:-1] - int(xi) * m) % p
        m = nxt
    return m


def _rat_interp(xs, ys, p, tables=None):
    """(num, den) ascending GF(p) polys with num/den agreeing on the nodes,
    den monic and coprime to num; None if n points cannot separate them."""
    n = len(xs)
    if not ys.any():
        return np.zeros(0, dtype=np.int64), np.ones(1, dtype=np.int64)
    inv, node = tables if tables is not None else (None, None)
    f = _newton_interp(xs, ys, p, inv)
    r0, r1 = node if node is not None else _node_poly(xs, p), f
    v0 = np.zeros(0, dtype=np.int64)
    v1 = np.ones(1, dtype=np.int64)
    stop = (n - 1) // 2
    while len(r1) and len(r1) - 1 > stop:
        quo, r2 = _poly_divmod(r0, r1, p)
        v2 = (np.concatenate([v0, np.zeros(max(0, len(quo) + len(v1) - 1 - len(v0)),
                                           dtype=np.int64)])
              - np.concatenate([_poly_mul_mod(quo, v1, p),
                                np.zeros(max(0, len(v0) - (len(quo) + len(v1) - 1)),
                                         dtype=np.int64)])) % p
        v2 = _trim_np(v2)
        r0, r1, v0, v1 = r1, r2, v1, v2
    num, den = r1, v1
    if len(den) == 0 or len(num) == 0:
        return None
    # clear any common factor, then make the denominator monic
    g = K.np_gcd_monic(num, den, p)
    if len(g) > 1:
        try:
            num = _poly_divexact(num, g, p)
            den = _poly_divexact(den, g, p)
        except _NeedPrimes:
            return None
    inv = pow(int(den[-1]), p - 2, p)
    num = num * inv % p
    den = den * inv % p
    return num, den


def _check_fit(num, den, xs, ys, p):
    dv = _np_eval(den, xs, p)
    if (dv == 0).any():
        return False
    return bool((_np_eval(num, xs, p) == dv * ys % p).all())


# ---------------------------------------------------------------------------
# lifting to exact rationals


def _wang(c, M):
    """Fraction p/r with p/r = c mod M, |p|, r <= sqrt(M/2); None if absent."""
    bound = isqrt(M // 2)
    r0, r1 = M, c % M
    t0, t1 = 0, 1
    while r1 > bound:
        quo = r0 // r1
        r0, r1 = r1, r0 - quo * r1
        t0, t1 = t1, t0 - quo * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    num = r1 if t1 > 0 else -r1
    den = abs(t1)
    if gcd(num, den) != 1:  # gcd(0, 1) == 1 keeps the zero case
        return None
    return Fraction(num, den)


def _lift_poly(per_prime, primes):
    """CRT + rational reconstruction of one ascending coefficient list."""
    deg = len(per_prime[0])
    out = []
    for i in range(deg):
        residue = int(per_prime[0][i])
        modulus = primes[0]
        for arr, p in zip(per_prime[1:], primes[1:]):
            t = (int(arr[i]) - residue) % p * pow(modulus % p, p - 2, p) % p
            residue += modulus * t
            modulus *= p
        frac = _wang(residue, modulus)
        if frac is None:
            raise _NeedPrimes(f"coefficient {i} exceeds the lifting bound")
        out.append(frac)
    return out


# ---------------------------------------------------------------------------
# runs


def _fingerprint(F, seed, N, prime, attempt, nlanes):
    blob = json.dumps([F.to_json(), [c.to_text() for c in seed], N,
                       prime, attempt, nlanes], sort_keys=True)
    return int.from_bytes(hashlib.sha256(blob.encode()).digest()[:8], "big")


def _lane_points(prime, nlanes, rng):
    pts = np.unique(rng.integers(2, prime - 1, size=2 * nlanes + 16,
                                 dtype=np.int64))
    rng.shuffle(pts)
    if len(pts) < nlanes:
        raise EngineError("could not sample enough distinct lane points")
    return pts[:nlanes]


class _Run:
    __slots__ = ("prime", "dom", "coeffs", "events", "tables", "cands")

    def __init__(self, prime, dom, coeffs, events):
        self.prime = prime
        self.dom = dom
        self.coeffs = coeffs
        self.events = events
        self.tables = {}  # n_try -> (dd inverse table, node poly), latest only
        self.cands = {}   # (h, n_try) -> fitted (num, den) or None

    def pool(self):
        idx = np.nonzero(self.dom.alive[: self.dom.n - _RESERVE])[0]
        return idx

    def reserve(self):
        base = self.dom.n - _RESERVE
        return base + np.nonzero(self.dom.alive[base:])[0]

    def interp_tables(self, xs, n_try):
        got = self.tables.get(n_try)
        if got is None:
            # coefficient degrees only grow, so smaller tables are spent
            got = (_dd_inverses(xs, self.dom.p), _node_poly(xs, self.dom.p))
            self.tables = {n_try: got}
        return got


def _event_sig(events):
    return [(e["h"], e["kind"], e.get("order")) for e in events]


def _start_run(F, seed, N, prime, nlanes):
    from .solver import _extend_core
    for attempt in range(3):
        rng = np.random.default_rng(
            _fingerprint(F, seed, N, prime, attempt, nlanes))
        dom = ProbeDomain(prime, _lane_points(prime, nlanes, rng))
        coeffs, events, _ = _extend_core(F, seed, N, dom)
        if dom.healthy():
            return _Run(prime, dom, coeffs, events)
    raise EngineError(f"lanes kept dying at prime {prime}")


def _reconstruct_coeff(runs, h, n_start):
    """Exact RatQ for coefficient h from the runs' lane data."""
    n_try = n_start
    while True:
        cands = []
        for run in runs:
            key = (h, n_try)
            if key in run.cands:
                cands.append(run.cands[key])
                continue
            pool = run.pool()
            if n_try + 16 > len(pool):
                raise _NeedLanes(f"coefficient {h} needs more than "
                                 f"{len(pool)} lanes")
            take = pool[:n_try]
            hold = pool[n_try: n_try + 16]
            xs = run.dom.q[take]
            ys = run.coeffs[h][take]
            got = _rat_interp(xs, ys, run.dom.p, run.interp_tables(xs, n_try))
            if got is not None and not _check_fit(
                    got[0], got[1], run.dom.q[hold],
                    run.coeffs[h][hold], run.dom.p):
                got = None
            run.cands[key] = got
            cands.append(got)
        good = [c for c in cands if c is not None]
        if len(good) >= 2:
            # an unlucky prime can only lose leading coefficients, so the
            # largest shape seen is the true one; lift from primes agreeing
            shape = max((len(c[0]), len(c[1])) for c in good)
            group = [i for i, c in enumerate(cands)
                     if c is not None and (len(c[0]), len(c[1])) == shape]
            if len(group) < 2:
                raise _NeedPrimes(f"only one prime sees the full shape "
                                  f"of coefficient {h}")
            break
        n_try *= 2
    primes = [runs[i].prime for i in group]
    num = _lift_poly([cands[i][0] for i in group], primes)
    den = _lift_poly([cands[i][1] for i in group], primes)
    value = RatQ(QPoly.from_fractions(num), QPoly.from_fractions(den))
    for run in runs:
        saved = run.dom.alive.copy()
        have = run.dom.from_ratq(value)
        res = run.reserve()
        ok = bool((run.coeffs[h][res] == have[res]).all())
        run.dom.alive = saved
        if not ok:
            raise _NeedPrimes(f"coefficient {h} fails the reserved-lane check")
    return value, n_try


def _sanitize_events(events):
    out = []
    for e in events:
        kept = {}
        for key, v in e.items():
            if key == "cleared":
                continue
            kept[key] = v if isinstance(v, (int, str)) else "(modular)"
        out.append(kept)
    return out


def solve(F, seed, N):
    """Probe-mode extend: returns (exact coefficient list, events)."""
    nlanes = 576
    while nlanes <= 42000:
        try:
            return _solve_at(F, seed, N, nlanes)
        except _NeedLanes:
            nlanes *= 4
    raise EngineError("lane escalation exhausted")


def _solve_at(F, seed, N, nlanes):
    prime_iter = K.primes_31()
    runs = [_start_run(F, seed, N, next(prime_iter), nlanes)]
    sig = _event_sig(runs[0].events)

    def add_run():
        if len(runs) >= 24:
            raise EngineError("prime escalation exhausted")
        run = _start_run(F, seed, N, next(prime_iter), nlanes)
        if _event_sig(run.events) != sig:
            raise EngineError("event mismatch between primes")
        runs.append(run)

    add_run()
    k = len(seed) - 1
    exact = list(seed)
    n_hint = 32
    h = k + 1
    while h < len(runs[0].coeffs):
        try:
            value, n_hint = _reconstruct_coeff(runs, h, n_hint)
        except _NeedPrimes:
            add_run()
            if len(runs) >= 4:  # large integers: grow the modulus faster
                add_run()
            continue
        exact.append(value)
        h += 1

    _verify_fresh(F, exact, prime_iter, {run.prime for run in runs}, nlanes)
    return exact, _sanitize_events(runs[0].events)


def _verify_fresh(F, exact, prime_iter, used, nlanes):
    prime = next(prime_iter)
    while prime in used:
        prime = next(prime_iter)
    rng = np.random.default_rng(prime ^ 0x9E3779B97F4A7C15)
    dom = ProbeDomain(prime, _lane_points(prime, 128, rng))
    from .solver import _eval_poly
    vals = [dom.from_ratq(c) for c in exact]
    res = _eval_poly(F, vals, len(exact) - 1, dom)
    if not dom.healthy():
        raise EngineError("verification lanes died")
    for m, v in enumerate(res):
        if not dom.is_zero(v):
            raise EngineError(f"reconstructed solution fails at order {m}")


def check(F, phi, primes=2, lanes=160):
    """Probe-mode check_solution: largest V with residual zero through V."""
    from .solver import _eval_poly
    best = phi.trunc
    prime_iter = K.primes_31()
    for _ in range(primes):
        prime = next(prime_iter)
        rng = np.random.default_rng(prime ^ 0xD1B54A32D192ED03)
        dom = ProbeDomain(prime, _lane_points(prime, lanes, rng))
        vals = [dom.from_ratq(c) for c in phi.coeffs]
        res = _eval_poly(F, vals, phi.trunc, dom)
        if not dom.healthy():
            return check_exact_fallback(F, phi)
        for m, v in enumerate(res):
            if not dom.is_zero(v):
                best = min(best, m - 1)
                break
    return best


def check_exact_fallback(F, phi):
    r = eval_at(F, phi)
    for m, c in enumerate(r.coeffs):
        if not c.is_zero():
            return m - 1
    return phi.trunc
