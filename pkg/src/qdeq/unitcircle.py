"""Numeric diagnostics for q on the unit circle.

When |q| = 1 the step-by-step solver's denominators L(q^h) can come
arbitrarily close to zero, and whether the formal solution still has a
meaning depends on how fast q^n approaches the roots of the resonance
polynomial.  The quantitative form is a diophantine lower bound

    |q^n - u| >= c1 * n^(-c2)     for all n >= 1

for every root u of the resonance polynomial.  Nothing here proves such
a bound; the scanner measures the left side over a finite range and
reports the constants it survived, or the place where it broke.

All arithmetic in this module is floating complex on purpose: the
condition is metric, and the exact q-side machinery has nothing to say
about it.  Root finding goes through numpy's companion-matrix solver;
only the residual of each returned root is trusted, not the method.
"""

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DegenerateAfterEvaluation, RootOfUnityDetected
from .skewop import ResonancePoly

DEFAULT_C2_GRID = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))

# |q^n - u| at or below this is treated as a hit, not a small distance
DISTANCE_TOL = 1e-9

# |.| within this of 1 counts as "on the unit circle"
CIRCLE_TOL = 1e-6


def unit_q(theta):
    """exp(2*pi*i*theta) for a rational or float rotation number."""
    return cmath.exp(2j * math.pi * float(theta))


def roots_of(poly, q_numeric, residual_tol=1e-6, cluster_tol=1e-7):
    """Complex roots of a resonance polynomial at a numeric q.

    Accepts a ResonancePoly (coefficients in Q(q), evaluated at
    q_numeric first) or a plain sequence of complex coefficients
    ascending in T.  Roots closer than cluster_tol are merged into one
    representative (their mean), so a double root is reported once.
    Every returned root is re-substituted and must leave a residual
    below residual_tol times the coefficient scale.

    Raises DegenerateAfterEvaluation when the leading coefficient dies
    at q_numeric (the degree is not what the exact side thought) or a
    coefficient has a pole there.
    """
    if isinstance(poly, ResonancePoly):
        try:
            cs = poly.coeffs_at(q_numeric)
        except ZeroDivisionError:
            raise DegenerateAfterEvaluation(
                f"a coefficient of the resonance polynomial has a pole "
                f"at q = {q_numeric}") from None
    else:
        cs = [complex(c) for c in poly]
    if not cs:
        raise ValueError("empty polynomial has no roots to find")
    scale = max(abs(c) for c in cs)
    if scale == 0.0:
        raise DegenerateAfterEvaluation(
            f"every coefficient vanished at q = {q_numeric}")
    if abs(cs[-1]) <= 1e-12 * scale:
        raise DegenerateAfterEvaluation(
            f"leading coefficient vanished at q = {q_numeric}; "
            f"the polynomial degenerates there")
    if len(cs) == 1:
        return []
    raw = np.roots(np.array(cs[::-1], dtype=complex))

    clusters = []
    for r in sorted(raw, key=lambda z: (z.real, z.imag)):
        for c in clusters:
            if abs(r - c[-1]) <= cluster_tol:
                c.append(r)
                break
        else:
            clusters.append([r])
    out = [complex(np.mean(c)) for c in clusters]

    def value(t):
        acc = 0j
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    bad = [t for t in out if abs(value(t)) > residual_tol * scale]
    if bad:
        raise DegenerateAfterEvaluation(
            f"root candidates {bad} have residuals above tolerance; "
            f"the evaluation at q = {q_numeric} is too ill-conditioned")
    return out


class DiophantineScan:
    """Finite-range measurement of the lower bound |q^n - u| >= c1*n^(-c2).

    q_value   the numeric q scanned;
    roots     the root list u as given;
    records   per root index: (n, distance, n*distance) rows, kept each
              time the distance attains a new strict minimum;
    per_root  per root verdict dicts (status, chosen c2, c1, witness);
    verdict   overall: {"status": "pass", "c1": float, "c2": Fraction}
              with the smallest grid c2 that works for every on-circle
              root, or {"status": "fail", "witness": n, ...}.
    """

    __slots__ = ("q_value", "roots", "records", "per_root", "verdict",
                 "scanned_to")

    def __init__(self, q_value, roots, records, per_root, verdict,
                 scanned_to):
        self.q_value = q_value
        self.roots = list(roots)
        self.records = records
        self.per_root = per_root
        self.verdict = verdict
        self.scanned_to = scanned_to

    def passed(self):
        return self.verdict["status"] == "pass"

    def to_json(self):
        def cx(z):
            return [z.real, z.imag]

        def frac(v):
            return None if v is None else str(Fraction(v))

        v = dict(self.verdict)
        if v.get("c2") is not None:
            v["c2"] = str(v["c2"])
        return {
            "q": cx(self.q_value),
            "scanned_to": self.scanned_to,
            "roots": [cx(u) for u in self.roots],
            "records": {str(i): [[n, d, s] for n, d, s in rows]
                        for i, rows in self.records.items()},
            "per_root": [
                {**r, "c2": frac(r["c2"])} for r in self.per_root],
            "verdict": v,
        }

    def to_text(self):
        lines = [f"q = {self.q_value:.12g}, scanned n <= {self.scanned_to}"]
        for i, u in enumerate(self.roots):
            r = self.per_root[i]
            if r["status"] == "pass":
                where = (f"c2 = {r['c2']}, c1 = {r['c1']:.6g}"
                         if r["c2"] is not None else
                         f"off circle, c1 = {r['c1']:.6g}")
                lines.append(f"root {u:.6g}: pass ({where})")
            else:
                lines.append(f"root {u:.6g}: FAIL at n = {r['witness']} "
                             f"({r['reason']})")
        v = self.verdict
        if v["status"] == "pass":
            lines.append(f"overall: pass with |q^n - u| >= {v['c1']:.6g} "
                         f"* n^(-{v['c2']})")
        else:
            lines.append(f"overall: FAIL, witness n = {v['witness']}")
        return "\n".join(lines)

    def __repr__(self):
        return (f"DiophantineScan({len(self.roots)} roots, "
                f"N = {self.scanned_to}, {self.verdict['status']})")


def scan_condition_H(q_numeric, roots, N, c2_grid=None, tol=DISTANCE_TOL,
                     theta=None):
    """Scan |q^n - u| for n = 1..N against the grid of decay exponents.

    For each root u on the unit circle the scan tracks, per grid c2, the
    minimum of |q^n - u| * n^c2 and where it occurred.  A grid point
    counts as passed when that minimum is positive (above tol) and was
    attained in the first half of the range: a minimum still falling in
    the second half means the constant has not stabilized, and a longer
    scan would keep pushing it down.  The root's verdict quotes the
    smallest passing c2.  Roots off the circle pass unconditionally
    with c1 = |1 - |u|| by the reverse triangle inequality.

    Raises RootOfUnityDetected the moment |q^n - 1| drops below tol
    (the whole regime assumes q is not a root of unity); passing the
    rotation number as `theta` makes that check exact for rationals:
    theta = p/r in lowest terms raises with n = r immediately.
    """
    N = int(N)
    if N < 1:
        raise ValueError("scan range N must be at least 1")
    grid = tuple(sorted(Fraction(c) for c in (c2_grid or DEFAULT_C2_GRID)))
    if any(c <= 0 for c in grid):
        raise ValueError("decay exponents c2 must be positive")
    if theta is not None and isinstance(theta, (int, Fraction)):
        r = Fraction(theta).denominator
        if r <= N:
            raise RootOfUnityDetected(r)
    if abs(abs(q_numeric) - 1.0) > CIRCLE_TOL:
        raise ValueError(f"|q| = {abs(q_numeric)} is not on the unit circle")

    roots = [complex(u) for u in roots]
    on_circle = [abs(abs(u) - 1.0) <= CIRCLE_TOL for u in roots]
    live = [i for i in range(len(roots)) if on_circle[i]]

    records = {i: [] for i in range(len(roots))}
    best_dist = {i: math.inf for i in live}
    # per root, per grid exponent: (min score, argmin)
    mins = {i: {c: (math.inf, 0) for c in grid} for i in live}
    hard_fail = {}  # root index -> witness n

    z = 1.0 + 0j
    for n in range(1, N + 1):
        z *= q_numeric
        if n % 4096 == 0:
            z /= abs(z)
        if abs(z - 1.0) <= tol:
            raise RootOfUnityDetected(n)
        for i in live:
            if i in hard_fail:
                continue
            d = abs(z - roots[i])
            if d < best_dist[i]:
                best_dist[i] = d
                records[i].append((n, d, n * d))
                if d <= tol:
                    hard_fail[i] = n
                    continue
                for c in grid:
                    s = d * n ** float(c)
                    if s < mins[i][c][0]:
                        mins[i][c] = (s, n)
            else:
                # a non-record distance can still set a new weighted low
                for c in grid:
                    s = d * n ** float(c)
                    if s < mins[i][c][0]:
                        mins[i][c] = (s, n)

    per_root = []
    overall_c2 = grid[0]
    overall_witness = None
    for i, u in enumerate(roots):
        if not on_circle[i]:
            c1 = abs(1.0 - abs(u))
            per_root.append({"root": [u.real, u.imag], "status": "pass",
                             "c2": None, "c1": c1, "witness": None,
                             "reason": "off the unit circle"})
            continue
        if i in hard_fail:
            n0 = hard_fail[i]
            per_root.append({"root": [u.real, u.imag], "status": "fail",
                             "c2": None, "c1": 0.0, "witness": n0,
                             "reason": f"|q^n - u| <= {tol} at n = {n0}"})
            if overall_witness is None or n0 < overall_witness:
                overall_witness = n0
            continue
        chosen = None
        for c in grid:
            s, argmin = mins[i][c]
            if s > tol and 2 * argmin <= N:
                chosen = c
                break
        if chosen is None:
            s, argmin = mins[i][grid[-1]]
            per_root.append({"root": [u.real, u.imag], "status": "fail",
                             "c2": None, "c1": s, "witness": argmin,
                             "reason": "weighted minimum still falling at "
                                       "every grid exponent"})
            if overall_witness is None or argmin < overall_witness:
                overall_witness = argmin
            continue
        per_root.append({"root": [u.real, u.imag], "status": "pass",
                         "c2": chosen, "c1": mins[i][chosen][0],
                         "witness": None, "reason": None})
        if chosen > overall_c2:
            overall_c2 = chosen

    if overall_witness is not None:
        verdict = {"status": "fail", "c1": None, "c2": None,
                   "witness": overall_witness}
    else:
        # score min is nondecreasing in c2 (n >= 1), so every passing
        # root stays positive at the overall (largest chosen) exponent
        c1s = []
        for i, u in enumerate(roots):
            if not on_circle[i]:
                c1s.append(abs(1.0 - abs(u)))
            else:
                c1s.append(mins[i][overall_c2][0])
        verdict = {"status": "pass",
                   "c1": min(c1s) if c1s else None,
                   "c2": overall_c2 if c1s else None,
                   "witness": None}

    return DiophantineScan(q_numeric, roots, records, per_root, verdict, N)
