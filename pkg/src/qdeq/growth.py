"""Growth measurement for truncated series with coefficients in Q(q).

The objects of interest are the two valuation sequences of a solution
y = sum y_h x^h: the q-degrees deg_q(y_h) and the q-orders ord_q(y_h).
A solution has q-Gevrey growth of order s when deg_q(y_h) stays below
s*h(h-1)/2 + C*h + C for some constant C, with a mirror-image lower
bound on ord_q.  Everything here works on a finite truncation, so the
verdicts mean "consistent with order s through the computed range",
never an asymptotic claim.

Order estimation uses second differences: on the exact model
s*h(h-1)/2 + b*h + c the second difference is s everywhere, so the
median over the top half of the range recovers s exactly on model
sequences and is robust to low-order transients otherwise.

All arithmetic is exact.  Rescaling by s*h(h-1)/2 happens on the
valuation sequences as rationals; no q^(s*...) with fractional s is
ever formed, so no root of q is needed.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import InsufficientData, UncertainPolygon
from .ratfunc import NEG_INF, POS_INF, deg_q, ord_q
from .skewop import _lower_hull

_SIDES = ("deg", "ord")


def _tri(h):
    return h * (h - 1) // 2


def _finite(v):
    return v is not NEG_INF and v is not POS_INF


def _check_side(side):
    if side not in _SIDES:
        raise ValueError(f"side must be 'deg' or 'ord', not {side!r}")


def valuation_profile(y):
    """Per-coefficient valuations of a truncated series.

    Returns (deg_profile, ord_profile), both of length y.trunc + 1:
    entry h is deg_q / ord_q of the h-th coefficient, with the NEG_INF /
    POS_INF sentinel where the coefficient is zero.
    """
    degs = [deg_q(c) for c in y.coeffs]
    ords = [ord_q(c) for c in y.coeffs]
    return degs, ords


def estimate_order(profile, side):
    """Estimate the growth order s from one valuation sequence.

    Takes the median of the second differences p[h+1] - 2p[h] + p[h-1]
    over the top half of the index range, using only positions where all
    three entries are finite.  On any sequence of the exact form
    s*h(h-1)/2 + b*h + c the result is s exactly.

    side = "deg" estimates s in deg_q(y_h) <= s*h(h-1)/2 + ...;
    side = "ord" estimates s' in ord_q(y_h) >= -s'*h(h-1)/2 - ..., so a
    sequence falling like -h(h-1)/2 reports s' = 1 (positive).

    Raises InsufficientData with fewer than 5 finite entries, or when
    gaps leave no three consecutive finite entries in the top half.
    """
    _check_side(side)
    profile = list(profile)
    if sum(1 for v in profile if _finite(v)) < 5:
        raise InsufficientData(
            "order estimation needs at least 5 nonzero coefficients")
    interior = [h for h in range(1, len(profile) - 1)
                if all(_finite(profile[h + d]) for d in (-1, 0, 1))]
    if not interior:
        raise InsufficientData(
            "no three consecutive nonzero coefficients to difference")
    top = [h for h in interior if 2 * h >= interior[-1]]
    deltas = sorted(
        Fraction(profile[h + 1] - 2 * profile[h] + profile[h - 1])
        for h in top)
    k = len(deltas)
    if k % 2:
        med = deltas[k // 2]
    else:
        med = (deltas[k // 2 - 1] + deltas[k // 2]) / 2
    return med if side == "deg" else -med


class BoundVerdict(NamedTuple):
    ok: bool
    witness: int | None  # smallest violating h, None on pass


def verify_bound(profile, order, slack, side):
    """Check one q-Gevrey bound through the whole profile.

    deg side:  profile[h] <= order*h(h-1)/2 + slack*h + slack;
    ord side:  profile[h] >= -(order*h(h-1)/2 + slack*h + slack).

    Zero coefficients (sentinel entries) satisfy any bound vacuously.
    Returns BoundVerdict(ok, witness) with the smallest violating h.
    """
    _check_side(side)
    order = Fraction(order)
    slack = Fraction(slack)
    for h, v in enumerate(profile):
        if not _finite(v):
            continue
        budget = order * _tri(h) + slack * h + slack
        bad = v > budget if side == "deg" else v < -budget
        if bad:
            return BoundVerdict(False, h)
    return BoundVerdict(True, None)


def fit_slack(profile, order, side):
    """Smallest slack >= 0 making verify_bound pass at the given order.

    Solves profile[h] <= order*h(h-1)/2 + slack*(h+1) (deg side, mirror
    image for ord) for every finite entry and returns the max demand.
    """
    _check_side(side)
    order = Fraction(order)
    best = Fraction(0)
    for h, v in enumerate(profile):
        if not _finite(v):
            continue
        gap = v - order * _tri(h) if side == "deg" else -v - order * _tri(h)
        need = Fraction(gap, h + 1)
        if need > best:
            best = need
    return best


def predicted_orders(polygon):
    """(s, s_prime) read off a Newton polygon.

    s = 1/r for the smallest strictly positive finite slope r, or 0 when
    every finite slope is <= 0; s_prime = -1/r' for the largest strictly
    negative finite slope r', or 0 when none is negative.

    Coefficients masked by truncation could hide extra polygon points.
    Each such point is re-added at the lowest order it could still have
    (one past its truncation) and the hull recomputed: if the hypothetical
    polygon predicts a different pair, UncertainPolygon is raised.  Any
    higher position for a hidden point only moves the hull toward the
    certain one, so agreement at the lowest position settles every case.
    """
    base = _orders_from_slopes(polygon.slopes)
    if polygon.uncertain:
        extra = []
        for i in polygon.uncertain:
            bound = polygon.uncertain_bounds.get(i)
            if bound is None:
                raise UncertainPolygon(
                    f"coefficient at index {i} vanishes through its "
                    f"truncation and carries no bound to reason with")
            extra.append((i, bound))
        # hull vertices carry the whole hull: non-vertex points sit on
        # or above it and cannot change the recomputation
        pts = sorted(set(polygon.vertices) | set(extra))
        hull = _lower_hull(pts)
        slopes = [Fraction(y2 - y1, x2 - x1)
                  for (x1, y1), (x2, y2) in zip(hull, hull[1:])]
        if _orders_from_slopes(slopes) != base:
            raise UncertainPolygon(
                "coefficients masked by truncation could change the "
                "extremal slopes of the polygon")
    return base


def _orders_from_slopes(slopes):
    pos = [r for r in slopes if r > 0]
    neg = [r for r in slopes if r < 0]
    s = Fraction(1) / min(pos) if pos else Fraction(0)
    sp = Fraction(-1) / max(neg) if neg else Fraction(0)
    return s, sp


def log_norm(y, order, weight, side):
    """Weighted sup-norm of a series, in exponent form.

    For the norm sup_h |y_h| * |q|^(h*weight - order*h(h-1)/2) the
    exponent of the h-th term is the valuation of y_h plus the weight
    term.  side = "deg" uses deg_q and takes the max (the norm seen
    through |.|_{1/q}); side = "ord" uses ord_q and takes the min.

    Zero coefficients contribute nothing; the zero series returns
    NEG_INF on the deg side and POS_INF on the ord side.
    """
    _check_side(side)
    order = Fraction(order)
    weight = Fraction(weight)
    best = None
    for h, c in enumerate(y.coeffs):
        v = deg_q(c) if side == "deg" else ord_q(c)
        if not _finite(v):
            continue
        w = v + h * weight - order * _tri(h)
        if best is None or (w > best if side == "deg" else w < best):
            best = w
    if best is None:
        return NEG_INF if side == "deg" else POS_INF
    return Fraction(best)


class GrowthReport:
    """Measured growth of one series solution, with verdicts.

    deg_profile / ord_profile    valuation sequences with sentinels;
    order_deg / order_ord        estimated orders (None when the data
                                 cannot support an estimate);
    slack_deg / slack_ord        fitted linear-slack constants for the
                                 orders actually tested;
    verdicts                     {(side, order, slack): BoundVerdict};
    notes                        free-form observations (zero tails,
                                 polygon comparisons, estimation gaps).
    """

    __slots__ = ("deg_profile", "ord_profile", "order_deg", "order_ord",
                 "slack_deg", "slack_ord", "verdicts", "notes")

    def __init__(self, deg_profile, ord_profile, order_deg, order_ord,
                 slack_deg, slack_ord, verdicts, notes):
        self.deg_profile = list(deg_profile)
        self.ord_profile = list(ord_profile)
        self.order_deg = order_deg
        self.order_ord = order_ord
        self.slack_deg = slack_deg
        self.slack_ord = slack_ord
        self.verdicts = dict(verdicts)
        self.notes = list(notes)

    def passed(self):
        return all(v.ok for v in self.verdicts.values())

    def to_json(self):
        def rat(v):
            return None if v is None else str(Fraction(v))

        def entry(v):
            return int(v) if _finite(v) else None

        return {
            "deg_profile": [entry(v) for v in self.deg_profile],
            "ord_profile": [entry(v) for v in self.ord_profile],
            "estimated_order_deg": rat(self.order_deg),
            "estimated_order_ord": rat(self.order_ord),
            "slack_deg": rat(self.slack_deg),
            "slack_ord": rat(self.slack_ord),
            "verdicts": [
                {"side": side, "order": str(order), "slack": str(slack),
                 "pass": v.ok, "first_violation": v.witness}
                for (side, order, slack), v in self.verdicts.items()],
            "notes": list(self.notes),
        }

    def to_text(self):
        lines = []
        n = len(self.deg_profile) - 1
        lines.append(f"profiles through order {n}")
        if self.order_deg is not None:
            lines.append(f"estimated order (deg side): {self.order_deg}")
        if self.order_ord is not None:
            lines.append(f"estimated order (ord side): {self.order_ord}")
        for (side, order, slack), v in self.verdicts.items():
            tag = "pass" if v.ok else f"FAIL at h = {v.witness}"
            lines.append(f"bound [{side}] order {order}, slack {slack}: {tag}")
        lines.extend(self.notes)
        return "\n".join(lines)

    def __repr__(self):
        ok = "pass" if self.passed() else "fail"
        return (f"GrowthReport({len(self.deg_profile)} coefficients, "
                f"{len(self.verdicts)} bounds, {ok})")


def analyze(y, order_deg=None, order_ord=None, slack_deg=None,
            slack_ord=None, polygon=None):
    """Full growth workup of one truncated series.

    Orders not supplied are taken from the polygon prediction when a
    polygon is given, else from the measured estimate, else 0.  Slacks
    not supplied are fitted as the smallest constants making the bounds
    hold, so a default run documents the tightest (order, slack) pair
    consistent with the data instead of gambling on a pass.

    With a polygon, the notes record whether each measured order stays
    within the predicted one (the prediction is an upper bound on the
    true order, not necessarily attained).
    """
    degs, ords = valuation_profile(y)
    notes = []

    est_deg = est_ord = None
    try:
        est_deg = estimate_order(degs, "deg")
    except InsufficientData:
        notes.append("too few nonzero coefficients to estimate the "
                     "deg-side order")
    try:
        est_ord = estimate_order(ords, "ord")
    except InsufficientData:
        notes.append("too few nonzero coefficients to estimate the "
                     "ord-side order")

    predicted = None
    if polygon is not None:
        predicted = predicted_orders(polygon)
        for name, est, pred in (("deg", est_deg, predicted[0]),
                                ("ord", est_ord, predicted[1])):
            if est is None:
                continue
            rel = "within" if est <= pred else "EXCEEDS"
            notes.append(f"measured {name}-side order {est} {rel} "
                         f"polygon prediction {pred}")

    def pick(explicit, which):
        if explicit is not None:
            return Fraction(explicit)
        if predicted is not None:
            return predicted[0 if which == "deg" else 1]
        est = est_deg if which == "deg" else est_ord
        return est if est is not None else Fraction(0)

    use_deg = pick(order_deg, "deg")
    use_ord = pick(order_ord, "ord")
    cd = Fraction(slack_deg) if slack_deg is not None else \
        fit_slack(degs, use_deg, "deg")
    co = Fraction(slack_ord) if slack_ord is not None else \
        fit_slack(ords, use_ord, "ord")

    verdicts = {
        ("deg", use_deg, cd): verify_bound(degs, use_deg, cd, "deg"),
        ("ord", use_ord, co): verify_bound(ords, use_ord, co, "ord"),
    }

    last = None
    for h, v in enumerate(degs):
        if _finite(v):
            last = h
    if last is None:
        notes.append("every coefficient vanishes through the truncation")
    elif y.trunc - last >= 2:
        notes.append(f"coefficients vanish from order {last + 1} on: "
                     f"possibly a polynomial solution of degree {last}")

    return GrowthReport(degs, ords, est_deg, est_ord, cd, co,
                        verdicts, notes)
