"""Decision procedures for the convex stochastic order.

A distribution X precedes Y in the convex order (X <=_cx Y) when
E f(X) <= E f(Y) for every convex f with finite expectations.  On finitely
supported distributions the relation is decidable exactly, and this module
implements four routes to the decision:

* ``cx_compare_oracle`` -- the ground truth.  Equal means plus stop-loss
  dominance E(X - t)_+ <= E(Y - t)_+ at every point of the union of supports
  characterises the order (both stop-loss transforms are piecewise linear
  with kinks only at support points and vanish identically outside the
  supports' hull once means agree).
* ``ohlin_check`` -- the single-crossing sufficient condition: equal means
  and F_X <= F_Y left of some point and F_X >= F_Y right of it.
* ``levin_steckin_check`` -- equal endpoint values, equal total integral of
  the two distribution functions over [a, b], and dominance of all partial
  integrals; necessary and sufficient.
* ``szostok_decision`` -- when the CDF difference changes sign m times, the
  order is decided by the parity of m together with a chain of partial-sum
  inequalities on the segment areas A_0 .. A_m.

Conventions shared by all procedures:

* Distribution functions are left-continuous, F(x) = P(X < x).
* All comparisons are nonstrict, so a pair whose CDFs coincide on a
  neighbourhood of a crossing is still accepted as single-crossing.
* Every procedure is phrased as "does lhs <=_cx rhs hold"; callers never
  pass difference functions.
* A step CDF is constant on each interval (g_i, g_{i+1}] between adjacent
  points of the merged support grid, so evaluating on segments between grid
  points is exhaustive; a "point of sign change" is the left endpoint of the
  first segment on which the difference assumes its new sign (the crossing
  itself belongs to neither strict region).

The randomized corpora used to exercise these procedures are seeded
explicitly, so parallel batch runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .distributions import (
    DiscreteDistribution,
    ParameterError,
    StepCdf,
    as_rational,
)

__all__ = [
    "CxVerdict",
    "OhlinReport",
    "LevinSteckinReport",
    "SzostokReport",
    "StandingHypothesisError",
    "sign_changes",
    "cx_compare_oracle",
    "ohlin_check",
    "crossing_points",
    "levin_steckin_check",
    "szostok_decision",
]

CdfLike = Union[DiscreteDistribution, StepCdf]


class StandingHypothesisError(ParameterError):
    """The inputs violate a procedure's standing hypotheses.

    Raised by ``szostok_decision`` when endpoint values or the zero-integral
    hypothesis fail, so that a hypothesis violation is never conflated with a
    negative decision.
    """


def _as_distribution(x: CdfLike) -> DiscreteDistribution:
    return x.distribution if isinstance(x, StepCdf) else x


@dataclass(frozen=True)
class CxVerdict:
    """Outcome of a convex-order comparison lhs <=_cx rhs.

    ``witness`` is a threshold t with stop_loss(lhs, t) > stop_loss(rhs, t);
    it is present exactly when the means agree but dominance fails, and it is
    the smallest such t on the union of supports.  ``mean_gap`` is
    mean(rhs) - mean(lhs).
    """

    holds: bool
    means_equal: bool
    witness: Optional[Fraction]
    mean_gap: Fraction

    def to_json_dict(self) -> dict:
        return {
            "holds": self.holds,
            "means_equal": self.means_equal,
            "witness": None if self.witness is None else str(self.witness),
            "mean_gap": str(self.mean_gap),
        }


@dataclass(frozen=True)
class OhlinReport:
    """Outcome of the single-crossing test.

    ``applies`` means the sufficient condition is met (equal means and the
    CDF difference F_lhs - F_rhs is <= 0 below ``crossing`` and >= 0 above
    it).  ``identical`` flags coinciding CDFs, in which case no crossing
    point is reported.
    """

    applies: bool
    crossing: Optional[Fraction]
    identical: bool

    def to_json_dict(self) -> dict:
        return {
            "applies": self.applies,
            "crossing": None if self.crossing is None else str(self.crossing),
            "identical": self.identical,
        }


@dataclass(frozen=True)
class LevinSteckinReport:
    """The three integral conditions, each reported separately.

    ``endpoint_match`` compares the total mass accumulated through b (the
    right limits F(b+), so an atom sitting exactly at b is counted),
    ``integral_match`` compares the exact integrals of the two distribution
    functions over [a, b] (equivalent to equal means), and
    ``partial_dominance`` asserts integral_a^x F_lhs <= integral_a^x F_rhs at
    every point of (a, b).  The conjunction is necessary and sufficient for
    lhs <=_cx rhs.
    """

    endpoint_match: bool
    integral_match: bool
    partial_dominance: bool

    @property
    def holds(self) -> bool:
        return self.endpoint_match and self.integral_match and self.partial_dominance

    def __bool__(self) -> bool:
        return self.holds

    def to_json_dict(self) -> dict:
        return {
            "holds": self.holds,
            "endpoint_match": self.endpoint_match,
            "integral_match": self.integral_match,
            "partial_dominance": self.partial_dominance,
        }


@dataclass(frozen=True)
class SzostokReport:
    """Sign-change analysis of F = F_rhs - F_lhs on [a, b].

    ``areas`` lists A_i = integral of |F| over the i-th segment cut by the
    sign-change points (one more area than points).  ``parity_ok`` requires
    an odd number of sign changes (vacuously true when F vanishes
    identically), ``partial_sums_ok`` checks the chain A_0 >= A_1,
    A_0 + A_2 >= A_1 + A_3, ...  The decision is the conjunction of parity,
    the partial-sum chain and nonnegativity of F on the first segment.
    """

    sign_change_points: tuple[Fraction, ...]
    areas: tuple[Fraction, ...]
    parity_ok: bool
    partial_sums_ok: bool
    first_segment_nonneg: bool
    decision: bool

    def to_json_dict(self) -> dict:
        return {
            "sign_change_points": [str(x) for x in self.sign_change_points],
            "areas": [str(a) for a in self.areas],
            "parity_ok": self.parity_ok,
            "partial_sums_ok": self.partial_sums_ok,
            "first_segment_nonneg": self.first_segment_nonneg,
            "decision": self.decision,
        }


def sign_changes(values: Sequence[Fraction]) -> int:
    """Number of sign alternations after discarding zero terms."""
    previous = 0
    changes = 0
    for v in values:
        if v == 0:
            continue
        sign = 1 if v > 0 else -1
        if previous and sign != previous:
            changes += 1
        previous = sign
    return changes


def cx_compare_oracle(lhs: CdfLike, rhs: CdfLike) -> CxVerdict:
    """Decide lhs <=_cx rhs exactly via the stop-loss characterisation.

    The witness, when dominance fails with equal means, doubles as a
    certificate: the angle function at the witness is a convex function whose
    expectations violate the order.
    """
    dl = _as_distribution(lhs)
    dr = _as_distribution(rhs)
    gap = dr.mean() - dl.mean()
    if gap != 0:
        return CxVerdict(holds=False, means_equal=False, witness=None, mean_gap=gap)
    grid = sorted(set(dl.support) | set(dr.support))
    for t in grid:
        if dl.stop_loss(t) > dr.stop_loss(t):
            return CxVerdict(holds=False, means_equal=True, witness=t, mean_gap=gap)
    return CxVerdict(holds=True, means_equal=True, witness=None, mean_gap=gap)


def _segment_values(
    dl: DiscreteDistribution, dr: DiscreteDistribution
) -> tuple[list[Fraction], list[Fraction]]:
    """Merged support grid and the values of F_rhs - F_lhs on the segments.

    Entry i is the constant value of the difference on (grid[i], grid[i+1]];
    outside the grid hull the difference vanishes.
    """
    grid = sorted(set(dl.support) | set(dr.support))
    values = [dr.cdf_right(g) - dl.cdf_right(g) for g in grid[:-1]]
    return grid, values


def ohlin_check(lhs: CdfLike, rhs: CdfLike) -> OhlinReport:
    """Single-crossing sufficient condition for lhs <=_cx rhs.

    Evaluates the CDF difference on the merged support grid together with
    the midpoints of consecutive grid points and one point beyond each end
    (a step CDF is constant between support points, so this is exhaustive).
    """
    dl = _as_distribution(lhs)
    dr = _as_distribution(rhs)
    if dl == dr:
        return OhlinReport(applies=True, crossing=None, identical=True)
    if dl.mean() != dr.mean():
        return OhlinReport(applies=False, crossing=None, identical=False)
    grid = sorted(set(dl.support) | set(dr.support))
    probes: list[Fraction] = [grid[0] - 1]
    for left, right in zip(grid, grid[1:]):
        probes.append(left)
        probes.append((left + right) / 2)
    probes.append(grid[-1])
    probes.append(grid[-1] + 1)
    diffs = [dl.cdf(x) - dr.cdf(x) for x in probes]
    first_positive = next((i for i, d in enumerate(diffs) if d > 0), None)
    last_negative = next(
        (i for i in range(len(diffs) - 1, -1, -1) if diffs[i] < 0), None
    )
    if first_positive is not None and last_negative is not None:
        if first_positive < last_negative:
            return OhlinReport(applies=False, crossing=None, identical=False)
    # Crossing: left endpoint of the first segment where the difference
    # turns nonnegative for good.  With equal, non-identical distributions
    # both strict signs occur.
    _, seg = _segment_values(dl, dr)
    crossing = None
    for i, v in enumerate(seg):
        if v < 0:  # F_lhs - F_rhs strictly positive on this segment
            crossing = grid[i]
            break
    return OhlinReport(applies=True, crossing=crossing, identical=False)


def crossing_points(lhs: CdfLike, rhs: CdfLike) -> list[Fraction]:
    """Points of sign change of F_rhs - F_lhs, left-to-right.

    Each reported point is the left endpoint of the first grid segment on
    which the difference assumes its new sign; zero segments between runs of
    equal sign are discarded, matching the sign-change count convention.
    """
    dl = _as_distribution(lhs)
    dr = _as_distribution(rhs)
    grid, values = _segment_values(dl, dr)
    points: list[Fraction] = []
    previous = 0
    for i, v in enumerate(values):
        if v == 0:
            continue
        sign = 1 if v > 0 else -1
        if previous and sign != previous:
            points.append(grid[i])
        previous = sign
    return points


def _bounded_segments(
    dl: DiscreteDistribution,
    dr: DiscreteDistribution,
    a: Fraction,
    b: Fraction,
) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Grid over [a, b] plus per-segment values of F_lhs and F_rhs."""
    if a >= b:
        raise ParameterError("need a < b")
    for d in (dl, dr):
        if d.min_support < a or d.max_support > b:
            raise ParameterError(
                f"distribution escapes [{a}, {b}]: "
                f"support spans [{d.min_support}, {d.max_support}]"
            )
    inner = sorted(s for s in set(dl.support) | set(dr.support) if a < s < b)
    grid = [a] + inner + [b]
    left_vals = [dl.cdf_right(g) for g in grid[:-1]]
    right_vals = [dr.cdf_right(g) for g in grid[:-1]]
    return grid, left_vals, right_vals


def levin_steckin_check(
    lhs: CdfLike, rhs: CdfLike, a: Fraction, b: Fraction
) -> LevinSteckinReport:
    """The three integral conditions for lhs <=_cx rhs on [a, b].

    Integrals are exact sums over the segments on which the step CDFs are
    constant; the partial-integral dominance is checked at every grid point,
    which suffices because the partial integrals are piecewise linear in the
    upper limit.
    """
    dl = _as_distribution(lhs)
    dr = _as_distribution(rhs)
    a = as_rational(a)
    b = as_rational(b)
    grid, left_vals, right_vals = _bounded_segments(dl, dr, a, b)
    endpoint_match = dl.cdf_right(b) == dr.cdf_right(b)
    cum_l = Fraction(0)
    cum_r = Fraction(0)
    partial = True
    for i in range(len(grid) - 1):
        length = grid[i + 1] - grid[i]
        cum_l += left_vals[i] * length
        cum_r += right_vals[i] * length
        if grid[i + 1] < b and cum_l > cum_r:
            partial = False
    return LevinSteckinReport(
        endpoint_match=endpoint_match,
        integral_match=cum_l == cum_r,
        partial_dominance=partial,
    )


def szostok_decision(
    lhs: CdfLike, rhs: CdfLike, a: Fraction, b: Fraction
) -> SzostokReport:
    """Decide lhs <=_cx rhs from the sign-change structure of the CDF gap.

    Standing hypotheses (equal endpoint values and zero total integral of
    F = F_rhs - F_lhs over [a, b], i.e. equal means) are enforced and their
    violation raises :class:`StandingHypothesisError` rather than returning
    a negative decision.  Nonnegativity of F on the first segment is part of
    the reported decision, not a hard hypothesis: when it fails the order
    fails with it.
    """
    dl = _as_distribution(lhs)
    dr = _as_distribution(rhs)
    a = as_rational(a)
    b = as_rational(b)
    grid, left_vals, right_vals = _bounded_segments(dl, dr, a, b)
    if dl.cdf(a) != dr.cdf(a) or dl.cdf_right(b) != dr.cdf_right(b):
        raise StandingHypothesisError("distribution functions differ at an endpoint")
    diffs = [r - l for l, r in zip(left_vals, right_vals)]
    lengths = [grid[i + 1] - grid[i] for i in range(len(grid) - 1)]
    total = sum((d * ln for d, ln in zip(diffs, lengths)), Fraction(0))
    if total != 0:
        raise StandingHypothesisError(
            f"total integral of the CDF difference is {total}, not 0"
        )

    points: list[Fraction] = []
    previous = 0
    first_sign = 0
    for i, v in enumerate(diffs):
        if v == 0:
            continue
        sign = 1 if v > 0 else -1
        if not previous:
            first_sign = sign
        elif sign != previous:
            points.append(grid[i])
        previous = sign

    if first_sign == 0:
        # F vanishes identically: the comparison is an equality, every
        # convex-function inequality is tight, and the lemma's hypotheses
        # hold vacuously.
        return SzostokReport(
            sign_change_points=(),
            areas=(Fraction(0),),
            parity_ok=True,
            partial_sums_ok=True,
            first_segment_nonneg=True,
            decision=True,
        )

    m = len(points)
    areas = [Fraction(0)] * (m + 1)
    segment = 0
    for i, v in enumerate(diffs):
        while segment < m and grid[i] >= points[segment]:
            segment += 1
        areas[segment] += abs(v) * lengths[i]

    parity_ok = m % 2 == 1
    even_sum = Fraction(0)
    odd_sum = Fraction(0)
    partial_sums_ok = True
    i = 0
    while 2 * i + 1 <= m - 1:
        even_sum += areas[2 * i]
        odd_sum += areas[2 * i + 1]
        if even_sum < odd_sum:
            partial_sums_ok = False
        i += 1
    first_segment_nonneg = first_sign > 0
    return SzostokReport(
        sign_change_points=tuple(points),
        areas=tuple(areas),
        parity_ok=parity_ok,
        partial_sums_ok=partial_sums_ok,
        first_segment_nonneg=first_segment_nonneg,
        decision=parity_ok and partial_sums_ok and first_segment_nonneg,
    )
