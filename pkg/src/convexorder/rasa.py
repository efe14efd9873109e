"""Bernstein basis evaluation and the inequality verifiers built on it.

The central object is the quadratic Bernstein form

    sum_{i,j=0}^{n} ( b_{n,i}(x) b_{n,j}(x) + b_{n,i}(y) b_{n,j}(y)
                      - 2 b_{n,i}(x) b_{n,j}(y) ) * f((i + j) / (2n))

whose nonnegativity for every convex f on [0, 1] is the Rasa inequality, and
its m-variable generalisation with coefficient m on the cross product.  Both
forms are evaluated exactly and both are tied to a convex-order statement:
the form equals 2 (resp. m) times E_rhs f - E_lhs f, where lhs is the law of
the normalised sum of independent binomial draws with parameters x_i and rhs
is the uniform mixture of the laws of the normalised i.i.d. sums.  The
verifiers here decide those order relations with the exact oracle.

Boundary parameters x_i in {0, 1} are handled directly through the Dirac
degeneration of the binomial law, so no limiting argument is required
anywhere: every claim is a finite, exact computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .convex_functions import ConvexTestFunction, builtin_family
from .cx_order import CxVerdict, cx_compare_oracle, sign_changes
from .distributions import (
    DiscreteDistribution,
    ParameterError,
    RationalLike,
    as_rational,
    bernoulli,
    binomial,
    convolve,
    convolve_many,
    mixture,
    scale,
)

__all__ = [
    "RasaPair",
    "PsiPattern",
    "GeneralizedVerdicts",
    "bernstein",
    "bernstein_vector",
    "rasa_form",
    "rasa_form_general",
    "rasa_pair",
    "generalized_pair",
    "verify_theorem_main",
    "verify_generalized",
    "poisson_binomial",
    "verify_hoeffding",
    "psi_sign_pattern",
    "builtin_family",
]


def bernstein(n: int, i: int, x: RationalLike) -> Fraction:
    """The Bernstein basis polynomial C(n,i) x^i (1-x)^(n-i), exactly."""
    if n < 1:
        raise ParameterError(f"degree must be >= 1, got {n}")
    if not 0 <= i <= n:
        raise ParameterError(f"index {i} outside 0..{n}")
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise ParameterError(f"argument must lie in [0, 1], got {x}")
    return math.comb(n, i) * x**i * (1 - x) ** (n - i)


@lru_cache(maxsize=None)
def bernstein_vector(n: int, x: Fraction) -> tuple[Fraction, ...]:
    """All basis values (b_{n,0}(x), ..., b_{n,n}(x)); the binomial(n, x) masses."""
    if n < 1:
        raise ParameterError(f"degree must be >= 1, got {n}")
    if not 0 <= x <= 1:
        raise ParameterError(f"argument must lie in [0, 1], got {x}")
    y = 1 - x
    x_powers = [Fraction(1)]
    y_powers = [Fraction(1)]
    for _ in range(n):
        x_powers.append(x_powers[-1] * x)
        y_powers.append(y_powers[-1] * y)
    return tuple(
        math.comb(n, i) * x_powers[i] * y_powers[n - i] for i in range(n + 1)
    )


def _cauchy_product(
    a: Sequence[Fraction], b: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


@lru_cache(maxsize=None)
def _self_product(n: int, x: Fraction, m: int) -> tuple[Fraction, ...]:
    """m-fold Cauchy power of the Bernstein vector of degree n at x."""
    vec = bernstein_vector(n, x)
    out = vec
    for _ in range(m - 1):
        out = _cauchy_product(out, vec)
    return out


def rasa_form(
    n: int, x: RationalLike, y: RationalLike, f: ConvexTestFunction
) -> Fraction:
    """Exact value of the two-variable quadratic Bernstein form at (x, y)."""
    x = as_rational(x)
    y = as_rational(y)
    bx = bernstein_vector(n, x)
    by = bernstein_vector(n, y)
    coeff = [Fraction(0)] * (2 * n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            coeff[i + j] += bx[i] * bx[j] + by[i] * by[j] - 2 * bx[i] * by[j]
    return sum(
        (c * f(Fraction(k, 2 * n)) for k, c in enumerate(coeff) if c != 0),
        Fraction(0),
    )


def rasa_form_general(
    n: int, xs: Sequence[RationalLike], f: ConvexTestFunction
) -> Fraction:
    """Exact value of the m-variable Bernstein form at (x_1, ..., x_m).

    The coefficient of f(k / (mn)) collects, over all index tuples summing
    to k, the m same-parameter products minus m times the cross product; the
    grouping is computed with Cauchy products of the basis vectors.
    """
    xs = [as_rational(x) for x in xs]
    m = len(xs)
    if m < 2:
        raise ParameterError("need at least two parameters")
    cross: tuple[Fraction, ...] = bernstein_vector(n, xs[0])
    for x in xs[1:]:
        cross = _cauchy_product(cross, bernstein_vector(n, x))
    coeff = [-m * c for c in cross]
    for x in xs:
        for k, v in enumerate(_self_product(n, x, m)):
            coeff[k] += v
    return sum(
        (c * f(Fraction(k, m * n)) for k, c in enumerate(coeff) if c != 0),
        Fraction(0),
    )


@dataclass(frozen=True)
class RasaPair:
    """The two sides of the order relation behind the Bernstein form.

    ``lhs`` is the law of the normalised sum of independent binomial draws
    (one per parameter), ``rhs`` the uniform mixture of the laws of the
    normalised m-fold i.i.d. sums; both live on [0, 1] and share the mean
    (x_1 + ... + x_m) / m.
    """

    lhs: DiscreteDistribution
    rhs: DiscreteDistribution
    n: int
    m: int
    parameters: tuple[Fraction, ...]


def _binomial_or_dirac(n: int, p: Fraction) -> DiscreteDistribution:
    # binomial() already degenerates at p in {0, 1}; kept separate for clarity
    # at call sites that rely on the boundary behaviour.
    return binomial(n, p)


def generalized_pair(n: int, xs: Sequence[RationalLike]) -> RasaPair:
    """Construct the compared pair for parameters (x_1, ..., x_m), m >= 2."""
    xs = tuple(as_rational(x) for x in xs)
    m = len(xs)
    if m < 2:
        raise ParameterError("need at least two parameters")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    for x in xs:
        if not 0 <= x <= 1:
            raise ParameterError(f"parameters must lie in [0, 1], got {x}")
    mn = m * n
    parts = [_binomial_or_dirac(n, x) for x in xs]
    lhs = scale(convolve_many(parts), mn)
    self_sums = [
        scale(convolve_many([part] * m), mn) for part in parts
    ]
    weights = [Fraction(1, m)] * m
    rhs = mixture(weights, self_sums)
    return RasaPair(lhs=lhs, rhs=rhs, n=n, m=m, parameters=xs)


def rasa_pair(n: int, x: RationalLike, y: RationalLike) -> RasaPair:
    """Two-parameter special case of :func:`generalized_pair`."""
    return generalized_pair(n, (x, y))


def verify_theorem_main(n: int, x: RationalLike, y: RationalLike) -> CxVerdict:
    """Oracle verdict for sum-vs-mixture on the unscaled two-parameter pair."""
    x = as_rational(x)
    y = as_rational(y)
    bx = _binomial_or_dirac(n, x)
    by = _binomial_or_dirac(n, y)
    lhs = convolve(bx, by)
    rhs = mixture(
        [Fraction(1, 2), Fraction(1, 2)], [convolve(bx, bx), convolve(by, by)]
    )
    return cx_compare_oracle(lhs, rhs)


def poisson_binomial(ps: Sequence[RationalLike]) -> DiscreteDistribution:
    """Exact law of a sum of independent Bernoulli draws with parameters ps."""
    if not ps:
        raise ParameterError("need at least one parameter")
    parts = [bernoulli(p) for p in ps]
    return convolve_many(parts)


def verify_hoeffding(ps: Sequence[RationalLike]) -> CxVerdict:
    """Binomial convex-concentration check.

    Compares the sum of independent Bernoulli(p_i) draws against the
    binomial law with the same trial count and the averaged parameter; the
    sum precedes the binomial in the convex order.
    """
    ps = [as_rational(p) for p in ps]
    if not ps:
        raise ParameterError("need at least one parameter")
    for p in ps:
        if not 0 < p < 1:
            raise ParameterError(f"parameters must lie in (0, 1), got {p}")
    n = len(ps)
    p_bar = sum(ps, Fraction(0)) / n
    return cx_compare_oracle(poisson_binomial(ps), binomial(n, p_bar))


@dataclass(frozen=True)
class PsiPattern:
    """The exact sequence psi_k separating mixture and averaged binomial masses.

    psi_k = (1/m) sum_i x_i^k (1-x_i)^(mn-k) - xbar^k (1-xbar)^(mn-k) for
    k = 0..mn.  For interior, not-all-equal parameters the signs follow the
    pattern +,...,-,...,+ with exactly two changes.
    """

    values: tuple[Fraction, ...]
    pattern: str
    change_count: int

    def to_json_dict(self) -> dict:
        return {
            "values": [str(v) for v in self.values],
            "pattern": self.pattern,
            "change_count": self.change_count,
        }


def psi_sign_pattern(n: int, xs: Sequence[RationalLike]) -> PsiPattern:
    """Compute psi_0..psi_mn and its sign-change structure.

    Parameters must be strictly inside (0, 1) and not all equal; the all
    equal input makes psi identically zero and is rejected as degenerate.
    """
    xs = [as_rational(x) for x in xs]
    m = len(xs)
    if m < 2:
        raise ParameterError("need at least two parameters")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    for x in xs:
        if not 0 < x < 1:
            raise ParameterError(f"parameters must lie in (0, 1), got {x}")
    if all(x == xs[0] for x in xs):
        raise ParameterError("degenerate input: all parameters equal, psi == 0")
    mn = m * n
    x_bar = sum(xs, Fraction(0)) / m
    values = []
    for k in range(mn + 1):
        avg = sum(
            (x**k * (1 - x) ** (mn - k) for x in xs), Fraction(0)
        ) / m
        values.append(avg - x_bar**k * (1 - x_bar) ** (mn - k))
    pattern = "".join("+" if v > 0 else "-" if v < 0 else "0" for v in values)
    return PsiPattern(
        values=tuple(values),
        pattern=pattern,
        change_count=sign_changes(values),
    )


@dataclass(frozen=True)
class GeneralizedVerdicts:
    """The three order relations behind the m-variable inequality.

    (a) the independent sum precedes the pooled binomial law,
    (b) the pooled binomial law precedes the uniform mixture of i.i.d. sums,
    (c) the independent sum precedes the mixture directly.
    All three are oracle verdicts on the unscaled distributions.
    """

    sum_vs_pooled: CxVerdict
    pooled_vs_mixture: CxVerdict
    sum_vs_mixture: CxVerdict

    @property
    def all_hold(self) -> bool:
        return (
            self.sum_vs_pooled.holds
            and self.pooled_vs_mixture.holds
            and self.sum_vs_mixture.holds
        )

    def to_json_dict(self) -> dict:
        return {
            "sum_vs_pooled": self.sum_vs_pooled.to_json_dict(),
            "pooled_vs_mixture": self.pooled_vs_mixture.to_json_dict(),
            "sum_vs_mixture": self.sum_vs_mixture.to_json_dict(),
            "all_hold": self.all_hold,
        }


def verify_generalized(n: int, xs: Sequence[RationalLike]) -> GeneralizedVerdicts:
    """Oracle verdicts for the three unscaled relations at (n, x_1..x_m)."""
    xs = tuple(as_rational(x) for x in xs)
    m = len(xs)
    if m < 2:
        raise ParameterError("need at least two parameters")
    parts = [_binomial_or_dirac(n, x) for x in xs]
    the_sum = convolve_many(parts)
    x_bar = sum(xs, Fraction(0)) / m
    pooled = _binomial_or_dirac(m * n, x_bar)
    mixed = mixture(
        [Fraction(1, m)] * m, [convolve_many([part] * m) for part in parts]
    )
    return GeneralizedVerdicts(
        sum_vs_pooled=cx_compare_oracle(the_sum, pooled),
        pooled_vs_mixture=cx_compare_oracle(pooled, mixed),
        sum_vs_mixture=cx_compare_oracle(the_sum, mixed),
    )
