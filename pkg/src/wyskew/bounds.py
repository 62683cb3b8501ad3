"""Lower bounds on sums of skew informations, and the identities behind them.

Every function takes a state and observables and returns plain floats. The
comparison driver :func:`evaluate_all` collects them into a :class:`BoundReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .linalg import DensityMatrix, DimensionMismatchError, HermitianOperator, ObservableSet, ValidationError
from .skewinfo import skew_information

SATISFIED_ATOL = 1e-9
_SQRT_NOISE = 1e-12

__all__ = [
    "BoundReport",
    "ObservableSet",
    "chen_bound",
    "corollary_bound",
    "evaluate_all",
    "pair_weight_default",
    "pairwise_diff_bound",
    "pairwise_sum_bound",
    "parallelogram_identity",
    "sum_skew",
    "theorem1_bound",
    "weighted_relation",
]


def _root(x: float) -> float:
    if -_SQRT_NOISE <= x < 0.0:
        return 0.0
    return math.sqrt(x)


def _as_set(s) -> ObservableSet:
    return s if isinstance(s, ObservableSet) else ObservableSet(s)


def _check(rho: DensityMatrix, s: ObservableSet, min_n: int) -> None:
    if len(s) < min_n:
        raise ValidationError(f"bound needs at least {min_n} observables, got {len(s)}")
    if s.dim != rho.dim:
        raise DimensionMismatchError(f"observables have dim {s.dim} but state has dim {rho.dim}")


def _total(ops) -> HermitianOperator:
    it = iter(ops)
    acc = next(it)
    for o in it:
        acc = acc + o
    return acc


def sum_skew(rho: DensityMatrix, s) -> float:
    """``sum_i I_rho(A_i)``."""
    s = _as_set(s)
    _check(rho, s, 1)
    return math.fsum(skew_information(rho, a) for a in s)


def pair_weight_default(n: int) -> float:
    """Pair-term weight ``min(1/n^2, 2/(n^2 (n-1)))``.

    This is ``1/n^2`` for ``n = 2, 3``. For ``n >= 4``, ``1/n^2`` is too large:
    Cauchy-Schwarz over the ``n(n-1)/2`` pairs only gives
    ``sum x_ij^2 >= 2/(n(n-1)) (sum x_ij)^2``, and random instances violate
    the ``1/n^2`` version routinely.
    """
    return min(1.0 / (n * n), 2.0 / (n * n * (n - 1)))


def theorem1_bound(rho: DensityMatrix, s, pair_weight: float | None = None) -> float:
    """Multi-observable bound
    ``(1/n) I(sum_i A_i) + w (sum_{i<j} sqrt(I(A_i - A_j)))^2``.

    ``w`` defaults to :func:`pair_weight_default` (``1/n^2`` for two or three
    observables). Pass ``pair_weight=1/n**2`` to evaluate the ``1/n^2`` form at
    any ``n``; that form is not a valid bound for ``n >= 4``.
    """
    s = _as_set(s)
    _check(rho, s, 2)
    n = len(s)
    w = pair_weight_default(n) if pair_weight is None else float(pair_weight)
    whole = skew_information(rho, _total(s))
    roots = math.fsum(_root(skew_information(rho, a - b)) for a, b in combinations(s, 2))
    return whole / n + w * roots * roots


def corollary_bound(rho: DensityMatrix, a: HermitianOperator, b: HermitianOperator) -> tuple[float, float]:
    """Two-observable case: ``(1/2 I(A+B) + 1/4 I(A-B), 1/2 I(A+B))``.

    On pure states the loose member is the variance bound of Maccone and Pati.
    """
    s = ObservableSet([a, b])
    _check(rho, s, 2)
    plus = skew_information(rho, s[0] + s[1])
    minus = skew_information(rho, s[0] - s[1])
    return 0.5 * plus + 0.25 * minus, 0.5 * plus


def chen_bound(rho: DensityMatrix, s) -> float:
    """Chen et al. bound
    ``[sum_{i<j} I(A_i+A_j) - (sum_{i<j} sqrt(I(A_i+A_j)))^2 / (n-1)^2] / (n-2)``.

    The formula divides by ``n - 2`` so it is undefined for fewer than three
    observables.
    """
    s = _as_set(s)
    if len(s) < 3:
        raise ValidationError(f"Chen bound undefined for n < 3 (got n = {len(s)})")
    _check(rho, s, 3)
    n = len(s)
    pairs = [skew_information(rho, a + b) for a, b in combinations(s, 2)]
    roots = math.fsum(_root(p) for p in pairs)
    return (math.fsum(pairs) - roots * roots / (n - 1) ** 2) / (n - 2)


def parallelogram_identity(rho: DensityMatrix, a: HermitianOperator, b: HermitianOperator) -> tuple[float, float]:
    """``(I(A) + I(B), (I(A+B) + I(A-B)) / 2)``; the two agree exactly in theory."""
    s = ObservableSet([a, b])
    _check(rho, s, 2)
    a, b = s
    lhs = skew_information(rho, a) + skew_information(rho, b)
    rhs = 0.5 * (skew_information(rho, a + b) + skew_information(rho, a - b))
    return lhs, rhs


def _pairwise(rho: DensityMatrix, s, sign: int) -> float:
    s = _as_set(s)
    _check(rho, s, 2)
    n = len(s)
    terms = (skew_information(rho, a + b if sign > 0 else a - b) for a, b in combinations(s, 2))
    return math.fsum(terms) / (2 * (n - 1))


def pairwise_sum_bound(rho: DensityMatrix, s) -> float:
    """``sum_{i<j} I(A_i + A_j) / (2(n-1))``."""
    return _pairwise(rho, s, +1)


def pairwise_diff_bound(rho: DensityMatrix, s) -> float:
    """``sum_{i<j} I(A_i - A_j) / (2(n-1))``."""
    return _pairwise(rho, s, -1)


def weighted_relation(
    rho: DensityMatrix, a: HermitianOperator, b: HermitianOperator, lam: float
) -> tuple[float, float, float]:
    """Weighted two-observable relation for ``1/2 <= lam < 1``.

    Returns ``(lower, middle, upper)`` where::

        middle = I(A)/lam + I(B)/(1-lam)
        lower  = I(A-B) + I(((lam-1)/lam) A - B)
        upper  = I(A-B) + I(A - (lam/(lam-1)) B)

    with ``lower <= middle <= upper``; all three coincide at ``lam = 1/2``.
    """
    lam = float(lam)
    if not (0.5 <= lam < 1.0):
        raise ValidationError(f"weight must satisfy 1/2 <= lambda < 1, got {lam!r}")
    s = ObservableSet([a, b])
    _check(rho, s, 2)
    a, b = s
    diff = skew_information(rho, a - b)
    middle = skew_information(rho, a) / lam + skew_information(rho, b) / (1.0 - lam)
    lower = diff + skew_information(rho, ((lam - 1.0) / lam) * a - b)
    upper = diff + skew_information(rho, a - (lam / (lam - 1.0)) * b)
    return lower, middle, upper


@dataclass
class BoundReport:
    """Sum of skew informations with every applicable bound.

    ``satisfied[name]`` is ``sum_skew >= bounds[name] - 1e-9``. Weighted
    relations bound a weighted sum rather than ``sum_skew``, so they live in
    ``weighted`` keyed by lambda, and their flag ``satisfied["weighted@<lam>"]``
    records ``lower <= middle <= upper`` at the same tolerance.
    """

    sum_skew: float
    bounds: dict[str, float] = field(default_factory=dict)
    weighted: dict[float, tuple[float, float, float]] = field(default_factory=dict)
    satisfied: dict[str, bool] = field(default_factory=dict)

    @property
    def all_satisfied(self) -> bool:
        return all(self.satisfied.values())


def evaluate_all(rho: DensityMatrix, s, lambdas=()) -> BoundReport:
    s = _as_set(s)
    _check(rho, s, 2)
    report = BoundReport(sum_skew=sum_skew(rho, s))
    b = report.bounds
    b["theorem1"] = theorem1_bound(rho, s)
    if len(s) >= 3:
        b["chen"] = chen_bound(rho, s)
    b["pairwise_sum"] = pairwise_sum_bound(rho, s)
    b["pairwise_diff"] = pairwise_diff_bound(rho, s)
    if len(s) == 2:
        b["corollary"], b["corollary_loose"] = corollary_bound(rho, s[0], s[1])
    for name, value in b.items():
        report.satisfied[name] = report.sum_skew >= value - SATISFIED_ATOL
    if len(s) == 2:
        for lam in lambdas:
            lo, mid, hi = weighted_relation(rho, s[0], s[1], lam)
            report.weighted[float(lam)] = (lo, mid, hi)
            ok = lo <= mid + SATISFIED_ATOL and mid <= hi + SATISFIED_ATOL
            report.satisfied[f"weighted@{float(lam):g}"] = ok
    return report
