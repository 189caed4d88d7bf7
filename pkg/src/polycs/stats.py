"""Photon statistics and the metric factor of a coherent state.

With N(xbar) the squared-norm constant and primes denoting d/d(xbar):

    mean photon number      N_mean  = xbar N'/N
    intensity correlation   I       = N'' N / N'^2        (g2; undefined at 0)
    Mandel parameter        Q       = xbar (N''/N' - N'/N)
    metric factor           omega   = N'/N + xbar (N''/N - N'^2/N^2)

All derivatives are exact parameter shifts of the hypergeometric norm, not
finite differences.  `direct_moments` provides the independent brute-force
route through the coefficient vector; the two must agree and tests hold them
to it.  "Photon number" always means the tower index n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, DomainError
from .hypergeom import pfq, pfq_derivative
from .states import CoefficientVector, CSSpec, arg_sign, coefficients, series_params


@dataclass(frozen=True)
class StatRecord:
    """Photon statistics of one state at one grid point."""

    xbar: float
    photon_dist: tuple[float, ...]
    mean_n: float
    intensity_corr: float  # nan at xbar = 0, where it is 0/0
    mandel_q: float
    metric: float


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid over xbar for a set of representation labels."""

    xbar_min: float
    xbar_max: float
    points: int
    labels: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.xbar_min < 0.0:
            raise DomainError(f"xbar_min must be non-negative, got {self.xbar_min}")
        if self.xbar_max < self.xbar_min:
            raise DomainError("xbar_max must be >= xbar_min")
        if self.points < 1:
            raise DomainError(f"points must be >= 1, got {self.points}")
        if not self.labels:
            raise DomainError("labels must be nonempty")
        object.__setattr__(self, "labels", tuple(float(v) for v in self.labels))

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.xbar_min])
        return np.linspace(self.xbar_min, self.xbar_max, self.points)


def norm_derivatives(spec: CSSpec) -> tuple[float, float, float]:
    """(N, N', N'') with respect to xbar, by parameter shifts."""
    params = series_params(spec)
    sign = arg_sign(spec)
    n0 = pfq(params).value.real
    n1 = sign * pfq_derivative(params, 1).value.real
    n2 = pfq_derivative(params, 2).value.real
    return n0, n1, n2


def photon_distribution(
    spec: CSSpec, n_max: int | None = None, eps: float = 1e-12
) -> np.ndarray:
    """P(n) = |c_n|^2 of the normalized coefficient vector.

    With n_max given, the result is padded or trimmed to length n_max + 1.
    """
    probs = np.abs(coefficients(spec, eps=eps).coeffs) ** 2
    if n_max is None:
        return probs
    out = np.zeros(n_max + 1)
    take = min(probs.size, n_max + 1)
    out[:take] = probs[:take]
    return out


def mean_photon(spec: CSSpec) -> float:
    if spec.xbar == 0.0:
        return 0.0
    n0, n1, _ = norm_derivatives(spec)
    return spec.xbar * n1 / n0


def intensity_correlation(spec: CSSpec) -> float:
    if spec.xbar == 0.0:
        raise DegenerateInput("intensity correlation is 0/0 at xbar = 0")
    n0, n1, n2 = norm_derivatives(spec)
    return n2 * n0 / n1**2


def mandel_q(spec: CSSpec) -> float:
    if spec.xbar == 0.0:
        return 0.0
    n0, n1, n2 = norm_derivatives(spec)
    return spec.xbar * (n2 / n1 - n1 / n0)


def metric_factor(spec: CSSpec) -> float:
    n0, n1, n2 = norm_derivatives(spec)
    ratio = n1 / n0
    return ratio + spec.xbar * (n2 / n0 - ratio**2)


def direct_moments(v: CoefficientVector) -> tuple[float, float, float]:
    """(mean, <n(n-1)>, variance) by direct summation over |c_n|^2."""
    probs = np.abs(v.coeffs) ** 2
    n = np.arange(probs.size)
    mean = float(np.dot(n, probs))
    fact2 = float(np.dot(n * (n - 1), probs))
    second = float(np.dot(n * n, probs))
    return mean, fact2, second - mean**2


def stat_record(
    spec: CSSpec, n_max: int | None = None, eps: float = 1e-12
) -> StatRecord:
    """Assemble the full statistics record for one state."""
    dist = photon_distribution(spec, n_max=n_max, eps=eps)
    if spec.xbar == 0.0:
        corr = math.nan
    else:
        corr = intensity_correlation(spec)
    return StatRecord(
        xbar=spec.xbar,
        photon_dist=tuple(float(p) for p in dist),
        mean_n=mean_photon(spec),
        intensity_corr=corr,
        mandel_q=mandel_q(spec),
        metric=metric_factor(spec),
    )
