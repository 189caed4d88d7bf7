"""Berry connection / loop phase and the Laplace bridge between the two
noncompact coherent-state families.

Berry connection.  For every family the exact overlap derivative collapses to

    <psi | d/dt | psi> = A(xbar) (alpha* dalpha/dt - dalpha*/dt alpha),

with a real scalar A(xbar) built from the one-step-shifted norm series over
the unshifted one:

    SU2_PCS    A = (2j [chi_1]! / 2)     * F(params+1) / F(params)
    SU11_BGCS  A = 1 / (2 (2k) [rho_1]!) * F(params+1) / F(params)
    SU11_PCS   A = (2k) / (2 [rho_1]!)   * F(params+1) / F(params)

The geometric phase over a closed amplitude loop is gamma =
i * integral_0^T <psi|d/dt|psi> dt, computed by composite trapezoid; for a
circle of radius r this collapses to -4 pi A(r-dependent xbar) r^2 (times the
traversal sign), which for the linear compact family reproduces the classical
-4 pi j r^2 / (1 + r^2).

Laplace bridge.  A normalized tower vector c defines two entire series, one
on the eigenstate-family weights (F) and one on the displacement-family
weights (G); they satisfy

    G(1/Z, k) = Z^{2k} / Gamma(2k) * integral_0^inf xi^{2k-1} F(xi, k) e^{-Z xi} dxi.

The prefactor carries Gamma(2k), not its square root: the constant probe
c = (1, 0, ...) forces G = 1 and the integral equals Gamma(2k) Z^{-2k}, so
only the Gamma(2k) normalization closes the identity.  The integral is done
with generalized Gauss-Laguerre nodes (weight u^{2k-1} e^{-u} after scaling
by Z), exact for the polynomial series generated by finite c; an adaptive
fallback covers disagreement between node counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import roots_genlaguerre

from . import algebra
from .algebra import DeformationSpec
from .errors import DomainError, QuadratureFailure
from .hypergeom import log_gamma, pfq, pochhammer, shift_params
from .states import CSFamily, CSSpec, coefficients, series_params


@dataclass(frozen=True)
class LoopSpec:
    """Circular amplitude path alpha(t) = r exp(i w t), sampled uniformly."""

    radius: float
    angular_rate: float
    samples: int = 256

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise DomainError(f"loop radius must be positive, got {self.radius}")
        if self.angular_rate == 0.0:
            raise DomainError("angular rate must be nonzero")
        if self.samples < 16:
            raise DomainError(f"need at least 16 samples, got {self.samples}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / abs(self.angular_rate)


@dataclass(frozen=True)
class LaplaceProbe:
    """Finite normalized tower vector plus the transform parameters.

    deformation_coeffs selects the noncompact deformation entering the
    [rho_n]! weights; the default (1,) is the undeformed case.
    """

    c: tuple[complex, ...]
    k: float
    Z: float
    quad_nodes: int = 64
    deformation_coeffs: tuple[float, ...] = (1.0,)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", tuple(complex(v) for v in self.c))
        norm = math.sqrt(sum(abs(v) ** 2 for v in self.c))
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"probe coefficients must be normalized, |c| = {norm}")
        if self.k <= 0.0:
            raise DomainError(f"k must be positive, got {self.k}")
        if self.Z <= 0.0:
            raise DomainError(f"Z must be positive, got {self.Z}")
        if self.quad_nodes < 4:
            raise DomainError("need at least 4 quadrature nodes")
        if not self.deformation_coeffs or self.deformation_coeffs[-1] <= 0.0:
            raise DomainError("probe deformation needs a positive leading coefficient")

    @property
    def deformation(self) -> DeformationSpec:
        return algebra.su11_spec(self.deformation_coeffs, self.k)


def connection_coefficient(spec: CSSpec) -> float:
    """The scalar A(xbar) multiplying (alpha* alpha_dot - alpha_dot* alpha)."""
    d = spec.deformation
    factor1 = algebra.deformation_factor(d, 1.0)  # [chi_1]! resp. [rho_1]!
    if spec.family is CSFamily.SU2_PCS:
        prefactor = d.two_j * factor1 / 2.0
    elif spec.family is CSFamily.SU11_BGCS:
        prefactor = 1.0 / (2.0 * (2.0 * d.rep_label) * factor1)
    else:
        prefactor = (2.0 * d.rep_label) / (2.0 * factor1)
    params = series_params(spec)
    base = pfq(params).value.real
    shifted = pfq(shift_params(params, 1)).value.real
    return prefactor * shifted / base


def berry_phase_loop(spec_template: CSSpec, loop: LoopSpec) -> float:
    """gamma = i * integral of the overlap derivative around the loop.

    The amplitude magnitude is pinned to loop.radius, so xbar (and with it
    the connection) is constant along the circle and the trapezoid rule is
    exact; the sampling stays in place for future non-circular paths.
    """
    anchor = CSSpec(
        spec_template.family, spec_template.deformation, complex(loop.radius)
    )
    a_val = connection_coefficient(anchor)
    rate = loop.angular_rate
    times = np.linspace(0.0, loop.period, loop.samples + 1)
    alphas = loop.radius * np.exp(1j * rate * times)
    dalphas = 1j * rate * alphas
    integrand = 1j * a_val * (np.conj(alphas) * dalphas - np.conj(dalphas) * alphas)
    gamma = complex(np.trapezoid(integrand, times))
    return gamma.real


def overlap_derivative_fd(
    spec: CSSpec, velocity: complex, dt: float | None = None
) -> complex:
    """Finite-difference oracle for <psi | d/dt | psi> at amplitude velocity.

    Central difference of the normalized coefficient vectors; matches
    connection_coefficient(spec) * (alpha* v - v* alpha) up to O(dt^2) and
    the truncation tails.
    """
    velocity = complex(velocity)
    if velocity == 0.0:
        return complex(0.0)
    if dt is None:
        scale = max(abs(spec.amplitude), 1e-3)
        dt = 1e-5 * scale / abs(velocity)
    center = coefficients(spec).coeffs
    plus = coefficients(
        CSSpec(spec.family, spec.deformation, spec.amplitude + velocity * dt)
    ).coeffs
    minus = coefficients(
        CSSpec(spec.family, spec.deformation, spec.amplitude - velocity * dt)
    ).coeffs
    size = max(center.size, plus.size, minus.size)

    def pad(arr: np.ndarray) -> np.ndarray:
        out = np.zeros(size, dtype=complex)
        out[: arr.size] = arr
        return out

    derivative = (pad(plus) - pad(minus)) / (2.0 * dt)
    return complex(np.vdot(pad(center), derivative))


def _bg_weight(probe: LaplaceProbe, n: int) -> float:
    """sqrt(Gamma(2k) / (n! Gamma(n+2k) [rho_n]!)) for the eigenstate series."""
    two_k = 2.0 * probe.k
    poch = pochhammer(two_k, n).real  # Gamma(n+2k)/Gamma(2k), real and positive
    rho_fact = algebra.deformation_factorial(probe.deformation, n)
    return 1.0 / math.sqrt(math.factorial(n) * poch * rho_fact)


def bg_series(probe: LaplaceProbe, xi: complex) -> complex:
    """F(xi, k): the entire series on the eigenstate-family weights."""
    acc = complex(0.0)
    power = complex(1.0)
    for n, c_n in enumerate(probe.c):
        acc += c_n * _bg_weight(probe, n) * power
        power *= xi
    return acc


def pcs_series_at_inverse(probe: LaplaceProbe) -> complex:
    """G(1/Z, k): the series on the displacement-family weights at eta = 1/Z."""
    two_k = 2.0 * probe.k
    acc = complex(0.0)
    power = 1.0
    for n, c_n in enumerate(probe.c):
        poch = pochhammer(two_k, n).real
        rho_fact = algebra.deformation_factorial(probe.deformation, n)
        acc += c_n * math.sqrt(poch / (math.factorial(n) * rho_fact)) * power
        power /= probe.Z
    return acc


def _laplace_quadrature(probe: LaplaceProbe, nodes: int) -> complex:
    """(Z^{2k}/Gamma(2k)) integral xi^{2k-1} F(xi) e^{-Z xi} dxi, u = Z xi."""
    two_k = 2.0 * probe.k
    u, w = roots_genlaguerre(nodes, two_k - 1.0)
    values = np.array([bg_series(probe, ui / probe.Z) for ui in u])
    return complex(np.dot(w, values) / math.exp(log_gamma(two_k)))


def laplace_check(probe: LaplaceProbe) -> tuple[complex, complex, float]:
    """(lhs, rhs, |lhs - rhs|) of the Laplace identity for this probe."""
    lhs = pcs_series_at_inverse(probe)
    rhs = _laplace_quadrature(probe, probe.quad_nodes)
    cross = _laplace_quadrature(probe, probe.quad_nodes + 16)
    scale = max(abs(rhs), 1.0)
    if abs(rhs - cross) > 1e-12 * scale:
        rhs = _laplace_adaptive(probe)
    return lhs, rhs, abs(lhs - rhs)


def _laplace_adaptive(probe: LaplaceProbe, tol: float = 1e-10) -> complex:
    two_k = 2.0 * probe.k
    prefactor = probe.Z**two_k / math.exp(log_gamma(two_k))

    def integrand(xi: float, part: str) -> float:
        val = xi ** (two_k - 1.0) * bg_series(probe, xi) * math.exp(-probe.Z * xi)
        return val.real if part == "re" else val.imag

    re, re_err = integrate.quad(integrand, 0.0, np.inf, args=("re",), limit=200)
    im, im_err = integrate.quad(integrand, 0.0, np.inf, args=("im",), limit=200)
    if re_err + im_err > tol:
        raise QuadratureFailure(
            f"adaptive integration error {re_err + im_err:.3e} above {tol}"
        )
    return prefactor * complex(re, im)


def gamma_quadrature_probe(n: int, k: float, nodes: int = 64) -> float:
    """Gamma(n + 2k) recovered through the same Gauss-Laguerre rule.

    This is the scaled integral representation Gamma(n+2k) =
    Z^{2k+n} integral xi^{2k+n-1} e^{-Z xi} dxi after u = Z xi, where the Z
    powers cancel identically.
    """
    two_k = 2.0 * k
    u, w = roots_genlaguerre(nodes, two_k - 1.0)
    return float(np.dot(w, u ** float(n)))
