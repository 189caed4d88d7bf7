"""Generalized hypergeometric series pFq with complex parameters.

Every normalization constant and statistic in this package reduces to a pFq
evaluation at a real argument, with upper/lower parameters that are either
real or occur in complex-conjugate pairs.  The evaluator uses the term
recurrence

    t_0 = 1,    t_{n+1} = t_n * prod_i (a_i + n) / prod_j (b_j + n) * x / (n + 1)

with compensated (Kahan) accumulation in complex arithmetic: the compact-case
series terminate but alternate in sign, and plain summation loses digits at
large argument.

Terminating series (an upper parameter equal to a non-positive integer) are
summed exactly; otherwise summation stops once five consecutive terms fall
below eps relative to the partial sum, which guards series whose early terms
are not monotone.

Argument-derivatives are computed by parameter shifting,

    d/dx pFq(a; b; x) = (prod a_i / prod b_j) pFq(a+1; b+1; x),

never by finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceFailure, DivergentSeries, DomainError, ZeroDenominator

# An upper parameter counts as a non-positive integer (series terminator)
# when within this distance of one; -2j is exact by construction, the
# tolerance only guards float parsing.
TERMINATION_TOL = 1e-12

DEFAULT_EPS = 1e-14
DEFAULT_MAX_TERMS = 10_000
_SMALL_RUN = 5


@dataclass(frozen=True)
class SeriesParams:
    """One pFq evaluation request: upper/lower parameters and real argument."""

    numer: tuple[complex, ...]
    denom: tuple[complex, ...]
    arg: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "numer", tuple(complex(a) for a in self.numer))
        object.__setattr__(self, "denom", tuple(complex(b) for b in self.denom))
        object.__setattr__(self, "arg", float(self.arg))


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    terminated: bool
    est_error: float


def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise DomainError(f"pochhammer order must be non-negative, got {n}")
    acc = complex(1.0)
    a = complex(a)
    for i in range(n):
        acc *= a + i
    return acc


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0.0:
        raise DomainError(f"log_gamma requires a positive argument, got {x}")
    return math.lgamma(x)


def _nonpositive_integer_hit(a: complex) -> int | None:
    """Index m >= 0 with a == -m (within tolerance), else None."""
    m = round(-a.real)
    if m >= 0 and abs(a + m) <= TERMINATION_TOL:
        return m
    return None


def termination_index(params: SeriesParams) -> int | None:
    """Index of the last nonzero term for a terminating series, else None."""
    hits = [
        m for m in (_nonpositive_integer_hit(a) for a in params.numer) if m is not None
    ]
    return min(hits) if hits else None


def _validate(params: SeriesParams) -> int | None:
    stop = termination_index(params)
    if stop is None:
        if len(params.numer) > len(params.denom) + 1:
            raise DivergentSeries(
                "more upper than lower+1 parameters and no terminating entry"
            )
        if len(params.numer) == len(params.denom) + 1 and abs(params.arg) >= 1.0:
            raise DivergentSeries(
                f"|arg| = {abs(params.arg)} outside the unit disc for a "
                "balanced series"
            )
    for b in params.denom:
        pole = _nonpositive_integer_hit(b)
        if pole is not None and (stop is None or stop > pole):
            raise DivergentSeries(
                f"lower parameter {b} is a non-positive integer reached "
                "before termination"
            )
    return stop


def shift_params(params: SeriesParams, steps: int = 1) -> SeriesParams:
    """All parameters moved up by `steps`, argument unchanged."""
    return SeriesParams(
        tuple(a + steps for a in params.numer),
        tuple(b + steps for b in params.denom),
        params.arg,
    )


def pfq(
    params: SeriesParams,
    eps: float = DEFAULT_EPS,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Evaluate pFq(numer; denom; arg) by the term recurrence."""
    stop = _validate(params)
    term = complex(1.0)
    total = complex(1.0)
    comp = complex(0.0)  # Kahan compensation
    small_run = 0
    n = 0
    while n < max_terms:
        if stop is not None and n >= stop:
            return SeriesResult(total, n + 1, True, 0.0)
        num = complex(1.0)
        for a in params.numer:
            num *= a + n
        den = complex(1.0)
        for b in params.denom:
            den *= b + n
        term = term * num * (params.arg / (n + 1)) / den
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        n += 1
        if abs(term) <= eps * abs(total):
            small_run += 1
            if small_run >= _SMALL_RUN:
                return SeriesResult(total, n + 1, False, abs(term) / abs(total))
        else:
            small_run = 0
    raise ConvergenceFailure(
        f"series did not settle within {max_terms} terms (arg={params.arg})"
    )


def pfq_derivative(
    params: SeriesParams,
    order: int,
    eps: float = DEFAULT_EPS,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Order-th derivative of pFq with respect to its argument.

    Computed exactly through iterated parameter shifts.  A vanishing shift
    prefactor (e.g. the upper parameter chain hitting zero on a terminating
    series) short-circuits to zero without touching the shifted series, which
    may no longer converge on its own.
    """
    if order < 1:
        raise DomainError(f"derivative order must be >= 1, got {order}")
    prefactor = complex(1.0)
    shifted = params
    for _ in range(order):
        num = complex(1.0)
        for a in shifted.numer:
            num *= a
        den = complex(1.0)
        for b in shifted.denom:
            if abs(b) <= TERMINATION_TOL:
                raise ZeroDenominator(
                    f"parameter shift drove lower parameter {b} onto a pole"
                )
            den *= b
        prefactor *= num / den
        if prefactor == 0.0:
            return SeriesResult(complex(0.0), 0, True, 0.0)
        shifted = shift_params(shifted, 1)
    inner = pfq(shifted, eps=eps, max_terms=max_terms)
    return SeriesResult(
        prefactor * inner.value, inner.terms_used, inner.terminated, inner.est_error
    )
