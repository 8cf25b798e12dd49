"""Sine/cosine integrals and the auxiliary functions F, G.

Definitions (x > 0):

    Ci(x) = gamma + ln x + int_0^x (cos u - 1)/u du
    si(x) = -pi/2 + int_0^x (sin u)/u du
    F(x)  = Ci(x) sin x - si(x) cos x  =  int_0^inf e^{-x u}/(1 + u^2) du
    G(x)  = F'(x) = Ci(x) cos x + si(x) sin x

Ci and si oscillate; F and G are smooth and monotone, with
F(0+) = pi/2, F ~ 1/x at infinity, and G(x) ~ gamma + ln x near zero.

Evaluation strategy: Maclaurin series below ``SERIES_CUTOFF``; above it a
complex Lentz continued fraction produces (F, G) directly with no
cancellation, and Ci/si are recomposed from them via

    Ci(x) = F(x) sin x + G(x) cos x,    -si(x) = F(x) cos x - G(x) sin x.

All functions are pure and safe for concurrent use.
"""

from __future__ import annotations

import math

from .errors import DomainError, UnsupportedOrderError

EULER_GAMMA = 0.5772156649015328606

# Switch-over between the Maclaurin series and the continued-fraction
# representation.  The series still converges above 4 but starts losing
# digits to cancellation; the continued fraction converges quickly there.
SERIES_CUTOFF = 4.0

# Limit of F at the origin; F itself rejects x <= 0.
AUX_F_AT_ZERO = math.pi / 2

_CF_MAX_ITER = 10_000
_CF_TINY = 1e-300


def _check_positive(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} requires a positive finite argument, got {x!r}")
    return x


def _ci_si_series(x: float) -> tuple[float, float]:
    """(Ci, si) by Maclaurin series; intended for 0 < x <= SERIES_CUTOFF."""
    x2 = x * x
    # Ci: gamma + ln x + sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!)
    term = 1.0
    csum = 0.0
    k = 0
    while True:
        k += 1
        term *= -x2 / ((2 * k - 1) * (2 * k))
        contrib = term / (2 * k)
        csum += contrib
        if abs(contrib) < 1e-18 * (1.0 + abs(csum)):
            break
        if k > 200:  # unreachable for x <= cutoff
            break
    ci = EULER_GAMMA + math.log(x) + csum
    # si: -pi/2 + sum_{k>=0} (-1)^k x^{2k+1} / ((2k+1) (2k+1)!)
    term = x
    ssum = x
    k = 0
    while True:
        k += 1
        term *= -x2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        ssum += contrib
        if abs(contrib) < 1e-18 * (1.0 + abs(ssum)):
            break
        if k > 200:
            break
    si = -math.pi / 2 + ssum
    return ci, si


def _aux_fg_cf(x: float) -> tuple[float, float]:
    """(F, G) via the continued fraction for e^z E1(z) at z = ix.

    e^{ix} E1(ix) = 1/(z+1 - 1^2/(z+3 - 2^2/(z+5 - ...))) = -G - iF,
    evaluated with the modified Lentz algorithm.
    """
    z = complex(0.0, x)
    b = z + 1.0
    c = 1.0 / _CF_TINY
    d = 1.0 / b
    h = d
    for k in range(1, _CF_MAX_ITER):
        a = -(k * k)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 5e-16:
            break
    return -h.imag, -h.real


def cosine_integral(x: float) -> float:
    """Ci(x) for x > 0."""
    x = _check_positive(x, "cosine_integral")
    if x <= SERIES_CUTOFF:
        return _ci_si_series(x)[0]
    f, g = _aux_fg_cf(x)
    return f * math.sin(x) + g * math.cos(x)


def shifted_sine_integral(x: float) -> float:
    """si(x) = Si(x) - pi/2 for x >= 0; si(0) = -pi/2, si(inf) = 0."""
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"shifted_sine_integral requires x >= 0, got {x!r}")
    if x == 0.0:
        return -math.pi / 2
    if x <= SERIES_CUTOFF:
        return _ci_si_series(x)[1]
    f, g = _aux_fg_cf(x)
    return g * math.sin(x) - f * math.cos(x)


def aux_F(x: float) -> float:
    """F(x) = Ci(x) sin x - si(x) cos x for x > 0.

    Smooth and positive, decreasing from pi/2 to 0.  The x -> 0+ limit
    pi/2 is exposed as ``AUX_F_AT_ZERO``; x <= 0 is rejected.
    """
    x = _check_positive(x, "aux_F")
    if x <= SERIES_CUTOFF:
        ci, si = _ci_si_series(x)
        return ci * math.sin(x) - si * math.cos(x)
    return _aux_fg_cf(x)[0]


def aux_G(x: float) -> float:
    """G(x) = F'(x) = Ci(x) cos x + si(x) sin x for x > 0.

    Diverges like gamma + ln x at the origin (no finite limit).
    """
    x = _check_positive(x, "aux_G")
    if x <= SERIES_CUTOFF:
        ci, si = _ci_si_series(x)
        return ci * math.cos(x) + si * math.sin(x)
    return _aux_fg_cf(x)[1]


def aux_F_derivative(n: int, x: float) -> float:
    """n-th derivative of F via the closed recurrences.

    F^(2m)(x)   = (-1)^m [F(x) - sum_{j<m} (-1)^j (2j)!  / x^{2j+1}]
    F^(2m+1)(x) = (-1)^m [G(x) + sum_{j<m} (-1)^j (2j+1)!/ x^{2j+2}]

    Orders above 6 are rejected; the potential evaluators never need
    more than 3.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"derivative order must be a nonnegative integer, got {n!r}")
    if n > 6:
        raise UnsupportedOrderError(f"derivative order {n} unsupported (max 6)")
    x = _check_positive(x, "aux_F_derivative")
    if n == 0:
        return aux_F(x)
    if n == 1:
        return aux_G(x)
    m, odd = divmod(n, 2)
    sign = -1.0 if m % 2 else 1.0
    if odd:
        s = 0.0
        for j in range(m):
            s += (-1.0) ** j * math.factorial(2 * j + 1) / x ** (2 * j + 2)
        return sign * (aux_G(x) + s)
    s = 0.0
    for j in range(m):
        s += (-1.0) ** j * math.factorial(2 * j) / x ** (2 * j + 1)
    return sign * (aux_F(x) - s)


def aux_F_asymptotic(
    x: float,
    regime: str,
    n_terms: int,
    *,
    small_max: float = 0.1,
    large_min: float = 10.0,
) -> float:
    """Truncated limiting expansions of F.

    regime "small" (x <= small_max, up to 3 terms):
        pi/2 - (1 - gamma) x + x ln x
    regime "large" (x >= large_min):
        sum_{k < n_terms} (-1)^k (2k)! / x^{2k+1}
    """
    x = float(x)
    if not isinstance(n_terms, int) or n_terms < 1:
        raise DomainError(f"n_terms must be a positive integer, got {n_terms!r}")
    if regime == "small":
        if not (0.0 <= x <= small_max):
            raise DomainError(
                f"small regime requires 0 <= x <= {small_max}, got {x!r}"
            )
        if n_terms > 3:
            raise UnsupportedOrderError("small regime provides at most 3 terms")
        total = math.pi / 2
        if n_terms >= 2:
            total -= (1.0 - EULER_GAMMA) * x
        if n_terms >= 3 and x > 0.0:
            total += x * math.log(x)
        return total
    if regime == "large":
        if not (math.isfinite(x) and x >= large_min):
            raise DomainError(
                f"large regime requires x >= {large_min}, got {x!r}"
            )
        if n_terms > 40:
            raise UnsupportedOrderError("large regime capped at 40 terms")
        total = 0.0
        term = 1.0 / x
        for k in range(n_terms):
            if k:
                term *= -(2 * k - 1) * (2 * k) / (x * x)
            total += term
        return total
    raise DomainError(f"unknown regime {regime!r} (expected 'small' or 'large')")
