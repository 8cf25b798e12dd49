"""Permittivity models and the angular reflection weight f(t, eps).

The weight combines the TE and TM Fresnel reflection coefficients of the
vacuum/dielectric interface,

    f(t, eps) = r_TE(|t|, eps) + (1 - 2 t^2) r_TM(|t|, eps),

with s = sqrt(eps - 1 + t^2), r_TE = (|t| - s)/(|t| + s) and
r_TM = (eps |t| - s)/(eps |t| + s).  f is even in t, equals 0 for
eps = 1, tends to -2 t^2 as eps -> inf, and has the grazing-incidence
limit f(0+, eps) = -2 for every eps > 1.

Media with eps < 1 are rejected: the square root would turn complex and
no branch is defined here.  Models are immutable after construction and
all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    DomainError,
    SingularPointError,
    UnsupportedOrderError,
    ValidityError,
)

# Grazing-incidence limit of the angular weight for any eps > 1.
ANGULAR_WEIGHT_AT_ZERO = -2.0


def _pchip_slopes(xs, ys):
    """Monotonicity-preserving slopes (Fritsch-Carlson, scipy-style ends)."""
    n = len(xs)
    h = [xs[i + 1] - xs[i] for i in range(n - 1)]
    delta = [(ys[i + 1] - ys[i]) / h[i] for i in range(n - 1)]
    if n == 2:
        return [delta[0], delta[0]]
    d = [0.0] * n
    for i in range(1, n - 1):
        if delta[i - 1] * delta[i] <= 0.0:
            d[i] = 0.0
        else:
            w1 = 2.0 * h[i] + h[i - 1]
            w2 = h[i] + 2.0 * h[i - 1]
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i])

    def edge(h0, h1, d0, d1):
        val = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
        if val * d0 <= 0.0:
            return 0.0
        if d0 * d1 < 0.0 and abs(val) > 3.0 * abs(d0):
            return 3.0 * d0
        return val

    d[0] = edge(h[0], h[1], delta[0], delta[1])
    d[-1] = edge(h[-1], h[-2], delta[-1], delta[-2])
    return d


@dataclass(frozen=True)
class DielectricModel:
    """Validated permittivity profile eps(k) >= 1.

    Construct via the classmethods ``constant``, ``single_relaxation``
    or ``tabulated``; the bare constructor is not validated.
    """

    kind: str
    epsilon: float | None = None
    chi0: float | None = None
    kc: float | None = None
    k_table: tuple[float, ...] | None = None
    eps_table: tuple[float, ...] | None = None
    slopes: tuple[float, ...] | None = field(default=None, repr=False)

    @classmethod
    def constant(cls, epsilon: float) -> "DielectricModel":
        epsilon = float(epsilon)
        if not math.isfinite(epsilon) or epsilon < 1.0:
            raise ValidityError(f"constant model needs eps >= 1, got {epsilon!r}")
        return cls(kind="constant", epsilon=epsilon)

    @classmethod
    def single_relaxation(cls, chi0: float, kc: float) -> "DielectricModel":
        """eps(k) = 1 + chi0 / (1 + (k/kc)^2); smooth, >= 1, -> 1 at large k."""
        chi0, kc = float(chi0), float(kc)
        if not math.isfinite(chi0) or chi0 < 0.0:
            raise ValidityError(f"chi0 must be >= 0, got {chi0!r}")
        if not math.isfinite(kc) or kc <= 0.0:
            raise ValidityError(f"kc must be positive, got {kc!r}")
        return cls(kind="single_relaxation", chi0=chi0, kc=kc)

    @classmethod
    def tabulated(cls, k_values, eps_values) -> "DielectricModel":
        """Monotone piecewise-cubic interpolant through (k, eps) samples.

        The grid must be strictly increasing, every sample >= 1, and
        evaluation outside the grid is an error (no extrapolation).
        """
        ks = tuple(float(k) for k in k_values)
        es = tuple(float(e) for e in eps_values)
        if len(ks) != len(es) or len(ks) < 2:
            raise ValidityError("tabulated model needs >= 2 matching samples")
        if any(ks[i] >= ks[i + 1] for i in range(len(ks) - 1)):
            raise ValidityError("tabulated wavenumber grid must be increasing")
        if ks[0] < 0.0:
            raise ValidityError("tabulated wavenumbers must be nonnegative")
        if any(e < 1.0 or not math.isfinite(e) for e in es):
            raise ValidityError("tabulated permittivity must be finite and >= 1")
        return cls(kind="tabulated", k_table=ks, eps_table=es,
                   slopes=tuple(_pchip_slopes(ks, es)))


def permittivity(model: DielectricModel, k: float) -> float:
    """eps(k) of the model at wavenumber k >= 0."""
    k = float(k)
    if not math.isfinite(k) or k < 0.0:
        raise DomainError(f"wavenumber must be nonnegative, got {k!r}")
    if model.kind == "constant":
        return model.epsilon
    if model.kind == "single_relaxation":
        ratio = k / model.kc
        return 1.0 + model.chi0 / (1.0 + ratio * ratio)
    if model.kind == "tabulated":
        ks, es, ds = model.k_table, model.eps_table, model.slopes
        if k < ks[0] or k > ks[-1]:
            raise DomainError(
                f"k={k:g} outside the tabulated range [{ks[0]:g}, {ks[-1]:g}]"
            )
        # locate segment (tables are short; bisection without numpy)
        lo, hi = 0, len(ks) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ks[mid] <= k:
                lo = mid
            else:
                hi = mid
        h = ks[lo + 1] - ks[lo]
        u = (k - ks[lo]) / h
        h00 = (1 + 2 * u) * (1 - u) ** 2
        h10 = u * (1 - u) ** 2
        h01 = u * u * (3 - 2 * u)
        h11 = u * u * (u - 1)
        val = (h00 * es[lo] + h * h10 * ds[lo]
               + h01 * es[lo + 1] + h * h11 * ds[lo + 1])
        if val < 1.0 - 1e-12:
            raise ValidityError(f"interpolated eps(k={k:g}) = {val:g} < 1")
        return val
    raise ValidityError(f"unknown model kind {model.kind!r}")


def _check_te_tm_args(t: float, eps: float) -> tuple[float, float]:
    t, eps = float(t), float(eps)
    at = abs(t)
    if not (0.0 < at <= 1.0):
        raise DomainError(f"|t| must lie in (0, 1], got {t!r}")
    if not math.isfinite(eps) or eps < 1.0:
        raise ValidityError(
            f"eps must be >= 1 (evanescent regime unsupported), got {eps!r}"
        )
    return at, eps


def fresnel_te(t: float, eps: float) -> float:
    """TE reflection coefficient (|t| - s)/(|t| + s); lies in [-1, 0]."""
    at, eps = _check_te_tm_args(t, eps)
    s = math.sqrt(eps - 1.0 + at * at)
    return (at - s) / (at + s)


def fresnel_tm(t: float, eps: float) -> float:
    """TM reflection coefficient (eps |t| - s)/(eps |t| + s); in [-1, 1]."""
    at, eps = _check_te_tm_args(t, eps)
    s = math.sqrt(eps - 1.0 + at * at)
    return (eps * at - s) / (eps * at + s)


def angular_weight(t: float, eps: float) -> float:
    """f(t, eps) = r_TE + (1 - 2 t^2) r_TM; even in t, in [-2, 0].

    t = 0 is singular for derivatives and a removable kink for f itself;
    the limit -2 (eps > 1) is exposed as ANGULAR_WEIGHT_AT_ZERO.
    """
    if float(t) == 0.0:
        raise SingularPointError(
            "angular_weight at t = 0: use the documented limit "
            "ANGULAR_WEIGHT_AT_ZERO = -2"
        )
    return fresnel_te(t, eps) + (1.0 - 2.0 * t * t) * fresnel_tm(t, eps)


def angular_weight_derivative(order: int, t: float, eps: float) -> float:
    """Partial derivative of f with respect to t, order 1, 2 or 3.

    Closed forms obtained by differentiating the quotient structure of
    the Fresnel coefficients once and hard-coding the Leibniz cascade
    (s' = t/s, s'' = (eps-1)/s^3, s''' = -3 (eps-1) t / s^5).
    """
    if order not in (1, 2, 3):
        raise UnsupportedOrderError(f"order must be 1, 2 or 3, got {order!r}")
    t, eps = float(t), float(eps)
    if not (0.0 < t <= 1.0):
        raise SingularPointError(
            f"derivatives need t in (0, 1] (they diverge at t = 0), got {t!r}"
        )
    if not math.isfinite(eps) or eps < 1.0:
        raise ValidityError(f"eps must be >= 1, got {eps!r}")
    kap = eps - 1.0
    s = math.sqrt(kap + t * t)
    s1 = t / s
    s2 = kap / s ** 3
    s3 = -3.0 * kap * t / s ** 5

    # A = (t - s)/(t + s)
    p, p1, p2, p3 = t + s, 1.0 + s1, s2, s3
    a = (t - s) / p
    a1 = ((1.0 - s1) - a * p1) / p
    a2 = (-s2 - 2.0 * a1 * p1 - a * p2) / p
    a3 = (-s3 - 3.0 * a2 * p1 - 3.0 * a1 * p2 - a * p3) / p

    # B = (eps t - s)/(eps t + s)
    q, q1, q2, q3 = eps * t + s, eps + s1, s2, s3
    b = (eps * t - s) / q
    b1 = ((eps - s1) - b * q1) / q
    b2 = (-s2 - 2.0 * b1 * q1 - b * q2) / q
    b3 = (-s3 - 3.0 * b2 * q1 - 3.0 * b1 * q2 - b * q3) / q

    u = 1.0 - 2.0 * t * t
    if order == 1:
        return a1 - 4.0 * t * b + u * b1
    if order == 2:
        return a2 - 4.0 * b - 8.0 * t * b1 + u * b2
    return a3 - 12.0 * b1 - 12.0 * t * b2 + u * b3


def f3_series(
    t: float,
    kappa: float,
    regime: str,
    n_terms: int,
    *,
    small_max: float = 0.2,
    large_min: float = 25.0,
) -> float:
    """Truncated expansions of the third t-derivative of f in kappa = eps - 1.

    small (kappa <= small_max):
        12 k/t^5 + (6 - 30/t^2) k^2/t^5 - (3 + 15/t^2 - 105/(2 t^4)) k^3/t^5
    large (kappa >= large_min):
        12/(t^4 sqrt(k)) - 48/(t^5 k) + (18 - 36/t^4 + 120/t^6)/k^(3/2)

    Both are strongly divergent as t -> 0; t must stay in (0, 1].
    """
    t, kappa = float(t), float(kappa)
    if not (0.0 < t <= 1.0):
        raise SingularPointError(f"t must lie in (0, 1], got {t!r}")
    if not (kappa > 0.0 and math.isfinite(kappa)):
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    if n_terms not in (1, 2, 3):
        raise UnsupportedOrderError(f"n_terms must be 1..3, got {n_terms!r}")
    t2 = t * t
    t5 = t2 * t2 * t
    if regime == "small":
        if kappa > small_max:
            raise DomainError(
                f"small regime requires kappa <= {small_max}, got {kappa!r}"
            )
        terms = [
            12.0 * kappa / t5,
            (6.0 - 30.0 / t2) * kappa ** 2 / t5,
            -(3.0 + 15.0 / t2 - 105.0 / (2.0 * t2 * t2)) * kappa ** 3 / t5,
        ]
    elif regime == "large":
        if kappa < large_min:
            raise DomainError(
                f"large regime requires kappa >= {large_min}, got {kappa!r}"
            )
        rk = math.sqrt(kappa)
        terms = [
            12.0 / (t2 * t2 * rk),
            -48.0 / (t5 * kappa),
            (18.0 - 36.0 / (t2 * t2) + 120.0 / (t2 * t2 * t2)) / (kappa * rk),
        ]
    else:
        raise DomainError(f"unknown regime {regime!r} (expected 'small' or 'large')")
    return sum(terms[:n_terms])
