"""Atom-wall interaction evaluators in reduced units.

Conventions.  A ground-state two-level atom (transition wavenumber k0,
static polarizability alpha0) sits a distance z > 0 from the planar
surface of a半 half-space of permittivity eps >= 1.  Every evaluator
returns the dimensionless reduced potential v defined by

    V(z) = (hbar c alpha0 k0 / z^3) * v(x0, eps),      x0 = 2 k0 z,

so that the known limits are pure numbers: v -> -1/8 for a perfect
conductor at short range, v -> -3/(4 pi x0) at long range, and
v -> -(1/8)(eps-1)/(eps+1) at short range for finite eps.

Numerical route.  The half-space mode sum is evaluated in its
imaginary-frequency (rotated-contour) representation

    v(x0, eps) = (x0 / 16 pi) * int_0^1 dc  Phi(c, eps) K(x0/c) / c^2,

    Phi(c, eps) = c^2 r_s(c) - (2 - c^2) r_p(c),
    r_s = (1 - w)/(1 + w),  r_p = (eps - w)/(eps + w),
    w = sqrt(1 + (eps - 1) c^2),
    K(q) = 1 + q^2 G(q) = int_0^inf e^{-r} r^3 / (q^2 + r^2) dr,

with G the auxiliary function of the sine/cosine integrals.  This
representation is absolutely convergent for every eps >= 1 (including
the perfect-conductor limit, where it reduces exactly to the closed
form of ``perfect_conductor_reduced``), whereas the real-frequency form
of the same mode sum carries a divergent grazing-incidence artifact
and is not usable as a quadrature target.

All evaluators are pure functions; grid sweeps may run them
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import dielectric as _diel
from . import special_functions as _sf
from .errors import DomainError, PoleError, ValidityError
from .quadrature import QuadratureResult, adaptive_integrate, semiinfinite_oscillatory_integrate

# CODATA 2018 values.
HBAR = 1.054_571_817e-34       # J s
C_LIGHT = 299_792_458.0        # m / s
HARTREE = 4.359_744_722_2071e-18  # J

_REGIMES = ("general", "short_asymptotic", "long_asymptotic", "perfect_conductor")

# Series coefficients of the asymptotic evaluators, kept as exact
# rationals so anchor tests can check them without rounding.
LONG_RANGE_LARGE_KAPPA_COEFFS = (Fraction(5, 4), Fraction(22, 15))
LONG_RANGE_SMALL_KAPPA_PREFACTOR = Fraction(23, 60)
LONG_RANGE_SMALL_KAPPA_COEFFS = (Fraction(169, 322), Fraction(2263, 7728))
PAIRWISE_BRACKET_COEFFS = (Fraction(1, 3), Fraction(1, 9))
NONADDITIVITY_COEFFS = (
    Fraction(-185, 966),
    Fraction(303113, 3732624),
    Fraction(-1325388223, 39662862624),
)


@dataclass(frozen=True)
class AtomParams:
    """Two-level atom: transition wavenumber k0 = w0/c and static
    polarizability alpha0 (a volume)."""

    k0: float
    alpha0: float

    def __post_init__(self):
        if not (math.isfinite(self.k0) and self.k0 > 0.0):
            raise DomainError(f"k0 must be positive, got {self.k0!r}")
        if not (math.isfinite(self.alpha0) and self.alpha0 > 0.0):
            raise DomainError(f"alpha0 must be positive, got {self.alpha0!r}")


@dataclass(frozen=True)
class ReducedPoint:
    """Dimensionless distance x0 = 2 k0 z paired with the distance z."""

    x0: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x0) and self.x0 > 0.0):
            raise DomainError(f"x0 must be positive, got {self.x0!r}")
        if not (math.isfinite(self.z) and self.z > 0.0):
            raise DomainError(f"z must be positive, got {self.z!r}")

    @classmethod
    def from_distance(cls, atom: AtomParams, z: float) -> "ReducedPoint":
        return cls(x0=2.0 * atom.k0 * z, z=float(z))


@dataclass(frozen=True)
class PotentialResult:
    """Reduced potential value with an error bound and a regime tag."""

    v_reduced: float
    error_estimate: float
    regime: str = "general"

    def __post_init__(self):
        if self.regime not in _REGIMES:
            raise DomainError(f"unknown regime tag {self.regime!r}")


@dataclass(frozen=True)
class SeriesSpec:
    """Regime selector and truncation order for the asymptotic series."""

    regime: str
    n_terms: int = 3

    def __post_init__(self):
        if self.regime not in ("small_kappa", "large_kappa"):
            raise DomainError(f"unknown series regime {self.regime!r}")
        if self.n_terms not in (1, 2, 3):
            raise DomainError("n_terms must be 1, 2 or 3")


def two_level_susceptibility(omega: float, atom: AtomParams) -> float:
    """Real part of the ground-state polarizability at angular frequency
    omega: (alpha0 w0 / 2) [1/(w0 + omega) + 1/(w0 - omega)], w0 = k0 c.

    Resonant input (omega = +-w0) is rejected rather than smoothed.
    """
    omega = float(omega)
    if not math.isfinite(omega):
        raise DomainError(f"omega must be finite, got {omega!r}")
    w0 = atom.k0 * C_LIGHT
    if abs(abs(omega) - w0) <= 1e-12 * w0:
        raise PoleError("susceptibility evaluated on resonance omega = +-k0 c")
    return 0.5 * atom.alpha0 * w0 * (1.0 / (w0 + omega) + 1.0 / (w0 - omega))


def perfect_conductor_reduced(x0: float) -> PotentialResult:
    """Reduced potential against a perfectly conducting wall,

        v0(x0) = (1/8 pi) [ (x0^2 - 2) F(x0) + 2 x0 G(x0) - x0 ].

    Exact closed form; the error bound reflects only rounding in the
    auxiliary functions (which grows with the cancellation at large x0).
    """
    x0 = float(x0)
    if not (math.isfinite(x0) and x0 > 0.0):
        raise DomainError(f"x0 must be positive, got {x0!r}")
    t1 = (x0 * x0 - 2.0) * _sf.aux_F(x0)
    t2 = 2.0 * x0 * _sf.aux_G(x0)
    v = (t1 + t2 - x0) / (8.0 * math.pi)
    err = 1e-15 * (abs(t1) + abs(t2) + x0) / (8.0 * math.pi)
    return PotentialResult(v, err, "perfect_conductor")


# ---------------------------------------------------------------------------
# rotated-representation machinery

def _surface_response(c: np.ndarray, eps: float):
    """(r_s, r_p) of the interface along the imaginary frequency axis;
    c is the direction cosine of the Euclidean wavevector."""
    w = np.sqrt(1.0 + (eps - 1.0) * c * c)
    rs = (1.0 - w) / (1.0 + w)
    rp = (eps - w) / (eps + w)
    return rs, rp


def _angular_response(c: np.ndarray, eps: float) -> np.ndarray:
    """Phi(c, eps) = c^2 r_s - (2 - c^2) r_p; bounded by [-2, 0]."""
    c2 = c * c
    rs, rp = _surface_response(c, eps)
    return c2 * rs - (2.0 - c2) * rp


_KERNEL_SWITCH = 40.0
_KERNEL_TERMS = 12


def _decay_kernel_scalar(q: float) -> float:
    """K(q) = 1 + q^2 G(q), stable against cancellation at large q."""
    if q <= _KERNEL_SWITCH:
        return 1.0 + q * q * _sf.aux_G(q)
    # K ~ 6/q^2 - 120/q^4 + 5040/q^6 - ...  (term_k = (-1)^{k+1} (2k+1)!/q^{2k})
    q2 = q * q
    term = 6.0 / q2
    total = 0.0
    for k in range(1, _KERNEL_TERMS + 1):
        total += term
        term *= -(2 * k + 2) * (2 * k + 3) / q2
    return total


def _decay_kernel(q: np.ndarray) -> np.ndarray:
    return np.array([_decay_kernel_scalar(float(x)) for x in np.atleast_1d(q)])


def _angular_breakpoints(x0: float, eps: float) -> list[float]:
    pts = set()
    for mult in (0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0):
        p = x0 * mult
        if 0.0 < p < 1.0:
            pts.add(p)
    kappa = eps - 1.0
    if kappa > 1.0:
        layer = 1.0 / math.sqrt(kappa)
        for mult in (0.3, 1.0, 3.0):
            p = layer * mult
            if 0.0 < p < 1.0:
                pts.add(p)
    return sorted(pts)


def reduced_potential_nondispersive(x0: float, eps: float, tol: float = 1e-8) -> PotentialResult:
    """Reduced potential v(x0, eps) for a non-dispersive medium.

    Evaluates the rotated single-integral representation (module
    docstring) with adaptive quadrature; the kernel K carries all the
    distance dependence and Phi all the material dependence.  Exact
    limits: v = 0 for eps = 1, and the perfect-conductor closed form as
    eps -> inf.
    """
    x0, eps = float(x0), float(eps)
    if not (math.isfinite(x0) and x0 > 0.0):
        raise DomainError(f"x0 must be positive, got {x0!r}")
    if not math.isfinite(eps) or eps < 1.0:
        raise ValidityError(f"eps must be >= 1, got {eps!r}")
    if not (0 < tol):
        raise DomainError("tol must be positive")

    prefactor = x0 / (16.0 * math.pi)

    def integrand(c):
        c = np.atleast_1d(c)
        out = np.zeros_like(c, dtype=float)
        pos = c > 0.0
        cp = c[pos]
        q = x0 / cp
        out[pos] = _angular_response(cp, eps) * _decay_kernel(q) / (cp * cp)
        return out

    quad = adaptive_integrate(
        integrand, 0.0, 1.0, tol / prefactor,
        points=_angular_breakpoints(x0, eps),
    )
    v = prefactor * quad.value
    err = prefactor * quad.error_estimate + 1e-14 * abs(v)
    return PotentialResult(v, err, "general")


def reduced_potential_dispersive(
    x0: float,
    model: _diel.DielectricModel,
    atom: AtomParams,
    tol: float = 1e-6,
) -> PotentialResult:
    """Reduced potential for a dispersive medium eps(k).

    Full two-dimensional rotated mode sum: the radial (Euclidean
    wavenumber) integral runs over rho = 2 z k_E with weight
    e^{-rho} rho^3, the angular integral over the direction cosine c,
    and the model is sampled at k = rho c / (2 z).  Reduces to the
    non-dispersive evaluator for a constant model (tested as the central
    cross-check).
    """
    x0 = float(x0)
    if not (math.isfinite(x0) and x0 > 0.0):
        raise DomainError(f"x0 must be positive, got {x0!r}")
    if not (0 < tol):
        raise DomainError("tol must be positive")
    z = x0 / (2.0 * atom.k0)
    prefactor = x0 / (16.0 * math.pi)
    inner_tol = 0.05 * tol / prefactor
    inner_errs = []

    def radial_integrand(rho: float) -> float:
        rho = float(rho)
        if rho <= 0.0:
            return 0.0
        weight = math.exp(-rho) * rho ** 3

        def angular(c):
            c = np.atleast_1d(c)
            out = np.zeros_like(c, dtype=float)
            for i, ci in enumerate(c):
                if ci <= 0.0:
                    continue
                epsk = _diel.permittivity(model, rho * ci / (2.0 * z))
                out[i] = float(_angular_response(np.asarray([ci]), epsk)[0]) \
                    / (x0 * x0 + (rho * ci) ** 2)
            return out

        knee = x0 / rho
        pts = sorted({p for m in (0.1, 0.3, 1.0, 3.0, 10.0)
                      if 0.0 < (p := knee * m) < 1.0})
        r = adaptive_integrate(angular, 0.0, 1.0,
                               max(inner_tol / max(weight, 1e-3), 1e-14),
                               points=pts)
        inner_errs.append(weight * r.error_estimate)
        return weight * float(np.real(r.value))

    outer = semiinfinite_oscillatory_integrate(
        radial_integrand, k_break=12.0, tol=0.5 * tol / prefactor,
    )
    v = prefactor * float(np.real(outer.value))
    err = prefactor * (outer.error_estimate + sum(inner_errs)) + 1e-14 * abs(v)
    return PotentialResult(v, err, "general")


def short_range_reduced(eps: float) -> float:
    """Short-distance (image-dipole) factor v -> -(1/8)(eps-1)/(eps+1)."""
    eps = float(eps)
    if not math.isfinite(eps) or eps < 1.0:
        raise ValidityError(f"eps must be >= 1, got {eps!r}")
    return -0.125 * (eps - 1.0) / (eps + 1.0)


def long_range_factor(
    kappa: float,
    spec: SeriesSpec,
    *,
    small_max: float = 0.2,
    large_min: float = 25.0,
) -> float:
    """Retarded-regime material factor g(kappa), defined by
    V ~ g(kappa) * (-3 hbar c alpha0 / 8 pi z^4).

    large_kappa: 1 - (5/4)/sqrt(k) + (22/15)/k
    small_kappa: (23/60) k (1 - (169/322) k + (2263/7728) k^2)
    truncated to spec.n_terms terms of the respective bracket.
    """
    kappa = float(kappa)
    if not (kappa > 0.0):
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    if spec.regime == "large_kappa":
        if kappa < large_min:
            raise DomainError(
                f"large_kappa series requires kappa >= {large_min}, got {kappa!r}"
            )
        c1, c2 = (float(c) for c in LONG_RANGE_LARGE_KAPPA_COEFFS)
        terms = [1.0, -c1 / math.sqrt(kappa), c2 / kappa]
    else:
        if kappa > small_max:
            raise DomainError(
                f"small_kappa series requires kappa <= {small_max}, got {kappa!r}"
            )
        c1, c2 = (float(c) for c in LONG_RANGE_SMALL_KAPPA_COEFFS)
        terms = [1.0, -c1 * kappa, c2 * kappa * kappa]
    bracket = sum(terms[: spec.n_terms])
    if spec.regime == "large_kappa":
        return bracket
    return float(LONG_RANGE_SMALL_KAPPA_PREFACTOR) * kappa * bracket


def pairwise_integrated_factor(kappa: float, n_terms: int) -> float:
    """Bracket 1 - kappa/3 + kappa^2/9 of the pairwise-integrated
    retarded potential V_int = -(23/160 pi)(alpha0 hbar c / z^4) kappa *
    bracket, truncated to n_terms terms (dilute-medium series)."""
    kappa = float(kappa)
    if not (0.0 <= kappa <= 0.5):
        raise DomainError(f"pairwise series requires 0 <= kappa <= 0.5, got {kappa!r}")
    if n_terms not in (1, 2, 3):
        raise DomainError("n_terms must be 1, 2 or 3")
    c1, c2 = (float(c) for c in PAIRWISE_BRACKET_COEFFS)
    terms = [1.0, -c1 * kappa, c2 * kappa * kappa]
    return sum(terms[:n_terms])


def nonadditivity_ratio(kappa: float, n_terms: int) -> float:
    """Relative many-body discrepancy (V - V_int)/V at long range,

        -(185/966) k + (303113/3732624) k^2 - (1325388223/39662862624) k^3,

    truncated to n_terms terms.  Negative throughout (the many-body
    contribution is repulsive); vanishes linearly as kappa -> 0.
    """
    kappa = float(kappa)
    if not (0.0 <= kappa <= 0.2):
        raise DomainError(f"nonadditivity series requires 0 <= kappa <= 0.2, got {kappa!r}")
    if n_terms not in (1, 2, 3):
        raise DomainError("n_terms must be 1, 2 or 3")
    total = 0.0
    for power, coeff in enumerate(NONADDITIVITY_COEFFS[:n_terms], start=1):
        total += float(coeff) * kappa ** power
    return total


_BRACKET_PROBE_X0 = 1e-4
_BRACKET_NORM_EPS = 1e8


def short_range_bracket_numeric(eps: float, tol: float = 1e-8) -> float:
    """Material factor g(eps) of the short-distance law, computed
    numerically from the full evaluator deep in the non-retarded regime
    and normalized so g(inf) = 1; must reproduce (eps-1)/(eps+1)."""
    eps = float(eps)
    if not math.isfinite(eps) or eps < 1.0:
        raise ValidityError(f"eps must be >= 1, got {eps!r}")
    if eps == 1.0:
        return 0.0
    v = reduced_potential_nondispersive(_BRACKET_PROBE_X0, eps, tol)
    ref = reduced_potential_nondispersive(_BRACKET_PROBE_X0, _BRACKET_NORM_EPS, tol)
    return v.v_reduced / ref.v_reduced


def to_physical(
    result: PotentialResult,
    atom: AtomParams,
    z: float,
    units: str = "si",
) -> float:
    """Energy V = (hbar c alpha0 k0 / z^3) v_reduced.

    With SI inputs (alpha0 in m^3, k0 in 1/m, z in m) returns joules for
    units="si" and hartrees for units="atomic".
    """
    z = float(z)
    if not (math.isfinite(z) and z > 0.0):
        raise DomainError(f"z must be positive, got {z!r}")
    if units not in ("si", "atomic"):
        raise DomainError(f"units must be 'si' or 'atomic', got {units!r}")
    energy = HBAR * C_LIGHT * atom.alpha0 * atom.k0 / z ** 3 * result.v_reduced
    if units == "atomic":
        return energy / HARTREE
    return energy
