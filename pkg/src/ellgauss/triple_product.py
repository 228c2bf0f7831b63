"""Composition coefficients built from Gaussian double sums over (m, n).

On the torus C/(Z + Z*tau), products of translated theta sections expand in
the orthonormal character basis

    phi_{w,m,n}(x) = exp(2*pi*i*(m*x1 + (n - w)*x2)),   x = x1 + x2*tau,

with Gaussian coefficients indexed by Omega = m*tau - n.  Two families
appear: ``greens_coeff`` (the expansion after inverting the antiholomorphic
derivative, which divides by (pi/a)(Omega + w)) and ``product_coeff`` (the
plain product expansion).  Pairing the two families gives a double sum that
collapses, index by index with w = m*tau - n, onto a single twisted Gaussian
lattice sum; ``pairing`` returns both forms so the collapse is certified
numerically.  ``triple_coefficient`` assembles the antisymmetrized pairing,
which reproduces the Kronecker function (generic shifts) or the negated
periodic zeta part (one shift at the origin).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import TooCloseToPole, ToleranceNotReached
from .lattice import (
    nearest_lattice_distance,
    pole_guard_radius,
    shell,
    trunc_radius,
)
from .oracles import _require_upper_half, lattice_for_tau, theta00


class CaseKind(enum.Enum):
    """Which degeneration of the two line-bundle shifts applies."""

    CASE_A = "A"  # both shifts off the lattice
    CASE_B = "B"  # first shift at the origin


@dataclass(frozen=True)
class TripleCase:
    """Shift parameters (u, v) for one triple-product coefficient."""

    kind: CaseKind
    u: complex
    v: complex

    @classmethod
    def case_a(cls, u: complex, v: complex) -> "TripleCase":
        return cls(CaseKind.CASE_A, complex(u), complex(v))

    @classmethod
    def case_b(cls, v: complex) -> "TripleCase":
        return cls(CaseKind.CASE_B, 0j, complex(v))


def second_coord(tau: complex, u: complex) -> float:
    """Coefficient u2 in u = u1 + u2*tau with u1, u2 real."""
    return complex(u).imag / _require_upper_half(tau).imag


def index_pairs(tau: complex, cutoff: float) -> list[tuple[int, int]]:
    """All (m, n) with |m*tau - n| <= cutoff, in lexicographic order."""
    tau = _require_upper_half(tau)
    a = tau.imag
    out = []
    mmax = int(cutoff / a) + 1
    for m in range(-mmax, mmax + 1):
        center = m * tau.real
        for n in range(math.floor(center - cutoff) - 1, math.ceil(center + cutoff) + 2):
            if abs(m * tau - n) <= cutoff:
                out.append((m, n))
    return out


def greens_coeff(tau: complex, w: complex, m: int, n: int) -> complex:
    """Character-basis coefficient after inverting the dbar operator.

        (-1)^(m n) exp(-(pi/2a)(|Omega|^2 + 2 conj(Omega) w + w^2)) / (Omega + w)

    with Omega = m*tau - n and conj(Omega) = m*conj(tau) - n.
    """
    tau = _require_upper_half(tau)
    w = complex(w)
    a = tau.imag
    omega = m * tau - n
    den = omega + w
    if abs(den) < pole_guard_radius(lattice_for_tau(tau)):
        raise TooCloseToPole(f"m*tau - n + w = {den} vanishes at (m, n) = ({m}, {n})")
    ex = abs(omega) ** 2 + 2.0 * (m * tau.conjugate() - n) * w + w * w
    sign = -1.0 if (m * n) % 2 else 1.0
    return sign * cmath.exp(-math.pi / (2.0 * a) * ex) / den


def product_coeff(tau: complex, u: complex, v: complex, m: int, n: int) -> complex:
    """Character-basis coefficient of a translated-theta pair product.

        (1/sqrt(2a)) (-1)^(m n) exp(-(pi/2a)(|Omega|^2
            + 2 conj(Omega)(u+v) - 2 Omega conj(v) + (u + v - conj(v))^2))
    """
    tau = _require_upper_half(tau)
    u = complex(u)
    v = complex(v)
    a = tau.imag
    omega = m * tau - n
    ex = (
        abs(omega) ** 2
        + 2.0 * (m * tau.conjugate() - n) * (u + v)
        - 2.0 * omega * v.conjugate()
        + (u + v - v.conjugate()) ** 2
    )
    sign = -1.0 if (m * n) % 2 else 1.0
    return sign / math.sqrt(2.0 * a) * cmath.exp(-math.pi / (2.0 * a) * ex)


def theta_norm(tau: complex, u: complex) -> float:
    """Squared norm of the translated theta section in the shifted metric:
    (1/sqrt(2a)) * exp(2*pi*a*u2^2)."""
    tau = _require_upper_half(tau)
    a = tau.imag
    u2 = second_coord(tau, u)
    return math.exp(2.0 * math.pi * a * u2 * u2) / math.sqrt(2.0 * a)


def _raw_pairing(
    tau: complex, u: complex, v: complex, cutoff: float, *, omit_zero_index: bool = False
) -> complex:
    """sqrt(2a) exp(-2 pi a (u2+v2)^2) * sum a_mn(u) * conj(b_mn(u, v))."""
    a = tau.imag
    u2 = second_coord(tau, u)
    v2 = second_coord(tau, v)
    pref = math.sqrt(2.0 * a) * math.exp(-2.0 * math.pi * a * (u2 + v2) ** 2)
    total = 0j
    for m, n in index_pairs(tau, cutoff):
        if omit_zero_index and m == 0 and n == 0:
            continue
        total += greens_coeff(tau, u, m, n) * product_coeff(tau, u, v, m, n).conjugate()
    return pref * total


def _simplified_pairing(
    tau: complex, u: complex, v: complex, cutoff: float, *, omit_origin: bool = False
) -> complex:
    """exp((pi/a) u (v - conj v)) * sum_w exp(-(pi/a)|w+u|^2 + 2 pi i E(w,v)) / (w+u)."""
    lat = lattice_for_tau(tau)
    a = lat.area
    p = math.pi / a
    phase = 2.0 * math.pi / a
    pts = shell(lat, cutoff, include_origin=not omit_origin)
    pts = pts[np.argsort(np.abs(pts), kind="stable")]
    terms = np.exp(-p * np.abs(pts + u) ** 2 + 1j * phase * (np.conj(pts) * v).imag)
    terms = terms / (pts + u)
    return cmath.exp(p * u * (v - v.conjugate())) * complex(np.sum(terms))


def pairing(tau: complex, u: complex, v: complex, cutoff: float) -> tuple[complex, complex]:
    """Both forms of the normalized pairing sum, for cross-certification.

    Returns (raw, simplified): the prefactored double sum over (m, n) with
    |m*tau - n| <= cutoff, and its closed single-lattice-sum form over the
    same points.  The two collapse onto each other index by index, so they
    agree to roundoff whenever the formulas are transcribed correctly.
    """
    tau = _require_upper_half(tau)
    u = complex(u)
    v = complex(v)
    lat = lattice_for_tau(tau)
    if nearest_lattice_distance(lat, u) < pole_guard_radius(lat):
        raise TooCloseToPole(f"u = {u} is within the pole guard of the lattice")
    raw = _raw_pairing(tau, u, v, cutoff)
    simplified = _simplified_pairing(tau, u, v, cutoff)
    return raw, simplified


def triple_coefficient(case: TripleCase, tau: complex, tol: float = 1e-10) -> complex:
    """Antisymmetrized pairing coefficient for the given shift configuration.

    For generic shifts (CASE_A) the value equals 2*pi*i*F(u, -v, tau); with
    the first shift at the origin (CASE_B, where the (0, 0) index is dropped
    from the inverted-dbar expansion) it equals -Z(v, Z + Z*tau).  The double
    sums are extended annulus by annulus until the last extension moves the
    result by at most tol/2.
    """
    tau = _require_upper_half(tau)
    lat = lattice_for_tau(tau)
    guard = pole_guard_radius(lat)
    u, v = case.u, case.v
    if case.kind is CaseKind.CASE_A:
        for name, val in (("u", u), ("v", v)):
            if nearest_lattice_distance(lat, val) < guard:
                raise TooCloseToPole(f"{name} = {val} is within the pole guard")

        def value_at(cutoff: float) -> complex:
            return _raw_pairing(tau, u, v, cutoff) - _raw_pairing(tau, v, u, cutoff)

    else:
        if u != 0:
            raise ValueError("origin configuration requires u = 0")
        if nearest_lattice_distance(lat, v) < guard:
            raise TooCloseToPole(f"v = {v} is within the pole guard")

        def value_at(cutoff: float) -> complex:
            return _raw_pairing(tau, 0j, v, cutoff, omit_zero_index=True) - _raw_pairing(
                tau, v, 0j, cutoff
            )

    base = trunc_radius(lat.area, tol).radius + max(abs(u), abs(v))
    step = max(1.0, abs(tau))
    value = value_at(base)
    for k in range(1, 4):
        extended = value_at(base + k * step)
        delta = abs(extended - value)
        value = extended
        if delta <= tol / 2:
            return value
    raise ToleranceNotReached(
        f"cutoff extension still moved the coefficient by {delta:.3e}",
        value=value,
        achieved=delta,
    )


def theta_product_residual(
    tau: complex, x: complex, y: complex, z: complex, cutoff: float
) -> complex:
    """Residual of the character-basis expansion of a theta pair product.

    Compares theta(x+y) * conj(theta(x+z)) * exp(-2 pi a (x2^2 + 2 x2 z2))
    against its expansion sum over |m*tau - n| <= cutoff with coefficients of
    ``product_coeff`` shape (shifts y, z) on the basis phi_{y-z,m,n}(x).
    The conjugated theta factor is the complex conjugate of the evaluated
    value, so the residual certifies that exact reading.
    """
    tau = _require_upper_half(tau)
    x = complex(x)
    y = complex(y)
    z = complex(z)
    a = tau.imag
    x2 = second_coord(tau, x)
    x1 = x.real - x2 * tau.real
    z2 = second_coord(tau, z)
    w = y - z
    lhs = (
        theta00(tau, x + y)
        * theta00(tau, x + z).conjugate()
        * math.exp(-2.0 * math.pi * a * (x2 * x2 + 2.0 * x2 * z2))
    )
    total = 0j
    for m, n in index_pairs(tau, cutoff):
        omega = m * tau - n
        ex = (
            abs(omega) ** 2
            + 2.0 * (m * tau.conjugate() - n) * y
            - 2.0 * omega * z.conjugate()
            + (y - z.conjugate()) ** 2
        )
        sign = -1.0 if (m * n) % 2 else 1.0
        character = cmath.exp(2j * math.pi * (m * x1 + (n - w) * x2))
        total += sign * cmath.exp(-math.pi / (2.0 * a) * ex) * character
    rhs = total / math.sqrt(2.0 * a)
    return lhs - rhs
