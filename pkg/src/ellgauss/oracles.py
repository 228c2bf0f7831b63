"""Classical q-series and direct-sum implementations used as ground truth.

Everything here converges by plain geometric (or power-law, for the direct
sums) estimates and is independent of the Gaussian lattice series, so the
two routes can be checked against each other.  Conventions:

    theta11(z, tau) = sum_n (-1)^n exp(pi*i*(n+1/2)^2*tau + 2*pi*i*(n+1/2)*z)
    theta00(z, tau) = sum_n exp(pi*i*n^2*tau + 2*pi*i*n*z)
    F(x, y; tau)    = -sum_{(m+1/2)(n+1/2)>0} sign(m+1/2)
                          * exp(2*pi*i*(m*n*tau + m*x + n*y))

with the theta-quotient form of the Kronecker function

    F = theta11'(0)/(2*pi*i) * theta11(x+y) / (theta11(x)*theta11(y))

giving its meromorphic continuation, and the logarithmic derivative

    theta11'(x)/theta11(x) = zeta(x, L_tau) - x*eta1,   eta1 = (pi^2/3)*E2(tau).
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from .errors import (
    BadExponent,
    BadModulus,
    OutsideStrip,
    SlowConvergence,
    TooCloseToPole,
)
from .lattice import (
    Lattice,
    make_lattice,
    nearest_lattice_distance,
    pole_guard_radius,
    shell,
)

TWO_PI_I = 2j * math.pi

#: Relative size at which a q-series term is considered converged.
_QSERIES_EPS = 1e-16

#: Nome modulus beyond which double precision q-series are refused.
_NOME_LIMIT = 0.9


def _require_upper_half(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise BadModulus(f"Im(tau) must be positive, got tau = {tau}")
    return tau


def lattice_for_tau(tau: complex) -> Lattice:
    """The lattice Z + Z*tau used by all modulus-based operations."""
    return make_lattice(1.0, _require_upper_half(tau))


def _guard_pole(lat: Lattice, x: complex, what: str) -> None:
    if nearest_lattice_distance(lat, x) < pole_guard_radius(lat):
        raise TooCloseToPole(f"{what} = {x} is within the pole guard of the lattice")


def theta11(tau: complex, z: complex, order: int = 0, *, min_terms: int = 0) -> complex:
    """Odd Jacobi theta with half-integer characteristics, or a z-derivative.

    Term-wise differentiation multiplies each term by (2*pi*i*(n+1/2))^order,
    keeping the oracle at machine precision for orders 0..3.  Terms are added
    in pairs n = k, -1-k of equal Gaussian weight; summation stops once a pair
    falls below 1e-16 of the running magnitude.
    """
    tau = _require_upper_half(tau)
    if order not in (0, 1, 2, 3):
        raise ValueError("derivative order must be one of 0, 1, 2, 3")
    z = complex(z)
    total = 0j
    scale = 0.0
    k = 0
    while True:
        pair_peak = 0.0
        for n in (k, -1 - k):
            h = n + 0.5
            term = cmath.exp(1j * math.pi * h * h * tau + TWO_PI_I * h * z)
            if order:
                term *= (TWO_PI_I * h) ** order
            if n % 2:
                term = -term
            total += term
            pair_peak = max(pair_peak, abs(term))
        scale = max(scale, pair_peak, abs(total))
        k += 1
        if k >= max(3, min_terms) and pair_peak <= _QSERIES_EPS * scale:
            return total
        if k > 4000:
            raise SlowConvergence("theta series did not converge in 4000 index pairs")


def theta00(tau: complex, z: complex, *, min_terms: int = 0) -> complex:
    """Theta with zero characteristics: sum_n exp(pi*i*n^2*tau + 2*pi*i*n*z)."""
    tau = _require_upper_half(tau)
    z = complex(z)
    total = 1 + 0j  # n = 0 term
    scale = 1.0
    n = 1
    while True:
        pair_peak = 0.0
        for m in (n, -n):
            term = cmath.exp(1j * math.pi * m * m * tau + TWO_PI_I * m * z)
            total += term
            pair_peak = max(pair_peak, abs(term))
        scale = max(scale, pair_peak, abs(total))
        n += 1
        if n >= max(3, min_terms) and pair_peak <= _QSERIES_EPS * scale:
            return total
        if n > 4000:
            raise SlowConvergence("theta series did not converge in 4000 index pairs")


class EisensteinValues(NamedTuple):
    """Weight-2 quasimodular value and the normalized cubic invariants."""

    e2: complex
    g2: complex
    g3: complex


def _divisor_powers(n: int) -> tuple[int, int, int]:
    """(sigma_1(n), sigma_3(n), sigma_5(n)) by trial division."""
    s1 = s3 = s5 = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            e = n // d
            s1 += d
            s3 += d ** 3
            s5 += d ** 5
            if e != d:
                s1 += e
                s3 += e ** 3
                s5 += e ** 5
        d += 1
    return s1, s3, s5


def eisenstein(tau: complex, *, min_terms: int = 0) -> EisensteinValues:
    """E2, g2, g3 of the lattice Z + Z*tau from their q-expansions.

        E2 = 1 - 24 sum sigma_1(n) q^n
        g2 = (4 pi^4 / 3) (1 + 240 sum sigma_3(n) q^n)
        g3 = (8 pi^6 / 27) (1 - 504 sum sigma_5(n) q^n),   q = exp(2 pi i tau).

    Refuses |q| > 0.9, where double precision runs out before the tail does.
    """
    tau = _require_upper_half(tau)
    q = cmath.exp(TWO_PI_I * tau)
    aq = abs(q)
    if aq > _NOME_LIMIT:
        raise SlowConvergence(f"|q| = {aq:.4f} exceeds {_NOME_LIMIT}; Im(tau) too small")
    s1 = s3 = s5 = 0j
    qn = 1 + 0j
    n = 1
    while True:
        qn *= q
        d1, d3, d5 = _divisor_powers(n)
        s1 += d1 * qn
        s3 += d3 * qn
        s5 += d5 * qn
        # sigma_5(n) <= n^6 bounds all three tails at once
        tail = 504.0 * float(n + 1) ** 6 * aq ** (n + 1) / (1.0 - aq)
        if n >= max(2, min_terms) and tail <= _QSERIES_EPS:
            break
        n += 1
        if n > 100_000:
            raise SlowConvergence("Eisenstein q-series did not converge")
    e2 = 1 - 24 * s1
    g2 = (4 * math.pi ** 4 / 3) * (1 + 240 * s3)
    g3 = (8 * math.pi ** 6 / 27) * (1 - 504 * s5)
    return EisensteinValues(e2, g2, g3)


def eta1_for_tau(tau: complex) -> complex:
    """First quasi-period of Z + Z*tau: eta1 = (pi^2/3) * E2(tau)."""
    return (math.pi ** 2 / 3) * eisenstein(tau).e2


def _F_qseries_counted(
    tau: complex, x: complex, y: complex, rel_eps: float, min_terms: int
) -> tuple[complex, int]:
    tau = _require_upper_half(tau)
    x = complex(x)
    y = complex(y)
    for name, val in (("x", x), ("y", y)):
        if not 0 < val.imag < tau.imag:
            raise OutsideStrip(
                f"Im({name}) = {val.imag} is outside (0, Im(tau) = {tau.imag})"
            )
    total = 0j
    used = 0
    peak = 1.0  # the (0, 0) term has modulus exactly 1
    for weight, start, step in ((-1, 0, 1), (1, -1, -1)):
        m = start
        while True:
            row_peak = 0.0
            n = start
            while True:
                term = cmath.exp(TWO_PI_I * (m * n * tau + m * x + n * y))
                total += weight * term
                used += 1
                mag = abs(term)
                row_peak = max(row_peak, mag)
                peak = max(peak, mag)
                n += step
                if mag <= rel_eps * peak and abs(n - start) >= max(2, min_terms):
                    break
                if abs(n - start) > 100_000:
                    raise SlowConvergence("row of the double q-series did not converge")
            m += step
            if row_peak <= rel_eps * peak and abs(m - start) >= max(2, min_terms):
                break
            if abs(m - start) > 100_000:
                raise SlowConvergence("double q-series did not converge")
    return total, used


def F_qseries(
    tau: complex,
    x: complex,
    y: complex,
    *,
    rel_eps: float = _QSERIES_EPS,
    min_terms: int = 0,
) -> complex:
    """Kronecker function from its double q-series, inside the strip.

    Valid for 0 < Im(x) < Im(tau) and 0 < Im(y) < Im(tau).  The index set
    (m+1/2)(n+1/2) > 0 splits into the quadrants m, n >= 0 (weight -1) and
    m, n <= -1 (weight +1); each row is geometric and is truncated when its
    terms fall below ``rel_eps`` of the largest term seen.
    """
    return _F_qseries_counted(tau, x, y, rel_eps, min_terms)[0]


def F_theta(tau: complex, x: complex, y: complex) -> complex:
    """Kronecker function as a theta quotient (meromorphic continuation).

    Valid for any x, y off the lattice; vanishes when x + y is on it.
    """
    tau = _require_upper_half(tau)
    lat = lattice_for_tau(tau)
    x = complex(x)
    y = complex(y)
    _guard_pole(lat, x, "x")
    _guard_pole(lat, y, "y")
    slope = theta11(tau, 0.0, 1)
    return (
        slope
        / TWO_PI_I
        * theta11(tau, x + y)
        / (theta11(tau, x) * theta11(tau, y))
    )


def zeta_theta_oracle(tau: complex, x: complex) -> complex:
    """Weierstrass zeta on Z + Z*tau via the theta logarithmic derivative."""
    tau = _require_upper_half(tau)
    x = complex(x)
    _guard_pole(lattice_for_tau(tau), x, "x")
    return eta1_for_tau(tau) * x + theta11(tau, x, 1) / theta11(tau, x)


def wp_theta_oracle(tau: complex, x: complex) -> complex:
    """Weierstrass p-function from analytic theta derivatives of orders 0..2."""
    tau = _require_upper_half(tau)
    x = complex(x)
    _guard_pole(lattice_for_tau(tau), x, "x")
    t0 = theta11(tau, x)
    logd = theta11(tau, x, 1) / t0
    return -eta1_for_tau(tau) - (theta11(tau, x, 2) / t0 - logd * logd)


def zeta_classical(lat: Lattice, x: complex, R: float) -> complex:
    """Slowly convergent defining sum of Weierstrass zeta, truncated at |w| <= R.

    1/x + sum over 0 < |w| <= R of (1/(x+w) - 1/w + x/w^2).  Tail error is
    O(|x|^2 / R); useful only as a loose cross-check.
    """
    x = complex(x)
    _guard_pole(lat, x, "x")
    if R < 5 * max(abs(lat.omega1), abs(lat.omega2)):
        raise ValueError("R must be at least five generator lengths")
    pts = shell(lat, R, include_origin=False)
    pts = pts[np.argsort(np.abs(pts), kind="stable")]
    terms = 1.0 / (x + pts) - 1.0 / pts + x / (pts * pts)
    return 1.0 / x + complex(np.sum(terms))


def epstein_phi1(lat: Lattice, x: complex, s: float, R: float) -> complex:
    """Directly convergent partial sum of the vector Epstein zeta.

    sum over |w + x| <= R of 1/((w + x) * |w + x|^(2s-1)), requiring
    s >= 1.25 so the plain sum converges absolutely with a usable tail.
    Smoke-test quality only; no acceleration is applied.
    """
    x = complex(x)
    if s < 1.25:
        raise BadExponent("s must be at least 1.25 for the direct sum")
    _guard_pole(lat, x, "x")
    reach = R + abs(x) + max(abs(lat.omega1), abs(lat.omega2))
    pts = shell(lat, reach, include_origin=True)
    shifted = pts + x
    dist = np.abs(shifted)
    keep = dist <= R
    shifted = shifted[keep]
    dist = dist[keep]
    order = np.argsort(dist, kind="stable")
    shifted = shifted[order]
    dist = dist[order]
    return complex(np.sum(1.0 / (shifted * dist ** (2.0 * s - 1.0))))
