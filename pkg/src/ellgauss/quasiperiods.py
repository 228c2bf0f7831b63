"""Quasi-periods eta1, eta2, the decomposition constant c, and full zeta.

The Weierstrass zeta of a lattice L shifts by the quasi-period eta(w) under
translation by w in L, and the generators satisfy the Legendre relation
eta1*omega2 - eta2*omega1 = 2*pi*i.  There is also a constant c with

    eta_i = c*omega_i + (pi/area) * conj(omega_i),   i = 1, 2,

which is what the differentiated Gaussian series needs.

The Gaussian series cannot bootstrap eta1 (Z vanishes identically on half
periods), so eta1 comes from the quasimodular weight-2 q-series:
eta1 = (pi^2/3) * E2(tau) / omega1 with tau = omega2/omega1, by degree -1
homogeneity of zeta.  eta2 then follows from Legendre, and c from the
decomposition at i = 1; the i = 2 decomposition is re-checked as an internal
consistency gate.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .errors import ConsistencyFailure
from .gaussian_series import EvalResult, hecke_z
from .lattice import Lattice, real_coords
from .oracles import eisenstein


class QuasiPeriods(NamedTuple):
    """Quasi-periods of the two generators and the decomposition constant."""

    eta1: complex
    eta2: complex
    c: complex


@lru_cache(maxsize=256)
def _quasi_periods_cached(omega1: complex, omega2: complex) -> QuasiPeriods:
    tau = omega2 / omega1
    area = (omega1.conjugate() * omega2).imag
    eta1 = (math.pi ** 2 / 3) * eisenstein(tau).e2 / omega1
    eta2 = (eta1 * omega2 - 2j * math.pi) / omega1
    c = (eta1 - (math.pi / area) * omega1.conjugate()) / omega1
    defect = abs(eta2 - c * omega2 - (math.pi / area) * omega2.conjugate())
    if defect > 1e-9:
        raise ConsistencyFailure(
            f"second-generator decomposition residual {defect:.3e} exceeds 1e-9"
        )
    return QuasiPeriods(eta1, eta2, c)


def quasi_periods(lat: Lattice) -> QuasiPeriods:
    """Compute (eta1, eta2, c) for a lattice; results are cached per basis."""
    return _quasi_periods_cached(lat.omega1, lat.omega2)


def zeta(lat: Lattice, x: complex, tol: float = 1e-12) -> EvalResult:
    """Weierstrass zeta: the periodic part Z plus the real-linear part.

    zeta(x, L) = Z(x, L) + x1*eta1 + x2*eta2 with (x1, x2) the real
    coordinates of x in the generator basis.
    """
    qp = quasi_periods(lat)
    z = hecke_z(lat, x, tol)
    x1, x2 = real_coords(lat, x)
    return EvalResult(
        z.value + x1 * qp.eta1 + x2 * qp.eta2,
        z.abs_error_estimate,
        z.terms_used,
        z.radius,
    )
