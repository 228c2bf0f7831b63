"""Oriented rank-2 lattices in the complex plane.

A lattice is spanned by generators ``omega1``, ``omega2`` with
``Im(conj(omega1) * omega2) > 0``; that imaginary part is the area of the
fundamental cell and normalizes the symplectic form

    E(x, y) = Im(conj(x) * y) / area,

which satisfies E(omega1, omega2) = 1 and takes integer values on pairs of
lattice points.  Everything downstream (Gaussian series, truncation policy,
pole guards) is built on the helpers here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateLattice, ShellTooLarge, WrongOrientation

#: Default cap on the number of enumerated shell points.
SHELL_POINT_CAP = 10_000_000

#: Relative pole-guard radius, in units of the longest generator.
POLE_GUARD_SCALE = 1e-8


@dataclass(frozen=True)
class Lattice:
    """Oriented lattice with its cell area cached at construction."""

    omega1: complex
    omega2: complex
    area: float


class RealCoords(NamedTuple):
    """Real coefficients of a point in the generator basis."""

    x1: float
    x2: float


class TruncationPlan(NamedTuple):
    """Shell radius policy for a target absolute tolerance."""

    tol: float
    radius: float
    max_radius: float


def make_lattice(omega1: complex, omega2: complex) -> Lattice:
    """Construct an oriented lattice from a generator pair.

    Raises DegenerateLattice for zero or collinear generators and
    WrongOrientation when Im(conj(omega1) * omega2) < 0 (the caller may swap
    the generators to fix that).
    """
    omega1 = complex(omega1)
    omega2 = complex(omega2)
    if omega1 == 0 or omega2 == 0:
        raise DegenerateLattice("lattice generators must be nonzero")
    area = (omega1.conjugate() * omega2).imag
    if area == 0.0:
        raise DegenerateLattice("generators are real multiples of each other")
    if area < 0.0:
        raise WrongOrientation(
            "Im(conj(omega1)*omega2) < 0; swap the generators"
        )
    return Lattice(omega1, omega2, area)


def symplectic(lat: Lattice, x: complex, y: complex) -> float:
    """Area-normalized symplectic form E(x, y) = Im(conj(x)*y) / area."""
    return (complex(x).conjugate() * complex(y)).imag / lat.area


def real_coords(lat: Lattice, x: complex) -> RealCoords:
    """Solve x = x1*omega1 + x2*omega2 for real x1, x2.

    Closed form via the symplectic form: x1 = E(x, omega2), x2 = E(omega1, x).
    """
    x = complex(x)
    x1 = (x.conjugate() * lat.omega2).imag / lat.area
    x2 = (lat.omega1.conjugate() * x).imag / lat.area
    return RealCoords(x1, x2)


def shell(
    lat: Lattice,
    radius: float,
    include_origin: bool = True,
    *,
    cap: int = SHELL_POINT_CAP,
) -> np.ndarray:
    """Enumerate all lattice points with |m*omega1 + n*omega2| <= radius.

    The (m, n) bounding box comes from the dual-basis bounds
    |m| <= radius*|omega2|/area and |n| <= radius*|omega1|/area, so no point
    is missed for skew bases.  Points are returned in lexicographic (m, n)
    order as a complex128 array.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    mbound = int(radius * abs(lat.omega2) / lat.area) + 1
    nbound = int(radius * abs(lat.omega1) / lat.area) + 1
    bbox = (2 * mbound + 1) * (2 * nbound + 1)
    if bbox > 16 * cap:
        raise ShellTooLarge(
            f"bounding box of {bbox} candidate points exceeds the cap {cap}"
        )
    ms = np.arange(-mbound, mbound + 1)
    ns = np.arange(-nbound, nbound + 1)
    mm, nn = np.meshgrid(ms, ns, indexing="ij")
    mm = mm.ravel()
    nn = nn.ravel()
    pts = mm * lat.omega1 + nn * lat.omega2
    keep = np.abs(pts) <= radius
    if not include_origin:
        keep &= (mm != 0) | (nn != 0)
    pts = pts[keep]
    if pts.size > cap:
        raise ShellTooLarge(f"shell holds {pts.size} points, more than the cap {cap}")
    return pts


def trunc_radius(area: float, tol: float) -> TruncationPlan:
    """Shell radius for series whose terms decay like exp(-pi*|w|^2/area).

    radius = sqrt((area/pi) * (ln(1/tol) + 8)); the +8 margin absorbs
    polynomial prefactors and shell multiplicity.  Evaluators must still
    verify convergence by adaptive extension, capped at max_radius.
    """
    if area <= 0:
        raise ValueError("area must be positive")
    if not 0 < tol < 1:
        raise ValueError("tol must lie in (0, 1)")
    radius = math.sqrt((area / math.pi) * (math.log(1.0 / tol) + 8.0))
    return TruncationPlan(tol=tol, radius=radius, max_radius=3.0 * radius)


def nearest_lattice_distance(lat: Lattice, x: complex) -> float:
    """Distance from x to the nearest lattice point.

    Searches the 5x5 block of integer pairs around the rounded real
    coordinates, which is exact for any basis this library is used with.
    """
    x = complex(x)
    c = real_coords(lat, x)
    m0 = round(c.x1)
    n0 = round(c.x2)
    best = math.inf
    for dm in range(-2, 3):
        for dn in range(-2, 3):
            d = abs(x - ((m0 + dm) * lat.omega1 + (n0 + dn) * lat.omega2))
            if d < best:
                best = d
    return best


def pole_guard_radius(lat: Lattice) -> float:
    """Minimum allowed distance from an evaluation point to the lattice."""
    return POLE_GUARD_SCALE * max(abs(lat.omega1), abs(lat.omega2))
