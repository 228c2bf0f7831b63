"""Elliptic special functions via rapidly convergent Gaussian lattice sums.

The Gaussian route (``gaussian_series``, ``quasiperiods``) evaluates the
periodic Z-function, Weierstrass zeta, wp, wp', and the Kronecker function F
with error estimates; ``oracles`` provides independent classical q-series
and direct sums for cross-validation; ``triple_product`` evaluates the
pairing coefficients whose antisymmetrization reproduces F and Z; ``verify``
runs the full identity suite; ``cli`` exposes everything on the command line.
"""

from .errors import (
    BadExponent,
    BadModulus,
    ConsistencyFailure,
    DegenerateLattice,
    EllgaussError,
    OutsideStrip,
    ParseError,
    ShellTooLarge,
    SlowConvergence,
    ToleranceNotReached,
    TooCloseToPole,
    WrongOrientation,
)
from .gaussian_series import (
    EvalResult,
    hecke_z,
    holomorphy_residual,
    kronecker_F,
    wp,
    wp_prime,
)
from .lattice import (
    Lattice,
    RealCoords,
    TruncationPlan,
    make_lattice,
    nearest_lattice_distance,
    real_coords,
    shell,
    symplectic,
    trunc_radius,
)
from .oracles import (
    EisensteinValues,
    F_qseries,
    F_theta,
    eisenstein,
    epstein_phi1,
    theta00,
    theta11,
    wp_theta_oracle,
    zeta_classical,
    zeta_theta_oracle,
)
from .quasiperiods import QuasiPeriods, quasi_periods, zeta
from .triple_product import (
    CaseKind,
    TripleCase,
    greens_coeff,
    pairing,
    product_coeff,
    theta_norm,
    theta_product_residual,
    triple_coefficient,
)
from .verify import (
    GridSpec,
    Report,
    kronecker_limit_residual,
    poisson_residual,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BadExponent",
    "BadModulus",
    "CaseKind",
    "ConsistencyFailure",
    "DegenerateLattice",
    "EisensteinValues",
    "EllgaussError",
    "EvalResult",
    "F_qseries",
    "F_theta",
    "GridSpec",
    "Lattice",
    "OutsideStrip",
    "ParseError",
    "QuasiPeriods",
    "RealCoords",
    "Report",
    "ShellTooLarge",
    "SlowConvergence",
    "ToleranceNotReached",
    "TooCloseToPole",
    "TripleCase",
    "TruncationPlan",
    "WrongOrientation",
    "eisenstein",
    "epstein_phi1",
    "greens_coeff",
    "hecke_z",
    "holomorphy_residual",
    "kronecker_F",
    "kronecker_limit_residual",
    "make_lattice",
    "nearest_lattice_distance",
    "pairing",
    "poisson_residual",
    "product_coeff",
    "quasi_periods",
    "real_coords",
    "run_suite",
    "shell",
    "symplectic",
    "theta00",
    "theta11",
    "theta_norm",
    "theta_product_residual",
    "triple_coefficient",
    "trunc_radius",
    "wp",
    "wp_prime",
    "wp_theta_oracle",
    "zeta",
    "zeta_classical",
    "zeta_theta_oracle",
]
