"""Identity verification suite over deterministic offset grids.

Every identity the library relies on is exercised here and scored against a
fixed threshold: half-lattice vanishing and exact periodicity of Z, the
quasi-periodicity of zeta, the Legendre relation and quasi-period
decomposition, the dbar defects, the first-moment (generator-holomorphy) and
Poisson residuals, the three evaluation routes to the Kronecker function and
its small-argument limit, parity and half-period structure of wp and wp',
the cubic identity, homogeneity under lattice rescaling, and the
triple-product coefficient identities.  The report is machine-readable and
deterministic: records are sorted before serialization and wall time is
excluded unless explicitly requested.
"""

from __future__ import annotations

import cmath
import json
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import gaussian_series as gs
from . import oracles
from . import quasiperiods as qp
from . import triple_product as tp
from .errors import EllgaussError
from .lattice import (
    Lattice,
    make_lattice,
    nearest_lattice_distance,
    shell,
    trunc_radius,
)

#: Assertion threshold per check; exact identities sit at or below 1e-11.
THRESHOLDS = {
    "half_lattice_vanishing": 1e-12,
    "z_periodicity": 1e-11,
    "zeta_quasi_periodicity": 1e-10,
    "legendre_relation": 1e-12,  # relative
    "quasi_period_decomposition": 1e-11,
    "dbar_defect_z": 1e-5,
    "dbar_defect_wp": 1e-5,
    "generator_holomorphy": 1e-12,
    "poisson_self_dual": 1e-12,
    "kronecker_three_way": 1e-9,
    "kronecker_symmetry": 1e-11,
    "kronecker_antidiagonal": 1e-11,
    "kronecker_limit": 1e-2,
    "kronecker_limit_shrink": 1.0 / 1.8,  # ratio of residuals after halving y
    "wp_evenness": 1e-10,
    "wp_prime_oddness": 1e-10,
    "wp_prime_half_periods": 1e-10,
    "cubic_identity": 1e-7,  # scaled by 1 + |wp|^3
    "homogeneity": 1e-9,
    "triple_case_a": 1e-8,
    "triple_case_b": 1e-8,
    "pairing_consistency": 1e-10,
    "theta_product_expansion": 1e-10,
}

_FD_STEP = 1e-4


def format_complex(z: complex) -> str:
    """Render a complex in the same 'a+bi' syntax the CLI parses."""
    z = complex(z)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


@dataclass(frozen=True)
class GridSpec:
    """Deterministic offset grid over the fundamental cell.

    Points are x = ((i + offset1)/n) * omega1 + ((j + offset2)/n) * omega2
    for 0 <= i, j < n, dropping any point closer to the lattice than
    min_pole_distance times the shorter generator.  The offsets break the
    symmetries that could hide sign errors.
    """

    n: int = 4
    offset1: float = 0.137
    offset2: float = 0.071
    min_pole_distance: float = 0.05

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("grid needs at least 2 points per direction")
        if not (0 < self.offset1 < 1 and 0 < self.offset2 < 1):
            raise ValueError("offsets must lie in (0, 1)")

    def points(self, lat: Lattice) -> list[complex]:
        floor = self.min_pole_distance * min(abs(lat.omega1), abs(lat.omega2))
        out = []
        for i in range(self.n):
            for j in range(self.n):
                x = ((i + self.offset1) / self.n) * lat.omega1 + (
                    (j + self.offset2) / self.n
                ) * lat.omega2
                if nearest_lattice_distance(lat, x) >= floor:
                    out.append(x)
        return out


@dataclass(frozen=True)
class CheckRecord:
    """One residual measured against its threshold."""

    check: str
    lattice: str
    point: str
    residual: float | None
    threshold: float
    passed: bool
    error: str | None = None

    def to_dict(self) -> dict:
        d = {
            "check": self.check,
            "lattice": self.lattice,
            "point": self.point,
            "residual": self.residual,
            "threshold": self.threshold,
            "pass": self.passed,
        }
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class Report:
    """Structured outcome of a suite run."""

    records: list[CheckRecord]
    overall_pass: bool
    wall_time_s: float
    coverage: dict[str, int] = field(default_factory=dict)
    coverage_complete: bool = True

    def to_json(self, *, include_timing: bool = False, indent: int | None = None) -> str:
        ordered = sorted(self.records, key=lambda r: (r.check, r.lattice, r.point))
        payload = {
            "overall_pass": self.overall_pass,
            "coverage": dict(sorted(self.coverage.items())),
            "coverage_complete": self.coverage_complete,
            "records": [r.to_dict() for r in ordered],
        }
        if include_timing:
            payload["wall_time_s"] = self.wall_time_s
        return json.dumps(payload, sort_keys=True, indent=indent)


def poisson_residual(tau: complex, x: complex, y: complex, cutoff: float) -> complex:
    """Self-duality residual of the normalized cell Gaussian.

    With phi(t) = exp(-(pi/a)|t|^2), compares
    sum_w phi(w + x) exp(-2 pi i E(w + x, y)) against
    sum_w phi(w + y) exp(-2 pi i E(w, x)) over |w| <= cutoff.
    """
    lat = oracles.lattice_for_tau(tau)
    x = complex(x)
    y = complex(y)
    a = lat.area
    p = math.pi / a
    phase = 2.0 * math.pi / a
    pts = shell(lat, cutoff)
    pts = pts[np.argsort(np.abs(pts), kind="stable")]
    lhs = np.sum(
        np.exp(-p * np.abs(pts + x) ** 2 - 1j * phase * (np.conj(pts + x) * y).imag)
    )
    rhs = np.sum(
        np.exp(-p * np.abs(pts + y) ** 2 - 1j * phase * (np.conj(pts) * x).imag)
    )
    return complex(lhs - rhs)


def kronecker_limit_residual(
    tau: complex, x: complex, y_small: float, tol: float = 1e-12
) -> tuple[complex, complex]:
    """Residuals of the two small-y recoveries of zeta - x*eta1 from F.

    At y = y_small*(1+i)/sqrt(2) returns
      (2 pi i F(x, y) - 1/y) - (zeta(x) - x*eta1)          [O(y_small)]
      pi i (F(x, y) + F(x, -y)) - (zeta(x) - x*eta1)       [O(y_small^2)]
    """
    if not 0 < y_small <= 1e-2:
        raise ValueError("y_small must lie in (0, 1e-2]")
    tau = complex(tau)
    x = complex(x)
    y = y_small * (1 + 1j) / math.sqrt(2)
    lat = oracles.lattice_for_tau(tau)
    f_plus = gs.kronecker_F(tau, x, y, tol).value
    f_minus = gs.kronecker_F(tau, x, -y, tol).value
    target = qp.zeta(lat, x, tol).value - x * qp.quasi_periods(lat).eta1
    res1 = (2j * math.pi * f_plus - 1.0 / y) - target
    res2 = 1j * math.pi * (f_plus + f_minus) - target
    return res1, res2


def default_lattices() -> list[tuple[complex, complex]]:
    """Generator pairs for the three reference moduli."""
    return [
        (1.0 + 0j, 1j),
        (1.0 + 0j, cmath.exp(1j * math.pi / 3)),
        (1.0 + 0j, 0.3 + 1.2j),
    ]


def _dbar_fd(f: Callable[[complex], complex], x: complex, h: float = _FD_STEP) -> complex:
    """Central finite-difference estimate of the antiholomorphic derivative."""
    du = (f(x + h) - f(x - h)) / (2.0 * h)
    dv = (f(x + 1j * h) - f(x - 1j * h)) / (2j * h)
    return (du - dv) / 2.0


def _deep_points(lat: Lattice) -> list[complex]:
    # pole distance >= ~0.4 generator lengths keeps the f''' h^2 / 6 term of
    # the finite-difference dbar estimate below the 1e-5 thresholds
    return [
        0.42 * lat.omega1 + 0.46 * lat.omega2,
        0.58 * lat.omega1 + 0.36 * lat.omega2,
    ]


class _SuiteRun:
    """Accumulates records for one run; every check is exception-guarded."""

    def __init__(self, grid: GridSpec, tol: float):
        self.grid = grid
        self.tol = tol
        self.records: list[CheckRecord] = []

    def add(
        self,
        check: str,
        lattice: str,
        point: str,
        fn: Callable[[], float],
        threshold: float | None = None,
    ) -> None:
        thr = THRESHOLDS[check] if threshold is None else threshold
        try:
            residual = float(fn())
        except EllgaussError as exc:
            self.records.append(
                CheckRecord(check, lattice, point, None, thr, False, f"{type(exc).__name__}: {exc}")
            )
        else:
            self.records.append(
                CheckRecord(check, lattice, point, residual, thr, residual <= thr)
            )

    # ---- per-lattice checks -------------------------------------------------

    def run_lattice(self, gens: tuple[complex, complex]) -> None:
        label = f"({format_complex(gens[0])}, {format_complex(gens[1])})"
        try:
            lat = make_lattice(*gens)
        except EllgaussError as exc:
            self.records.append(
                CheckRecord(
                    "lattice_construction",
                    label,
                    "",
                    None,
                    0.0,
                    False,
                    f"{type(exc).__name__}: {exc}",
                )
            )
            return
        tau = lat.omega2 / lat.omega1
        pts = self.grid.points(lat)
        some = pts[:: max(1, len(pts) // 4)][:4]

        self._basic_z(lat, label, pts, some)
        self._quasi_periods(lat, label, pts)
        self._residual_identities(lat, tau, label, pts)
        self._kronecker(tau, label)
        self._wp_family(lat, label, pts, some)
        self._homogeneity(lat, label, some)
        self._triples(tau, label)

    def _basic_z(self, lat, label, pts, some):
        tol = self.tol
        halves = [lat.omega1 / 2, lat.omega2 / 2, (lat.omega1 + lat.omega2) / 2]
        for hpt in halves:
            self.add(
                "half_lattice_vanishing",
                label,
                format_complex(hpt),
                lambda hpt=hpt: abs(gs.hecke_z(lat, hpt, tol).value),
            )
        shifts = [lat.omega1, lat.omega2, lat.omega1 + lat.omega2]
        for x in pts:
            for w in shifts:
                self.add(
                    "z_periodicity",
                    label,
                    f"x={format_complex(x)} w={format_complex(w)}",
                    lambda x=x, w=w: abs(
                        gs.hecke_z(lat, x + w, tol).value - gs.hecke_z(lat, x, tol).value
                    ),
                )
        for x in _deep_points(lat):
            self.add(
                "dbar_defect_z",
                label,
                format_complex(x),
                lambda x=x: abs(
                    _dbar_fd(lambda t: gs.hecke_z(lat, t, tol).value, x)
                    + math.pi / lat.area
                ),
            )

    def _quasi_periods(self, lat, label, pts):
        tol = self.tol
        try:
            periods = qp.quasi_periods(lat)
        except EllgaussError as exc:
            self.records.append(
                CheckRecord(
                    "legendre_relation",
                    label,
                    "",
                    None,
                    THRESHOLDS["legendre_relation"],
                    False,
                    f"{type(exc).__name__}: {exc}",
                )
            )
            return
        lhs = periods.eta1 * lat.omega2 - periods.eta2 * lat.omega1
        scale = abs(periods.eta1 * lat.omega2) + abs(periods.eta2 * lat.omega1)
        self.add(
            "legendre_relation",
            label,
            "",
            lambda: abs(lhs - 2j * math.pi) / scale,
        )
        for i, (eta, omega) in enumerate(
            [(periods.eta1, lat.omega1), (periods.eta2, lat.omega2)], start=1
        ):
            self.add(
                "quasi_period_decomposition",
                label,
                f"generator {i}",
                lambda eta=eta, omega=omega: abs(
                    eta - periods.c * omega - (math.pi / lat.area) * omega.conjugate()
                ),
            )
        for x in pts[:6]:
            for eta, omega in [(periods.eta1, lat.omega1), (periods.eta2, lat.omega2)]:
                self.add(
                    "zeta_quasi_periodicity",
                    label,
                    f"x={format_complex(x)} w={format_complex(omega)}",
                    lambda x=x, omega=omega, eta=eta: abs(
                        qp.zeta(lat, x + omega, tol).value
                        - qp.zeta(lat, x, tol).value
                        - eta
                    ),
                )

    def _residual_identities(self, lat, tau, label, pts):
        cutoff = trunc_radius(lat.area, 1e-14).radius
        for x in pts[:5]:
            self.add(
                "generator_holomorphy",
                label,
                format_complex(x),
                lambda x=x: abs(gs.holomorphy_residual(lat, x, self.tol).value),
            )
        for k, x in enumerate(pts[:5]):
            y = pts[(2 * k + 3) % len(pts)] * 0.5
            self.add(
                "poisson_self_dual",
                label,
                f"x={format_complex(x)} y={format_complex(y)}",
                lambda x=x, y=y: abs(
                    poisson_residual(tau, x, y, cutoff + abs(x) + abs(y) + 1.0)
                ),
            )

    def _strip_pairs(self, tau: complex, count: int) -> list[tuple[complex, complex]]:
        pairs = []
        for j in range(count):
            tx = 0.10 + 0.80 * (j + 0.37) / count
            ty = 0.10 + 0.80 * ((3 * j + 5) % count + 0.61) / count
            pairs.append((0.137 + tx * tau, 0.071 + ty * tau))
        return pairs

    def _kronecker(self, tau, label):
        tol = self.tol
        for x, y in self._strip_pairs(tau, 10):
            self.add(
                "kronecker_three_way",
                label,
                f"x={format_complex(x)} y={format_complex(y)}",
                lambda x=x, y=y: max(
                    abs(gs.kronecker_F(tau, x, y, tol).value - oracles.F_theta(tau, x, y)),
                    abs(gs.kronecker_F(tau, x, y, tol).value - oracles.F_qseries(tau, x, y)),
                    abs(oracles.F_theta(tau, x, y) - oracles.F_qseries(tau, x, y)),
                ),
            )
        for x, y in self._strip_pairs(tau, 5):
            self.add(
                "kronecker_symmetry",
                label,
                f"x={format_complex(x)} y={format_complex(y)}",
                lambda x=x, y=y: abs(
                    gs.kronecker_F(tau, x, y, tol).value
                    - gs.kronecker_F(tau, y, x, tol).value
                ),
            )
            self.add(
                "kronecker_antidiagonal",
                label,
                f"x={format_complex(x)}",
                lambda x=x: abs(gs.kronecker_F(tau, x, -x, tol).value),
            )
        x0 = 0.3 + 0.2 * tau
        try:
            r_full, _ = kronecker_limit_residual(tau, x0, 1e-3, tol)
            r_half, _ = kronecker_limit_residual(tau, x0, 5e-4, tol)
        except EllgaussError as exc:
            self.records.append(
                CheckRecord(
                    "kronecker_limit",
                    label,
                    format_complex(x0),
                    None,
                    THRESHOLDS["kronecker_limit"],
                    False,
                    f"{type(exc).__name__}: {exc}",
                )
            )
            return
        self.add("kronecker_limit", label, format_complex(x0), lambda: abs(r_full))
        self.add(
            "kronecker_limit_shrink",
            label,
            format_complex(x0),
            lambda: abs(r_half) / abs(r_full),
        )

    def _wp_family(self, lat, label, pts, some):
        tol = self.tol
        for x in pts[:8]:
            self.add(
                "wp_evenness",
                label,
                format_complex(x),
                lambda x=x: abs(gs.wp(lat, x, tol).value - gs.wp(lat, -x, tol).value),
            )
            self.add(
                "wp_prime_oddness",
                label,
                format_complex(x),
                lambda x=x: abs(
                    gs.wp_prime(lat, x, tol).value + gs.wp_prime(lat, -x, tol).value
                ),
            )
        for hpt in [lat.omega1 / 2, lat.omega2 / 2, (lat.omega1 + lat.omega2) / 2]:
            self.add(
                "wp_prime_half_periods",
                label,
                format_complex(hpt),
                lambda hpt=hpt: abs(gs.wp_prime(lat, hpt, tol).value),
            )
        tau = lat.omega2 / lat.omega1
        scale1 = lat.omega1 ** 2
        for x in pts[:10]:

            def cubic(x=x):
                eis = oracles.eisenstein(tau)
                g2 = eis.g2 / scale1 ** 2
                g3 = eis.g3 / scale1 ** 3
                p = gs.wp(lat, x, tol).value
                dp = gs.wp_prime(lat, x, tol).value
                return abs(dp * dp - (4 * p ** 3 - g2 * p - g3)) / (1.0 + abs(p) ** 3)

            self.add("cubic_identity", label, format_complex(x), cubic)
        for x in _deep_points(lat):
            self.add(
                "dbar_defect_wp",
                label,
                format_complex(x),
                lambda x=x: abs(_dbar_fd(lambda t: gs.wp(lat, t, tol).value, x)),
            )

    def _homogeneity(self, lat, label, some):
        tol = self.tol
        for lam in (2.0 + 0j, 1 + 1j):
            scaled = make_lattice(lam * lat.omega1, lam * lat.omega2)
            for x in some[:2]:
                for name, fn, degree in (
                    ("zeta", qp.zeta, 1),
                    ("wp", gs.wp, 2),
                    ("wp_prime", gs.wp_prime, 3),
                ):
                    self.add(
                        "homogeneity",
                        label,
                        f"lambda={format_complex(lam)} {name} x={format_complex(x)}",
                        lambda lam=lam, x=x, fn=fn, degree=degree: abs(
                            fn(scaled, lam * x, tol).value
                            - fn(lat, x, tol).value / lam ** degree
                        ),
                    )

    def _triple_pairs(self, count: int) -> list[tuple[complex, complex]]:
        return [
            (
                0.31 + 0.04 * k + (0.21 - 0.025 * k) * 1j,
                0.12 + 0.03 * k + (0.37 + 0.02 * k) * 1j,
            )
            for k in range(count)
        ]

    def _triples(self, tau, label):
        tol = max(self.tol, 1e-11)
        a = tau.imag
        base_cutoff = math.sqrt(2.0) * trunc_radius(a, tol).radius
        for u, v in self._triple_pairs(5):
            self.add(
                "triple_case_a",
                label,
                f"u={format_complex(u)} v={format_complex(v)}",
                lambda u=u, v=v: abs(
                    tp.triple_coefficient(tp.TripleCase.case_a(u, v), tau, tol)
                    - 2j * math.pi * gs.kronecker_F(tau, u, -v, tol).value
                ),
            )
            self.add(
                "triple_case_b",
                label,
                f"v={format_complex(v)}",
                lambda v=v: abs(
                    tp.triple_coefficient(tp.TripleCase.case_b(v), tau, tol)
                    + gs.hecke_z(oracles.lattice_for_tau(tau), v, tol).value
                ),
            )
            self.add(
                "pairing_consistency",
                label,
                f"u={format_complex(u)} v={format_complex(v)}",
                lambda u=u, v=v: (
                    lambda raw, simpl: abs(raw - simpl)
                )(*tp.pairing(tau, u, v, base_cutoff + abs(u) + abs(v))),
            )
        for k in range(5):
            x = 0.21 + 0.05 * k + (0.14 + 0.03 * k) * 1j
            y = 0.08 + 0.04 * k - 0.11j * (k % 2)
            z = -0.13 + 0.02 * k + (0.29 - 0.02 * k) * 1j
            self.add(
                "theta_product_expansion",
                label,
                f"x={format_complex(x)} y={format_complex(y)} z={format_complex(z)}",
                lambda x=x, y=y, z=z: abs(
                    tp.theta_product_residual(
                        tau, x, y, z, base_cutoff + abs(y) + abs(z) + 1.0
                    )
                ),
            )


def run_suite(
    lattices: Sequence[tuple[complex, complex]],
    grid: GridSpec | None = None,
    tol: float = 1e-10,
) -> Report:
    """Run every identity check on each lattice and assemble a Report.

    ``lattices`` is a sequence of generator pairs; construction failures
    become failed records and the suite continues.  Evaluation errors inside
    any check are likewise recorded, never raised.  Thresholds assume
    tol <= 1e-10 (the default).
    """
    if not lattices:
        raise ValueError("at least one lattice is required")
    grid = grid or GridSpec()
    start = time.perf_counter()
    run = _SuiteRun(grid, tol)
    for gens in lattices:
        run.run_lattice((complex(gens[0]), complex(gens[1])))
    coverage = Counter(r.check for r in run.records)
    complete = all(coverage.get(name, 0) > 0 for name in THRESHOLDS)
    return Report(
        records=run.records,
        overall_pass=all(r.passed for r in run.records),
        wall_time_s=time.perf_counter() - start,
        coverage=dict(coverage),
        coverage_complete=complete,
    )
