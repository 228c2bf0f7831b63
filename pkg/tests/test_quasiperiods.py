import cmath
import math

import numpy as np
import pytest

from ellgauss import (
    SlowConvergence,
    hecke_z,
    make_lattice,
    quasi_periods,
    real_coords,
    zeta,
    zeta_classical,
    zeta_theta_oracle,
)

SQUARE = make_lattice(1, 1j)
HEX = make_lattice(1, cmath.exp(1j * math.pi / 3))
GENERIC = make_lattice(1, 0.3 + 1.2j)


class TestQuasiPeriods:
    def test_square_lattice(self):
        qp = quasi_periods(SQUARE)
        assert abs(qp.eta1 - math.pi) < 1e-13
        assert abs(qp.eta2 + 1j * math.pi) < 1e-13
        assert abs(qp.c) < 1e-13

    def test_hexagonal_lattice(self):
        qp = quasi_periods(HEX)
        assert abs(qp.eta1 - 2 * math.pi / math.sqrt(3)) < 1e-12 * (2 * math.pi / math.sqrt(3))
        assert abs(qp.c) < 1e-12

    @pytest.mark.parametrize("lat", [SQUARE, HEX, GENERIC, make_lattice(2, 1 + 2j)])
    def test_legendre_relation(self, lat):
        qp = quasi_periods(lat)
        lhs = qp.eta1 * lat.omega2 - qp.eta2 * lat.omega1
        scale = abs(qp.eta1 * lat.omega2) + abs(qp.eta2 * lat.omega1)
        assert abs(lhs - 2j * math.pi) <= 1e-12 * scale

    @pytest.mark.parametrize("lat", [SQUARE, HEX, GENERIC, make_lattice(2, 1 + 2j)])
    def test_decomposition_both_generators(self, lat):
        qp = quasi_periods(lat)
        p = math.pi / lat.area
        for eta, omega in ((qp.eta1, lat.omega1), (qp.eta2, lat.omega2)):
            assert abs(eta - qp.c * omega - p * omega.conjugate()) <= 1e-11

    def test_against_slow_classical_sum(self):
        # eta1 = 2 zeta(omega1 / 2); the classical sum is the independent route
        qp = quasi_periods(GENERIC)
        slow = 2 * zeta_classical(GENERIC, 0.5, 400.0)
        assert abs(qp.eta1 - slow) < 2e-3

    def test_flat_torus_rejected(self):
        with pytest.raises(SlowConvergence):
            quasi_periods(make_lattice(1, 0.3 + 0.01j))

    def test_e2_anchor_at_i(self):
        from ellgauss import eisenstein

        assert abs((math.pi ** 2 / 3) * eisenstein(1j).e2 - math.pi) < 1e-13


class TestZeta:
    def test_half_period_square(self):
        res = zeta(SQUARE, 0.5)
        assert abs(res.value - math.pi / 2) < 1e-12

    @pytest.mark.parametrize("lat", [SQUARE, HEX, GENERIC])
    def test_quasi_periodicity(self, lat):
        qp = quasi_periods(lat)
        for k in range(10):
            x = (0.15 + 0.06 * k) * lat.omega1 + (0.73 - 0.05 * k) * lat.omega2
            base = zeta(lat, x).value
            assert abs(zeta(lat, x + lat.omega1).value - base - qp.eta1) < 1e-10
            assert abs(zeta(lat, x + lat.omega2).value - base - qp.eta2) < 1e-10

    @pytest.mark.parametrize("lat", [SQUARE, HEX, GENERIC])
    def test_oddness(self, lat):
        x = 0.23 + 0.31j
        assert abs(zeta(lat, -x).value + zeta(lat, x).value) < 1e-10

    @pytest.mark.parametrize("tau", [1j, cmath.exp(1j * math.pi / 3), 0.3 + 1.2j])
    def test_matches_theta_oracle_on_grid(self, tau):
        lat = make_lattice(1, tau)
        for k in range(20):
            x = (0.1 + 0.04 * k) + (0.09 + 0.041 * k) * tau
            assert abs(zeta(lat, x).value - zeta_theta_oracle(tau, x)) < 1e-10

    def test_decomposition_round_trip(self):
        # zeta - (x1 eta1 + x2 eta2) must reproduce Z to a couple of ulps
        qp = quasi_periods(GENERIC)
        for x in (0.31 + 0.22j, -0.47 + 0.88j, 1.63 - 0.29j):
            c = real_coords(GENERIC, x)
            zv = zeta(GENERIC, x).value
            back = zv - (c.x1 * qp.eta1 + c.x2 * qp.eta2)
            want = hecke_z(GENERIC, x).value
            assert abs(back - want) <= 2 * np.spacing(max(abs(zv), abs(want)))

    def test_error_estimate_propagates(self):
        res = zeta(GENERIC, 0.3 + 0.2j, 1e-8)
        assert 0 <= res.abs_error_estimate <= 1e-8
        assert res.terms_used >= 1
