import cmath
import math

import numpy as np
import pytest

from ellgauss import (
    BadExponent,
    BadModulus,
    OutsideStrip,
    SlowConvergence,
    TooCloseToPole,
    F_qseries,
    F_theta,
    eisenstein,
    epstein_phi1,
    make_lattice,
    shell,
    theta00,
    theta11,
    wp_theta_oracle,
    zeta_classical,
    zeta_theta_oracle,
)

TAUS = [1j, cmath.exp(1j * math.pi / 3), 0.3 + 1.2j]


def ulp(x: float) -> float:
    return np.spacing(abs(x))


class TestTheta11:
    @pytest.mark.parametrize("tau", TAUS)
    def test_vanishes_at_origin(self, tau):
        assert abs(theta11(tau, 0.0)) < 1e-15

    @pytest.mark.parametrize("tau", TAUS)
    def test_oddness(self, tau):
        z = 0.23 + 0.17j
        v = theta11(tau, z)
        assert abs(theta11(tau, -z) + v) < 1e-13 * abs(v)

    def test_shift_by_one_flips_sign(self):
        tau = 0.3 + 1.2j
        z = 0.31 + 0.12j
        assert abs(theta11(tau, z + 1) + theta11(tau, z)) < 1e-13

    def test_shift_by_tau(self):
        # index shift n -> n-1 gives theta(z+tau) = -exp(-pi i tau - 2 pi i z) theta(z)
        tau = 0.3 + 1.2j
        z = 0.21 - 0.4j
        lhs = theta11(tau, z + tau)
        rhs = -cmath.exp(-1j * math.pi * tau - 2j * math.pi * z) * theta11(tau, z)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))

    def test_derivative_against_finite_differences(self):
        tau = 1.1j
        z = 0.27 + 0.33j
        h = 1e-5
        for order in (1, 2, 3):
            fd = (theta11(tau, z + h, order - 1) - theta11(tau, z - h, order - 1)) / (2 * h)
            assert abs(theta11(tau, z, order) - fd) < 1e-7 * max(1.0, abs(fd))

    def test_bad_order(self):
        with pytest.raises(ValueError):
            theta11(1j, 0.3, 4)

    def test_bad_modulus(self):
        with pytest.raises(BadModulus):
            theta11(-1j, 0.3)

    def test_truncation_invariance(self):
        # |q| = 0.5 corresponds to Im tau = ln2 / (2 pi)
        tau = 1j * math.log(2) / (2 * math.pi) + 0.2
        z = 0.11 + 0.04j
        v = theta11(tau, z)
        v_more = theta11(tau, z, min_terms=40)
        assert abs(v_more - v) <= ulp(abs(v))


class TestTheta00:
    def test_integer_shift_invariance(self):
        tau = 0.3 + 1.2j
        z = 0.41 + 0.23j
        v = theta00(tau, z)
        assert abs(theta00(tau, z + 1) - v) < 1e-14 * abs(v)

    def test_square_lattice_value(self):
        # direct partial sum 1 + 2*sum exp(-pi n^2): converges in a few terms
        direct = 1.0 + 2.0 * sum(math.exp(-math.pi * n * n) for n in range(1, 8))
        assert abs(theta00(1j, 0.0) - direct) < 1e-14
        assert abs(theta00(1j, 0.0) - 1.086434811213308) < 1e-12

    def test_shift_by_tau(self):
        tau = 0.3 + 1.2j
        z = 0.17 - 0.09j
        lhs = theta00(tau, z + tau)
        rhs = cmath.exp(-1j * math.pi * tau - 2j * math.pi * z) * theta00(tau, z)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))

    def test_truncation_invariance(self):
        tau = 1j * math.log(2) / (2 * math.pi)
        v = theta00(tau, 0.08 + 0.02j)
        v_more = theta00(tau, 0.08 + 0.02j, min_terms=40)
        assert abs(v_more - v) <= ulp(abs(v))


class TestEisenstein:
    def test_e2_limit_at_large_im(self):
        assert abs(eisenstein(20j).e2 - 1.0) < 1e-15

    def test_e2_at_i(self):
        # eta1(i) = pi forces E2(i) = 3/pi on the square lattice
        assert abs(eisenstein(1j).e2 - 3 / math.pi) < 1e-14

    def test_g3_vanishes_at_i(self):
        vals = eisenstein(1j)
        assert abs(vals.g3) <= 1e-12 * abs(vals.g2)

    def test_g2_vanishes_at_hexagonal(self):
        vals = eisenstein(cmath.exp(1j * math.pi / 3))
        assert abs(vals.g2) <= 1e-12 * abs(vals.g3)

    def test_quasimodular_anomaly(self):
        # E2(-1/tau) - tau^2 E2(tau) = -6 i tau / pi
        for tau in (0.2 + 1.1j, 1.3j, -0.4 + 0.9j):
            lhs = eisenstein(-1 / tau).e2 - tau * tau * eisenstein(tau).e2
            assert abs(lhs + 6j * tau / math.pi) < 1e-10

    def test_bad_modulus(self):
        with pytest.raises(BadModulus):
            eisenstein(1.0 - 0.2j)

    def test_slow_convergence_guard(self):
        with pytest.raises(SlowConvergence):
            eisenstein(0.01j)

    def test_truncation_invariance(self):
        tau = 1j * math.log(2) / (2 * math.pi)
        v = eisenstein(tau, min_terms=0).e2
        v_more = eisenstein(tau, min_terms=120).e2
        assert abs(v_more - v) <= 4 * ulp(abs(v))


class TestFQseries:
    def test_symmetry(self):
        tau = 0.3 + 1.2j
        x, y = 0.2 + 0.3j, 0.1 + 0.4j
        assert abs(F_qseries(tau, x, y) - F_qseries(tau, y, x)) < 1e-12

    def test_real_on_imaginary_data(self):
        tau = 1.2j
        v = F_qseries(tau, 0.4j, 0.4j)
        assert abs(v.imag) < 1e-13 * abs(v)
        assert abs(v - F_theta(tau, 0.4j, 0.4j)) < 1e-12 * abs(v)

    def test_outside_strip(self):
        with pytest.raises(OutsideStrip):
            F_qseries(1.2j, 0.2 - 0.1j, 0.3j)
        with pytest.raises(OutsideStrip):
            F_qseries(1.2j, 0.2 + 0.3j, 0.2 + 1.3j)

    def test_truncation_invariance(self):
        tau = 1.0j  # |q| well below 0.5
        x, y = 0.1 + 0.4j, 0.2 + 0.5j
        v = F_qseries(tau, x, y)
        v_more = F_qseries(tau, x, y, min_terms=25)
        assert abs(v_more - v) <= 2 * ulp(abs(v))


class TestFTheta:
    def test_zero_on_antidiagonal(self):
        tau = 0.3 + 1.2j
        x = 0.2 + 0.3j
        assert abs(F_theta(tau, x, -x)) < 1e-13

    @pytest.mark.parametrize("tau", TAUS)
    def test_matches_qseries_in_strip(self, tau):
        for k in range(4):
            x = 0.13 + (0.15 + 0.17 * k) * tau
            y = 0.07 + (0.61 - 0.11 * k) * tau
            a = F_theta(tau, x, y)
            b = F_qseries(tau, x, y)
            assert abs(a - b) < 1e-12 * max(1.0, abs(a))

    def test_residue_at_origin(self):
        tau = 1.1j
        x = 1e-4
        y = 0.1 + 0.4j
        assert abs(x * F_theta(tau, x, y) - 1 / (2j * math.pi)) < 1e-4

    def test_pole_guard(self):
        with pytest.raises(TooCloseToPole):
            F_theta(1.1j, 1e-12, 0.3j + 0.1)


class TestZetaThetaOracle:
    def test_log_derivative_vanishes_at_half_period(self):
        for tau in TAUS:
            assert abs(theta11(tau, 0.5, 1) / theta11(tau, 0.5)) < 1e-12

    @pytest.mark.parametrize("tau", TAUS)
    def test_oddness(self, tau):
        x = 0.23 + 0.31j
        assert abs(zeta_theta_oracle(tau, -x) + zeta_theta_oracle(tau, x)) < 1e-12


class TestWpThetaOracle:
    @pytest.mark.parametrize("tau", TAUS)
    def test_evenness(self, tau):
        x = 0.29 + 0.18j
        assert abs(wp_theta_oracle(tau, x) - wp_theta_oracle(tau, -x)) < 1e-11 * max(
            1.0, abs(wp_theta_oracle(tau, x))
        )

    def test_double_pole_leading_term(self):
        x = 1e-3
        assert abs(x * x * wp_theta_oracle(1j, x) - 1.0) < 1e-4

    def test_consistency_with_zeta_derivative(self):
        # wp = -zeta', holomorphic derivative by central differences
        tau = 0.3 + 1.2j
        x = 0.31 + 0.24j
        h = 1e-4
        dz = (zeta_theta_oracle(tau, x + h) - zeta_theta_oracle(tau, x - h)) / (2 * h)
        assert abs(wp_theta_oracle(tau, x) + dz) < 1e-5


class TestZetaClassical:
    def test_half_period_value_square_lattice(self):
        lat = make_lattice(1, 1j)
        assert abs(zeta_classical(lat, 0.5, 400.0) - math.pi / 2) < 2e-3

    def test_oddness_within_tail(self):
        lat = make_lattice(1, 1j)
        x = 0.3 + 0.2j
        r = 60.0
        tail = 2 * math.pi * abs(x) ** 2 / r  # O(|x|^2 / R) with shell density 2pi/a
        assert abs(zeta_classical(lat, x, r) + zeta_classical(lat, -x, r)) < tail

    def test_loose_agreement_with_theta_oracle(self):
        lat = make_lattice(1, 1j)
        x = 0.3 + 0.2j
        assert abs(zeta_classical(lat, x, 100.0) - zeta_theta_oracle(1j, x)) < 1e-2

    def test_radius_precondition(self):
        with pytest.raises(ValueError):
            zeta_classical(make_lattice(1, 1j), 0.3, 2.0)


class TestEpsteinPhi1:
    def test_bad_exponent(self):
        with pytest.raises(BadExponent):
            epstein_phi1(make_lattice(1, 1j), 0.5 + 0.5j, 1.0, 50.0)

    def test_oddness(self):
        lat = make_lattice(1, 1j)
        x = 0.3 + 0.1j
        a = epstein_phi1(lat, x, 2.0, 40.0)
        b = epstein_phi1(lat, -x, 2.0, 40.0)
        # shell symmetry w -> -w makes the partial sums exactly antisymmetric
        assert abs(a + b) < 1e-12 * abs(a)

    def test_tail_self_consistency(self):
        lat = make_lattice(1, 1j)
        x = 0.5 + 0.5j
        s = 2.0
        near = epstein_phi1(lat, x, s, 50.0)
        far = epstein_phi1(lat, x, s, 100.0)
        # tail bound: (2 pi / a) * integral_R^inf r^(1-2s) dr = pi R^(2-2s) (s = 2)
        assert abs(far - near) <= math.pi * 50.0 ** (2 - 2 * s)

    def test_pole_guard(self):
        with pytest.raises(TooCloseToPole):
            epstein_phi1(make_lattice(1, 1j), 1e-13, 2.0, 40.0)
