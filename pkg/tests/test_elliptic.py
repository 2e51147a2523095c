import numpy as np
import pytest
import scipy.special

from pluckerbrackets.dynamics import elliptic_oracle, jacobi_elliptic, quarter_period


class TestJacobiElliptic:
    def test_degenerates_to_circular_functions_at_k_zero(self):
        for t in np.linspace(0.0, 10.0, 21):
            sn, cn, dn = jacobi_elliptic(float(t), 0.0)
            assert sn == pytest.approx(np.sin(t), abs=1e-9)
            assert cn == pytest.approx(np.cos(t), abs=1e-9)
            assert dn == pytest.approx(1.0, abs=1e-9)

    def test_pointwise_identities(self):
        for k in (0.3, 0.5, 0.9):
            for t in np.linspace(0.0, 3.0, 7):
                sn, cn, dn = jacobi_elliptic(float(t), k)
                assert sn**2 + cn**2 == pytest.approx(1.0, abs=1e-10)
                assert k**2 * sn**2 + dn**2 == pytest.approx(1.0, abs=1e-10)

    def test_parity(self):
        sn_p, cn_p, dn_p = jacobi_elliptic(1.3, 0.6)
        sn_m, cn_m, dn_m = jacobi_elliptic(-1.3, 0.6)
        assert sn_m == -sn_p
        assert cn_m == cn_p
        assert dn_m == dn_p

    def test_derivative_relation(self):
        # d/dt sn = cn * dn via central differences
        k, t, h = 0.5, 0.8, 1e-5
        sn_p = jacobi_elliptic(t + h, k)[0]
        sn_m = jacobi_elliptic(t - h, k)[0]
        _, cn, dn = jacobi_elliptic(t, k)
        assert (sn_p - sn_m) / (2 * h) == pytest.approx(cn * dn, abs=1e-6)

    def test_special_function_cross_check(self):
        for k in (0.3, 0.5, 0.9):
            for t in (0.4, 1.1, 2.7):
                sn, cn, dn = jacobi_elliptic(t, k)
                rsn, rcn, rdn, _ = scipy.special.ellipj(t, k**2)
                assert sn == pytest.approx(rsn, abs=1e-9)
                assert cn == pytest.approx(rcn, abs=1e-9)
                assert dn == pytest.approx(rdn, abs=1e-9)

    def test_modulus_validation(self):
        with pytest.raises(ValueError):
            jacobi_elliptic(1.0, 1.0)
        with pytest.raises(ValueError):
            jacobi_elliptic(1.0, -0.1)


class TestQuarterPeriod:
    def test_matches_complete_elliptic_integral(self):
        for k in (0.0, 0.3, 0.5, 0.9, 0.99):
            assert quarter_period(k) == pytest.approx(scipy.special.ellipk(k**2), abs=1e-10)

    def test_validation(self):
        with pytest.raises(ValueError):
            quarter_period(1.0)


class TestOracle:
    def test_agrees_with_ode_on_primary_branch(self):
        for k in (0.3, 0.5, 0.9):
            big_k = quarter_period(k)
            for frac in (0.1, 0.5, 0.9):
                t = frac * big_k
                ode = jacobi_elliptic(t, k)
                quad = elliptic_oracle(t, k)
                assert np.max(np.abs(np.array(ode) - np.array(quad))) <= 1e-10

    def test_origin_and_parity(self):
        assert elliptic_oracle(0.0, 0.5) == (0.0, 1.0, 1.0)
        sn_m = elliptic_oracle(-0.7, 0.5)[0]
        sn_p = elliptic_oracle(0.7, 0.5)[0]
        assert sn_m == -sn_p

    def test_branch_limit_enforced(self):
        big_k = quarter_period(0.5)
        with pytest.raises(ValueError):
            elliptic_oracle(big_k + 0.01, 0.5)

    def test_modulus_validation(self):
        with pytest.raises(ValueError):
            elliptic_oracle(0.5, 1.2)
