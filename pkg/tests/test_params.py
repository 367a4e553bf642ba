import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from echochain import (DEFAULT_THRESHOLD_FACTORS, InitSpec, ModeState,
                       ParameterError, PhysicalParams, RegimeThresholds,
                       SimConfig, WeightSpec, check_mode_budget, initial_state,
                       params_with, validate_params, weight_eval, weight_profile)


class TestPhysicalParams:
    def test_g_is_derived(self):
        p = PhysicalParams(nu=0.5, c=0.001)
        assert p.g == 2 * 0.001 * 0.5
        assert not p.theorem_range_exceeded

    def test_range_flag(self):
        assert PhysicalParams(nu=1.0, c=0.002).theorem_range_exceeded
        assert not PhysicalParams(nu=1.0, c=0.001).theorem_range_exceeded

    @pytest.mark.parametrize("nu,c", [(0.0, 0.001), (-1.0, 0.001),
                                      (1.0, -0.001), (float("nan"), 0.001),
                                      (1.0, float("inf"))])
    def test_rejects_bad_values(self, nu, c):
        with pytest.raises(ParameterError):
            PhysicalParams(nu=nu, c=c)

    def test_c_zero_representable(self):
        p = PhysicalParams(nu=1.0, c=0.0)
        assert p.g == 0.0

    def test_params_with(self):
        p = PhysicalParams(nu=0.5, c=0.001)
        q = params_with(p, c=0.002)
        assert q.c == 0.002 and q.nu == 0.5 and q.g == 2 * 0.002 * 0.5


class TestValidateParams:
    def test_positional(self):
        p = validate_params(0.5, 0.001)
        assert (p.nu, p.c, p.alpha) == (0.5, 0.001, 0.0)

    def test_mapping(self):
        p = validate_params({"nu": 1.0, "c": 0.004, "alpha": 0.25})
        assert p.alpha == 0.25 and p.theorem_range_exceeded

    def test_mapping_rejects_unknown_keys(self):
        with pytest.raises(ParameterError):
            validate_params({"nu": 1.0, "c": 0.001, "cc": 1.0})

    def test_idempotent(self):
        p = validate_params(0.5, 0.001)
        assert validate_params(p) == p

    @pytest.mark.parametrize("c", [0.0, -0.001, 0.02, float("nan")])
    def test_rejects_out_of_range_c(self, c):
        with pytest.raises(ParameterError):
            validate_params(1.0, c)


class TestWeights:
    def test_uniform(self):
        spec = WeightSpec()
        assert weight_eval(spec, 1) == 1.0
        assert weight_eval(spec, 17) == 1.0

    def test_sobolev(self):
        spec = WeightSpec(kind="sobolev", N=2)
        assert weight_eval(spec, 2) == 1.0 + 2.0 ** -2 * 4
        np.testing.assert_allclose(weight_profile(spec, 4),
                                   [1.25, 2.0, 3.25, 5.0])

    def test_analytic_attains_ratio_two(self):
        lam = weight_profile(WeightSpec(kind="analytic"), 20)
        ratios = lam[1:] / lam[:-1]
        np.testing.assert_allclose(ratios, 2.0, rtol=0)

    def test_sobolev_high_order_breaks_ratio_budget(self):
        # at N = 3 the l = 1 -> 2 ratio is (8 + 8)/(8 + 1) * ... > 2
        with pytest.raises(ParameterError):
            weight_profile(WeightSpec(kind="sobolev", N=3), 10)

    def test_unknown_kind(self):
        with pytest.raises(ParameterError):
            WeightSpec(kind="exp")

    def test_mode_zero_rejected(self):
        with pytest.raises(ParameterError):
            weight_eval(WeightSpec(), 0)

    @given(st.integers(min_value=0, max_value=2), st.integers(min_value=2, max_value=64))
    def test_sobolev_ratio_budget_holds(self, N, L):
        lam = weight_profile(WeightSpec(kind="sobolev", N=N), L)
        ratios = np.maximum(lam[1:] / lam[:-1], lam[:-1] / lam[1:])
        assert ratios.max() <= 2.0 * (1 + 1e-12)


class TestInitAndConfig:
    def test_delta_specs(self):
        InitSpec(kind="delta_theta", mode=3)
        InitSpec(kind="delta_G", mode=1, amplitude=2j)
        with pytest.raises(ParameterError):
            InitSpec(kind="delta_theta", mode=0)
        with pytest.raises(ParameterError):
            InitSpec(kind="delta_theta", amplitude=0)
        with pytest.raises(ParameterError):
            InitSpec(kind="file")

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            SimConfig(eta=-1.0, L=8, t_start=0.0, t_end=1.0)
        with pytest.raises(ParameterError):
            SimConfig(eta=10.0, L=1, t_start=0.0, t_end=1.0)
        with pytest.raises(ParameterError):
            SimConfig(eta=10.0, L=8, t_start=1.0, t_end=1.0)
        with pytest.raises(ParameterError):
            SimConfig(eta=10.0, L=8, t_start=0.0, t_end=1.0, sample_times=(2.0,))
        with pytest.raises(ParameterError):
            SimConfig(eta=10.0, L=8, t_start=0.0, t_end=1.0, f_source="table")

    def test_mode_budget_needs_headroom_above_init(self):
        p = PhysicalParams(nu=1.0, c=0.001)
        cfg = SimConfig(eta=10.0, L=4, t_start=0.0, t_end=1.0,
                        init=InitSpec(mode=3))
        with pytest.raises(ParameterError):
            check_mode_budget(cfg, p)

    def test_mode_budget_resonant_band(self):
        # c*eta*pi = 125 -> k0 = 5, requirement L >= ceil(4 * 125^(1/3)) = 20
        p = PhysicalParams(nu=0.5, c=0.001)
        eta = 125.0 / (0.001 * math.pi)
        bad = SimConfig(eta=eta, L=16, t_start=0.0, t_end=2 * eta)
        with pytest.raises(ParameterError):
            check_mode_budget(bad, p)
        ok = SimConfig(eta=eta, L=20, t_start=0.0, t_end=2 * eta)
        check_mode_budget(ok, p)

    def test_mode_budget_skips_off_band_windows(self):
        p = PhysicalParams(nu=0.5, c=0.001)
        eta = 125.0 / (0.001 * math.pi)
        # window entirely below the resonant band: no L requirement
        early = SimConfig(eta=eta, L=4, t_start=0.0, t_end=eta / 10.0)
        check_mode_budget(early, p)


class TestModeState:
    def test_shape_and_copy(self):
        st_ = ModeState(0.0, np.zeros(4), np.zeros(4))
        assert st_.L == 4
        other = st_.copy()
        other.theta[0] = 1.0
        assert st_.theta[0] == 0.0

    def test_rejects_nonfinite(self):
        with pytest.raises(ParameterError):
            ModeState(0.0, np.array([np.nan + 0j]), np.array([0j]))

    def test_initial_state_delta(self):
        st_ = initial_state(InitSpec(kind="delta_G", mode=2, amplitude=3j), 5, 1.5)
        assert st_.t == 1.5
        assert st_.G[1] == 3j and np.all(st_.theta == 0)
        np.testing.assert_array_equal(np.nonzero(st_.G)[0], [1])

    def test_initial_state_mode_exceeds_L(self):
        with pytest.raises(ParameterError):
            initial_state(InitSpec(mode=9), 5, 0.0)


class TestRegimeThresholds:
    def test_ordering_enforced(self):
        with pytest.raises(ParameterError):
            RegimeThresholds(k0=2, k1=8, k2=3, k3=1,
                             factors=DEFAULT_THRESHOLD_FACTORS,
                             t_table=(4.0, 3.0, 2.0), all_stable=False)

    def test_t_table_monotone(self):
        with pytest.raises(ParameterError):
            RegimeThresholds(k0=2, k1=8, k2=1, k3=1,
                             factors=DEFAULT_THRESHOLD_FACTORS,
                             t_table=(4.0, 4.0), all_stable=False)
