"""Coherence, concurrence (closed-form and generic), and squeezing reports."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lyprobe import (
    Channel,
    ConcurrenceResult,
    OatParameters,
    SqueezingReport,
    coherence,
    concurrence_channel_I,
    concurrence_channel_II,
    concurrence_generic,
    evolve_channel_I,
    evolve_channel_II,
    oat_reduced_state,
    spin_squeezing,
)

from .oracles import wootters_reference

# three-probe half-turn twist: y = 1/8, u = -1/8 - i/4, |u| = sqrt(5)/8
SQRT5 = np.sqrt(5.0)
L0 = (SQRT5 + 1.0) / 4.0
CR0 = (SQRT5 - 1.0) / 2.0
XI20 = (3.0 - SQRT5) / 2.0
IMPROVEMENT_MAX = 0.5 * (1.0 - 1.0 / SQRT5)


@pytest.fixture
def probe_state():
    return oat_reduced_state(OatParameters(n_probes=3, twist_angle=np.pi / 2))


def oat_inputs():
    return st.tuples(
        st.integers(min_value=2, max_value=8),
        st.floats(min_value=0.1, max_value=np.pi - 0.1),
        st.floats(min_value=-1.0, max_value=1.0),
    )


class TestResultValidation:
    def test_concurrence_needs_four_lambdas(self):
        with pytest.raises(ValueError, match="4 entries"):
            ConcurrenceResult(0.0, 0.0, np.array([1.0, 0.5, 0.25]))

    def test_concurrence_needs_sorted_lambdas(self):
        with pytest.raises(ValueError, match="descending"):
            ConcurrenceResult(0.0, 0.0, np.array([0.1, 0.5, 0.25, 0.1]))

    def test_concurrence_must_match_lambdas(self):
        with pytest.raises(ValueError, match="inconsistent"):
            ConcurrenceResult(0.9, 1.8, np.array([0.5, 0.25, 0.15, 0.1]))

    def test_rescaled_must_be_nonnegative(self):
        with pytest.raises(ValueError, match="rescaled"):
            ConcurrenceResult(0.0, -0.5, np.array([0.5, 0.25, 0.15, 0.1]))

    def test_squeezing_gap_consistency(self):
        with pytest.raises(ValueError, match="improvement"):
            SqueezingReport(xi2=0.5, xi2_prime=0.6, improvement=0.2, improvement_max=0.3)


class TestCoherence:
    def test_initial_value(self, probe_state):
        assert coherence(probe_state, Channel.I, 1.0) == pytest.approx(L0, abs=1e-15)
        assert coherence(probe_state, Channel.II, 1.0) == pytest.approx(L0, abs=1e-15)

    def test_channel_I_scales_with_factor_squared(self, probe_state):
        value = coherence(probe_state, Channel.I, 0.5)
        assert value == pytest.approx(0.25 * L0, abs=1e-15)

    def test_channel_II_floor_is_cross_coherence(self, probe_state):
        assert coherence(probe_state, Channel.II, 0.0) == pytest.approx(
            2.0 * probe_state.y, abs=1e-15
        )

    def test_monotone_in_factor_magnitude(self, probe_state):
        grid = np.linspace(0.0, 1.0, 21)
        for channel in (Channel.I, Channel.II):
            values = [coherence(probe_state, channel, a) for a in grid]
            assert np.all(np.diff(values) > 0.0)

    def test_even_in_factor_sign(self, probe_state):
        for channel in (Channel.I, Channel.II):
            assert coherence(probe_state, channel, -0.6) == coherence(
                probe_state, channel, 0.6
            )


class TestConcurrenceGeneric:
    def test_bell_state(self):
        psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        result = concurrence_generic(np.outer(psi, psi.conj()))
        assert result.concurrence == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert concurrence_generic(np.eye(4) / 4.0).concurrence == 0.0

    def test_product_state(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[1, 1] = 1.0
        assert concurrence_generic(rho).concurrence == 0.0

    def test_werner_state(self):
        psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        p = 0.8
        rho = p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0
        result = concurrence_generic(rho)
        assert result.concurrence == pytest.approx((3.0 * p - 1.0) / 2.0, abs=1e-12)

    def test_rescaling(self):
        psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        result = concurrence_generic(np.outer(psi, psi.conj()), n_probes=5)
        assert result.rescaled == pytest.approx(4.0, abs=1e-11)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError, match="4x4"):
            concurrence_generic(np.eye(2) / 2.0)

    def test_rejects_non_hermitian(self):
        rho = np.eye(4, dtype=complex) / 4.0
        rho[0, 1] = 0.1
        with pytest.raises(ValueError, match="Hermitian"):
            concurrence_generic(rho)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            concurrence_generic(np.eye(4) / 2.0)

    def test_rejects_non_psd(self):
        with pytest.raises(ValueError, match="positive semidefinite"):
            concurrence_generic(np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex))

    def test_rejects_small_ensemble(self):
        with pytest.raises(ValueError, match="n_probes"):
            concurrence_generic(np.eye(4) / 4.0, n_probes=1)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_matches_eigenvalue_oracle(self, seed):
        rng = np.random.default_rng(seed)
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        result = concurrence_generic(rho)
        # the non-Hermitian eigenvalue route carries sqrt(eps) noise on
        # near-zero lambdas, hence the looser tolerance
        assert result.concurrence == pytest.approx(wootters_reference(rho), abs=1e-7)
        assert np.all(np.diff(result.lambdas) <= 1e-12)


class TestClosedFormConcurrence:
    def test_initial_rescaled(self, probe_state):
        result = concurrence_channel_I(probe_state, 1.0, n_probes=3)
        assert result.rescaled == pytest.approx(CR0, abs=1e-15)

    def test_channel_I_frozen_partial_dephasing(self, probe_state):
        result = concurrence_channel_I(probe_state, np.sqrt(0.8), n_probes=3)
        assert result.rescaled == pytest.approx(0.39442719099991586, abs=1e-12)

    def test_channel_II_frozen_partial_dephasing(self, probe_state):
        result = concurrence_channel_II(probe_state, 0.9, n_probes=3)
        assert result.rescaled == pytest.approx(0.5062305898749054, abs=1e-12)

    def test_rejects_small_ensemble(self, probe_state):
        with pytest.raises(ValueError, match="n_probes"):
            concurrence_channel_I(probe_state, 0.5, n_probes=1)
        with pytest.raises(ValueError, match="n_probes"):
            concurrence_channel_II(probe_state, 0.5, n_probes=0)

    @settings(max_examples=50, deadline=None)
    @given(params=oat_inputs())
    def test_channel_I_matches_generic_route(self, params):
        n, theta, a = params
        state = oat_reduced_state(OatParameters(n_probes=n, twist_angle=theta))
        closed = concurrence_channel_I(state, a, n)
        generic = concurrence_generic(evolve_channel_I(state, a).to_matrix(), n)
        assert closed.concurrence == pytest.approx(generic.concurrence, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(params=oat_inputs())
    def test_channel_II_matches_generic_route(self, params):
        n, theta, a = params
        state = oat_reduced_state(OatParameters(n_probes=n, twist_angle=theta))
        closed = concurrence_channel_II(state, a, n)
        generic = concurrence_generic(evolve_channel_II(state, a).to_matrix(), n)
        assert closed.concurrence == pytest.approx(generic.concurrence, abs=1e-12)


class TestSpinSqueezing:
    def test_initial_values(self, probe_state):
        report = spin_squeezing(probe_state, Channel.I, 1.0, n_probes=3)
        assert report.xi2 == pytest.approx(XI20, abs=1e-15)
        assert report.xi2_prime == pytest.approx(XI20, abs=1e-15)
        assert report.improvement == pytest.approx(0.0, abs=1e-15)
        assert report.improvement_max == pytest.approx(IMPROVEMENT_MAX, abs=1e-15)

    def test_channel_I_squeezing_tracks_factor_squared(self, probe_state):
        for a in (0.2, 0.6, 0.95):
            report = spin_squeezing(probe_state, Channel.I, a, n_probes=3)
            assert report.xi2 == pytest.approx(1.0 - a * a * CR0, abs=1e-14)

    def test_channel_II_improvement_max_is_zero(self, probe_state):
        report = spin_squeezing(probe_state, Channel.II, 0.4, n_probes=3)
        assert report.improvement_max == 0.0

    def test_xi2_prime_complements_rescaled(self, probe_state):
        for channel, conc_fn in (
            (Channel.I, concurrence_channel_I),
            (Channel.II, concurrence_channel_II),
        ):
            for a in (-0.8, 0.0, 0.3, 1.0):
                report = spin_squeezing(probe_state, channel, a, n_probes=3)
                rescaled = conc_fn(probe_state, a, 3).rescaled
                assert abs(report.xi2_prime + rescaled - 1.0) <= 1e-15

    @settings(max_examples=50, deadline=None)
    @given(params=oat_inputs())
    def test_channel_II_identity_in_damped_regime(self, params):
        n, theta, a = params
        state = oat_reduced_state(OatParameters(n_probes=n, twist_angle=theta))
        assume(abs(a) * abs(state.u) >= state.y)
        report = spin_squeezing(state, Channel.II, a, n_probes=n)
        assert abs(report.improvement) <= 1e-12

    @settings(max_examples=50, deadline=None)
    @given(params=oat_inputs())
    def test_channel_I_improvement_piecewise_form(self, params):
        n, theta, a = params
        state = oat_reduced_state(OatParameters(n_probes=n, twist_angle=theta))
        report = spin_squeezing(state, Channel.I, a, n_probes=n)
        au, y = abs(state.u), state.y
        expected = 2.0 * (n - 1) * min(a * a * (au - y), y * (1.0 - a * a))
        assert report.improvement == pytest.approx(expected, abs=1e-12)
        assert report.improvement >= -1e-12
        assert report.improvement <= report.improvement_max + 1e-12
