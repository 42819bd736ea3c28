import math

import numpy as np
import pytest

import oracle
from conftest import chain, random_spec
from graphent.analytic import Source, bloch_vector_analytic
from graphent.graph import Arc, GraphStateSpec, QubitPrep
from graphent.statevector import (
    MAX_QUBITS,
    StateVector,
    apply_rxx,
    apply_single,
    entanglement_exact,
    expect_pauli,
    marginal_p0,
    prepare_state,
    reduced_bloch,
    rx,
    ry,
    rz,
    sample_marginal,
    zero_state,
)

PI = math.pi
S = 1 / math.sqrt(2)


def same_up_to_phase(a, b, atol=1e-12):
    overlap = np.vdot(a, b)
    if abs(overlap) < 1e-15:
        return False
    return np.allclose(a * (overlap / abs(overlap)), b, atol=atol)


def random_state(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


class TestPrepare:
    def test_single_zero(self):
        np.testing.assert_allclose(prepare_state(GraphStateSpec(1)).amplitudes, [1, 0])

    def test_single_one(self):
        spec = GraphStateSpec(1, (), (QubitPrep(0, PI),))
        assert same_up_to_phase(prepare_state(spec).amplitudes, np.array([0, 1]))

    def test_rxx_pair(self):
        spec = GraphStateSpec(2, (Arc(0, 1, PI / 2),))
        np.testing.assert_allclose(
            prepare_state(spec).amplitudes, [S, 0, 0, -1j * S], atol=1e-15
        )

    def test_matches_dense_oracle(self, rng):
        for _ in range(30):
            spec = random_spec(rng, n_max=6)
            ref = oracle.graph_state(
                spec.num_qubits,
                [(a.source, a.target, a.weight) for a in spec.arcs],
                [(p.alpha, p.theta) for p in spec.preps],
            )
            assert same_up_to_phase(prepare_state(spec).amplitudes, ref, atol=1e-10)

    def test_guard(self):
        with pytest.raises(ValueError):
            prepare_state(GraphStateSpec(MAX_QUBITS + 1))
        with pytest.raises(ValueError):
            zero_state(0)


class TestSingle:
    def test_ry_pi(self):
        out = apply_single(zero_state(1), 0, ry(PI))
        np.testing.assert_allclose(out.amplitudes, [0, 1], atol=1e-15)

    def test_rz_phase_only(self, rng):
        st = random_state(rng, 3)
        out = apply_single(st, 1, rz(0.83))
        np.testing.assert_allclose(np.abs(out.amplitudes), np.abs(st.amplitudes),
                                   atol=1e-15)

    def test_rx_inverse(self, rng):
        st = random_state(rng, 4)
        out = apply_single(apply_single(st, 2, rx(PI / 2)), 2, rx(-PI / 2))
        np.testing.assert_allclose(out.amplitudes, st.amplitudes, atol=1e-12)

    def test_bit_convention(self):
        # X-like flip on qubit 1 of |000> must land on index 0b010
        out = apply_single(zero_state(3), 1, ry(PI))
        assert np.argmax(np.abs(out.amplitudes)) == 2

    def test_errors(self):
        with pytest.raises(IndexError):
            apply_single(zero_state(2), 2, rx(0.1))
        with pytest.raises(ValueError):
            apply_single(zero_state(2), 0, np.eye(4))


class TestRxx:
    def test_identity(self, rng):
        st = random_state(rng, 3)
        np.testing.assert_allclose(apply_rxx(st, 0, 2, 0.0).amplitudes, st.amplitudes)

    def test_composition(self, rng):
        st = random_state(rng, 3)
        a, b = 0.37, -1.21
        two = apply_rxx(apply_rxx(st, 0, 2, a), 0, 2, b)
        np.testing.assert_allclose(two.amplitudes, apply_rxx(st, 0, 2, a + b).amplitudes,
                                   atol=1e-12)

    def test_on_zero(self):
        out = apply_rxx(zero_state(2), 0, 1, PI / 2)
        np.testing.assert_allclose(out.amplitudes, [S, 0, 0, -1j * S], atol=1e-15)

    def test_matches_expm(self, rng):
        st = random_state(rng, 4)
        ref = oracle.embed({1: oracle.X, 3: oracle.X}, 4)
        from scipy.linalg import expm
        np.testing.assert_allclose(
            apply_rxx(st, 1, 3, 0.9).amplitudes, expm(-0.45j * ref) @ st.amplitudes,
            atol=1e-12,
        )

    def test_errors(self):
        with pytest.raises(ValueError):
            apply_rxx(zero_state(2), 1, 1, 0.2)
        with pytest.raises(IndexError):
            apply_rxx(zero_state(2), 0, 2, 0.2)


class TestExpectation:
    def test_zero_state(self):
        st = zero_state(4)
        assert expect_pauli(st, 2, "z") == pytest.approx(1.0)
        assert expect_pauli(st, 2, "x") == pytest.approx(0.0, abs=1e-15)
        assert expect_pauli(st, 2, "y") == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("axis", "xyz")
    def test_chain_max_entangled(self, axis):
        assert expect_pauli(prepare_state(chain()), 1, axis) == pytest.approx(0, abs=1e-15)

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            expect_pauli(zero_state(1), 0, "w")

    def test_product_state_pure(self, rng):
        for _ in range(20):
            spec = random_spec(rng, p_arc=0.0)
            st = prepare_state(spec)
            for k in range(spec.num_qubits):
                assert reduced_bloch(st, k).norm == pytest.approx(1.0, abs=1e-12)

    def test_chain_quarter(self):
        b = reduced_bloch(prepare_state(chain(PI / 4, PI / 4)), 1)
        np.testing.assert_allclose(b.as_tuple(), (0, 0, 0.5), atol=1e-15)

    def test_matches_partial_trace(self, rng):
        for _ in range(40):
            st = random_state(rng, 5)
            for k in range(5):
                ref = oracle.bloch(st.amplitudes, 5, k)
                np.testing.assert_allclose(reduced_bloch(st, k).as_tuple(), ref,
                                           atol=1e-12)

    def test_oracle_agreement_with_closed_form(self, rng):
        for _ in range(50):
            spec = random_spec(rng)
            st = prepare_state(spec)
            for k in range(spec.num_qubits):
                np.testing.assert_allclose(
                    reduced_bloch(st, k).as_tuple(),
                    bloch_vector_analytic(spec, k).as_tuple(), atol=1e-10,
                )

    def test_entanglement_exact(self):
        est = entanglement_exact(chain(), 1)
        assert est.value == pytest.approx(0.5, abs=1e-15)
        assert est.source is Source.EXACT


class TestSampling:
    def test_certain_outcome(self):
        c = sample_marginal(zero_state(3), 1, 1024, seed=5)
        assert (c.n0, c.n1, c.shots) == (1024, 0, 1024)

    def test_deterministic(self):
        st = apply_single(zero_state(2), 0, ry(PI / 2))
        assert sample_marginal(st, 0, 1024, 11) == sample_marginal(st, 0, 1024, 11)
        assert marginal_p0(st, 0) == pytest.approx(0.5)

    def test_binomial_band(self):
        st = apply_single(zero_state(2), 0, ry(PI / 2))
        for seed in range(20):
            assert 432 <= sample_marginal(st, 0, 1024, seed).n0 <= 592

    def test_zero_shots(self):
        with pytest.raises(ValueError):
            sample_marginal(zero_state(1), 0, 0, 1)

    def test_consistency_random_states(self, rng):
        shots = 4096
        for seed in range(10):
            st = random_state(rng, 3)
            p0 = marginal_p0(st, 1)
            c = sample_marginal(st, 1, shots, seed)
            assert abs(c.n0 / shots - p0) <= 5 * math.sqrt(p0 * (1 - p0) / shots)
