"""Tests for the dense statevector oracle."""

import math

import numpy as np
import pytest

from conftest import SMALL_CORPUS, STARS
from gslab.analytic import binary_entropy
from gslab.corpus_configs import build_graph
from gslab.graph import Graph, closed_neighbors, neighbors, remove_vertex
from gslab.pauli import PauliString, z_string
from gslab.settings import CapExceededError
from gslab import statevector as sv


def x(n, v):
    return PauliString.single_site(n, v, 'X')


def z(n, v):
    return PauliString.single_site(n, v, 'Z')


class TestBuildPgs:
    """Pseudo graph state construction."""

    def test_edgeless_is_uniform(self, edgeless3):
        s = sv.build_pgs(edgeless3, 1.3)
        assert np.allclose(s.amps, np.full(8, 8 ** -0.5))

    def test_single_edge_at_pi(self, k2):
        s = sv.build_pgs(k2, math.pi)
        assert np.allclose(s.amps, np.array([1, 1, 1, -1]) / 2)

    def test_phi_zero_is_product(self, c4):
        assert np.allclose(sv.build_pgs(c4, 0.0).amps, sv.product_state(4).amps)

    def test_edge_order_irrelevant(self):
        a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
        b = Graph.from_edges(4, [(2, 3), (0, 2), (1, 2), (0, 1)])
        assert np.array_equal(sv.build_pgs(a, 0.7).amps, sv.build_pgs(b, 0.7).amps)

    def test_equals_sequential_links(self, c4):
        s = sv.product_state(4)
        for a, b in c4.edges():
            s = sv.apply_link(s, a, b, 0.9)
        assert np.allclose(s.amps, sv.build_pgs(c4, 0.9).amps, atol=1e-12)

    def test_link_at_pi_is_involution(self, k2):
        s = sv.build_pgs(k2, math.pi)
        assert np.allclose(sv.apply_link(s, 0, 1, math.pi).amps, sv.product_state(2).amps, atol=1e-12)

    def test_cap(self, c4, monkeypatch):
        with pytest.raises(CapExceededError, match="exceed the qubit cap"):
            sv.build_pgs(c4, math.pi, cap=3)
        monkeypatch.setenv('GSLAB_CAP', '3')
        with pytest.raises(CapExceededError):
            sv.build_pgs(c4, math.pi)

    def test_amplitudes_read_only(self, k2):
        s = sv.build_pgs(k2, math.pi)
        with pytest.raises(ValueError):
            s.amps[0] = 0


class TestExpectation:
    """Pauli expectations on known states."""

    @pytest.mark.parametrize('name', SMALL_CORPUS)
    def test_single_z_vanishes(self, name):
        g = build_graph(name)
        s = sv.build_pgs(g, 1.1)
        for v in range(g.n):
            assert abs(sv.hermitian_expectation(s, z(g.n, v))) < 1e-12

    def test_yy_on_single_edge(self, k2):
        s = sv.build_pgs(k2, math.pi)
        assert sv.hermitian_expectation(s, PauliString('YY')) == pytest.approx(1.0, abs=1e-12)

    def test_plus_state_x(self):
        assert sv.hermitian_expectation(sv.product_state(2), x(2, 0)) == pytest.approx(1.0)

    def test_minus_qubits(self):
        s = sv.product_state(3, minus=[1])
        assert sv.hermitian_expectation(s, x(3, 1)) == pytest.approx(-1.0)

    def test_stabilizers_of_graph_state(self, c4):
        s = sv.build_pgs(c4, math.pi)
        for v in range(4):
            stabilizer = x(4, v) * z_string(neighbors(c4, v))
            assert sv.hermitian_expectation(s, stabilizer) == pytest.approx(1.0, abs=1e-12)

    def test_non_hermitian_rejected(self, k2):
        with pytest.raises(ValueError, match="not hermitian"):
            sv.hermitian_expectation(sv.build_pgs(k2, math.pi), PauliString('XX', 1))

    def test_size_mismatch(self, k2):
        with pytest.raises(ValueError, match="acts on 3 qubits"):
            sv.expectation(sv.build_pgs(k2, math.pi), PauliString('XXX'))


class TestMeasurement:
    """Projection and sampled measurement."""

    def test_eigenstate_outcome_certain(self):
        s = sv.product_state(2)
        rng = np.random.default_rng(0)
        for _ in range(5):
            result = sv.measure_pauli(s, x(2, 0), rng)
            assert result.outcome == 1 and result.probability == pytest.approx(1.0)
            assert sv.fidelity(result.post_state, s) == pytest.approx(1.0)

    def test_graph_state_x_is_fair(self, k2):
        s = sv.build_pgs(k2, math.pi)
        for outcome in (1, -1):
            _, probability = sv.project(s, x(2, 0), outcome)
            assert probability == pytest.approx(0.5)

    def test_zero_probability_branch(self):
        with pytest.raises(ValueError, match="zero probability"):
            sv.project(sv.product_state(1), x(1, 0), -1)

    def test_bad_outcome(self):
        with pytest.raises(ValueError, match="Outcome must be"):
            sv.project(sv.product_state(1), x(1, 0), 0)

    def test_sampling_is_reproducible(self, c4):
        s = sv.build_pgs(c4, math.pi)
        first = [sv.measure_z(s, 0, np.random.default_rng(seed)).outcome for seed in range(20)]
        again = [sv.measure_z(s, 0, np.random.default_rng(seed)).outcome for seed in range(20)]
        assert first == again
        assert set(first) == {1, -1}

    @pytest.mark.parametrize('name', SMALL_CORPUS)
    def test_z_measurement_removes_vertex(self, name):
        g = build_graph(name)
        s = sv.build_pgs(g, math.pi)
        for a in range(g.n):
            for outcome in (1, -1):
                post, _ = sv.project(s, z(g.n, a), outcome)
                if outcome == -1:
                    post = sv.from_amplitudes(sv.apply_pauli(post, z_string(neighbors(g, a))))
                target, _ = sv.project(sv.build_pgs(remove_vertex(g, a), math.pi), z(g.n, a), outcome)
                assert sv.fidelity(post, target) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize('name', SMALL_CORPUS)
    def test_x_projection_equals_neighbourhood_projection(self, name):
        g = build_graph(name)
        s = sv.build_pgs(g, math.pi)
        for v in range(g.n):
            p_x = 0.5 * (s.amps + sv.apply_pauli(s, x(g.n, v)))
            p_z = 0.5 * (s.amps + sv.apply_pauli(s, z_string(neighbors(g, v))))
            assert np.linalg.norm(p_x - p_z) <= 1e-10

    @pytest.mark.parametrize('name', STARS)
    def test_x_projection_on_star_centre_makes_ghz(self, name):
        g = build_graph(name)
        leaves = neighbors(g, 0).members()
        s = sv.build_pgs(g, math.pi)
        post, _ = sv.project(s, x(g.n, 0), 1)

        cat = sv.from_amplitudes(sv.product_state(g.n).amps + sv.product_state(g.n, minus=leaves).amps)
        for a, b in g.edges():
            cat = sv.apply_link(cat, a, b, math.pi)
        assert sv.fidelity(post, cat) == pytest.approx(1.0, abs=1e-10)


class TestEntanglement:
    """Bloch vectors, entanglement distance and entropy."""

    def test_product_state(self):
        s = sv.product_state(3)
        assert np.allclose(sv.bloch_vector(s, 0), [1, 0, 0])
        assert sv.entanglement_distance(s, 1) == pytest.approx(0.0, abs=1e-12)
        assert sv.total_entanglement(s) == pytest.approx(0.0, abs=1e-12)
        assert sv.entropy_of_entanglement(s, 2) == pytest.approx(0.0, abs=1e-12)

    def test_graph_state_maximally_entangled(self, c4):
        s = sv.build_pgs(c4, math.pi)
        for v in range(4):
            assert np.allclose(sv.bloch_vector(s, v), 0, atol=1e-12)
            assert sv.entanglement_distance(s, v) == pytest.approx(1.0)
            assert sv.entropy_of_entanglement(s, v) == pytest.approx(1.0)

    def test_half_strength_single_edge(self, k2):
        s = sv.build_pgs(k2, math.pi / 2)
        for v in range(2):
            assert np.allclose(sv.bloch_vector(s, v), [0.5, -0.5, 0], atol=1e-12)
        expected = binary_entropy((1 + math.sqrt(2) / 2) / 2)
        assert sv.entropy_of_entanglement(s, 0) == pytest.approx(expected, abs=1e-10)

    def test_half_strength_path_centre(self, path3):
        s = sv.build_pgs(path3, math.pi / 2)
        assert sv.entanglement_distance(s, 1) == pytest.approx(0.75, abs=1e-12)

    def test_total(self, k2, path3):
        assert sv.total_entanglement(sv.build_pgs(k2, math.pi)) == pytest.approx(2.0)
        assert sv.total_entanglement(sv.build_pgs(path3, math.pi)) == pytest.approx(3.0)

    def test_reduced_density_matrix_trace(self, c4):
        rho = sv.reduced_density_matrix(sv.build_pgs(c4, 0.8), 2)
        assert np.trace(rho) == pytest.approx(1.0)
        assert np.allclose(rho, rho.conj().T)

    def test_rdm_bloch_consistency(self, path3):
        s = sv.build_pgs(path3, 1.7)
        for v in range(3):
            rho = sv.reduced_density_matrix(s, v)
            ex, ey, ez = sv.bloch_vector(s, v)
            assert rho[0, 1] == pytest.approx((ex - 1j * ey) / 2, abs=1e-12)
            assert rho[0, 0].real == pytest.approx((1 + ez) / 2, abs=1e-12)


class TestFidelityAndIo:

    def test_fidelity(self):
        a = sv.from_amplitudes([1, 0, 0, 0])
        b = sv.from_amplitudes([0, 1, 0, 0])
        assert sv.fidelity(a, a) == pytest.approx(1.0)
        assert sv.fidelity(a, b) == pytest.approx(0.0)

    def test_from_amplitudes_rejects_bad_length(self):
        with pytest.raises(ValueError, match="power of two"):
            sv.from_amplitudes([1, 0, 0])

    def test_unnormalized_rejected_without_normalize(self):
        with pytest.raises(ValueError, match="not normalized"):
            sv.from_amplitudes([1, 1], normalize=False)

    def test_dump_and_load(self, tmp_path, c4):
        s = sv.build_pgs(c4, 0.4)
        path = tmp_path / 'state.pgsv'
        sv.dump_state(s, str(path))
        assert path.read_bytes().startswith(b'PGSV1 n=4\n')
        assert np.array_equal(sv.load_state(str(path)).amps, s.amps)

    def test_truncated_dump(self, tmp_path, k2):
        path = tmp_path / 'state.pgsv'
        sv.dump_state(sv.build_pgs(k2, 0.4), str(path))
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(ValueError, match="expected 64"):
            sv.load_state(str(path))


class TestQuasiGraphState:
    """Correlators near phi = pi."""

    def test_deviation_vanishes_at_pi(self, c4):
        p = PauliString.from_sites(4, {0: 'X', 2: 'X'})
        assert sv.quasi_gs_deviation(c4, p, [0.0]) == [pytest.approx(0.0, abs=1e-12)]

    def test_sweep_values(self, k2):
        values = sv.correlator_sweep(k2, PauliString('XI'), [0.0, math.pi / 2, math.pi])
        assert values == [pytest.approx(1.0), pytest.approx(0.5), pytest.approx(0.0, abs=1e-12)]

    def test_z_string_on_closed_neighbourhood_vanishes(self, k3):
        p = z_string(closed_neighbors(k3, 0))
        assert sv.hermitian_expectation(sv.build_pgs(k3, math.pi), p) == pytest.approx(0.0, abs=1e-12)
