import math

import numpy as np
import pytest

import _diracsea as ds

PI = math.pi


@pytest.fixture(scope="module")
def system():
    return ds.System(1, 2 * PI, 2.5, [ds.Species("f", 1.0)], 1)


def test_version_and_species():
    assert ds.__version__ == "1.0.0"
    sm = ds.standard_model_species()
    assert len(sm) == 24
    assert any(s.mass == 0.0 for s in sm)
    e = ds.Species("e", 2.0, charge=-1.0)
    assert e.id == "e" and e.charge == -1.0


def test_system_geometry(system):
    assert system.mode_count == 10
    assert system.negative_count == 5
    assert system.sector_dim == system.mode_count
    assert system.dim == system.sector_dim
    assert system.mode_energy(0) >= 1.0
    bands = [system.mode_is_positive(i) for i in range(system.mode_count)]
    assert sum(bands) == 5


def test_free_hamiltonian_and_conservation(system):
    h = system.free_hamiltonian()
    assert h.hermitian
    f = system.one_body_operator(system.fermion_number_weights())
    assert ds.commutator_norm(h, f) < 1e-12

    st = system.single_mode_state([5])
    assert st.norm() == pytest.approx(1.0)
    assert ds.expectation(f, st).real == pytest.approx(1.0)
    assert ds.variance(f, st) == pytest.approx(0.0, abs=1e-12)


def test_evolution_preserves_norm_and_energy(system):
    h = system.free_hamiltonian()
    plan = ds.EvolutionPlan(h)
    st = system.single_mode_state([5, 7])
    e0 = ds.expectation(h, st).real
    out = plan.evolve(st, 0.7)
    assert out.time == pytest.approx(0.7)
    assert out.norm() == pytest.approx(1.0, abs=1e-10)
    assert ds.expectation(h, out).real == pytest.approx(e0, abs=1e-10)


def test_density_normalises(system):
    st = system.single_mode_state([5, 7])
    grid = 64
    length = 2 * PI
    xs = np.linspace(0, length, grid, endpoint=False)
    rho = np.array([system.density(st, np.array([[x]]), 0.0) for x in xs])
    assert rho.min() >= 0.0
    assert rho.sum() * length / grid == pytest.approx(1.0, abs=1e-8)
    v, r = system.velocity(st, np.array([[1.0]]), 0.0)
    assert abs(v[0, 0]) <= 1.0 + 1e-9
    assert r > 0.0


def test_interaction_and_g_term(system):
    k = ds.InteractionKernel(type="yukawa", coupling=0.3)
    hi = system.interaction(k)
    assert hi.hermitian
    st = system.single_mode_state([5])
    g = system.g_term(st, hi, np.array([[0.5]]), 0.0)
    assert np.isfinite(g)
    zero = system.interaction(ds.InteractionKernel(type="yukawa", coupling=0.0))
    assert system.g_term(st, zero, np.array([[0.5]]), 0.0) == 0.0


def test_region_weights(system):
    whole = system.region_number_weights(ds.Region.whole())
    half = system.region_number_weights(ds.Region.interval(0.0, PI))
    other = system.region_number_weights(ds.Region.interval(0.0, PI).complemented())
    assert np.allclose(half + other, whole, atol=1e-12)


def test_fluct_bindings():
    spec = ds.FluctuationSpec(cutoff=2.0, radius=1.0, volume=PI * PI,
                              species=[ds.Species("f", 0.0)])
    assert ds.n0(spec) == pytest.approx(8.0 / 3.0)
    assert ds.variance_integrand(0.0, 1.0, 1.0) == 0.0

    asym = ds.variance_asymptotic(ds.FluctuationSpec(cutoff=1e6, radius=1e-2,
                                                     species=[ds.Species("f", 0.0)]))
    expected = 1e6 * 1e-2 / (18 * PI ** 1.5)
    assert asym["per_species"][0]["asymptotic"] == pytest.approx(expected)

    quad = ds.variance_quadrature(ds.FluctuationSpec(cutoff=1e4, radius=1.0,
                                                     species=[ds.Species("f", 0.0)]))
    assert quad["variance_total"] == pytest.approx(1e4 / (18 * PI ** 1.5), rel=0.02)

    b = ds.distinguishability_radius(4.2e30, 1e35)
    assert 2.3e-6 < b < 2.9e-6


def test_macro_statistics():
    spec = ds.FluctuationSpec(cutoff=1e6, radius=1e-2)
    mean, std = ds.macro_statistics(spec, 0.0)
    assert mean > 0.0 and std > 0.0
    mean2, std2 = ds.macro_statistics(spec, 100.0)
    assert mean2 == pytest.approx(mean + 100.0)
    assert std2 == pytest.approx(std)


def test_near_node_error_is_exposed():
    sys2 = ds.System(1, 2 * PI, 2.5, [ds.Species("f", 0.0)], 1)
    st = ds.QuantumState()
    dim = sys2.dim
    amps = np.zeros(dim, dtype=complex)
    # two co-moving massless modes with opposite signs share a node at the origin
    pos = [i for i in range(sys2.mode_count) if sys2.mode_is_positive(i)]
    a = min(pos, key=lambda i: abs(sys2.mode_momentum(i)[0] - 1.0))
    b = min(pos, key=lambda i: abs(sys2.mode_momentum(i)[0] - 2.0))
    amps[_sector_index(sys2, a)] = 1.0
    amps[_sector_index(sys2, b)] = -1.0
    st.amplitudes = amps / np.linalg.norm(amps)
    with pytest.raises(ds.NearNodeError):
        sys2.velocity(st, np.array([[0.0]]), 0.0)


def _sector_index(system, mode):
    ref = system.single_mode_state([mode])
    return int(np.argmax(np.abs(ref.amplitudes)))


def test_selfcheck_all_pass():
    results = ds.selfcheck()
    assert results
    for name, passed, detail in results:
        assert passed, f"{name}: {detail}"
