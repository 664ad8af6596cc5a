import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from sqws import (
    DegeneracyError,
    FamilySpec,
    ParameterError,
    SearchInstance,
    StateError,
    absorbing_laplacian,
    classical_initial_distribution,
    classical_jump_operators,
    generate,
    initial_state,
    l1_coherence,
    normalized_walk_operator,
    search_hamiltonian,
    sqws_rhs,
    von_neumann_entropy,
)
from sqws.graphs import Graph
from sqws.operators import classical_rate_matrix


def graph(family, **params):
    return generate(FamilySpec(family, params))


connected_small = st.one_of(
    st.integers(2, 8).map(lambda n: graph("complete", n=n)),
    st.integers(3, 8).map(lambda n: graph("cycle", n=n)),
    st.integers(2, 8).map(lambda n: graph("path", n=n)),
    st.integers(2, 8).map(lambda n: graph("star", n=n)),
    st.tuples(st.integers(3, 5), st.integers(1, 3)).map(
        lambda mn: graph("tadpole", m=mn[0], n=mn[1])),
    st.integers(1, 3).map(lambda d: graph("hypercube", d=d)),
)


def random_density_matrix(dim, rng):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_instance(g, rng):
    return SearchInstance(
        g, int(rng.integers(g.n)),
        omega=float(rng.uniform(0, 1)),
        gamma=float(rng.choice([0.0, 0.5, 1.0, 5.0])),
        sink_rate=float(rng.choice([0.0, 1.0])),
        jump_convention=str(rng.choice(["all_entries", "off_diagonal_only"])),
        sqrt_rates=bool(rng.integers(2)),
    )


# --- normalized walk operator -------------------------------------------------

def test_walk_operator_complete_is_uniform_projector_block():
    for n in (4, 8, 64):
        w = normalized_walk_operator(graph("complete", n=n))
        assert np.allclose(w[:n, :n], np.ones((n, n)) / n)
        assert not w[n, :].any() and not w[:, n].any()


def test_walk_operator_c4_circulant():
    w = normalized_walk_operator(graph("cycle", n=4))
    assert w[0, 0] == pytest.approx(0.5)
    assert w[0, 1] == pytest.approx(0.25)
    assert w[0, 2] == pytest.approx(0.0)


def test_walk_operator_single_edge():
    w = normalized_walk_operator(graph("path", n=2))
    assert np.allclose(w[:2, :2], [[0.5, 0.5], [0.5, 0.5]])


def test_walk_operator_edgeless_rejected():
    with pytest.raises(DegeneracyError):
        normalized_walk_operator(Graph(3, ()))


@given(connected_small)
@settings(max_examples=40, deadline=None)
def test_walk_operator_spectrum_in_unit_interval(g):
    w = normalized_walk_operator(g)
    eig = np.linalg.eigvalsh(w[:g.n, :g.n])
    assert eig[0] >= -1e-12 and eig[-1] <= 1.0 + 1e-12


# --- search Hamiltonian -------------------------------------------------------

def test_hamiltonian_gamma_zero_is_free_walk():
    g = graph("cycle", n=6)
    inst = SearchInstance(g, 2, omega=0.3, gamma=0.0)
    assert np.array_equal(search_hamiltonian(inst), normalized_walk_operator(g))


def test_hamiltonian_oracle_is_rank_one_shift():
    g = graph("complete", n=64)
    inst = SearchInstance(g, 5, omega=0.0, gamma=30.0)
    h = search_hamiltonian(inst)
    w = normalized_walk_operator(g)
    # oracle shifts only the marked diagonal entry, by the full strength
    assert h[5, 5] == pytest.approx(w[5, 5].real + 30.0)
    h[5, 5] = w[5, 5]
    assert np.array_equal(h, w)


@given(connected_small, st.floats(0.0, 30.0))
@settings(max_examples=40, deadline=None)
def test_hamiltonian_hermitian_and_sink_free(g, gamma):
    inst = SearchInstance(g, 0, omega=0.0, gamma=gamma)
    h = search_hamiltonian(inst)
    assert np.abs(h - h.conj().T).max() < 1e-14
    assert not h[g.n, :].any() and not h[:, g.n].any()


# --- absorbing Laplacian and jump operators ------------------------------------

def test_absorbing_laplacian_p2_by_hand():
    lhat = absorbing_laplacian(graph("path", n=2), 1)
    assert np.allclose(lhat, [[1 / np.sqrt(2), 0.0], [-1 / np.sqrt(2), 0.0]])


@given(connected_small, st.integers(0, 7))
@settings(max_examples=60, deadline=None)
def test_absorbing_laplacian_structure(g, mseed):
    m = mseed % g.n
    lhat = absorbing_laplacian(g, m)
    assert np.abs(lhat.sum(axis=0)).max() < 1e-12
    assert not lhat[:, m].any()
    off = lhat - np.diag(np.diagonal(lhat))
    assert off.max() <= 1e-12
    assert np.linalg.norm(lhat, 2) == pytest.approx(1.0, abs=1e-10)


def test_jump_operator_census_c4():
    inst = SearchInstance(graph("cycle", n=4), 0, omega=1.0, gamma=0.0)
    ops = classical_jump_operators(inst)
    assert len(ops) == 9  # 3 diagonal + 6 off-diagonal nonzeros
    diag = [(c, i, j) for c, i, j in ops if i == j]
    assert len(diag) == 3 and all(j != 0 for _, _, j in diag)
    off = [(c, i, j) for c, i, j in ops if i != j]
    assert all(c >= 0 for c, _, _ in off)
    assert all(j != 0 for _, _, j in ops)  # absorbing column never a source
    inst2 = SearchInstance(graph("cycle", n=4), 0, omega=1.0, gamma=0.0,
                           jump_convention="off_diagonal_only")
    assert len(classical_jump_operators(inst2)) == 6


def _brute_force_rhs(inst, rho):
    """Literal operator-sum evaluation of the full generator."""
    dim = inst.dim
    h = inst.hamiltonian
    out = -1j * (1 - inst.omega) * (h @ rho - rho @ h)
    jumps = []
    for c, i, j in classical_jump_operators(inst):
        op = np.zeros((dim, dim), dtype=complex)
        op[i, j] = np.sqrt(abs(c)) if inst.sqrt_rates else c
        jumps.append((inst.omega, op))
    sink = np.zeros((dim, dim), dtype=complex)
    sink[inst.sink_index, inst.m] = 1.0
    jumps.append((inst.sink_rate, sink))
    for weight, op in jumps:
        opd = op.conj().T
        out += weight * (op @ rho @ opd - 0.5 * (opd @ op @ rho + rho @ opd @ op))
    return out


def test_closed_form_dissipator_matches_operator_sum():
    rng = np.random.default_rng(11)
    for _ in range(25):
        fam = str(rng.choice(["cycle", "path", "star", "complete", "tadpole"]))
        params = {"m": 4, "n": 3} if fam == "tadpole" else {"n": int(rng.integers(3, 8))}
        g = generate(FamilySpec(fam, params))
        inst = random_instance(g, rng)
        rho = random_density_matrix(inst.dim, rng)
        assert np.abs(sqws_rhs(inst, rho) - _brute_force_rhs(inst, rho)).max() < 1e-12


@given(connected_small)
@settings(max_examples=40, deadline=None)
def test_rhs_traceless_and_hermitian(g):
    rng = np.random.default_rng(g.n * 7 + g.num_edges)
    inst = random_instance(g, rng)
    rho = random_density_matrix(inst.dim, rng)
    out = sqws_rhs(inst, rho)
    assert abs(np.trace(out)) < 1e-12
    assert np.abs(out - out.conj().T).max() < 1e-12


def test_rhs_limits():
    g = graph("cycle", n=5)
    rng = np.random.default_rng(0)
    rho = random_density_matrix(6, rng)
    # pure Schroedinger limit
    inst = SearchInstance(g, 0, omega=0.0, gamma=1.0, sink_rate=0.0)
    h = inst.hamiltonian
    assert np.allclose(sqws_rhs(inst, rho), -1j * (h @ rho - rho @ h))
    # sink feed: d<phi|rho|phi>/dt = Gamma * <m|rho|m>
    inst = SearchInstance(g, 2, omega=0.4, gamma=1.0, sink_rate=1.7)
    out = sqws_rhs(inst, rho)
    assert out[5, 5].real == pytest.approx(1.7 * rho[2, 2].real, abs=1e-12)
    # classical dynamics preserve classicality
    inst = SearchInstance(g, 0, omega=1.0, gamma=0.0, sink_rate=1.0)
    diag = np.diag(rng.uniform(0.1, 1.0, 6)).astype(complex)
    diag /= np.trace(diag)
    out = sqws_rhs(inst, diag)
    assert np.abs(out - np.diag(np.diagonal(out))).max() < 1e-14


def test_rhs_shape_error():
    inst = SearchInstance(graph("cycle", n=5), 0, omega=0.5, gamma=1.0)
    with pytest.raises(StateError):
        sqws_rhs(inst, np.eye(5, dtype=complex))


def test_rate_matrix_sqrt_toggle():
    inst_lin = SearchInstance(graph("cycle", n=4), 0, omega=1.0, gamma=0.0, sqrt_rates=True)
    inst_sq = SearchInstance(graph("cycle", n=4), 0, omega=1.0, gamma=0.0, sqrt_rates=False)
    r_lin, _ = classical_rate_matrix(inst_lin)
    r_sq, _ = classical_rate_matrix(inst_sq)
    lhat = absorbing_laplacian(inst_lin.graph, 0)
    assert np.allclose(r_lin[:4, :4], np.abs(lhat))
    assert np.allclose(r_sq[:4, :4], lhat ** 2)
    assert not r_lin[4, :].any() and not r_lin[:, 4].any()


def test_instance_validation():
    g = graph("cycle", n=4)
    with pytest.raises(ParameterError):
        SearchInstance(g, 4, omega=0.5, gamma=1.0)
    with pytest.raises(ParameterError):
        SearchInstance(g, 0, omega=1.5, gamma=1.0)
    with pytest.raises(ParameterError):
        SearchInstance(g, 0, omega=0.5, gamma=-1.0)
    with pytest.raises(ParameterError):
        SearchInstance(g, 0, omega=0.5, gamma=1.0, sink_rate=-0.1)
    with pytest.raises(ParameterError):
        SearchInstance(g, 0, omega=0.5, gamma=1.0, jump_convention="bogus")


# --- initial states -------------------------------------------------------------

def test_initial_state_properties():
    g = graph("cycle", n=6)
    rho = initial_state(g)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert rho[6, 6] == 0.0
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)
    assert l1_coherence(rho) == pytest.approx(g.n - 1)
    eig = np.linalg.eigvalsh(rho)
    assert eig[-1] == pytest.approx(1.0)  # pure


def test_classical_initial_distribution():
    g = graph("star", n=5)
    p = classical_initial_distribution(g)
    assert p.sum() == pytest.approx(1.0)
    assert np.allclose(p[:5], 0.2)
    assert p[5] == 0.0
