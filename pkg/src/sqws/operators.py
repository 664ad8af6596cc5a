"""Generator pieces of the open walk-search master equation.

All operators act on the (|V|+1)-dimensional space spanned by the graph
vertices plus one appended trapping vertex (the sink, index |V|). The
coherent part never couples the sink; the only sink coupling is the
irreversible jump from the marked vertex.

The evolution combines three terms, weighted by the mixing parameter
``omega`` and the sink rate ``sink_rate``:

    d rho/dt = (1-omega) * (-i [H, rho])
             + omega * sum_ij (L_ij rho L_ij^+ - {L_ij^+ L_ij, rho}/2)
             + sink_rate * (|phi><m| rho |m><phi| - {|m><m|, rho}/2)

with H the normalized-walk search Hamiltonian and L_ij rank-one jump
operators built from the absorbing Laplacian of the marked graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConnectivityError, DegeneracyError, ParameterError, StateError
from .graphs import Graph, is_connected

JUMP_CONVENTIONS = ("all_entries", "off_diagonal_only")


@dataclass
class SearchInstance:
    """A graph with a marked vertex, sink, and dynamics parameters.

    ``sqrt_rates`` controls how a jump coefficient c maps to a GKSL rate:
    True uses rate |c| (the diagonal of the dissipator then reproduces the
    classical absorbing walk exactly at omega=1), False uses the literal
    rate c**2 of the operator L = c|i><j|.
    """

    graph: Graph
    m: int
    omega: float
    gamma: float
    sink_rate: float = 1.0
    jump_convention: str = "all_entries"
    sqrt_rates: bool = True

    def __post_init__(self):
        if not 0 <= self.m < self.graph.n:
            raise ParameterError(f"marked vertex {self.m} out of range for n={self.graph.n}")
        if not 0.0 <= self.omega <= 1.0:
            raise ParameterError(f"omega must lie in [0,1], got {self.omega}")
        if self.gamma < 0:
            raise ParameterError(f"gamma must be nonnegative, got {self.gamma}")
        if self.sink_rate < 0:
            raise ParameterError(f"sink_rate must be nonnegative, got {self.sink_rate}")
        if self.jump_convention not in JUMP_CONVENTIONS:
            raise ParameterError(f"unknown jump convention '{self.jump_convention}'")

    @property
    def dim(self) -> int:
        return self.graph.n + 1

    @property
    def sink_index(self) -> int:
        return self.graph.n

    @cached_property
    def hamiltonian(self) -> np.ndarray:
        return search_hamiltonian(self)

    @cached_property
    def rates(self) -> tuple[np.ndarray, np.ndarray]:
        return classical_rate_matrix(self)


def normalized_walk_operator(g: Graph) -> np.ndarray:
    """I - L/lambda_max on the vertex block, zero row/column at the sink.

    L = D - A is the combinatorial Laplacian; dividing by its largest
    eigenvalue puts the walk operator's spectrum in [0, 1].
    """
    a = g.adjacency()
    lap = np.diag(a.sum(axis=0)) - a
    lam_max = float(np.linalg.eigvalsh(lap)[-1])
    if lam_max <= 0.0:
        raise DegeneracyError("normalized walk operator undefined for an edgeless graph")
    dim = g.n + 1
    op = np.zeros((dim, dim), dtype=complex)
    op[:g.n, :g.n] = np.eye(g.n) - lap / lam_max
    return op


def search_hamiltonian(inst: SearchInstance) -> np.ndarray:
    """Normalized walk operator with an oracle of strength gamma at m.

    The oracle shifts the marked level toward the uniform state's edge of
    the walk band, so positive gamma can bring the two into resonance
    (gamma near 1 on the complete graph). Populations are invariant under
    a global sign flip plus identity shift of H, so this equals the
    convention that subtracts gamma from the marked diagonal of the
    plain spectrally normalized Laplacian.
    """
    h = normalized_walk_operator(inst.graph)
    h[inst.m, inst.m] += inst.gamma
    return h


def absorbing_laplacian(g: Graph, m: int) -> np.ndarray:
    """Rate matrix of the classical absorbing search walk, over V only.

    Column m of the adjacency matrix is replaced by the m-th canonical
    basis vector, the degree matrix is rebuilt from the column sums of
    that modified adjacency (so every column still sums to zero and the
    marked column vanishes), and the result is normalized by its
    spectral norm.
    """
    if not 0 <= m < g.n:
        raise ParameterError(f"marked vertex {m} out of range for n={g.n}")
    if not is_connected(g):
        raise ConnectivityError("absorbing Laplacian needs a connected graph")
    a_hat = g.adjacency()
    a_hat[:, m] = 0.0
    a_hat[m, m] = 1.0
    d_hat = np.diag(a_hat.sum(axis=0))
    mat = d_hat - a_hat
    return mat / np.linalg.norm(mat, 2)


def classical_jump_operators(inst: SearchInstance) -> list[tuple[float, int, int]]:
    """Jump coefficients (c, i, j) with c = -Lhat_ij, one per nonzero entry.

    Each triple represents the rank-one operator c |i><j|. Diagonal
    entries (pure dephasing) are dropped under 'off_diagonal_only'. The
    sink is never touched: indices stay inside V.
    """
    lhat = absorbing_laplacian(inst.graph, inst.m)
    ops = []
    for i in range(inst.graph.n):
        for j in range(inst.graph.n):
            if i == j and inst.jump_convention == "off_diagonal_only":
                continue
            if lhat[i, j] != 0.0:
                ops.append((-lhat[i, j], i, j))
    return ops


def classical_rate_matrix(inst: SearchInstance) -> tuple[np.ndarray, np.ndarray]:
    """GKSL rates (R, s) implied by the jump set, embedded with the sink.

    R[i, j] is the rate of the |i><j| jump; s[j] = sum_i R[i, j] is the
    total loss rate of vertex j. The dissipator in closed form is then
    diag(R @ diag(rho)) - (s_i + s_j)/2 * rho_ij.
    """
    dim = inst.dim
    r = np.zeros((dim, dim))
    for c, i, j in classical_jump_operators(inst):
        r[i, j] = abs(c) if inst.sqrt_rates else c * c
    return r, r.sum(axis=0)


def sqws_rhs(inst: SearchInstance, rho: np.ndarray) -> np.ndarray:
    """Time derivative of the density matrix under the full generator.

    Valid for arbitrary (not necessarily Hermitian) input; the result is
    traceless, and Hermitian whenever the input is.
    """
    dim = inst.dim
    if rho.shape != (dim, dim):
        raise StateError(f"state has shape {rho.shape}, expected {(dim, dim)}")
    h = inst.hamiltonian
    r, s = inst.rates
    m, phi = inst.m, inst.sink_index
    out = -1j * (1.0 - inst.omega) * (h @ rho - rho @ h)
    if inst.omega > 0.0:
        idx = np.arange(dim)
        out[idx, idx] += inst.omega * (r @ np.diagonal(rho))
        out -= (0.5 * inst.omega) * (s[:, None] * rho + rho * s[None, :])
    gam = inst.sink_rate
    if gam > 0.0:
        out[phi, phi] += gam * rho[m, m]
        out[m, :] -= 0.5 * gam * rho[m, :]
        out[:, m] -= 0.5 * gam * rho[:, m]
    return out


def initial_state(g: Graph) -> np.ndarray:
    """Pure uniform superposition over V, sink unoccupied."""
    dim = g.n + 1
    psi = np.zeros(dim, dtype=complex)
    psi[:g.n] = 1.0 / np.sqrt(g.n)
    return np.outer(psi, psi.conj())


def classical_initial_distribution(g: Graph) -> np.ndarray:
    """Uniform probability over V, zero at the sink entry."""
    p = np.zeros(g.n + 1)
    p[:g.n] = 1.0 / g.n
    return p
