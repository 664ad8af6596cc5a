"""Time evolution: fixed-step RK4 integration, an exact dense-superoperator
propagator for small systems, and the classical absorbing-walk baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import CapacityError, NumericalInstabilityError, ParameterError
from .graphs import Graph
from .operators import (
    SearchInstance,
    absorbing_laplacian,
    initial_state,
)

EXACT_DIM_LIMIT = 12  # dense Liouvillian is (dim^2)x(dim^2)


@dataclass
class IntegratorConfig:
    """Fixed-step integration settings and numerical guards.

    ``dt`` is the maximum step; None resolves to min(0.01, 0.1/(1+gamma+
    sink_rate)), which keeps the local RK4 error below the guard
    tolerances across the oracle-strength range. Steps are shortened so
    that every sample time is hit exactly.
    """

    t_max: float
    dt: float | None = None
    samples: int = 1024
    method: str = "rk4_fixed"
    trace_tol: float = 1e-8
    herm_tol: float = 1e-10
    positivity_tol: float = 1e-8
    store_states: bool = False

    def __post_init__(self):
        if self.t_max <= 0:
            raise ParameterError(f"t_max must be positive, got {self.t_max}")
        if self.dt is not None and not 0 < self.dt <= self.t_max:
            raise ParameterError(f"dt must lie in (0, t_max], got {self.dt}")
        if self.samples < 2:
            raise ParameterError(f"samples must be >= 2, got {self.samples}")
        if self.method not in ("rk4_fixed", "rk4_halving_check"):
            raise ParameterError(f"unknown integration method '{self.method}'")


@dataclass
class Trajectory:
    """Sampled observables of one run, plus the final state and guards."""

    times: np.ndarray
    sink_pop: np.ndarray
    target_pop: np.ndarray
    entropy: np.ndarray
    coherence: np.ndarray
    purity: np.ndarray
    final_state: np.ndarray
    metadata: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    states: list | None = None


def default_dt(inst: SearchInstance) -> float:
    return min(0.01, 0.1 / (1.0 + inst.gamma + inst.sink_rate))


class _Rk4Stepper:
    """Buffer-reusing RK4 stepper for the Hermitian-state master equation.

    Exploits G rho + (G rho)^+ = -i(1-w)[H, rho] - {W, rho} for Hermitian
    rho, with G = -i(1-w)H - W and W the diagonal total-decay operator,
    so each derivative evaluation costs a single matrix product.
    """

    def __init__(self, inst: SearchInstance):
        dim = inst.dim
        self.dim = dim
        h_op = inst.hamiltonian
        r, s = inst.rates
        w = 0.5 * inst.omega * s
        w[inst.m] += 0.5 * inst.sink_rate
        self.g_op = -1j * (1.0 - inst.omega) * h_op - np.diag(w).astype(complex)
        # at omega=1 the coherent part vanishes and G is purely diagonal
        self.g_diag = None
        if not (self.g_op - np.diag(np.diagonal(self.g_op))).any():
            self.g_diag = np.ascontiguousarray(np.diagonal(self.g_op)).reshape(dim, 1)
        self.r_feed = inst.omega * r  # real rates; state diagonals stay real
        self.has_feed = inst.omega > 0.0
        self.gamma = inst.sink_rate
        self.m = inst.m
        self.phi = inst.sink_index
        self._a = np.empty((dim, dim), dtype=complex)
        self._ct = np.empty((dim, dim), dtype=complex)
        self._k = np.empty((dim, dim), dtype=complex)
        self._tmp = np.empty((dim, dim), dtype=complex)
        self._acc = np.empty((dim, dim), dtype=complex)

    def _rhs(self, src: np.ndarray, out: np.ndarray):
        if self.g_diag is None:
            np.dot(self.g_op, src, out=self._a)
        else:
            np.multiply(self.g_diag, src, out=self._a)
        np.conjugate(self._a.T, out=self._ct)
        np.add(self._a, self._ct, out=out)
        step = self.dim + 1
        if self.has_feed:
            out.ravel()[::step] += self.r_feed @ src.ravel()[::step].real
        if self.gamma > 0.0:
            out[self.phi, self.phi] += self.gamma * src[self.m, self.m].real

    def step(self, rho: np.ndarray, h: float):
        k, tmp, acc = self._k, self._tmp, self._acc
        self._rhs(rho, k)
        np.multiply(k, 0.5 * h, out=tmp)
        tmp += rho
        np.multiply(k, h / 6.0, out=acc)
        self._rhs(tmp, k)
        np.multiply(k, 0.5 * h, out=tmp)
        tmp += rho
        k *= h / 3.0
        acc += k
        self._rhs(tmp, k)
        np.multiply(k, h, out=tmp)
        tmp += rho
        k *= h / 3.0
        acc += k
        self._rhs(tmp, k)
        k *= h / 6.0
        acc += k
        rho += acc
        # re-symmetrize; trace drift is checked by the caller, never hidden
        np.conjugate(rho.T, out=self._ct)
        rho += self._ct
        rho *= 0.5


def _sample(rho: np.ndarray, m: int, phi: int):
    eig = np.linalg.eigvalsh(rho)
    pos = eig[eig > 1e-12]
    entropy = float(-(pos * np.log(pos)).sum()) if pos.size else 0.0
    purity = float((eig * eig).sum())
    coherence = float(np.abs(rho).sum() - np.abs(np.diagonal(rho)).sum())
    return (float(rho[phi, phi].real), float(rho[m, m].real),
            entropy, coherence, purity, float(eig[0]))


def _integrate_fixed(inst: SearchInstance, cfg: IntegratorConfig, dt: float) -> Trajectory:
    dim = inst.dim
    m, phi = inst.m, inst.sink_index
    times = np.linspace(0.0, cfg.t_max, cfg.samples)
    rho = initial_state(inst.graph)
    stepper = _Rk4Stepper(inst)

    sink = np.empty(cfg.samples)
    target = np.empty(cfg.samples)
    entropy = np.empty(cfg.samples)
    coherence = np.empty(cfg.samples)
    purity = np.empty(cfg.samples)
    states = [] if cfg.store_states else None

    max_drift = 0.0
    min_eig_seen = np.inf
    max_asym = 0.0
    min_sink_inc = np.inf
    prev_sink = rho[phi, phi].real

    def record(k: int):
        nonlocal min_eig_seen
        s_pop, t_pop, ent, coh, pur, min_eig = _sample(rho, m, phi)
        if min_eig < -cfg.positivity_tol:
            raise NumericalInstabilityError(
                f"negative eigenvalue {min_eig:.3e} at t={times[k]:.6g}; try a smaller dt")
        sink[k], target[k], entropy[k] = s_pop, t_pop, ent
        coherence[k], purity[k] = coh, pur
        min_eig_seen = min(min_eig_seen, min_eig)
        if states is not None:
            states.append(rho.copy())

    record(0)
    for k in range(cfg.samples - 1):
        seg = times[k + 1] - times[k]
        nsub = max(1, math.ceil(seg / dt - 1e-12))
        h = seg / nsub
        for _ in range(nsub):
            stepper.step(rho, h)
            drift = abs(rho.trace() - 1.0)
            if drift > max_drift:
                max_drift = drift
                if drift > cfg.trace_tol:
                    raise NumericalInstabilityError(
                        f"trace drift {drift:.3e} at t~{times[k + 1]:.6g}; try a smaller dt")
            s_now = rho[phi, phi].real
            min_sink_inc = min(min_sink_inc, s_now - prev_sink)
            prev_sink = s_now
        asym = float(np.abs(rho - rho.conj().T).max())
        max_asym = max(max_asym, asym)
        record(k + 1)

    traj = Trajectory(
        times=times, sink_pop=sink, target_pop=target, entropy=entropy,
        coherence=coherence, purity=purity, final_state=rho,
        metadata={
            "n": inst.graph.n, "m": m, "omega": inst.omega, "gamma": inst.gamma,
            "sink_rate": inst.sink_rate, "t_max": cfg.t_max, "dt": dt,
            "samples": cfg.samples, "jump_convention": inst.jump_convention,
            "sqrt_rates": inst.sqrt_rates,
        },
        diagnostics={
            "max_trace_drift": float(max_drift),
            "min_eigenvalue": float(min_eig_seen),
            "max_asymmetry": max_asym,
            "min_sink_increment": float(min_sink_inc),
        },
        states=states,
    )
    return traj


def integrate(inst: SearchInstance, cfg: IntegratorConfig) -> Trajectory:
    """Propagate the initial state and sample observables on a uniform grid.

    Raises NumericalInstabilityError when a trace or positivity guard
    trips; the state is re-symmetrized after every step but never
    renormalized, so drift stays visible.
    """
    dt = cfg.dt if cfg.dt is not None else default_dt(inst)
    if cfg.method == "rk4_fixed":
        return _integrate_fixed(inst, cfg, dt)
    coarse = _integrate_fixed(inst, cfg, dt)
    fine = _integrate_fixed(inst, cfg, dt / 2.0)
    dev = 0.0
    for name in ("sink_pop", "target_pop", "entropy", "coherence"):
        dev = max(dev, float(np.abs(getattr(coarse, name) - getattr(fine, name)).max()))
    fine.diagnostics["halving_max_dev"] = dev
    return fine


def liouvillian_matrix(inst: SearchInstance) -> np.ndarray:
    """Dense superoperator of the full generator, column-stacking layout:
    the action on rho is unvec(L @ vec(rho)) with vec = flatten(order='F').
    """
    dim = inst.dim
    h_op = inst.hamiltonian
    r, s = inst.rates
    ident = np.eye(dim)
    sup = -1j * (1.0 - inst.omega) * (np.kron(ident, h_op) - np.kron(h_op.T, ident))
    if inst.omega > 0.0:
        for i, j in zip(*np.nonzero(r)):
            e = np.zeros((dim, dim))
            e[i, j] = 1.0
            sup += inst.omega * r[i, j] * np.kron(e, e)
        n_cl = np.diag(s)
        sup -= 0.5 * inst.omega * (np.kron(ident, n_cl) + np.kron(n_cl, ident))
    if inst.sink_rate > 0.0:
        e_sink = np.zeros((dim, dim))
        e_sink[inst.sink_index, inst.m] = 1.0
        e_mm = np.zeros((dim, dim))
        e_mm[inst.m, inst.m] = 1.0
        sup += inst.sink_rate * np.kron(e_sink, e_sink)
        sup -= 0.5 * inst.sink_rate * (np.kron(ident, e_mm) + np.kron(e_mm, ident))
    return sup


def exact_propagate(inst: SearchInstance, t: float,
                    rho0: np.ndarray | None = None) -> np.ndarray:
    """Evolve by exponentiating the dense Liouvillian (small systems only)."""
    dim = inst.dim
    if dim > EXACT_DIM_LIMIT:
        raise CapacityError(
            f"exact propagation limited to dim <= {EXACT_DIM_LIMIT}, got {dim}")
    if rho0 is None:
        rho0 = initial_state(inst.graph)
    sup = liouvillian_matrix(inst)
    vec = rho0.flatten(order="F")
    out = expm(sup * t) @ vec
    return out.reshape((dim, dim), order="F")


def classical_propagate(g: Graph, m: int, t: float) -> np.ndarray:
    """Absorbing-walk distribution exp(-Lhat t) applied to the uniform start.

    This is the classical search baseline over V, independent of the
    density-matrix machinery.
    """
    lhat = absorbing_laplacian(g, m)
    p0 = np.full(g.n, 1.0 / g.n)
    return expm(-lhat * t) @ p0
