"""Measured quantities: transfer efficiency, success probability,
Von Neumann entropy, l1 coherence, and the entropy-peak time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, QuadratureError, StateError
from .propagate import IntegratorConfig, SearchInstance, Trajectory, integrate

SERIES_KINDS = ("sink_pop", "target_pop", "entropy", "coherence", "efficiency_cumulative")


@dataclass
class ObservableSeries:
    times: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in SERIES_KINDS:
            raise ParameterError(f"unknown series kind '{self.kind}'")
        if len(self.times) != len(self.values):
            raise ParameterError("times and values must have equal length")


def transfer_efficiency(traj: Trajectory) -> float:
    """Time-averaged sink population (1/t)∫ rho_phiphi dτ, trapezoid rule.

    0 means the sink never fills; 1 is the instantaneous-transfer bound.
    """
    if len(traj.times) < 2:
        raise QuadratureError("transfer efficiency needs at least 2 samples")
    t_max = float(traj.times[-1])
    return float(np.trapezoid(traj.sink_pop, traj.times) / t_max)


def cumulative_efficiency(traj: Trajectory) -> ObservableSeries:
    """Running time-average of the sink population, E(t_k)."""
    if len(traj.times) < 2:
        raise QuadratureError("cumulative efficiency needs at least 2 samples")
    dt = np.diff(traj.times)
    seg = 0.5 * dt * (traj.sink_pop[1:] + traj.sink_pop[:-1])
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    values = np.empty_like(cum)
    values[0] = traj.sink_pop[0]
    values[1:] = cum[1:] / traj.times[1:]
    return ObservableSeries(traj.times, values, "efficiency_cumulative")


def success_probability(inst: SearchInstance, t: float) -> float:
    """Population on the marked vertex at time t (for sink-free runs)."""
    if t == 0.0:
        return 1.0 / inst.graph.n
    cfg = IntegratorConfig(t_max=t, samples=2)
    traj = integrate(inst, cfg)
    return float(traj.target_pop[-1])


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-tr(rho ln rho); eigenvalues below 1e-12 contribute nothing."""
    if np.abs(rho - rho.conj().T).max() > 1e-10:
        raise StateError("entropy needs a Hermitian density matrix")
    eig = np.linalg.eigvalsh(rho)
    pos = eig[eig > 1e-12]
    if pos.size == 0:
        return 0.0
    return float(-(pos * np.log(pos)).sum())


def l1_coherence(rho: np.ndarray) -> float:
    """Sum of magnitudes of the off-diagonal entries."""
    return float(np.abs(rho).sum() - np.abs(np.diagonal(rho)).sum())


def entropy_peak_time(series: ObservableSeries) -> tuple[float, float]:
    """Time and value of the global entropy maximum (first index on ties)."""
    if series.kind != "entropy":
        raise ParameterError(f"expected an entropy series, got '{series.kind}'")
    if len(series.values) == 0:
        raise ParameterError("empty series")
    k = int(np.argmax(series.values))
    return float(series.times[k]), float(series.values[k])


def entropy_series(traj: Trajectory) -> ObservableSeries:
    return ObservableSeries(traj.times, traj.entropy, "entropy")


def coherence_series(traj: Trajectory) -> ObservableSeries:
    return ObservableSeries(traj.times, traj.coherence, "coherence")
