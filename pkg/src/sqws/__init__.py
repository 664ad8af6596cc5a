"""Stochastic quantum walk search: open-system walker dynamics on graphs
with a trapping sink, and a sweep harness for transfer-efficiency studies.
"""

from .errors import (
    CapacityError,
    ConfigError,
    ConnectivityError,
    DegeneracyError,
    NumericalInstabilityError,
    ParameterError,
    QuadratureError,
    SelectorError,
    SqwsError,
    StateError,
)
from .graphs import (
    FamilySpec,
    Graph,
    TargetSelector,
    degree_centrality,
    density,
    eccentricity,
    from_edge_list_text,
    generate,
    resolve_target,
    ring_lattice_profile,
    to_edge_list_text,
)
from .observables import (
    ObservableSeries,
    cumulative_efficiency,
    entropy_peak_time,
    l1_coherence,
    success_probability,
    transfer_efficiency,
    von_neumann_entropy,
)
from .operators import (
    SearchInstance,
    absorbing_laplacian,
    classical_initial_distribution,
    classical_jump_operators,
    classical_rate_matrix,
    initial_state,
    normalized_walk_operator,
    search_hamiltonian,
    sqws_rhs,
)
from .propagate import (
    IntegratorConfig,
    Trajectory,
    classical_propagate,
    exact_propagate,
    integrate,
    liouvillian_matrix,
)

__version__ = "0.1.0"

from .experiments import (  # noqa: E402  (experiments imports __version__)
    DEFAULT_GAMMAS,
    DEFAULT_OMEGAS,
    NoSinkGrid,
    ResultRecord,
    SweepConfig,
    config_from_dict,
    config_to_dict,
    ring_lattice_study,
    run_no_sink_grid,
    run_point,
    run_sweep,
    table1_report,
)
from .presets import PRESETS, build_preset, preset_kind, preset_names  # noqa: E402
