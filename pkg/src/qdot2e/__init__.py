"""Two interacting electrons in an axially symmetric parabolic quantum dot.

Spectra, ground-state phase structure and linear-entropy entanglement under a
perpendicular magnetic field, in scaled oscillator units, plus an estimator
that reconstructs the entanglement from addition-energy data.
"""

from .basis import Mode2D, ModeZ, Role, fd_energy, fd_eval, z_energy, z_eval
from .entangle import (
    EntanglementReport,
    TraceMethod,
    closed_form_lowest,
    integral_I,
    integral_J,
    lowest_state_report,
    lowest_state_spin,
    measure_from_traces,
    orbital_trace_cm,
    orbital_trace_ip,
    orbital_trace_matrix,
    orbital_trace_schmidt,
    spin_trace,
)
from .errors import DiagnosticError
from .estimator import (
    AdditionCurve,
    EstimateResult,
    estimate_curve,
    f_from_ea,
    f_from_erel,
    first_order_measure,
    mean_rho12_sq,
    simulate_curve,
    solve_b1,
)
from .model import (
    Dimension,
    FieldPoint,
    ModelParams,
    effective_frequency,
    effective_interaction,
    gaas,
    load_config,
    parse_config,
    zeeman_shift,
)
from .mosh import (
    CmRelState,
    CoeffMap,
    Orbital,
    ProductState,
    a_coeff,
    cm_to_ip,
    ip_to_cm,
    symmetrize,
)
from .coulomb import ip_element, rel_element_2d, rel_element_3d
from .ptlimit import limit_state_table, solve_pt, subspace, subspace_dim
from .spectra import (
    ChannelSpec,
    GroundStateSegment,
    IpBlockSolution,
    RelSolution,
    addition_energy,
    ground_state_scan,
    ip_block_solve,
    lowest_total_energy,
    solve_channel,
)

__version__ = "0.1.0"
