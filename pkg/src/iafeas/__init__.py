"""Feasibility toolkit for interference alignment in MIMO networks.

Decides whether a K-pair network configuration {(M_k, N_k, d_k)} admits
aligning transceivers for generic channels: counting-based necessary
conditions with violation witnesses, closed forms for symmetric and
divisible families, constraint-allocation certificates (max-flow and
pressure transfers), a randomized rank test on the alignment system's
coefficient matrix, and numerical solvers for corroboration.
"""

from .allocation import (
    AllocationPolicy,
    AllocationReport,
    PressureState,
    PressureTree,
    PttResult,
    allocation_from_json_dict,
    flow_feasibility,
    flow_feasible,
    init_allocation,
    pressures,
    run_ptt,
    run_ptt_symmetric,
    verify_allocation,
)
from .channels import ChannelSet, sample_channels
from .cli import main
from .conditions import (
    ClosedForm,
    NecessaryReport,
    ScalingReport,
    check_antenna_budget,
    check_properness,
    check_stream_support,
    divisible_feasible,
    enumerate_properness_violation,
    necessary_verdict,
    scaling_check,
    symmetric_feasible,
)
from .config import (
    NetworkConfig,
    PairConfig,
    ValidationReport,
    config_from_dict,
    config_to_dict,
    load_config_file,
    scale_config,
    system_shape,
    validate_config,
)
from .fields import COMPLEX, DEFAULT_PRIME, validate_field
from .jacobian import (
    AlignmentJacobian,
    build_jacobian,
    col_index,
    parse_dump,
    residual_jacobian,
    residuals,
    row_index,
)
from .rank import RankVerdict, generic_full_row_rank, gf_rank, numeric_rank
from .report import (
    FEASIBLE,
    INFEASIBLE,
    UNDETERMINED,
    VerdictReport,
    feasibility_report,
)
from .solver import (
    AlignmentCheck,
    SolveResult,
    alt_min,
    gauss_newton,
    gauss_newton_multistart,
    verify_ia,
)
from .transceivers import ReducedTransceivers, TransceiverSet, reconstruct
from .witnesses import (
    SubsetWitness,
    properness_witness_from_cells,
    properness_witness_from_links,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentCheck",
    "AlignmentJacobian",
    "AllocationPolicy",
    "AllocationReport",
    "COMPLEX",
    "ChannelSet",
    "ClosedForm",
    "DEFAULT_PRIME",
    "FEASIBLE",
    "INFEASIBLE",
    "NecessaryReport",
    "NetworkConfig",
    "PairConfig",
    "PressureState",
    "PressureTree",
    "PttResult",
    "RankVerdict",
    "ReducedTransceivers",
    "ScalingReport",
    "SolveResult",
    "SubsetWitness",
    "TransceiverSet",
    "UNDETERMINED",
    "ValidationReport",
    "VerdictReport",
    "allocation_from_json_dict",
    "alt_min",
    "build_jacobian",
    "check_antenna_budget",
    "check_properness",
    "check_stream_support",
    "col_index",
    "config_from_dict",
    "config_to_dict",
    "divisible_feasible",
    "enumerate_properness_violation",
    "feasibility_report",
    "flow_feasibility",
    "flow_feasible",
    "gauss_newton",
    "gauss_newton_multistart",
    "generic_full_row_rank",
    "gf_rank",
    "init_allocation",
    "load_config_file",
    "main",
    "necessary_verdict",
    "numeric_rank",
    "parse_dump",
    "pressures",
    "properness_witness_from_cells",
    "properness_witness_from_links",
    "reconstruct",
    "residual_jacobian",
    "residuals",
    "row_index",
    "run_ptt",
    "run_ptt_symmetric",
    "sample_channels",
    "scale_config",
    "scaling_check",
    "symmetric_feasible",
    "system_shape",
    "validate_config",
    "validate_field",
    "verify_allocation",
    "verify_ia",
]
