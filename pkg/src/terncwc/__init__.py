"""Optimal ternary constant-weight codes: constructions, verification, audits.

The package builds codes of weight w and minimum l1 distance 2w - 2 whose
size meets the counting upper bound, verifies arbitrary codes against the
defining conditions, and cross-checks everything at small scale with
exhaustive oracles.
"""

from ._kernels import BACKEND
from .builder import (
    BuildResult,
    ExchangeState,
    GridCode,
    RegimeError,
    SubcodeReport,
    VertexLayout,
    build_general_t,
    build_grid_code,
    build_subcode,
    build_t0_divisible,
    build_t0_nondivisible,
    build_t1_divisible,
    build_t1_nondivisible,
    buildable_point,
    check_subcode,
    exchange_step,
    expected_r_profile,
    first_in_regime,
    regime_check,
    run_exchange,
)
from .core import (
    AuditRecord,
    CodeFormatError,
    Codeword,
    TernaryCode,
    VerificationReport,
    codeword_type,
    l1_distance,
    read_cwc1,
    two_coloring_audit,
    verify_code,
    weight,
    write_cwc1,
)
from .golomb import (
    GolombRuler,
    RulerError,
    format_ruler,
    greedy_ruler,
    guaranteed_modulus,
    parse_ruler,
    translates,
    verify_ruler,
)
from .oracle import (
    OracleGuardError,
    balanced_search_bruteforce,
    enumerate_weight_words,
    max_code_bruteforce,
    packing_max_bruteforce,
)
from .packing import (
    DivisibilityReport,
    EdgeLedger,
    OverlapError,
    ResidualGraph,
    check_divisibility,
    complete_code,
    greedy_kw_packing,
    leave_report_text,
    residual_graph,
)
from .planner import (
    Branch,
    BuildPlan,
    balanced_feasibility,
    packing_bound,
    plan,
    plan_text,
    upper_bound,
)

__version__ = "0.1.0"
