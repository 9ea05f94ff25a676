"""Rewriting codes for multilevel flash cells.

Three constructions (a two-bit row code, a frontier box code, and a
block-row box code), their closed-form write guarantees, and an exhaustive
adversarial oracle that measures exact guarantees and audits the code
contract on every transition.
"""

from .core import (
    CANNOT_ABSORB,
    ERASE,
    CellState,
    FlashCode,
    Params,
    Signal,
    VariableVector,
    WriteOutcome,
    ascent_check,
    delinearize,
    flip,
    format_bits,
    format_state,
    initial_state,
    linearize,
    parse_bits,
    parse_state,
    weight,
)
from .twobit import TwoBitCode, decode2, guarantee2, write2
from .basic import BasicCode, basic_guarantee, make_basic
from .enhanced import EnhancedCode, VirtualizedCode, make_enhanced
from .bounds import (
    BoundReport,
    asymptotic_ratio,
    bound_report,
    cor1_deficiency_lb,
    enhanced_conservative_deficiency,
    loss_budget_A,
    loss_budget_A_closed,
    thm1_upper,
    thm3_deficiency,
)
from .oracle import (
    ContractViolation,
    GameResult,
    OracleError,
    SearchBudgetExceeded,
    Violation,
    WalkReport,
    exact_guarantee,
    random_walk,
    replay_witness,
)

__version__ = "0.1.0"

__all__ = [
    "CANNOT_ABSORB",
    "ERASE",
    "BasicCode",
    "BoundReport",
    "CellState",
    "ContractViolation",
    "EnhancedCode",
    "FlashCode",
    "GameResult",
    "OracleError",
    "Params",
    "SearchBudgetExceeded",
    "Signal",
    "TwoBitCode",
    "VariableVector",
    "Violation",
    "VirtualizedCode",
    "WalkReport",
    "WriteOutcome",
    "ascent_check",
    "asymptotic_ratio",
    "basic_guarantee",
    "bound_report",
    "cor1_deficiency_lb",
    "decode2",
    "delinearize",
    "enhanced_conservative_deficiency",
    "exact_guarantee",
    "flip",
    "format_bits",
    "format_state",
    "guarantee2",
    "initial_state",
    "linearize",
    "loss_budget_A",
    "loss_budget_A_closed",
    "make_basic",
    "make_enhanced",
    "parse_bits",
    "parse_state",
    "random_walk",
    "replay_witness",
    "thm1_upper",
    "thm3_deficiency",
    "weight",
    "write2",
]
