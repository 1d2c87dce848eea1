"""Term rewriting with dependency pairs for right-linear overlay systems.

The package decides the syntactic hypotheses (right-linearity, overlay,
non-collapsing pairs), rewrites terms under full and innermost strategies,
computes dependency pairs and the flag-switching processor, and turns full
rewrite sequences and (P,R)-chains into innermost ones.
"""

from .dp import (
    INNERMOST,
    TERMINATION,
    ChainModel,
    ChainReport,
    ChainSegment,
    DpProblem,
    Minimality,
    SwitchReport,
    chain_minimality,
    compute_dps,
    enumerate_chains,
    enumerate_chains_ex,
    mark,
    switch_processor,
    tuple_symbols,
    validate_chain,
)
from .errors import (
    ArityError,
    FuelExhausted,
    MalformedChainError,
    NonOverlayContradiction,
    NotDefinedRootError,
    ParseError,
    PositionError,
    PreconditionViolated,
    RuleError,
    SignatureError,
    SimulationError,
    TrsError,
)
from .kernels import BACKEND
from .rewriting import (
    FULL,
    FULL_LEFTMOST,
    INNERMOST_LEFTMOST,
    Fuel,
    Normalization,
    RewriteStep,
    TerminationResult,
    Trace,
    TraceCheck,
    Verdict,
    find_rewrite_path,
    innermost_redexes,
    is_normal_form,
    is_terminating_bounded,
    normalize,
    redexes,
    rewrite_at,
    rewrite_steps,
    validate_trace,
)
from .simulation import (
    ChainConversionResult,
    RefutationReport,
    SimulationResult,
    chain_to_innermost,
    innermost_simulate,
    refute_longer_innermost_chain,
    simulate_substitution,
)
from .termtypes import TUPLE, App, Position, Symbol, Term, Var, positions, variables
from .terms import (
    EMPTY,
    Substitution,
    apply,
    is_linear,
    is_variant,
    linearize,
    match,
    rename_apart,
    replace_at,
    restrict,
    subterm_at,
    unify,
)
from .textio import (
    ProblemFile,
    format_dp_problem,
    format_trace,
    format_trs,
    parse_problem,
    parse_term,
    parse_trace,
    parse_trs,
)
from .trs import (
    OverlapWitness,
    Rule,
    Trs,
    collapsing_rules,
    constructors,
    defined_symbols,
    find_inner_overlaps,
    is_non_collapsing,
    is_overlay,
    is_right_linear,
    is_right_linear_overlay,
    union_is_right_linear_overlay,
)

__version__ = "0.1.0"
