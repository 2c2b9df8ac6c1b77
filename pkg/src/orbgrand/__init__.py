"""ORBGRAND decoding with syndrome-constrained error-pattern generation.

The package splits into a GF(2) substrate (bitlin), code constructions
(codes), constraint derivation (constraints), the logistic-weight pattern
generator (patterns), the query loop (decoder), a Monte Carlo harness
(channel_sim), figure rendering (plotting), and a CLI (cli).
"""

from .bitlin import (
    BitMatrix,
    BitVec,
    gf2_in_row_space,
    gf2_matvec,
    gf2_nullspace,
    gf2_rank,
    gf2_row_reduce,
)
from .channel_sim import (
    ChannelParams,
    SimConfig,
    SimPoint,
    SimReport,
    frame_rng,
    run_montecarlo,
    transmit,
)
from .codes import (
    LinearCode,
    RateProfile,
    build_ebch,
    build_pac,
    load_parity_check,
    resolve_code,
    rm_rate_profile,
    save_parity_check,
)
from .constraints import (
    ConstraintInfeasibleError,
    ConstraintLayout,
    ConstraintTargets,
    compute_targets,
    count_search_space,
    derive_constraints,
    random_disjoint_layout,
)
from .decoder import (
    DecodeBudget,
    DecodeOutcome,
    ReceivedFrame,
    decode,
    prepare_frame,
)
from .patterns import (
    GeneratorState,
    PatternNode,
    check_node,
    next_pattern,
    progressive_update,
    rank_constraint_masks,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVec",
    "ChannelParams",
    "ConstraintInfeasibleError",
    "ConstraintLayout",
    "ConstraintTargets",
    "DecodeBudget",
    "DecodeOutcome",
    "GeneratorState",
    "LinearCode",
    "PatternNode",
    "RateProfile",
    "ReceivedFrame",
    "SimConfig",
    "SimPoint",
    "SimReport",
    "build_ebch",
    "build_pac",
    "check_node",
    "compute_targets",
    "count_search_space",
    "decode",
    "derive_constraints",
    "frame_rng",
    "gf2_in_row_space",
    "gf2_matvec",
    "gf2_nullspace",
    "gf2_rank",
    "gf2_row_reduce",
    "load_parity_check",
    "next_pattern",
    "prepare_frame",
    "progressive_update",
    "random_disjoint_layout",
    "rank_constraint_masks",
    "resolve_code",
    "rm_rate_profile",
    "run_montecarlo",
    "save_parity_check",
    "transmit",
]
