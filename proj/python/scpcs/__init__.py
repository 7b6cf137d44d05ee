"""Set covering with conflicts on sets."""

from ._scpcs import (
    Conflict,
    DataError,
    InfeasibleError,
    Instance,
    LimitError,
    ObjectiveBreakdown,
    OracleResult,
    RawScpInstance,
    SolveReport,
    brute_force_optimum,
    evaluate,
    export_lp,
    grasp,
    greedy_construct,
    is_cover,
    load_canonical,
    load_orlib,
    local_search,
    parse_orlib,
    pipeline,
    read_canonical,
    solve,
    validate_instance,
    verify_certificate,
    write_canonical,
)

__all__ = [
    "Conflict",
    "DataError",
    "InfeasibleError",
    "Instance",
    "LimitError",
    "ObjectiveBreakdown",
    "OracleResult",
    "RawScpInstance",
    "SolveReport",
    "brute_force_optimum",
    "evaluate",
    "export_lp",
    "grasp",
    "greedy_construct",
    "is_cover",
    "load_canonical",
    "load_orlib",
    "local_search",
    "parse_orlib",
    "pipeline",
    "read_canonical",
    "solve",
    "validate_instance",
    "verify_certificate",
    "write_canonical",
]
