from ._tdprplan import (
    ValidationError,
    cluster_days,
    compute_tdpr,
    cvar_empirical,
    export_mps,
    plan_compare,
    plan_solve,
)

__all__ = [
    "ValidationError",
    "cluster_days",
    "compute_tdpr",
    "cvar_empirical",
    "export_mps",
    "plan_compare",
    "plan_solve",
]
