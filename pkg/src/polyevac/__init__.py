"""Solver suite for priority evacuation and weighted search on regular polygons.

The package computes, at desk scale, certified lower bounds (configuration
enumeration over metric-relaxation linear programs), matching upper bounds
(a catalog of parameterized trajectory plans plus a local minimax
optimizer), and the disk bounds they imply.
"""

from .geometry import (
    InvalidPolygonError,
    Point2,
    PolygonGeometry,
    chord_distance,
    distance,
    make_polygon,
)
from .configspace import (
    Configuration,
    FilterOptions,
    canonicalize_servants,
    enumerate_configurations,
    mirror,
    naive_upper_bound,
    traversal_lower_bound,
)
from .lp import (
    LpNumericError,
    LpSolution,
    MetricLpModel,
    UnsupportedWeightedK,
    build_lp,
    config_lp_value,
    solve_certified,
)
from .search import (
    BoundRecord,
    BudgetExceededError,
    CheckpointMismatchError,
    CheckpointParseError,
    SearchCheckpoint,
    min_over_configs,
    resume,
    w_sweep,
)
from .upperbounds import (
    CostBreakdown,
    InfeasibleTrajectoryError,
    NoConvergenceError,
    NoKnownConfigurationError,
    Trajectory,
    catalog,
    catalog_plan,
    evaluate_trajectory,
    local_minimax_optimize,
    solve_plan,
    ub_for,
)
from .catalog import QueenPlan
from .reductions import DiskBound, InvalidBoundError, best_disk_bound, \
    disk_lower_bound, wdisk_lower_bound
from .report import RunReport, emit_curve, emit_trajectory, verify

__version__ = "0.1.0"
