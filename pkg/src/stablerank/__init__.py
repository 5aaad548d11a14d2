"""Stable-rank invariants of persistence barcodes with tunable contours.

The pipeline: simulate (or ingest) point clouds, compute Vietoris-Rips
persistence in degrees 0 and 1, turn barcodes into stable-rank curves
under a chosen contour, and classify by distance to per-class mean
curves. Contours are built from editable densities, so the metric itself
is a modelling choice.
"""

__version__ = "0.1.0"

from .barcodes import (
    Bar,
    Barcode,
    d_c_to_zero,
    default_alpha_grid,
    life_span,
    rank,
    shift_barcode,
    stable_rank,
    stable_rank_2d,
)
from .classify import (
    ConfusionMatrix,
    LabeledInvariantSet,
    build_classifier,
    classify,
    cross_validate,
    mean_accuracy,
)
from .contours import (
    Contour,
    ContourLine,
    Density,
    check_contour_axioms,
    contour_inverse,
    contour_lines,
    distance_contour,
    eval_contour,
    exponential_contour,
    shift_contour,
    standard_contour,
    superlinear_contour,
    truncate,
)
from .persistence import pairwise_distances, vr_h0, vr_h1, vr_persistence
from .processes import (
    PROCESS_DEFAULTS,
    ProcessSpec,
    sample_baddeley_silverman,
    sample_ifs,
    sample_matern,
    sample_normal,
    sample_poisson,
    sample_process,
    sample_thomas,
    simulate_batch,
)
from .stepfun import (
    INF,
    Grid2DFunction,
    StepFunction,
    evaluate,
    interleaving_2d,
    interleaving_distance,
    limit_value,
    lp_distance,
    lp_hat_distance,
    pointwise_mean,
)

__all__ = [name for name in dir() if not name.startswith("_")]
