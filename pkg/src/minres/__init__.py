"""Exact computation of the minimal resultant locus of a rational map over Q
viewed in a p-adic field: the resultant-order function on the Berkovich line,
its minimum and minimizing locus, potential good reduction, a realizing
coordinate change, and the rational-point steepest-descent variant."""

from .padic import (
    INF,
    ExtensionCapError,
    FieldElt,
    LocalField,
    PrecisionLoss,
    ValQ,
    adjoin,
    elt_val,
    ordp,
    residue,
)
from .polyroots import (
    NPSegment,
    Poly,
    RootRec,
    newton_polygon,
    resultant,
    roots,
    squarefree_part,
)
from .pwl import PWLFunc, UnboundedError, evaluate, minimize
from .dynrep import (
    DegenerateMapError,
    Direction,
    HomogPair,
    MobiusMap,
    TypeIIPoint,
    classify_direction,
    conjugate,
    good_reduction_check,
    normalize,
    ordres,
    ordres_at,
    path_function,
    rho_to_gauss,
    same_point,
)
from .analysis import (
    AnalyzeConfig,
    Locus,
    MinResReport,
    analyze,
    classify_mobius,
    stability_bounds,
)
from .descent import BReport, DescendConfig, descend
from .oracle import GridSpec, check_transformation_law, grid_min
from .cli import RunConfig, parse_map, run

__version__ = "0.1.0"
