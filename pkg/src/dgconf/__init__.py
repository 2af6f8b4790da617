"""dgconf: exact rational models of complements and two-point configuration
spaces of compact manifolds with boundary.

The package computes with finite-dimensional CDGAs over Q given by explicit
structure constants: mapping cones and their semi-trivial CDGA structures,
truncations, Poincaré duality data (dual bases, diagonal classes, shriek
maps), pretty models, and the resulting complement / Conf(W,2) models,
together with cohomology rings, Poincaré series and triple Massey products.
"""

from .algebra import (
    CDGA,
    Cohomology,
    DGModule,
    DGMorphism,
    cohomology,
    verify_cdga,
    verify_module,
    verify_morphism,
)
from .analysis import (
    CohomologyRing,
    MasseyResult,
    cohomology_ring,
    massey_search,
    poincare_series,
    triple_massey,
    verify_presentation,
)
from .cones import (
    ConeModel,
    SquareModel,
    Truncation,
    homotopy_kernel,
    is_balanced,
    mapping_cone,
    semi_trivial_cone,
    square_model,
    truncate,
    truncated_semitrivial_cone,
)
from .duality import (
    DiagonalClass,
    PDAlgebra,
    PrettyModel,
    diagonal_class,
    dual_basis,
    dual_square_report,
    pretty_model,
    shriek,
    theta,
    truncated_diagonal_shriek,
    verify_pd,
)
from .errors import AxiomError, DgconfError, HypothesisError, InternalCheckError, ParseError
from .graded import GradedSpace
from .models import (
    ComplementInput,
    Conf2Model,
    complement_model,
    conf2_disk_bundle,
    conf2_general,
    conf2_pretty,
    conf2_punctured,
    disk_bundle_algebra,
)
from .operations import (
    dual_module,
    dual_shift,
    free_module,
    kernel_module,
    quotient_cdga,
    quotient_module,
    suspend_module,
    tensor_cdga,
    tensor_modules,
)
from .presentations import (
    LoadedAlgebra,
    Presentation,
    load_presentation,
    read_presentation,
    serialize_presentation,
)
from .reports import Report

__version__ = "0.1.0"

__all__ = [
    "CDGA", "Cohomology", "DGModule", "DGMorphism", "GradedSpace",
    "cohomology", "verify_cdga", "verify_module", "verify_morphism",
    "ConeModel", "SquareModel", "Truncation", "mapping_cone", "homotopy_kernel",
    "is_balanced", "semi_trivial_cone", "truncate", "truncated_semitrivial_cone",
    "square_model",
    "PDAlgebra", "DiagonalClass", "PrettyModel", "verify_pd", "dual_basis",
    "diagonal_class", "theta", "shriek", "pretty_model",
    "truncated_diagonal_shriek", "dual_square_report",
    "ComplementInput", "Conf2Model", "complement_model", "conf2_general",
    "conf2_pretty", "conf2_disk_bundle", "conf2_punctured", "disk_bundle_algebra",
    "CohomologyRing", "MasseyResult", "cohomology_ring", "poincare_series",
    "triple_massey", "massey_search", "verify_presentation",
    "tensor_cdga", "tensor_modules", "suspend_module", "dual_module",
    "dual_shift", "free_module", "kernel_module", "quotient_cdga",
    "quotient_module",
    "Presentation", "LoadedAlgebra", "load_presentation", "read_presentation",
    "serialize_presentation", "Report",
    "DgconfError", "ParseError", "AxiomError", "HypothesisError",
    "InternalCheckError",
]
