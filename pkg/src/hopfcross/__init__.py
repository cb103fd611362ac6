"""Exact-arithmetic Hochschild (co)homology of Hopf crossed products.

The package builds crossed products E = A #_f H from structure-constant data,
computes Hochschild homology and cohomology of E through small normalized
complexes, certifies the underlying resolution and comparison maps, and checks
every computation against a brute-force bar-complex oracle.
"""

from .fields import FieldSpec
from .linalg import ExactMatrix
from .tensors import TensorSpace
from .algebras import (
    AlgebraData,
    NormalizedSplitting,
    Report,
    group_algebra,
    normalized_quotient,
    truncated_polynomial_algebra,
    verify_algebra,
)
from .hopf import HopfData, group_hopf, sweedler_expand, sweedler_hopf, trivial_hopf, verify_hopf
from .crossed import (
    AxiomViolation,
    BimoduleData,
    CocycleData,
    CrossedProductData,
    NotInvertibleError,
    WeakActionData,
    build_crossed_product,
    convolution_inverse,
    regular_bimodule,
    tensor_bimodule,
    trivial_action,
    trivial_cocycle,
    unit_section_inverse,
    verify_crossed_axioms,
)
from .complexes import (
    BoundaryNotSquareZero,
    ChainComplex,
    FilteredComplex,
    SpectralPage,
    check_convergence,
    homology_dims,
    infinity_page,
    spectral_page,
)
from .homology import (
    e2_identification,
    hochschild_cohomology,
    hochschild_homology,
    tor_spectral_report,
)
from .problems import ProblemFile, builtin, emit_problem, parse_problem

__all__ = [
    "FieldSpec",
    "ExactMatrix",
    "TensorSpace",
    "AlgebraData",
    "NormalizedSplitting",
    "Report",
    "group_algebra",
    "normalized_quotient",
    "truncated_polynomial_algebra",
    "verify_algebra",
    "HopfData",
    "group_hopf",
    "sweedler_expand",
    "sweedler_hopf",
    "trivial_hopf",
    "verify_hopf",
    "AxiomViolation",
    "BimoduleData",
    "CocycleData",
    "CrossedProductData",
    "NotInvertibleError",
    "WeakActionData",
    "build_crossed_product",
    "convolution_inverse",
    "regular_bimodule",
    "tensor_bimodule",
    "trivial_action",
    "trivial_cocycle",
    "unit_section_inverse",
    "verify_crossed_axioms",
    "BoundaryNotSquareZero",
    "ChainComplex",
    "FilteredComplex",
    "SpectralPage",
    "check_convergence",
    "homology_dims",
    "infinity_page",
    "spectral_page",
    "e2_identification",
    "hochschild_cohomology",
    "hochschild_homology",
    "tor_spectral_report",
    "ProblemFile",
    "builtin",
    "emit_problem",
    "parse_problem",
]
