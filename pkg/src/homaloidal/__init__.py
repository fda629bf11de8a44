"""Multiplicity-type calculus and fat-point linear algebra for plane Cremona maps."""

from .ffla import DEFAULT_MODULUS, FieldConfig, FMatrix, kernel_basis, rank, row_space_rank
from .fatpoints import (
    BettiTable,
    CertificationError,
    FatIdealSpec,
    HilbertReport,
    LinearSystem,
    MultMapReport,
    PointSet,
    Provenance,
    betti_table,
    conditions_matrix,
    eta_transform,
    hilbert_value,
    initial_degree,
    linear_system,
    monomials,
    mult_map,
    power_dim,
    quad_transform_points,
    sample_points,
    symbolic_dim,
)
from .search import (
    Row842,
    SearchResult,
    SearchRow,
    classify_842,
    enumerate_subhomaloidal,
    filter_proper_double,
)
from .typecalc import (
    IMPROPER,
    NONTERMINATING,
    PROPER,
    HudsonStep,
    HudsonTrace,
    MultiplicityType,
    ResolutionPrediction,
    TypeClassification,
    TypeLiteralError,
    classify,
    double,
    dumnicki_check,
    expected_dim,
    format_type_literal,
    hudson_test,
    parse_type_literal,
    plus_minus,
    predict_invariants,
    quad_transform,
    scheme_degree,
)

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "CertificationError",
    "DEFAULT_MODULUS",
    "FMatrix",
    "FatIdealSpec",
    "FieldConfig",
    "HilbertReport",
    "HudsonStep",
    "HudsonTrace",
    "IMPROPER",
    "LinearSystem",
    "MultMapReport",
    "MultiplicityType",
    "NONTERMINATING",
    "PROPER",
    "PointSet",
    "Provenance",
    "ResolutionPrediction",
    "Row842",
    "SearchResult",
    "SearchRow",
    "TypeClassification",
    "TypeLiteralError",
    "betti_table",
    "classify",
    "classify_842",
    "conditions_matrix",
    "double",
    "dumnicki_check",
    "enumerate_subhomaloidal",
    "eta_transform",
    "expected_dim",
    "filter_proper_double",
    "format_type_literal",
    "hilbert_value",
    "hudson_test",
    "initial_degree",
    "kernel_basis",
    "linear_system",
    "monomials",
    "mult_map",
    "parse_type_literal",
    "plus_minus",
    "power_dim",
    "predict_invariants",
    "quad_transform",
    "quad_transform_points",
    "rank",
    "row_space_rank",
    "sample_points",
    "scheme_degree",
    "symbolic_dim",
]
