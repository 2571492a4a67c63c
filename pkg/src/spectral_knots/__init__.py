"""Exact computation of truncated knot-space spectral sequence pages and
chord-diagram space dimensions over the rationals and prime fields."""

__version__ = "0.1.0"

from .linalg import (
    ComplexError,
    Field,
    ShapeError,
    SparseMatrix,
    compose,
    homology_dim,
    rank,
)
from .conf_algebra import (
    AlgebraElement,
    Monomial,
    basis_monomials,
    dim_Y,
    multiply,
    normal_form,
)
from .cache import ResultCache, ResultRecord, cache_roundtrip, fingerprint
from .sinha import (
    CapacityError,
    ColumnComplex,
    ConsistencyError,
    KanReport,
    PageTable,
    SINHA_E2,
    VASSILIEV_E1,
    d1_matrix,
    degeneracy_pullback,
    e2_diagonal,
    e2_page,
    face_pullback,
    kan_unit_check,
    normalized_basis,
    vassiliev_e1_view,
)
from .chords import (
    ChordDiagram,
    RelationVector,
    dim_A,
    enumerate_diagrams,
    four_term_relations,
    one_term_relations,
    relation_matrix,
)

__all__ = [
    "__version__",
    "AlgebraElement",
    "CapacityError",
    "ChordDiagram",
    "ColumnComplex",
    "ComplexError",
    "ConsistencyError",
    "Field",
    "KanReport",
    "Monomial",
    "PageTable",
    "RelationVector",
    "ResultCache",
    "ResultRecord",
    "SINHA_E2",
    "ShapeError",
    "SparseMatrix",
    "VASSILIEV_E1",
    "basis_monomials",
    "cache_roundtrip",
    "compose",
    "fingerprint",
    "d1_matrix",
    "degeneracy_pullback",
    "dim_A",
    "dim_Y",
    "e2_diagonal",
    "e2_page",
    "enumerate_diagrams",
    "face_pullback",
    "four_term_relations",
    "homology_dim",
    "kan_unit_check",
    "multiply",
    "normal_form",
    "normalized_basis",
    "one_term_relations",
    "rank",
    "relation_matrix",
    "vassiliev_e1_view",
]
