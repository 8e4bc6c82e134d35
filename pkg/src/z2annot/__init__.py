"""Z2 homology annotations for weighted simplicial complexes.

Annotate p-simplices with homology coordinates, answer null-homology and
independence queries, and compute shortest H_1 bases and shortest cycles
in every H_1 class.
"""

from .annotate import AnnotationIndex, annotate_cycle, build_annotation_index
from .complex import Chain, SimplicialComplex, betti, boundary_matrix, build_complex, is_cycle, parse_complex
from .optbasis import shortest_homology_basis
from .opthom import all_class_optima, shortest_homologous_cycle
from .queries import are_homologous, is_null_homologous, max_independent_subset
from .z2core import Z2Matrix

__all__ = [
    "AnnotationIndex",
    "Chain",
    "SimplicialComplex",
    "Z2Matrix",
    "all_class_optima",
    "annotate_cycle",
    "are_homologous",
    "betti",
    "boundary_matrix",
    "build_annotation_index",
    "build_complex",
    "is_cycle",
    "is_null_homologous",
    "max_independent_subset",
    "parse_complex",
    "shortest_homologous_cycle",
    "shortest_homology_basis",
]
