"""Dimension of posets whose cover graphs have pathwidth at most 2."""

from .errors import (NotFMinorFree, Pw2DimError, SizeCapExceeded, TheoremViolation)
from .exact_dim import DimensionResult, dimension_at_most, dimension_exact
from .poset import (Poset, cover_graph, cover_relations, intersect_extensions,
                    poset_from_relations, verify_realizer)
from .realizer import outerplanar_realizer, realize_bounded
from .standard import (check_s5_treewidth, random_pw2_poset, s5_minus_x_witness,
                       standard_example)
from .structure import canonical_embedding, classify_ears, recognize_pno

__all__ = [
    "DimensionResult", "NotFMinorFree", "Poset", "Pw2DimError", "SizeCapExceeded",
    "TheoremViolation", "canonical_embedding", "check_s5_treewidth", "classify_ears",
    "cover_graph", "cover_relations", "dimension_at_most", "dimension_exact",
    "intersect_extensions", "outerplanar_realizer", "poset_from_relations",
    "random_pw2_poset", "realize_bounded", "recognize_pno", "s5_minus_x_witness",
    "standard_example", "verify_realizer",
]
