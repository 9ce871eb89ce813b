from .blocks import BlockTree, biconnected_blocks, check_simple, is_biconnected
from .decomposition import PathDecomposition, TreeDecomposition
from .minors import MinorEmbedding, contains_minor, is_f_minor_free, is_outerplanar
from .obstructions import forbidden_minors, k4, k23, t1, t2, t3, t4, t5
from .widths import pathwidth_at_most, pathwidth_exact, treewidth_at_most, treewidth_exact

__all__ = [
    "BlockTree", "biconnected_blocks", "check_simple", "is_biconnected",
    "PathDecomposition", "TreeDecomposition",
    "MinorEmbedding", "contains_minor", "is_f_minor_free", "is_outerplanar",
    "forbidden_minors", "k4", "k23", "t1", "t2", "t3", "t4", "t5",
    "pathwidth_at_most", "pathwidth_exact", "treewidth_at_most", "treewidth_exact",
]
