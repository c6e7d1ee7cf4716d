"""Exact isoperimetric connectivity of finite Cayley graphs and digraphs."""

from .sets import ElementSet
from .groups import (
    CosetDecomposition,
    FiniteGroup,
    GroupError,
    SeminormalityResult,
    coset_decomposition,
    detect_progression,
    make_group,
    min_subgroup_order,
    minkowski_product,
    quotient_group,
    seminormality,
    stabilizers,
    subgroup_generated,
)
from .digraph import (
    Digraph,
    GraphError,
    boundary,
    cayley_graph,
    co_complement,
    image,
    is_k_separable,
    reflexive_closure,
    reverse,
)
from .iso import (
    IsoProfile,
    SubsetInvariants,
    atoms,
    classify,
    fragments,
    kappa,
    omega,
    profile,
)
from .menger import (
    ConnectivityError,
    KPart,
    Matching,
    PathFamily,
    QuotientWitness,
    abelian_strong_iso,
    disjoint_paths,
    kappa1_flow,
    local_connectivity,
    min_k_part,
    strong_iso_matching,
)

__version__ = "0.1.0"

__all__ = [
    "ElementSet",
    "FiniteGroup",
    "GroupError",
    "CosetDecomposition",
    "SeminormalityResult",
    "make_group",
    "minkowski_product",
    "subgroup_generated",
    "stabilizers",
    "coset_decomposition",
    "quotient_group",
    "min_subgroup_order",
    "detect_progression",
    "seminormality",
    "Digraph",
    "GraphError",
    "cayley_graph",
    "image",
    "boundary",
    "co_complement",
    "is_k_separable",
    "reflexive_closure",
    "reverse",
    "IsoProfile",
    "SubsetInvariants",
    "kappa",
    "fragments",
    "atoms",
    "omega",
    "profile",
    "classify",
    "ConnectivityError",
    "PathFamily",
    "KPart",
    "Matching",
    "QuotientWitness",
    "local_connectivity",
    "disjoint_paths",
    "min_k_part",
    "strong_iso_matching",
    "abelian_strong_iso",
    "kappa1_flow",
]
