"""Exact combinatorics for tree-indexed label systems and lattice-path
blocks: canonical label generation, domination and cover checks, poset
topology over Z, and operadic closure / matching / homology checks for
classical and depth-recursive lattice paths.
"""

from .signatures import (
    BergerElement,
    TruncatedSignature,
    berger_leq,
    enumerate_downset,
    meet,
    parse_signature,
    sig_leq,
)
from .vdgen import generate_V, generate_tilde, move_graph, removal_meet
from .trees import (
    LevelTree,
    TreeMorphism,
    leaf_order,
    prunisation,
    quasi_bijection_exists,
    surjective_morphisms,
)
from .poset_topology import (
    FinitePoset,
    dismantle,
    homology,
    milgram_poset,
    order_complex,
    smith_normal_form,
)
from .conjectures import (
    LabelSystem,
    check_conjecture1,
    check_conjecture2,
    check_cover,
    downset,
    membership_sets,
    poset_for_tree,
    system,
)
from .lattice_paths import (
    GeneralizedLatticePath,
    LatticePath,
    block_homology,
    block_membership,
    closure_check_seq2,
    closure_check_tam,
    compose_generalized,
    compose_paths,
    enumerate_generalized,
    enumerate_paths,
    matching_check,
    pair_profile,
    path_params,
    simplicial_act,
)

__version__ = "0.1.0"
