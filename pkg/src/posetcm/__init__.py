"""Cohen-Macaulay properties of finite posets and their order complexes."""

from .catalog import generate, instances
from .cm import (
    CmVerdict,
    cm_failure,
    edgewise_cm_connectivity,
    is_cm,
    is_cm_complex,
    is_edgewise_k_cm,
    is_gorenstein_star,
    is_k_cm,
    replay_witness,
)
from .complex import SimplicialComplex, delete_vertices, face_local, order_complex
from .exceptions import (
    PosetError,
    UnknownLabel,
    CycleDetected,
    RedundantCover,
    TooLarge,
    NotComparable,
    NotBounded,
    LabelClash,
    EmptyPoset,
    NotALattice,
    FaceNotInComplex,
    VoidComplex,
    NotPure,
    SearchBudgetExceeded,
    RouteMismatch,
    UnknownFamily,
    BadParams,
)
from .homology import GF2, QQ, BettiVector, FieldSpec, reduced_betti
from .io import doc_to_poset, dumps, fingerprint, loads, poset_to_doc, read_poset, to_dot, write_poset
from .lattice import is_lattice, lattice_classes, lattice_structure, mobius_function
from .poset import (
    Interval,
    Poset,
    add_bounds,
    build_poset,
    dual,
    interval,
    ordinal_sum,
    proper_part,
    remove_interval_edges,
)
from .search import replay_certificate, search_counterexamples
from .shelling import check_shelling_order, is_edgewise_strongly_shellable, is_shellable

__version__ = "0.1.0"
