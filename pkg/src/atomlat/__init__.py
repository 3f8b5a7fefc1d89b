"""Atomistic lattices, monomial ideals, and Stanley depth.

Enumerates the isomorphism classes of finite atomistic lattices on a
given number of atoms, realizes each as the lcm-lattice of a squarefree
monomial ideal, and computes projective dimension, Stanley depth, and
the order-theoretic invariants needed to check the depth inequalities
node by node.
"""

from .lattice import (
    CanonicalForm,
    Lattice,
    LatticeError,
    LatticeMorphism,
    boolean_lattice,
    canonical_form,
    free_map,
    is_atomistic,
    lattice_from_dict,
    lattice_to_dict,
    load_lattice,
    meet_irreducibles,
    quotient,
    save_lattice,
)
from .enumeration import (
    DagNode,
    EnumerationDag,
    generate_all,
    maximal_nodes_by_value,
    minimal_nodes_by_value,
)
from .ideals import (
    LcmLattice,
    MonomialIdeal,
    format_ideal,
    format_monomial,
    ideal_from_dict,
    ideal_to_dict,
    lcm_lattice,
    parse_ideal,
    realize,
)
from .homology import (
    BettiTable,
    SimplicialComplex,
    betti_table,
    depth_quotient,
    order_complex,
    pdim_ideal,
    pdim_quotient,
    reduced_homology_ranks,
)
from .sdepth import (
    CharacteristicPoset,
    IntervalPartition,
    Mode,
    ResourceLimitError,
    char_poset,
    check_partition,
    sdepth,
    sdepth_certificate,
    sdepth_decision,
    spdim,
)
from .invariants import (
    InvariantRecord,
    breadth,
    is_distributive,
    length,
    order_dimension,
)
from .pipeline import (
    CheckResult,
    IdealReport,
    VerificationReport,
    verify,
    verify_ideal,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "CanonicalForm",
    "CharacteristicPoset",
    "CheckResult",
    "DagNode",
    "EnumerationDag",
    "IdealReport",
    "IntervalPartition",
    "InvariantRecord",
    "Lattice",
    "LatticeError",
    "LatticeMorphism",
    "LcmLattice",
    "Mode",
    "MonomialIdeal",
    "ResourceLimitError",
    "SimplicialComplex",
    "VerificationReport",
    "betti_table",
    "boolean_lattice",
    "breadth",
    "canonical_form",
    "char_poset",
    "check_partition",
    "depth_quotient",
    "format_ideal",
    "format_monomial",
    "free_map",
    "generate_all",
    "ideal_from_dict",
    "ideal_to_dict",
    "is_atomistic",
    "is_distributive",
    "lattice_from_dict",
    "lattice_to_dict",
    "lcm_lattice",
    "length",
    "load_lattice",
    "maximal_nodes_by_value",
    "meet_irreducibles",
    "minimal_nodes_by_value",
    "order_complex",
    "order_dimension",
    "parse_ideal",
    "pdim_ideal",
    "pdim_quotient",
    "quotient",
    "realize",
    "reduced_homology_ranks",
    "save_lattice",
    "sdepth",
    "sdepth_certificate",
    "sdepth_decision",
    "spdim",
    "verify",
    "verify_ideal",
    "write_report",
    "__version__",
]
