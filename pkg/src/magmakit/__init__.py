"""Finite magmas, loops and groupoids, and mixed N-structures built from them."""

from .catalog import (
    FAMILIES,
    ZN_CLASSES,
    cyclic,
    dihedral,
    ln_class,
    ln_count_formula,
    ln_counts,
    ln_loop,
    standard,
    symmetric_group,
    zn_add,
    zn_groupoid,
    zn_mul,
)
from .errors import (
    CapExceeded,
    ElementAbsent,
    FormatError,
    ImproperComponents,
    InsufficientMix,
    InvalidMagma,
    InvalidParams,
    KindMismatch,
    MagmaError,
    NotAGroup,
    NotALoop,
    NotNormal,
    PreconditionUnmet,
)
from .formats import emit_cayley, parse_cayley, parse_manifest, parse_report
from .identities import IDENTITY_NAMES, check_identity, derived_subloop
from .magma import AlgebraKind, Magma, classify
from .nstructure import (
    NStructure,
    SubNStructure,
    analyze,
    assemble,
    cauchy_analysis,
    classify_n,
    coset,
    find_sub_nstructures,
    lagrange_analysis,
    order_spectrum,
    quotient,
    smarandache_n_analysis,
    sub_from_names,
    sylow_analysis,
    verify_homomorphism,
)
from .substructure import SubMagma, enumerate_submagmas, is_normal, s_analysis

__version__ = "0.1.0"

__all__ = [
    "AlgebraKind",
    "CapExceeded",
    "ElementAbsent",
    "FAMILIES",
    "FormatError",
    "IDENTITY_NAMES",
    "ImproperComponents",
    "InsufficientMix",
    "InvalidMagma",
    "InvalidParams",
    "KindMismatch",
    "Magma",
    "MagmaError",
    "NStructure",
    "NotAGroup",
    "NotALoop",
    "NotNormal",
    "PreconditionUnmet",
    "SubMagma",
    "SubNStructure",
    "ZN_CLASSES",
    "analyze",
    "assemble",
    "cauchy_analysis",
    "check_identity",
    "classify",
    "classify_n",
    "coset",
    "cyclic",
    "derived_subloop",
    "dihedral",
    "emit_cayley",
    "enumerate_submagmas",
    "find_sub_nstructures",
    "is_normal",
    "lagrange_analysis",
    "ln_class",
    "ln_count_formula",
    "ln_counts",
    "ln_loop",
    "order_spectrum",
    "parse_cayley",
    "parse_manifest",
    "parse_report",
    "quotient",
    "s_analysis",
    "smarandache_n_analysis",
    "standard",
    "sub_from_names",
    "sylow_analysis",
    "symmetric_group",
    "verify_homomorphism",
    "zn_add",
    "zn_groupoid",
    "zn_mul",
]
