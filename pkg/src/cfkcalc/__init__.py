"""Exact calculator for bifiltered knot complexes and concordance order.

Core objects: CfkComplex (generators with Alexander and Maslov gradings,
arrows carrying U powers, coefficients mod 2), Laurent polynomials, and
region complexes from which the invariants tau, epsilon, a1, a2 are read.
On top: a totally ordered class group with a domination relation, knot
expressions (torus knots, cables, sums, mirrors, the doubled trefoil),
and machine-checkable independence certificates.
"""

from __future__ import annotations

from .cfk import (
    Arrow,
    CfkComplex,
    Generator,
    ValidationReport,
    Violation,
    change_basis,
    deserialize,
    direct_sum,
    dual,
    j_drop,
    reduce,
    serialize,
    square_complex,
    tensor,
    unknot_complex,
    validate,
)
from .concordance import (
    Certificate,
    ChainEntry,
    ChainLink,
    ClassRep,
    DominanceEvidence,
    DominationResult,
    Ordering,
    abs_class,
    cable_tau,
    class_cmp,
    class_sign,
    dominance_evidence,
    dominates_by_invariants,
    epsilon_from_cable_taus,
    independence_certificate,
    recheck_certificate,
)
from .errors import (
    CertificateError,
    CfkError,
    EpsilonNotOne,
    ExpressionError,
    InconsistentInput,
    InexactDivision,
    InputError,
    InternalInconsistency,
    MathError,
    NotAChain,
    NotCoprime,
    NotStaircaseForm,
    ParseError,
    RankNotOne,
    SearchExhausted,
    TooShort,
    UnsupportedExpression,
)
from .invariants import (
    WhiteheadModelReport,
    WHITEHEAD_RANK_TABLE,
    a1,
    a2,
    check_whitehead_model,
    epsilon,
    epsilon_oracle,
    f_map_trivial,
    g_map_trivial,
    hfk_table,
    staircase_a_invariants,
    tau,
    vertical_class,
)
from .knots import (
    Cable,
    KnotExpr,
    Mirror,
    Sum,
    Torus,
    Unknot,
    WhiteheadDoubleTrefoil,
    alexander,
    class_complex,
    parse,
    staircase,
)
from .laurent import (
    LaurentPoly,
    StaircaseExponents,
    cable_alexander,
    staircase_exponents,
    torus_alexander,
)
from .regions import (
    Column0,
    FullHook,
    GHook,
    HomologyData,
    HookWithTail,
    Region,
    RegionComplex,
    Row,
    TruncatedHook,
    homology_data,
    homology_rank,
    region_complex,
)

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "CfkComplex",
    "Generator",
    "ValidationReport",
    "Violation",
    "change_basis",
    "deserialize",
    "direct_sum",
    "dual",
    "j_drop",
    "reduce",
    "serialize",
    "square_complex",
    "tensor",
    "unknot_complex",
    "validate",
    "Certificate",
    "ChainEntry",
    "ChainLink",
    "ClassRep",
    "DominanceEvidence",
    "DominationResult",
    "Ordering",
    "abs_class",
    "cable_tau",
    "class_cmp",
    "class_sign",
    "dominance_evidence",
    "dominates_by_invariants",
    "epsilon_from_cable_taus",
    "independence_certificate",
    "recheck_certificate",
    "CertificateError",
    "CfkError",
    "EpsilonNotOne",
    "ExpressionError",
    "InconsistentInput",
    "InexactDivision",
    "InputError",
    "InternalInconsistency",
    "MathError",
    "NotAChain",
    "NotCoprime",
    "NotStaircaseForm",
    "ParseError",
    "RankNotOne",
    "SearchExhausted",
    "TooShort",
    "UnsupportedExpression",
    "WhiteheadModelReport",
    "WHITEHEAD_RANK_TABLE",
    "a1",
    "a2",
    "check_whitehead_model",
    "epsilon",
    "epsilon_oracle",
    "f_map_trivial",
    "g_map_trivial",
    "hfk_table",
    "staircase_a_invariants",
    "tau",
    "vertical_class",
    "Cable",
    "KnotExpr",
    "Mirror",
    "Sum",
    "Torus",
    "Unknot",
    "WhiteheadDoubleTrefoil",
    "alexander",
    "class_complex",
    "parse",
    "staircase",
    "LaurentPoly",
    "StaircaseExponents",
    "cable_alexander",
    "staircase_exponents",
    "torus_alexander",
    "Column0",
    "FullHook",
    "GHook",
    "HomologyData",
    "HookWithTail",
    "Region",
    "RegionComplex",
    "Row",
    "TruncatedHook",
    "homology_data",
    "homology_rank",
    "region_complex",
    "__version__",
]
