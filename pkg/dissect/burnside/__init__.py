from dissect.burnside.burnside import (
    Correspondence,
    EntrywiseBijection,
    SignedCorrespondence,
    compose,
    linearize,
    signed_compose,
)
from dissect.burnside.chain import dump_chain, load_chain
from dissect.burnside.exceptions import (
    BoundaryError,
    BurnsideError,
    ChainFormatError,
    DiagramError,
    Error,
    FrameError,
    MatchingError,
    QGroupError,
    ShapeError,
    SignatureError,
    SignOracleError,
    UnknownRelationError,
    WeightError,
)
from dissect.burnside.phi import (
    ChainComplex,
    phi_basic,
    phi_cube_linearize,
    phi_tree,
    verify_multifunctor,
)
from dissect.burnside.planar import Matching, SliceWord, enumerate_matchings, load_diagram, parse_diagram
from dissect.burnside.qgroup import GLWeight, check_relation, evaluate_2morphism, solve_signs, verify_qgroup
from dissect.burnside.report import Bounds, Report
from dissect.burnside.signed import TableSigns, TrivialSigns, WeightSeq, verify_signed_multifunctor
from dissect.burnside.tqft import DiskElement, Ring, multiply, multiply_n

__all__ = [
    "Bounds",
    "ChainComplex",
    "Correspondence",
    "DiskElement",
    "EntrywiseBijection",
    "GLWeight",
    "Matching",
    "Report",
    "Ring",
    "SignedCorrespondence",
    "SliceWord",
    "TableSigns",
    "TrivialSigns",
    "WeightSeq",
    "check_relation",
    "compose",
    "dump_chain",
    "enumerate_matchings",
    "evaluate_2morphism",
    "linearize",
    "load_chain",
    "load_diagram",
    "multiply",
    "multiply_n",
    "parse_diagram",
    "phi_basic",
    "phi_cube_linearize",
    "phi_tree",
    "signed_compose",
    "solve_signs",
    "verify_multifunctor",
    "verify_qgroup",
    "verify_signed_multifunctor",
    "BoundaryError",
    "BurnsideError",
    "ChainFormatError",
    "DiagramError",
    "Error",
    "FrameError",
    "MatchingError",
    "QGroupError",
    "ShapeError",
    "SignatureError",
    "SignOracleError",
    "UnknownRelationError",
    "WeightError",
]
