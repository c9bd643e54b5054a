"""opident: exact verification of the operator-binomial identities that fall
out of the range theory of Radon-type transforms, with a numeric jet oracle
and a tomography demo."""

from .diffalg import (
    NILP2,
    ORDER1,
    ORDER2,
    ORDER3,
    PRESETS,
    SPLIT,
    WEYL_X,
    AlgebraSignature,
    FuncElem,
    SignatureMismatch,
    decay_signature,
    order_signature,
)
from .exactnum import LambdaPoly, Rational, binomial
from .identities import (
    FreeElem,
    build_identity_lhs,
    build_pn,
    check_decomposition,
    check_factorization,
    check_free_lemma,
    check_gauge_equivalence,
    check_general_theorem,
    check_lambda_zero_agreement,
    check_recurrence,
    check_split_cancellation,
    check_theorem1,
    check_theorem2,
    explore_order,
)
from .opring import OperatorElem
from .parser import ElaborationError, ParseError, parse_expression, parse_operator
from .report import VerificationReport

__all__ = [
    "AlgebraSignature",
    "ElaborationError",
    "FreeElem",
    "FuncElem",
    "LambdaPoly",
    "NILP2",
    "ORDER1",
    "ORDER2",
    "ORDER3",
    "OperatorElem",
    "PRESETS",
    "ParseError",
    "Rational",
    "SPLIT",
    "SignatureMismatch",
    "VerificationReport",
    "WEYL_X",
    "binomial",
    "build_identity_lhs",
    "build_pn",
    "check_decomposition",
    "check_factorization",
    "check_free_lemma",
    "check_gauge_equivalence",
    "check_general_theorem",
    "check_lambda_zero_agreement",
    "check_recurrence",
    "check_split_cancellation",
    "check_theorem1",
    "check_theorem2",
    "decay_signature",
    "explore_order",
    "order_signature",
    "parse_expression",
    "parse_operator",
]

__version__ = "0.1.0"
