from .base import (
    MethodParams,
    ProofField,
    QueryChannel,
    RevocationMethod,
    ValidityProof,
    VerifyContext,
    VerifyOutcome,
)
from .registry import GROUPS, METHOD_CLASSES, METHOD_NAMES, make_method

__all__ = [
    "GROUPS",
    "METHOD_CLASSES",
    "METHOD_NAMES",
    "MethodParams",
    "ProofField",
    "QueryChannel",
    "RevocationMethod",
    "ValidityProof",
    "VerifyContext",
    "VerifyOutcome",
    "make_method",
]
