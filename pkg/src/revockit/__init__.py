"""revockit: multi-method revocation toolkit for verifiable credentials.

Six revocation groups behind one method interface, plus a deterministic
issuer/holder/verifier simulation harness that meters every cross-role
byte, probes holder-privacy properties, and measures storage/payload
scaling.
"""

__version__ = "0.1.0"

from .clock import LogicalTime
from .credentials import (
    Credential,
    LinkedValidityCredential,
    check_freshness,
    check_link,
    issue_credential,
    issue_lvvc,
    verify_signature,
)
from .identity import CredentialId
from .signing import KeyRegistry

__all__ = [
    "Credential",
    "CredentialId",
    "KeyRegistry",
    "LinkedValidityCredential",
    "LogicalTime",
    "check_freshness",
    "check_link",
    "issue_credential",
    "issue_lvvc",
    "verify_signature",
    "__version__",
]
