"""The three protocol roles and the three process phases."""

from __future__ import annotations

from enum import Enum


class Role(str, Enum):
    ISSUER = "issuer"
    HOLDER = "holder"
    VERIFIER = "verifier"


class Phase(str, Enum):
    ISSUANCE = "issuance"
    REVOCATION = "revocation"
    VERIFICATION = "verification"


ROLE_LETTER = {Role.ISSUER: "I", Role.HOLDER: "H", Role.VERIFIER: "V"}
