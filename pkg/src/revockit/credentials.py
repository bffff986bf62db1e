"""Credential containers and the linked validity companion credential.

A ``Credential`` carries holder claims and varies in size with them.  A
``LinkedValidityCredential`` carries no claims at all -- only the issuer id,
the id of the credential it vouches for, and its own issuance epoch -- so
its canonical serialization has constant size for a fixed signature scheme,
regardless of the linked credential or the population around it.  A recent
issuance epoch on the companion is what attests non-revocation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .clock import LogicalTime
from .encoding import concat, encode_pairs, encode_str, encode_u64, frame
from .identity import CredentialId, IdMode, new_credential_id
from .signing import IssuerKeypair, KeyRegistry


@dataclass(frozen=True)
class Credential:
    id: CredentialId
    holder_id: str
    issuer_id: str
    claims: tuple[tuple[str, str], ...]
    issued_at: LogicalTime
    signature: bytes

    def unsigned_bytes(self) -> bytes:
        return concat(
            frame(self.id.value),
            encode_str(self.holder_id),
            encode_str(self.issuer_id),
            encode_pairs(self.claims),
            encode_u64(self.issued_at.epoch),
        )

    def to_bytes(self) -> bytes:
        return self.unsigned_bytes() + frame(self.signature)


@dataclass(frozen=True)
class LinkedValidityCredential:
    linked_credential_id: CredentialId
    issuer_id: str
    issued_at: LogicalTime
    signature: bytes

    def unsigned_bytes(self) -> bytes:
        return concat(
            frame(self.linked_credential_id.value),
            encode_str(self.issuer_id),
            encode_u64(self.issued_at.epoch),
        )

    def to_bytes(self) -> bytes:
        return self.unsigned_bytes() + frame(self.signature)


def _as_claim_tuple(claims: Mapping[str, str] | Sequence[tuple[str, str]]) -> tuple[tuple[str, str], ...]:
    if isinstance(claims, Mapping):
        return tuple(claims.items())
    return tuple(claims)


def issue_credential(
    keypair: IssuerKeypair,
    holder_id: str,
    claims: Mapping[str, str] | Sequence[tuple[str, str]],
    now: LogicalTime,
    rng: random.Random,
    id_mode: IdMode = "stable",
) -> Credential:
    """Issue a signed credential with a fresh id.

    The issuer must already be registered in the scenario's KeyRegistry.
    """
    cred = Credential(
        id=new_credential_id(rng, id_mode),
        holder_id=holder_id,
        issuer_id=keypair.issuer_id,
        claims=_as_claim_tuple(claims),
        issued_at=now,
        signature=b"",
    )
    signature = keypair.sign(cred.unsigned_bytes())
    return Credential(cred.id, cred.holder_id, cred.issuer_id, cred.claims, cred.issued_at, signature)


def issue_lvvc(
    keypair: IssuerKeypair,
    credential_id: CredentialId,
    now: LogicalTime,
) -> LinkedValidityCredential:
    lvvc = LinkedValidityCredential(
        linked_credential_id=credential_id,
        issuer_id=keypair.issuer_id,
        issued_at=now,
        signature=b"",
    )
    signature = keypair.sign(lvvc.unsigned_bytes())
    return LinkedValidityCredential(credential_id, keypair.issuer_id, now, signature)


def verify_signature(obj: Credential | LinkedValidityCredential, registry: KeyRegistry) -> bool:
    """True iff the signature matches the canonical serialization under the
    key registered for ``obj.issuer_id``.  Raises UnknownIssuer when the
    issuer is absent from the registry."""
    return registry.verify(obj.issuer_id, obj.unsigned_bytes(), obj.signature)


def check_link(vc: Credential, lvvc: LinkedValidityCredential) -> bool:
    return lvvc.linked_credential_id.value == vc.id.value and lvvc.issuer_id == vc.issuer_id


def check_freshness(lvvc: LinkedValidityCredential, now: LogicalTime, max_age: int) -> bool:
    if max_age < 0:
        raise ValueError("max_age must be >= 0")
    return now.gap(lvvc.issued_at) <= max_age
