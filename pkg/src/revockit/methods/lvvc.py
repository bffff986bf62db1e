"""Linked-validity companion method.

Each credential is issued together with a minimal companion credential that
carries only the issuer id, the linked credential id and its own issuance
epoch.  Holders refresh the companion on a short cadence; the issuer
refuses refreshes for revoked credentials, so the last companion ages out
of the verifier's acceptance window.  Because the companion has no claims,
every refresh payload has the same byte size no matter how large the
linked credential or the population is.

The verifier runs three checks: both signatures, the id link, and the
companion's issuance-epoch freshness.  No issuer contact is ever needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import (
    Credential,
    LinkedValidityCredential,
    check_freshness,
    check_link,
    issue_lvvc,
    verify_signature,
)
from ..encoding import Reader, concat, encode_str, frame
from ..errors import Revoked, Unauthorized
from ..identity import CredentialId, presentation_subject
from ..signing import IssuerKeypair
from .base import (
    NON_LIST_INTERACTIONS,
    ProofField,
    RevocationMethod,
    ValidityProof,
    VerifyContext,
    VerifyOutcome,
    body_field,
)
from .common import StatusRecords


@dataclass
class LvvcState:
    issuer: IssuerKeypair
    records: StatusRecords
    # the refresh service needs only: credential id, holder id, signing key,
    # revocation status; the latest companion is kept for storage accounting
    current: dict[bytes, LinkedValidityCredential] = field(default_factory=dict)
    ids: dict[bytes, CredentialId] = field(default_factory=dict)


@dataclass
class LvvcArtifact:
    credential_id: CredentialId
    holder_id: str
    lvvc: LinkedValidityCredential

    def to_bytes(self) -> bytes:
        return self.lvvc.to_bytes()


class LvvcMethod(RevocationMethod):
    name = "lvvc"
    group = "LVVC"
    capabilities = MethodCapabilities(UpdateProperty.DYNAMIC, ProofProperty.POSITIVE)
    calling_home = False
    declared_interactions = NON_LIST_INTERACTIONS
    presented_state = True
    series_kind = "refresh_payload_bytes"
    scaling_class = "constant"

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> LvvcState:
        return LvvcState(issuer=issuer, records=StatusRecords())

    def on_issue(self, state: LvvcState, credential: Credential, now: LogicalTime) -> LvvcArtifact:
        state.records.register(credential.id.value, credential.holder_id)
        state.ids[credential.id.value] = credential.id
        lvvc = issue_lvvc(state.issuer, credential.id, now)
        state.current[credential.id.value] = lvvc
        return LvvcArtifact(credential.id, credential.holder_id, lvvc)

    def revoke(self, state: LvvcState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: LvvcState, epoch: int) -> None:
        state.records.fold(epoch)

    def refresh(self, state: LvvcState, credential_id: CredentialId, holder_id: str, now: LogicalTime) -> LinkedValidityCredential:
        """Direct-call form of the refresh endpoint."""
        id_value = credential_id.value
        if state.records.issued.get(id_value) != holder_id:
            raise Unauthorized(holder_id)
        if state.records.is_revoked(id_value):
            raise Revoked(id_value.hex())
        lvvc = issue_lvvc(state.issuer, state.ids[id_value], now)
        state.current[id_value] = lvvc
        return lvvc

    # -- holder refresh as a sync round-trip --

    def sync_request(self, artifact: LvvcArtifact, now: LogicalTime) -> bytes | None:
        return concat(frame(artifact.credential_id.value), encode_str(artifact.holder_id))

    def handle_sync(self, state: LvvcState, request: bytes, now: LogicalTime) -> bytes:
        reader = Reader(request)
        id_value = reader.take()
        holder_id = reader.take_str()
        cid = state.ids.get(id_value)
        if cid is None or state.records.issued.get(id_value) != holder_id:
            raise Unauthorized(holder_id)
        if state.records.is_revoked(id_value):
            raise Revoked(id_value.hex())
        lvvc = issue_lvvc(state.issuer, cid, now)
        state.current[id_value] = lvvc
        return lvvc.to_bytes()

    def apply_sync(self, artifact: LvvcArtifact, response: bytes, now: LogicalTime) -> LvvcArtifact:
        reader = Reader(response)
        linked = reader.take()
        issuer_id = reader.take_str()
        epoch = reader.take_u64()
        signature = reader.take()
        lvvc = LinkedValidityCredential(
            CredentialId(linked, artifact.credential_id.mode), issuer_id, LogicalTime(epoch), signature
        )
        return LvvcArtifact(artifact.credential_id, artifact.holder_id, lvvc)

    # -- presentation --

    def prove(self, artifact: LvvcArtifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        mode = credential.id.mode
        fields = (
            ProofField("subject", presentation_subject(credential.id, alias_key, nonce)),
            body_field("credential", credential.to_bytes(), mode, alias_key, nonce),
            body_field("validity_companion", artifact.lvvc.to_bytes(), mode, alias_key, nonce),
        )
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=(credential, artifact.lvvc))

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential, lvvc = proof.backing
        if not verify_signature(credential, ctx.registry) or not verify_signature(lvvc, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        if not check_link(credential, lvvc):
            return VerifyOutcome(False, reason="link")
        if not check_freshness(lvvc, now, ctx.params.max_age):
            return VerifyOutcome(False, reason="stale")
        return VerifyOutcome(True)

    # -- probes --

    def artifact_current(self, state: LvvcState, artifact: LvvcArtifact, credential_id: CredentialId) -> bool:
        return not state.records.is_revoked(credential_id.value)

    def state_bytes(self, state: LvvcState) -> bytes:
        parts = [state.records.to_bytes()]
        for id_value in state.records.order:
            parts.append(frame(state.current[id_value].to_bytes()))
        return concat(*parts)
