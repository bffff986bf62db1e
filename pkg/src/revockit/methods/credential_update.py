"""Re-issuance method: validity is attested by the credential's own
issuance epoch, refreshed on a short cadence.

A refresh replays the full credential -- identical claims, current epoch,
new signature -- so the per-refresh payload tracks the credential's size,
which the issuer does not control.  Revocation means refusing further
refreshes and letting the last copy age out of the verifier's window."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential, verify_signature
from ..encoding import Reader, concat, frame
from ..errors import Revoked
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
    fresh_enough,
)
from .common import StatusRecords


@dataclass
class CredentialUpdateState:
    issuer: IssuerKeypair
    records: StatusRecords
    claims_of: dict[bytes, tuple[tuple[str, str], ...]] = None  # type: ignore[assignment]
    ids: dict[bytes, CredentialId] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.claims_of is None:
            self.claims_of = {}
        if self.ids is None:
            self.ids = {}


@dataclass
class RefreshedCredentialArtifact:
    credential: Credential

    def to_bytes(self) -> bytes:
        return self.credential.to_bytes()


def reissue(state: CredentialUpdateState, id_value: bytes, holder_id: str, now: LogicalTime) -> Credential:
    cred = Credential(
        id=state.ids[id_value],
        holder_id=holder_id,
        issuer_id=state.issuer.issuer_id,
        claims=state.claims_of[id_value],
        issued_at=now,
        signature=b"",
    )
    signature = state.issuer.sign(cred.unsigned_bytes())
    return Credential(cred.id, cred.holder_id, cred.issuer_id, cred.claims, cred.issued_at, signature)


class CredentialUpdateMethod(RevocationMethod):
    name = "credential-update"
    group = "Credential Update"
    capabilities = MethodCapabilities(UpdateProperty.DYNAMIC, ProofProperty.POSITIVE)
    calling_home = False
    declared_interactions = NON_LIST_INTERACTIONS
    presented_state = True
    series_kind = "refresh_payload_bytes"
    scaling_class = "constant"

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> CredentialUpdateState:
        return CredentialUpdateState(issuer=issuer, records=StatusRecords())

    def on_issue(self, state: CredentialUpdateState, credential: Credential, now: LogicalTime) -> RefreshedCredentialArtifact:
        state.records.register(credential.id.value, credential.holder_id)
        state.claims_of[credential.id.value] = credential.claims
        state.ids[credential.id.value] = credential.id
        return RefreshedCredentialArtifact(credential)

    def revoke(self, state: CredentialUpdateState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: CredentialUpdateState, epoch: int) -> None:
        state.records.fold(epoch)

    def refresh(self, state: CredentialUpdateState, credential: Credential, now: LogicalTime) -> Credential:
        """Direct-call form of the refresh endpoint."""
        if state.records.is_revoked(credential.id.value):
            raise Revoked(credential.id.value.hex())
        return reissue(state, credential.id.value, credential.holder_id, now)

    # -- holder refresh as a sync round-trip --

    def sync_request(self, artifact: RefreshedCredentialArtifact, now: LogicalTime) -> bytes | None:
        return frame(artifact.credential.id.value)

    def handle_sync(self, state: CredentialUpdateState, request: bytes, now: LogicalTime) -> bytes:
        id_value = Reader(request).take()
        if state.records.is_revoked(id_value):
            raise Revoked(id_value.hex())
        fresh = reissue(state, id_value, state.records.issued[id_value], now)
        return fresh.to_bytes()

    def apply_sync(self, artifact: RefreshedCredentialArtifact, response: bytes, now: LogicalTime) -> RefreshedCredentialArtifact:
        reader = Reader(response)
        old = artifact.credential
        id_value = reader.take()
        holder_id = reader.take_str()
        issuer_id = reader.take_str()
        claims = tuple(reader.take_pairs())
        epoch = reader.take_u64()
        signature = reader.take()
        cred = Credential(
            CredentialId(id_value, old.id.mode), holder_id, issuer_id, claims, LogicalTime(epoch), signature
        )
        return RefreshedCredentialArtifact(cred)

    # -- presentation --

    def prove(self, artifact: RefreshedCredentialArtifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        # present the freshest copy the holder has
        current = artifact.credential
        mode = current.id.mode
        fields = (
            ProofField("subject", presentation_subject(current.id, alias_key, nonce)),
            body_field("credential", current.to_bytes(), mode, alias_key, nonce),
        )
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=current)

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential: Credential = proof.backing
        if not verify_signature(credential, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        if not fresh_enough(credential.issued_at.epoch, now, ctx.params.max_age):
            return VerifyOutcome(False, reason="stale")
        return VerifyOutcome(True)

    # -- probes --

    def artifact_current(self, state: CredentialUpdateState, artifact: RefreshedCredentialArtifact, credential_id: CredentialId) -> bool:
        # the revocation of one credential invalidates only that credential's
        # refresh path; everyone else's artifact content is untouched
        return not state.records.is_revoked(credential_id.value)

    def state_bytes(self, state: CredentialUpdateState) -> bytes:
        parts = [state.records.to_bytes()]
        for id_value in state.records.order:
            parts.append(frame(id_value))
            parts.append(concat(*(frame(k.encode()) + frame(v.encode()) for k, v in state.claims_of[id_value])))
        return concat(*parts)
