"""Compressed status list: one bit per issuance ordinal, published as a
full snapshot each epoch.  Verifiers download the snapshot from the issuer
(cached per epoch) and check the holder's position locally, so the download
is linear in capacity but repeat verifications are free."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential, verify_signature
from ..encoding import concat, frame
from ..errors import OutOfRange
from ..identity import CredentialId, presentation_subject
from ..rng import random_bytes
from ..signing import IssuerKeypair
from ..status_bits import StatusBitArray
from .base import (
    LIST_INTERACTIONS,
    ProofField,
    RevocationMethod,
    ValidityProof,
    VerifyContext,
    VerifyOutcome,
    body_field,
)
from .common import StatusRecords

LIST_ID_BYTES = 16


@dataclass
class BitListState:
    issuer: IssuerKeypair
    records: StatusRecords
    list_id: bytes
    working: StatusBitArray
    snapshot: bytes = b""
    ordinals: dict[bytes, int] = field(default_factory=dict)
    next_ordinal: int = 0


@dataclass
class OrdinalArtifact:
    list_id: bytes
    ordinal: int

    def status_ref(self) -> bytes:
        # contiguous stable reference: which list, which position
        return self.list_id + self.ordinal.to_bytes(8, "big")

    def to_bytes(self) -> bytes:
        return frame(self.status_ref())


class CompressedBitList(RevocationMethod):
    name = "bit-list"
    group = "Compressed List"
    capabilities = MethodCapabilities(UpdateProperty.DYNAMIC, ProofProperty.UNIVERSAL)
    calling_home = True
    declared_interactions = LIST_INTERACTIONS
    artifact_embedded = True
    series_kind = "verifier_download_bytes"
    scaling_class = "linear"

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> BitListState:
        state = BitListState(
            issuer=issuer,
            records=StatusRecords(),
            list_id=random_bytes(rng, LIST_ID_BYTES),
            working=StatusBitArray(self.params.capacity),
        )
        state.snapshot = state.working.copy(epoch=0).to_bytes()
        return state

    def on_issue(self, state: BitListState, credential: Credential, now: LogicalTime) -> OrdinalArtifact:
        if state.next_ordinal >= self.params.capacity:
            raise OutOfRange("status list capacity exhausted")
        state.records.register(credential.id.value, credential.holder_id)
        ordinal = state.next_ordinal
        state.next_ordinal += 1
        state.ordinals[credential.id.value] = ordinal
        return OrdinalArtifact(state.list_id, ordinal)

    def revoke(self, state: BitListState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: BitListState, epoch: int) -> None:
        for id_value in state.records.fold(epoch):
            state.working.set(state.ordinals[id_value], True)
        state.snapshot = state.working.copy(epoch).to_bytes()

    def prove(self, artifact: OrdinalArtifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        mode = credential.id.mode
        fields = (
            ProofField("subject", presentation_subject(credential.id, alias_key, nonce)),
            ProofField("status_ref", artifact.status_ref()),  # lookup position cannot be blinded
            body_field("credential", credential.to_bytes(), mode, alias_key, nonce),
        )
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=credential)

    def _snapshot_for(self, ctx: VerifyContext, epoch: int) -> tuple[StatusBitArray, int]:
        """Cached per-epoch snapshot; returns (array, bytes downloaded)."""
        key = ("bit-list-snapshot", epoch)
        if key in ctx.cache:
            return ctx.cache[key], 0
        blob = ctx.channel.query("status-snapshot", b"")
        array = StatusBitArray.from_bytes(blob)
        ctx.cache[key] = array
        return array, len(blob)

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential: Credential = proof.backing
        if not verify_signature(credential, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        status_ref = proof.field("status_ref")
        ordinal = int.from_bytes(status_ref[LIST_ID_BYTES:], "big")
        array, downloaded = self._snapshot_for(ctx, now.epoch)
        revoked = array.get(ordinal)  # raises OutOfRange beyond capacity
        contacted = downloaded > 0
        if revoked:
            return VerifyOutcome(False, issuer_contacted=contacted, bytes_queried=downloaded, reason="revoked")
        return VerifyOutcome(True, issuer_contacted=contacted, bytes_queried=downloaded)

    def handle_query(self, state: BitListState, endpoint: str, payload: bytes, now: LogicalTime, requester: str) -> bytes:
        if endpoint != "status-snapshot":
            raise NotImplementedError(endpoint)
        state.records.log_query(requester, "snapshot", now.epoch)
        return state.snapshot

    def reevaluate_retained(self, fields: dict[str, bytes], ctx: VerifyContext, now: LogicalTime) -> bool | None:
        status_ref = fields.get("status_ref")
        if status_ref is None or ctx.channel is None:
            return None
        array = StatusBitArray.from_bytes(ctx.channel.query("status-snapshot", b""))
        return not array.get(int.from_bytes(status_ref[LIST_ID_BYTES:], "big"))

    def state_bytes(self, state: BitListState) -> bytes:
        return concat(state.records.to_bytes(), frame(state.list_id), state.snapshot)
