"""Simple public blocklist: the verifier asks the issuer about every
presentation, so validation is exact and immediate but every check calls
home and names the verifier in the issuer's log."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential, verify_signature
from ..encoding import Reader, concat, encode_u64, frame
from ..identity import CredentialId, presentation_subject
from ..signing import IssuerKeypair
from .base import (
    LIST_INTERACTIONS,
    MethodParams,
    ProofField,
    QueryChannel,
    RevocationMethod,
    ValidityProof,
    VerifyContext,
    VerifyOutcome,
    body_field,
)
from .common import StatusRecords


@dataclass
class SimpleListState:
    issuer: IssuerKeypair
    records: StatusRecords


@dataclass
class SimpleListArtifact:
    """List methods keep nothing holder-side."""

    def to_bytes(self) -> bytes:
        return b""


def encode_status_answer(revoked: bool, epoch: int) -> bytes:
    return concat(frame(b"\x01" if revoked else b"\x00"), encode_u64(epoch))


def decode_status_answer(blob: bytes) -> tuple[bool, int]:
    reader = Reader(blob)
    return reader.take() == b"\x01", reader.take_u64()


class SimpleList(RevocationMethod):
    name = "simple-list"
    group = "List Based"
    capabilities = MethodCapabilities(UpdateProperty.DYNAMIC, ProofProperty.UNIVERSAL)
    calling_home = True
    declared_interactions = LIST_INTERACTIONS
    public_lookup = True
    artifact_embedded = True
    series_kind = "verification_query_bytes"
    scaling_class = "constant"

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> SimpleListState:
        return SimpleListState(issuer=issuer, records=StatusRecords())

    def on_issue(self, state: SimpleListState, credential: Credential, now: LogicalTime) -> SimpleListArtifact:
        state.records.register(credential.id.value, credential.holder_id)
        return SimpleListArtifact()

    def revoke(self, state: SimpleListState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: SimpleListState, epoch: int) -> None:
        state.records.fold(epoch)

    def prove(self, artifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        mode = credential.id.mode
        fields = (
            ProofField("subject", presentation_subject(credential.id, alias_key, nonce)),
            ProofField("status_key", credential.id.value),  # lookup key cannot be blinded
            body_field("credential", credential.to_bytes(), mode, alias_key, nonce),
        )
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=credential)

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential: Credential = proof.backing
        if not verify_signature(credential, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        request = frame(proof.field("status_key"))
        response = ctx.channel.query("status", request)
        revoked, _ = decode_status_answer(response)
        queried = len(request) + len(response)
        if revoked:
            return VerifyOutcome(False, issuer_contacted=True, bytes_queried=queried, reason="revoked")
        return VerifyOutcome(True, issuer_contacted=True, bytes_queried=queried)

    def handle_query(self, state: SimpleListState, endpoint: str, payload: bytes, now: LogicalTime, requester: str) -> bytes:
        if endpoint != "status":
            raise NotImplementedError(endpoint)
        id_value = Reader(payload).take()
        state.records.log_query(requester, id_value.hex(), now.epoch)
        return encode_status_answer(state.records.is_revoked(id_value), state.records.published_epoch)

    def reevaluate_retained(self, fields: dict[str, bytes], ctx: VerifyContext, now: LogicalTime) -> bool | None:
        key = fields.get("status_key")
        if key is None or ctx.channel is None:
            return None
        revoked, _ = decode_status_answer(ctx.channel.query("status", frame(key)))
        return not revoked

    def state_bytes(self, state: SimpleListState) -> bytes:
        return state.records.to_bytes()
