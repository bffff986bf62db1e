"""Bloom-filter blocklist with authoritative escalation.

The per-epoch filter is distributed through a public mirror (metered but
not issuer-observable), so a clean `definitely not revoked` answer never
calls home.  A `maybe` -- every revoked id, plus false positives at the
filter's rate -- escalates to the issuer's exact records, which both
resolves validity and leaks the usage event.  Filters are rebuilt per
epoch, which is why the structure only needs additive updates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..bloom import BloomFilter, params_for
from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential, verify_signature
from ..encoding import Reader, concat, frame
from ..identity import CredentialId, presentation_subject
from ..rng import random_bytes
from ..signing import IssuerKeypair
from .base import (
    LIST_INTERACTIONS,
    ProofField,
    RevocationMethod,
    ValidityProof,
    VerifyContext,
    VerifyOutcome,
    body_field,
)
from .bit_list import LIST_ID_BYTES, OrdinalArtifact
from .common import StatusRecords


@dataclass
class BloomListState:
    issuer: IssuerKeypair
    records: StatusRecords
    list_id: bytes
    filter_snapshot: bytes = b""
    ordinals: dict[bytes, int] = field(default_factory=dict)
    next_ordinal: int = 0
    ops: OpCounter | None = None


class BloomList(RevocationMethod):
    name = "bloom-list"
    group = "Compressed List"
    capabilities = MethodCapabilities(UpdateProperty.ADDITIVE, ProofProperty.NEGATIVE)
    calling_home = True  # escalations only
    declared_interactions = LIST_INTERACTIONS
    artifact_embedded = True
    series_kind = "verifier_download_bytes"
    scaling_class = "linear"

    def _build_filter(self, state: BloomListState) -> BloomFilter:
        bits, hashes = params_for(self.params.capacity, self.params.bloom_target_fpr)
        filt = BloomFilter(bits, hashes, ops=state.ops)
        for id_value in sorted(state.records.published):
            filt.insert(id_value)
        return filt

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> BloomListState:
        state = BloomListState(
            issuer=issuer,
            records=StatusRecords(),
            list_id=random_bytes(rng, LIST_ID_BYTES),
            ops=ops,
        )
        state.filter_snapshot = self._build_filter(state).to_bytes()
        return state

    def on_issue(self, state: BloomListState, credential: Credential, now: LogicalTime) -> OrdinalArtifact:
        state.records.register(credential.id.value, credential.holder_id)
        ordinal = state.next_ordinal
        state.next_ordinal += 1
        state.ordinals[credential.id.value] = ordinal
        return OrdinalArtifact(state.list_id, ordinal)

    def revoke(self, state: BloomListState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: BloomListState, epoch: int) -> None:
        state.records.fold(epoch)
        state.filter_snapshot = self._build_filter(state).to_bytes()

    def prove(self, artifact: OrdinalArtifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        mode = credential.id.mode
        fields = (
            ProofField("subject", presentation_subject(credential.id, alias_key, nonce)),
            ProofField("status_key", credential.id.value),  # filter lookup key cannot be blinded
            body_field("credential", credential.to_bytes(), mode, alias_key, nonce),
        )
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=credential)

    def _filter_for(self, ctx: VerifyContext, epoch: int) -> tuple[BloomFilter, int]:
        key = ("bloom-snapshot", epoch)
        if key in ctx.cache:
            return ctx.cache[key], 0
        blob = ctx.channel.query("filter-snapshot", b"", visible=False)
        filt = BloomFilter.from_bytes(blob)
        ctx.cache[key] = filt
        return filt, len(blob)

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential: Credential = proof.backing
        if not verify_signature(credential, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        status_key = proof.field("status_key")
        filt, downloaded = self._filter_for(ctx, now.epoch)
        if not filt.may_contain(status_key):
            return VerifyOutcome(True, issuer_contacted=False, bytes_queried=downloaded)
        request = frame(status_key)
        response = ctx.channel.query("revocation-check", request)
        revoked = Reader(response).take() == b"\x01"
        queried = downloaded + len(request) + len(response)
        if revoked:
            return VerifyOutcome(False, issuer_contacted=True, bytes_queried=queried, reason="revoked")
        return VerifyOutcome(True, issuer_contacted=True, bytes_queried=queried)

    def handle_query(self, state: BloomListState, endpoint: str, payload: bytes, now: LogicalTime, requester: str) -> bytes:
        if endpoint == "filter-snapshot":
            # served via public mirror: not issuer-observable, nothing logged
            return state.filter_snapshot
        if endpoint != "revocation-check":
            raise NotImplementedError(endpoint)
        id_value = Reader(payload).take()
        state.records.log_query(requester, id_value.hex(), now.epoch)
        return frame(b"\x01" if state.records.is_revoked(id_value) else b"\x00")

    def reevaluate_retained(self, fields: dict[str, bytes], ctx: VerifyContext, now: LogicalTime) -> bool | None:
        status_key = fields.get("status_key")
        if status_key is None or ctx.channel is None:
            return None
        filt = BloomFilter.from_bytes(ctx.channel.query("filter-snapshot", b"", visible=False))
        if not filt.may_contain(status_key):
            return True
        response = ctx.channel.query("revocation-check", frame(status_key))
        return Reader(response).take() != b"\x01"

    def state_bytes(self, state: BloomListState) -> bytes:
        return concat(state.records.to_bytes(), frame(state.list_id), state.filter_snapshot)
