"""Gated blocklist: the issuer answers status queries only when the verifier
presents a holder-granted access token.

Token shapes follow the id mode.  Stable mode registers one reusable token
per credential at issuance; every verifier sees the same bytes, and anyone
holding the token can re-query later.  Pairwise mode derives a fresh
single-use token per presentation, registered with the issuer just before
presenting, so verifiers can neither correlate nor re-query.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential, verify_signature
from ..encoding import Reader, concat, frame, hmac_sha256
from ..errors import AccessDenied
from ..identity import CredentialId, presentation_subject
from ..signing import IssuerKeypair
from .base import (
    LIST_INTERACTIONS,
    ProofField,
    QueryChannel,
    RevocationMethod,
    ValidityProof,
    VerifyContext,
    VerifyOutcome,
    body_field,
)
from .common import StatusRecords
from .simple_list import decode_status_answer, encode_status_answer


@dataclass
class TokenGrant:
    credential_id: bytes
    expected_subject: bytes | None  # pairwise binding; None for stable tokens
    single_use: bool
    consumed: bool = False


@dataclass
class HiddenListState:
    issuer: IssuerKeypair
    records: StatusRecords
    grants: dict[bytes, TokenGrant] = field(default_factory=dict)


@dataclass
class AccessTokenArtifact:
    token_key: bytes
    credential_id: bytes

    def static_token(self) -> bytes:
        return hmac_sha256(self.token_key, b"static-access")

    def presentation_token(self, nonce: bytes) -> bytes:
        return hmac_sha256(self.token_key, b"presentation-access", nonce)

    def to_bytes(self) -> bytes:
        return frame(self.token_key)


class HiddenList(RevocationMethod):
    name = "hidden-list"
    group = "List Based Hidden"
    capabilities = MethodCapabilities(UpdateProperty.DYNAMIC, ProofProperty.UNIVERSAL)
    calling_home = True
    declared_interactions = LIST_INTERACTIONS
    access_gated = True
    artifact_embedded = True
    series_kind = "verification_query_bytes"
    scaling_class = "constant"

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> HiddenListState:
        return HiddenListState(issuer=issuer, records=StatusRecords())

    def on_issue(self, state: HiddenListState, credential: Credential, now: LogicalTime) -> AccessTokenArtifact:
        state.records.register(credential.id.value, credential.holder_id)
        artifact = AccessTokenArtifact(
            token_key=hmac_sha256(state.issuer.verifying_key, b"token-key", credential.id.value),
            credential_id=credential.id.value,
        )
        if credential.id.mode == "stable":
            state.grants[artifact.static_token()] = TokenGrant(
                credential.id.value, expected_subject=None, single_use=False
            )
        return artifact

    def revoke(self, state: HiddenListState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: HiddenListState, epoch: int) -> None:
        state.records.fold(epoch)

    def prove(self, artifact: AccessTokenArtifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        mode = credential.id.mode
        subject = presentation_subject(credential.id, alias_key, nonce)
        if mode == "stable":
            token = artifact.static_token()
            claimed = credential.id.value
        else:
            token = artifact.presentation_token(nonce)
            claimed = subject
            if issuer_channel is not None:  # grant access for exactly this presentation
                issuer_channel.query("grant-access", concat(frame(token), frame(credential.id.value), frame(subject)))
        fields = (
            ProofField("subject", subject),
            ProofField("access_token", token),
            ProofField("claimed_ref", claimed),
            body_field("credential", credential.to_bytes(), mode, alias_key, nonce),
        )
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=credential)

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential: Credential = proof.backing
        if not verify_signature(credential, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        request = concat(frame(proof.field("access_token")), frame(proof.field("claimed_ref")))
        response = ctx.channel.query("gated-status", request)
        queried = len(request) + len(response)
        if response == b"denied":
            return VerifyOutcome(False, issuer_contacted=True, bytes_queried=queried, reason="access_denied")
        revoked, _ = decode_status_answer(response)
        if revoked:
            return VerifyOutcome(False, issuer_contacted=True, bytes_queried=queried, reason="revoked")
        return VerifyOutcome(True, issuer_contacted=True, bytes_queried=queried)

    def handle_query(self, state: HiddenListState, endpoint: str, payload: bytes, now: LogicalTime, requester: str) -> bytes:
        reader = Reader(payload)
        if endpoint == "grant-access":
            token = reader.take()
            credential_id = reader.take()
            subject = reader.take()
            if credential_id not in state.records.issued:
                raise AccessDenied("unknown credential")
            state.grants[token] = TokenGrant(credential_id, expected_subject=subject, single_use=True)
            return b"ok"
        if endpoint != "gated-status":
            raise NotImplementedError(endpoint)
        token = reader.take()
        claimed = reader.take()
        grant = state.grants.get(token)
        if grant is None or grant.consumed:
            raise AccessDenied("no usable grant for token")
        expected = grant.expected_subject if grant.expected_subject is not None else grant.credential_id
        if claimed != expected:
            raise AccessDenied("token bound to a different credential")
        if grant.single_use:
            grant.consumed = True
        state.records.log_query(requester, grant.credential_id.hex(), now.epoch)
        return encode_status_answer(state.records.is_revoked(grant.credential_id), state.records.published_epoch)

    def reevaluate_retained(self, fields: dict[str, bytes], ctx: VerifyContext, now: LogicalTime) -> bool | None:
        token = fields.get("access_token")
        claimed = fields.get("claimed_ref")
        if token is None or claimed is None or ctx.channel is None:
            return None
        response = ctx.channel.query("gated-status", concat(frame(token), frame(claimed)))
        if response == b"denied":
            return None
        revoked, _ = decode_status_answer(response)
        return not revoked

    def state_bytes(self, state: HiddenListState) -> bytes:
        parts = [state.records.to_bytes()]
        for token in sorted(state.grants):
            grant = state.grants[token]
            parts.append(frame(token))
            parts.append(frame(grant.credential_id))
            parts.append(frame(b"\x01" if grant.consumed else b"\x00"))
        return concat(*parts)
