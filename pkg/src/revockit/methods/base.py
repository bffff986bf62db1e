"""Common contract for the eight revocation method implementations.

Every method plugs the same surface: issuer-side state with revocations
folded in at epoch boundaries, a per-holder artifact, holder sync, proof
construction, and verification.  Anything that crosses a role boundary is
expressed as real bytes so the harness can meter it.

Presentation wire view.  A proof consists of named byte fields.  In
``stable`` id mode the fields carry the raw material.  In ``pairwise`` mode
the holder shows a presentation-scoped alias and size-preserving masked
bodies, modelling a presentation layer that reveals no stable tokens; only
material the mechanism itself forces into the open (a list lookup key, a
status-list position, an access token) stays unmasked.  Validity checks for
masked presentations are evaluated against the in-process backing material;
privacy probes see only the wire fields.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Protocol

from ..capabilities import MethodCapabilities
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential
from ..encoding import Reader, concat, encode_str, encode_u64, frame, mask_bytes
from ..identity import CredentialId
from ..roles import Phase, Role
from ..signing import IssuerKeypair, KeyRegistry


@dataclass
class MethodParams:
    capacity: int
    profile: str = "toy"
    id_mode: str = "stable"
    max_age: int = 1
    bloom_target_fpr: float = 0.01
    rsa_use_trapdoor: bool = False


@dataclass(frozen=True)
class ProofField:
    name: str
    data: bytes


@dataclass
class ValidityProof:
    method: str
    nonce: bytes
    epoch: int
    fields: tuple[ProofField, ...]
    backing: Any = None  # in-process material for masked presentations; never on the wire

    def wire_bytes(self) -> bytes:
        parts = [encode_str(self.method), frame(self.nonce), encode_u64(self.epoch)]
        for f in self.fields:
            parts.append(encode_str(f.name))
            parts.append(frame(f.data))
        return concat(*parts)

    def wire_size(self) -> int:
        return len(self.wire_bytes())

    def field(self, name: str) -> bytes:
        for f in self.fields:
            if f.name == name:
                return f.data
        raise KeyError(name)


@dataclass
class VerifyOutcome:
    valid: bool
    issuer_contacted: bool = False
    bytes_queried: int = 0
    reason: str = "ok"


class QueryChannel(Protocol):
    """Verifier/holder side of an issuer endpoint.  ``visible`` marks
    whether the issuer can observe and log the request (public-mirror
    downloads are metered but not issuer-visible)."""

    def query(self, endpoint: str, payload: bytes, visible: bool = True) -> bytes: ...


@dataclass
class VerifyContext:
    registry: KeyRegistry
    params: MethodParams
    channel: QueryChannel | None = None
    cache: dict = field(default_factory=dict)


def presentation_mask(raw: bytes, alias_key: bytes, nonce: bytes, label: str) -> bytes:
    return mask_bytes(raw, b"present:" + alias_key + nonce + label.encode())


def body_field(name: str, raw: bytes, mode: str, alias_key: bytes, nonce: bytes) -> ProofField:
    if mode == "stable":
        return ProofField(name, raw)
    return ProofField(name, presentation_mask(raw, alias_key, nonce, name))


# -- signed state statements (accumulator value / tree root + epoch) --------

def make_statement(keypair: IssuerKeypair, label: str, body: bytes, epoch: int) -> bytes:
    unsigned = concat(encode_str(label), encode_str(keypair.issuer_id), frame(body), encode_u64(epoch))
    return unsigned + frame(keypair.sign(unsigned))


def open_statement(blob: bytes, registry: KeyRegistry, expected_label: str, issuer_id: str):
    """Returns (body, epoch) when the statement is authentic, else None."""
    try:
        reader = Reader(blob)
        label = reader.take_str()
        signer = reader.take_str()
        body = reader.take()
        epoch = reader.take_u64()
        signature = reader.take()
    except ValueError:
        return None
    if label != expected_label or signer != issuer_id:
        return None
    unsigned = concat(encode_str(label), encode_str(signer), frame(body), encode_u64(epoch))
    if not registry.verify(signer, unsigned, signature):
        return None
    return body, epoch


# -- method base -------------------------------------------------------------

LIST_INTERACTIONS = {
    Phase.ISSUANCE: frozenset({Role.ISSUER}),
    Phase.REVOCATION: frozenset({Role.ISSUER}),
    Phase.VERIFICATION: frozenset({Role.ISSUER, Role.HOLDER, Role.VERIFIER}),
}

NON_LIST_INTERACTIONS = {
    Phase.ISSUANCE: frozenset({Role.ISSUER, Role.HOLDER}),
    Phase.REVOCATION: frozenset({Role.ISSUER, Role.HOLDER}),
    Phase.VERIFICATION: frozenset({Role.HOLDER, Role.VERIFIER}),
}


class RevocationMethod(ABC):
    name: str
    group: str
    capabilities: MethodCapabilities
    calling_home: bool
    declared_interactions: dict[Phase, frozenset[Role]]
    # classifier traits: can anyone conclusively evaluate validity from the
    # credential plus public data alone / is the lookup behind an access gate
    public_lookup: bool = False
    access_gated: bool = False
    # holder artifact rides inside the credential delivery (no extra contact)
    artifact_embedded: bool = False
    # verification consumes holder-presented validity state (vs a live query)
    presented_state: bool = False
    # characteristic scaling series and its declared growth class
    series_kind: str = "verification_query_bytes"
    scaling_class: str = "constant"

    def __init__(self, params: MethodParams):
        self.params = params

    # -- issuer lifecycle --
    @abstractmethod
    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> Any: ...

    @abstractmethod
    def on_issue(self, state: Any, credential: Credential, now: LogicalTime) -> Any: ...

    @abstractmethod
    def revoke(self, state: Any, credential_id: CredentialId, now: LogicalTime) -> None: ...

    @abstractmethod
    def publish(self, state: Any, epoch: int) -> None: ...

    # -- holder sync (None request = method has no holder-side refresh) --
    def sync_request(self, artifact: Any, now: LogicalTime) -> bytes | None:
        return None

    def handle_sync(self, state: Any, request: bytes, now: LogicalTime) -> bytes:
        raise NotImplementedError(f"{self.name} has no sync endpoint")

    def apply_sync(self, artifact: Any, response: bytes, now: LogicalTime) -> Any:
        return artifact

    # -- presentation --
    @abstractmethod
    def prove(
        self,
        artifact: Any,
        credential: Credential,
        alias_key: bytes,
        nonce: bytes,
        now: LogicalTime,
        issuer_channel: QueryChannel | None = None,
    ) -> ValidityProof: ...

    @abstractmethod
    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome: ...

    # -- issuer verification-time endpoints --
    def handle_query(self, state: Any, endpoint: str, payload: bytes, now: LogicalTime, requester: str) -> bytes:
        raise NotImplementedError(f"{self.name} has no endpoint {endpoint!r}")

    # -- probes --
    def artifact_current(self, state: Any, artifact: Any, credential_id: CredentialId) -> bool:
        """Does the artifact's content still match the published state
        (freshness aside)?  Drives the selective-update measurement."""
        return True

    def reevaluate_retained(
        self, fields: dict[str, bytes], ctx: VerifyContext, now: LogicalTime
    ) -> bool | None:
        """Verifier re-evaluates a past presentation at a different epoch
        without the holder.  None = cannot evaluate."""
        return None

    @abstractmethod
    def state_bytes(self, state: Any) -> bytes: ...


def fresh_enough(statement_epoch: int, now: LogicalTime, max_age: int) -> bool:
    return now.epoch - statement_epoch <= max_age


class LocalChannel:
    """Direct in-process channel to an issuer state, for library use and
    tests.  Gate refusals travel back as a literal ``denied`` response so
    byte accounting survives the refusal."""

    def __init__(self, method: "RevocationMethod", state: Any, requester: str = "local-verifier"):
        self.method = method
        self.state = state
        self.requester = requester
        self.now = LogicalTime(0)

    def query(self, endpoint: str, payload: bytes, visible: bool = True) -> bytes:
        from ..errors import AccessDenied

        try:
            return self.method.handle_query(self.state, endpoint, payload, self.now, self.requester)
        except AccessDenied:
            return b"denied"
