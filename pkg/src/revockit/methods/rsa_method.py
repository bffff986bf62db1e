"""RSA-accumulator method: membership witness plus an epoch-stamped signed
accumulator statement.

Verification is issuer-free: the verifier checks the statement signature,
its freshness window, the item->prime binding and the witness equation.
The price is holder-side upkeep -- every accumulator change strands every
witness, so holders replay the issuer's update records after each
revocation epoch, and the downloaded record volume grows with the
revocation rate and hence the population."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..capabilities import MethodCapabilities, ProofProperty, UpdateProperty
from ..clock import LogicalTime
from ..counters import OpCounter
from ..credentials import Credential, verify_signature
from ..encoding import Reader, concat, encode_int_fixed, encode_u64, frame
from ..errors import MemberRevoked
from ..identity import CredentialId, presentation_subject
from ..primes import hash_to_prime, profile_modulus_bits, profile_prime_bits
from ..rsa_acc import AccUpdate, RsaAccumulator, RsaWitness, apply_updates, verify_membership
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
    make_statement,
    open_statement,
)
from .common import StatusRecords

STATEMENT_LABEL = "accumulator-state"


def _int_frame(value: int) -> bytes:
    return encode_int_fixed(value, max(1, (value.bit_length() + 7) // 8))


@dataclass
class RsaMethodState:
    issuer: IssuerKeypair
    records: StatusRecords
    acc: RsaAccumulator
    statement: bytes = b""
    statement_epoch: int = 0
    statement_position: int = 0  # log length at the statement's boundary
    id_of_prime: dict[int, bytes] = field(default_factory=dict)


@dataclass
class WitnessArtifact:
    prime: int
    witness: RsaWitness
    statement: bytes = b""
    statement_epoch: int = -1

    def to_bytes(self) -> bytes:
        return concat(
            _int_frame(self.prime),
            _int_frame(self.witness.value),
            encode_u64(self.witness.as_of + 1),
            frame(self.statement),
        )


class RsaAccumulatorMethod(RevocationMethod):
    name = "rsa-accumulator"
    group = "Cryptographic Accumulators"
    capabilities = MethodCapabilities(UpdateProperty.DYNAMIC, ProofProperty.POSITIVE)
    calling_home = False
    declared_interactions = NON_LIST_INTERACTIONS
    presented_state = True
    series_kind = "holder_sync_bytes"
    scaling_class = "linear"

    def setup(self, issuer: IssuerKeypair, rng: random.Random, ops: OpCounter | None = None) -> RsaMethodState:
        acc = RsaAccumulator.generate(
            profile_modulus_bits(self.params.profile),
            profile_prime_bits(self.params.profile),
            rng,
            use_trapdoor=self.params.rsa_use_trapdoor,
            ops=ops,
        )
        state = RsaMethodState(issuer=issuer, records=StatusRecords(), acc=acc)
        self._refresh_statement(state, 0)
        return state

    def _refresh_statement(self, state: RsaMethodState, epoch: int) -> None:
        # statement body carries the public parameters too, so witnesses and
        # proofs can be checked from the statement alone
        body = concat(
            encode_int_fixed(state.acc.modulus, state.acc.value_width),
            encode_int_fixed(state.acc.value, state.acc.value_width),
        )
        state.statement = make_statement(state.issuer, STATEMENT_LABEL, body, epoch)
        state.statement_epoch = epoch
        state.statement_position = len(state.acc.log)

    def on_issue(self, state: RsaMethodState, credential: Credential, now: LogicalTime) -> WitnessArtifact:
        state.records.register(credential.id.value, credential.holder_id)
        witness = state.acc.add(credential.id.value)
        state.id_of_prime[witness.for_prime] = credential.id.value
        return WitnessArtifact(prime=witness.for_prime, witness=witness)

    def revoke(self, state: RsaMethodState, credential_id: CredentialId, now: LogicalTime) -> None:
        state.records.request_revocation(credential_id.value)

    def publish(self, state: RsaMethodState, epoch: int) -> None:
        for id_value in state.records.fold(epoch):
            state.acc.delete(id_value)
        self._refresh_statement(state, epoch)

    # -- holder sync: download update records since the witness position --

    def sync_request(self, artifact: WitnessArtifact, now: LogicalTime) -> bytes | None:
        return concat(_int_frame(artifact.prime), encode_u64(artifact.witness.as_of + 1))

    def handle_sync(self, state: RsaMethodState, request: bytes, now: LogicalTime) -> bytes:
        reader = Reader(request)
        prime = reader.take_int()
        position = reader.take_u64() - 1
        id_value = state.id_of_prime.get(prime)
        if id_value is not None and state.records.is_revoked(id_value):
            raise MemberRevoked(id_value.hex())
        # serve records only up to the statement's boundary so the repaired
        # witness lands exactly on the signed accumulator value
        updates = state.acc.log[position + 1 : state.statement_position]
        parts = [encode_u64(len(updates))]
        for record in updates:
            parts.append(frame(record.to_bytes(state.acc.value_width, state.acc.prime_width)))
        parts.append(frame(state.statement))
        return concat(*parts)

    def apply_sync(self, artifact: WitnessArtifact, response: bytes, now: LogicalTime) -> WitnessArtifact:
        reader = Reader(response)
        count = reader.take_u64()
        updates = [AccUpdate.read(Reader(reader.take())) for _ in range(count)]
        statement = reader.take()
        witness = artifact.witness
        if updates:
            witness = apply_updates(witness, updates, self._statement_modulus(statement))
        return WitnessArtifact(artifact.prime, witness, statement, now.epoch)

    @staticmethod
    def _statement_modulus(statement: bytes) -> int:
        reader = Reader(statement)
        reader.take_str()  # label
        reader.take_str()  # issuer
        body = Reader(reader.take())
        return body.take_int()

    # -- presentation --

    def prove(self, artifact: WitnessArtifact, credential, alias_key, nonce, now, issuer_channel=None) -> ValidityProof:
        mode = credential.id.mode
        witness_raw = _int_frame(artifact.witness.value)
        prime_raw = _int_frame(artifact.prime)
        fields = (
            ProofField("subject", presentation_subject(credential.id, alias_key, nonce)),
            body_field("member_prime", prime_raw, mode, alias_key, nonce),
            body_field("witness", witness_raw, mode, alias_key, nonce),
            body_field("acc_statement", artifact.statement, mode, alias_key, nonce),
            body_field("credential", credential.to_bytes(), mode, alias_key, nonce),
        )
        backing = (credential, artifact.prime, artifact.witness.value, artifact.statement)
        return ValidityProof(self.name, nonce, now.epoch, fields, backing=backing)

    def verify(self, proof: ValidityProof, ctx: VerifyContext, nonce: bytes, now: LogicalTime) -> VerifyOutcome:
        if proof.nonce != nonce:
            return VerifyOutcome(False, reason="nonce")
        credential, prime, witness_value, statement = proof.backing
        if not verify_signature(credential, ctx.registry):
            return VerifyOutcome(False, reason="signature")
        opened = open_statement(statement, ctx.registry, STATEMENT_LABEL, credential.issuer_id)
        if opened is None:
            return VerifyOutcome(False, reason="stale")
        body, epoch = opened
        if not fresh_enough(epoch, now, ctx.params.max_age):
            return VerifyOutcome(False, reason="stale")
        reader = Reader(body)
        modulus = reader.take_int()
        acc_value = reader.take_int()
        if prime != hash_to_prime(credential.id.value, profile_prime_bits(ctx.params.profile)):
            return VerifyOutcome(False, reason="binding")
        if not verify_membership(witness_value, prime, acc_value, modulus):
            return VerifyOutcome(False, reason="revoked")
        return VerifyOutcome(True)

    # -- probes --

    def artifact_current(self, state: RsaMethodState, artifact: WitnessArtifact, credential_id: CredentialId) -> bool:
        return verify_membership(artifact.witness.value, artifact.prime, state.acc.value, state.acc.modulus)

    def state_bytes(self, state: RsaMethodState) -> bytes:
        return concat(state.records.to_bytes(), state.acc.state_bytes(), frame(state.statement))
