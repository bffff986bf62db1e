"""Deterministic single-threaded scenario runner.

Epoch discipline: within each epoch the order is syncs, then verifications,
then revocation requests; the boundary then folds pending revocations into
the published state.  Every cross-role transfer goes through the ledger;
with ``audit`` enabled, actor state hashes are checked around every event
so no state can change without a ledger-visible cause.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from ..clock import LogicalClock
from ..counters import OpCounter
from ..credentials import Credential, issue_credential
from ..encoding import sha256
from ..errors import MemberRevoked, Revoked
from ..methods import MethodParams, RevocationMethod, make_method
from ..methods.base import LocalChannel
from ..privacy.transcripts import PresentationTranscript
from ..rng import derive_stream, random_bytes
from ..roles import Phase, Role
from ..signing import IssuerKeypair, KeyRegistry, make_issuer_keypair
from .ledger import InteractionLedger
from .metrics import Metrics
from .scenario import Scenario

DENIAL = b"denied"
ISSUER_ID = "issuer-0"


@dataclass
class HolderActor:
    index: int
    holder_id: str
    credential: Credential
    artifact: Any
    alias_key: bytes
    last_sync_epoch: int = -1
    refresh_denied: bool = False
    revoked_at: int | None = None

    def state_digest(self) -> bytes:
        return sha256(
            self.credential.to_bytes(),
            self.artifact.to_bytes(),
            self.last_sync_epoch.to_bytes(8, "big", signed=True),
            b"\x01" if self.refresh_denied else b"\x00",
        )

    def storage_bytes(self) -> int:
        return len(self.credential.to_bytes()) + len(self.artifact.to_bytes())


@dataclass
class VerifierActor:
    verifier_id: str
    cache: dict = field(default_factory=dict)
    transcripts: list[PresentationTranscript] = field(default_factory=list)

    def state_digest(self) -> bytes:
        parts = [repr(sorted(map(str, self.cache.keys()))).encode()]
        for t in self.transcripts:
            for name, data in t.fields:
                parts.append(name.encode())
                parts.append(data)
        return sha256(*parts)

    def storage_bytes(self) -> int:
        cached = 0
        for value in self.cache.values():
            cached += len(value.to_bytes()) if hasattr(value, "to_bytes") else 0
        return cached + sum(t.total_bytes() for t in self.transcripts)


class _Channel:
    """Requester-side channel that routes to the issuer state and meters
    both legs in the ledger."""

    def __init__(self, runner: "_Run", from_role: Role, from_id: str, phase: Phase):
        self.runner = runner
        self.from_role = from_role
        self.from_id = from_id
        self.phase = phase

    def query(self, endpoint: str, payload: bytes, visible: bool = True) -> bytes:
        run = self.runner
        run.ledger.record(
            run.clock.now.epoch, self.phase, self.from_role, Role.ISSUER,
            self.from_id, ISSUER_ID, "method", endpoint, len(payload), issuer_visible=visible,
        )
        from ..errors import AccessDenied

        try:
            response = run.method.handle_query(run.state, endpoint, payload, run.clock.now, self.from_id)
        except AccessDenied:
            response = DENIAL
        run.ledger.record(
            run.clock.now.epoch, self.phase, Role.ISSUER, self.from_role,
            ISSUER_ID, self.from_id, "method", endpoint + "-response", len(response), issuer_visible=visible,
        )
        return response


@dataclass
class ScenarioResult:
    scenario: Scenario
    ledger: InteractionLedger
    metrics: Metrics
    timings: dict[str, float]
    method: RevocationMethod
    state: Any
    registry: KeyRegistry
    issuer: IssuerKeypair
    holders: list[HolderActor]
    verifiers: list[VerifierActor]
    outcomes: list[dict]

    def transcripts_for_holder(self, index: int) -> list[PresentationTranscript]:
        out = []
        for verifier in self.verifiers:
            out.extend(t for t in verifier.transcripts if t.holder_index == index)
        return out

    def probe_channel(self) -> LocalChannel:
        """Out-of-band channel for post-run probes; nothing is metered."""
        channel = LocalChannel(self.method, self.state, requester="probe")
        channel.now = self.clock_now
        return channel

    @property
    def clock_now(self):
        from ..clock import LogicalTime

        return LogicalTime(self.scenario.epochs)


class _Run:
    def __init__(self, scenario: Scenario):
        scenario.validate()
        self.scenario = scenario
        self.ops = OpCounter()
        self.params = MethodParams(
            capacity=scenario.population,
            profile=scenario.profile,
            id_mode=scenario.id_mode,
            max_age=scenario.max_age,
            bloom_target_fpr=scenario.bloom_target_fpr,
            rsa_use_trapdoor=scenario.rsa_use_trapdoor,
        )
        self.method = make_method(scenario.method, self.params)
        self.registry = KeyRegistry(scenario.scheme_name)
        self.rng_setup = derive_stream(scenario.seed, "setup")
        self.rng_ids = derive_stream(scenario.seed, "ids")
        self.rng_claims = derive_stream(scenario.seed, "claims")
        self.rng_schedule = derive_stream(scenario.seed, "schedule")
        self.rng_nonces = derive_stream(scenario.seed, "nonces")
        self.issuer = make_issuer_keypair(ISSUER_ID, scenario.scheme_name, self.rng_setup)
        self.registry.register(self.issuer.issuer_id, self.issuer.verifying_key)
        self.state = self.method.setup(self.issuer, self.rng_setup, self.ops)
        self.clock = LogicalClock(0)
        self.ledger = InteractionLedger(scenario.seed)
        self.holders: list[HolderActor] = []
        self.verifiers = [VerifierActor(f"verifier-{i}") for i in range(scenario.n_verifiers)]
        self.outcomes: list[dict] = []
        self.timings: dict[str, float] = defaultdict(float)
        self._audit_baseline: dict[str, bytes] | None = None

    # -- audit ---------------------------------------------------------------

    def _digests(self) -> dict[str, bytes]:
        out = {ISSUER_ID: sha256(self.method.state_bytes(self.state))}
        for holder in self.holders:
            out[holder.holder_id] = holder.state_digest()
        for verifier in self.verifiers:
            out[verifier.verifier_id] = verifier.state_digest()
        return out

    def _audit_begin(self) -> dict[str, bytes]:
        """No actor state may drift between ledgered events."""
        current = self._digests()
        if self._audit_baseline is not None:
            for actor_id, digest in current.items():
                if self._audit_baseline.get(actor_id, digest) != digest:
                    raise AssertionError(f"actor {actor_id} changed state outside a ledgered event")
        return current

    def _audit_end(self, participants: set[str], before: dict[str, bytes]) -> None:
        after = self._digests()
        for actor_id, digest in after.items():
            if actor_id not in participants and before.get(actor_id) != digest:
                raise AssertionError(f"actor {actor_id} changed state outside a ledgered event")
        self._audit_baseline = after

    # -- schedule resolution ---------------------------------------------------

    def _resolve_revocations(self) -> dict[int, list[int]]:
        scenario = self.scenario
        protected = set(scenario.tracked_holders) if scenario.protect_tracked else set()
        remaining = [i for i in range(scenario.population) if i not in protected]
        out: dict[int, list[int]] = defaultdict(list)
        for epoch, holder in scenario.revoke_holders:
            out[epoch].append(holder)
            if holder in remaining:
                remaining.remove(holder)
        for epoch, count in scenario.resolved_revocations():
            count = min(count, len(remaining))
            picks = self.rng_schedule.sample(remaining, count) if count else []
            for p in picks:
                remaining.remove(p)
            out[epoch].extend(sorted(picks))
        return out

    def _resolve_verifications(self) -> dict[int, list[tuple[int, int]]]:
        scenario = self.scenario
        out: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for epoch, count in scenario.verifications:
            for _ in range(count):
                holder = self.rng_schedule.randrange(scenario.population)
                verifier = self.rng_schedule.randrange(scenario.n_verifiers)
                out[epoch].append((holder, verifier))
        for epoch, holder, verifier in scenario.presentations:
            out[epoch].append((holder, verifier))
        return out

    # -- events ------------------------------------------------------------

    def _issue_all(self) -> None:
        scenario = self.scenario
        now = self.clock.now
        started = time.perf_counter()
        for i in range(scenario.population):
            claims = {
                f"claim_{j:02d}": random_bytes(self.rng_claims, scenario.claim_value_len).hex()[: scenario.claim_value_len]
                for j in range(scenario.claims_per_credential)
            }
            holder_id = f"holder-{i}"
            credential = issue_credential(self.issuer, holder_id, claims, now, self.rng_ids, scenario.id_mode)
            self.ops.sign += 1
            self.ledger.record(
                0, Phase.ISSUANCE, Role.ISSUER, Role.HOLDER, ISSUER_ID, holder_id,
                "baseline", "credential", len(credential.to_bytes()),
            )
            artifact = self.method.on_issue(self.state, credential, now)
            self.ledger.record(
                0, Phase.ISSUANCE, Role.ISSUER, Role.ISSUER, ISSUER_ID, ISSUER_ID,
                "internal", "register", 0,
            )
            if not self.method.artifact_embedded:
                self.ledger.record(
                    0, Phase.ISSUANCE, Role.ISSUER, Role.HOLDER, ISSUER_ID, holder_id,
                    "method", "artifact", len(artifact.to_bytes()),
                )
            alias_key = random_bytes(self.rng_ids, 32)
            self.holders.append(HolderActor(i, holder_id, credential, artifact, alias_key))
        self.timings["issue"] += time.perf_counter() - started

    def _sync_targets(self) -> list[int]:
        scenario = self.scenario
        if scenario.sync_policy == "none":
            return []
        if scenario.sync_policy == "tracked":
            return list(scenario.tracked_holders)
        return list(range(scenario.population))

    def _sync_one(self, index: int) -> None:
        holder = self.holders[index]
        if holder.refresh_denied:
            return
        now = self.clock.now
        request = self.method.sync_request(holder.artifact, now)
        if request is None:
            return
        phase = Phase.ISSUANCE if now.epoch == 0 else Phase.REVOCATION
        before = self._audit_begin() if self.scenario.audit else None
        self.ledger.record(
            now.epoch, phase, Role.HOLDER, Role.ISSUER, holder.holder_id, ISSUER_ID,
            "method", "sync-request", len(request),
        )
        started = time.perf_counter()
        try:
            response = self.method.handle_sync(self.state, request, now)
            self.ledger.record(
                now.epoch, phase, Role.ISSUER, Role.HOLDER, ISSUER_ID, holder.holder_id,
                "method", "sync-response", len(response),
            )
            holder.artifact = self.method.apply_sync(holder.artifact, response, now)
            holder.last_sync_epoch = now.epoch
        except (MemberRevoked, Revoked):
            self.ledger.record(
                now.epoch, phase, Role.ISSUER, Role.HOLDER, ISSUER_ID, holder.holder_id,
                "method", "sync-denied", len(DENIAL),
            )
            holder.refresh_denied = True
        self.timings["sync"] += time.perf_counter() - started
        if before is not None:
            self._audit_end({ISSUER_ID, holder.holder_id}, before)

    def _verify_one(self, holder_index: int, verifier_index: int) -> None:
        holder = self.holders[holder_index]
        verifier = self.verifiers[verifier_index]
        now = self.clock.now
        nonce = random_bytes(self.rng_nonces, 16)
        before = self._audit_begin() if self.scenario.audit else None
        self.ledger.record(
            now.epoch, Phase.VERIFICATION, Role.VERIFIER, Role.HOLDER,
            verifier.verifier_id, holder.holder_id, "method", "present-request", len(nonce),
        )
        holder_channel = _Channel(self, Role.HOLDER, holder.holder_id, Phase.VERIFICATION)
        started = time.perf_counter()
        proof = self.method.prove(
            holder.artifact, holder.credential, holder.alias_key, nonce, now, issuer_channel=holder_channel
        )
        self.timings["prove"] += time.perf_counter() - started
        self.ledger.record(
            now.epoch, Phase.VERIFICATION, Role.HOLDER, Role.VERIFIER,
            holder.holder_id, verifier.verifier_id, "method", "presentation", proof.wire_size(),
        )
        verifier_channel = _Channel(self, Role.VERIFIER, verifier.verifier_id, Phase.VERIFICATION)
        from ..methods import VerifyContext

        ctx = VerifyContext(registry=self.registry, params=self.params, channel=verifier_channel, cache=verifier.cache)
        started = time.perf_counter()
        outcome = self.method.verify(proof, ctx, nonce, now)
        self.timings["verify"] += time.perf_counter() - started
        self.ops.sig_verify += 1
        verifier.transcripts.append(
            PresentationTranscript(
                verifier_id=verifier.verifier_id,
                epoch=now.epoch,
                method=self.method.name,
                fields=tuple((f.name, f.data) for f in proof.fields),
                outcome_valid=outcome.valid,
                holder_index=holder_index,
            )
        )
        self.outcomes.append(
            {
                "epoch": now.epoch,
                "holder": holder_index,
                "verifier": verifier_index,
                "valid": outcome.valid,
                "reason": outcome.reason,
                "issuer_contacted": outcome.issuer_contacted,
                "bytes_queried": outcome.bytes_queried,
            }
        )
        if before is not None:
            self._audit_end({ISSUER_ID, holder.holder_id, verifier.verifier_id}, before)

    def _revoke_one(self, holder_index: int) -> None:
        holder = self.holders[holder_index]
        now = self.clock.now
        before = self._audit_begin() if self.scenario.audit else None
        started = time.perf_counter()
        self.method.revoke(self.state, holder.credential.id, now)
        self.timings["revoke"] += time.perf_counter() - started
        holder.revoked_at = now.epoch
        self.ledger.record(
            now.epoch, Phase.REVOCATION, Role.ISSUER, Role.ISSUER, ISSUER_ID, ISSUER_ID,
            "internal", "revoke", 0,
        )
        if before is not None:
            # revoked_at bookkeeping lives in the harness, not holder state
            self._audit_end({ISSUER_ID, holder.holder_id}, before)

    def _publish(self) -> None:
        now = self.clock.now
        before = self._audit_begin() if self.scenario.audit else None
        started = time.perf_counter()
        self.method.publish(self.state, now.epoch)
        self.timings["publish"] += time.perf_counter() - started
        self.ledger.record(
            now.epoch, Phase.REVOCATION, Role.ISSUER, Role.ISSUER, ISSUER_ID, ISSUER_ID,
            "internal", "publish", 0,
        )
        if before is not None:
            self._audit_end({ISSUER_ID}, before)

    # -- main loop -----------------------------------------------------------

    def run(self) -> ScenarioResult:
        revocations = self._resolve_revocations()
        verifications = self._resolve_verifications()
        self._issue_all()
        for epoch in range(self.scenario.epochs):
            for index in self._sync_targets():
                self._sync_one(index)
            for holder_index, verifier_index in verifications.get(epoch, []):
                self._verify_one(holder_index, verifier_index)
            for holder_index in revocations.get(epoch, []):
                self._revoke_one(holder_index)
            self.clock.tick()
            self._publish()
        metrics = self._metrics()
        return ScenarioResult(
            scenario=self.scenario,
            ledger=self.ledger,
            metrics=metrics,
            timings=dict(sorted(self.timings.items())),
            method=self.method,
            state=self.state,
            registry=self.registry,
            issuer=self.issuer,
            holders=self.holders,
            verifiers=self.verifiers,
            outcomes=self.outcomes,
        )

    # -- metrics -------------------------------------------------------------

    def _metrics(self) -> Metrics:
        scenario = self.scenario
        ledger = self.ledger
        interaction_counts = {p.value: 0 for p in Phase}
        internal_counts = {p.value: 0 for p in Phase}
        for r in ledger.records:
            if r.from_role == r.to_role:
                internal_counts[r.phase] += 1
            else:
                interaction_counts[r.phase] += 1

        sync_request_total = 0
        sync_response_total = 0
        sync_denied = 0
        response_sizes: set[int] = set()
        tracked = {f"holder-{i}" for i in scenario.tracked_holders}
        per_tracked: dict[str, int] = {h: 0 for h in sorted(tracked)}
        presentation_bytes = 0
        presentations = 0
        for r in ledger.records:
            if r.channel == "sync-request":
                sync_request_total += r.payload_bytes
            elif r.channel == "sync-response":
                sync_response_total += r.payload_bytes
                response_sizes.add(r.payload_bytes)
                if r.to_id in tracked and r.phase == Phase.REVOCATION.value:
                    per_tracked[r.to_id] += r.payload_bytes
            elif r.channel == "sync-denied":
                sync_denied += 1
                if r.to_id in tracked and r.phase == Phase.REVOCATION.value:
                    per_tracked[r.to_id] += r.payload_bytes
            elif r.channel == "presentation":
                presentation_bytes += r.payload_bytes
                presentations += 1

        valid = sum(1 for o in self.outcomes if o["valid"])
        reasons: dict[str, int] = {}
        for o in self.outcomes:
            if not o["valid"]:
                reasons[o["reason"]] = reasons.get(o["reason"], 0) + 1

        holder_storage = [h.storage_bytes() for h in self.holders]
        metrics = Metrics(
            metadata={
                "method": self.method.name,
                "group": self.method.group,
                "population": scenario.population,
                "epochs": scenario.epochs,
                "seed": scenario.seed,
                "profile": scenario.profile,
                "id_mode": scenario.id_mode,
                "scheme": scenario.scheme_name,
                "max_age": scenario.max_age,
                "capabilities": self.method.capabilities.as_dict(),
            },
            interaction_counts=interaction_counts,
            internal_counts=internal_counts,
            bytes_by_phase=ledger.bytes_by_phase(),
            total_bytes=ledger.total_bytes(),
            storage={
                "issuer_bytes": len(self.method.state_bytes(self.state)),
                "holder_total_bytes": sum(holder_storage),
                "holder_mean_bytes": round(sum(holder_storage) / len(holder_storage), 3) if holder_storage else 0,
                "holder_max_bytes": max(holder_storage, default=0),
                "verifier_total_bytes": sum(v.storage_bytes() for v in self.verifiers),
            },
            sync={
                "request_bytes": sync_request_total,
                "response_bytes": sync_response_total,
                "denied_count": sync_denied,
                "response_sizes": sorted(response_sizes),
                "tracked_download_bytes": per_tracked,
            },
            verification={
                "presentations": presentations,
                "presentation_bytes": presentation_bytes,
                "queried_bytes": sum(o["bytes_queried"] for o in self.outcomes),
                "issuer_contacts": sum(1 for o in self.outcomes if o["issuer_contacted"]),
            },
            artifact_sizes=sorted({len(h.artifact.to_bytes()) for h in self.holders}),
            outcomes={"valid": valid, "invalid": len(self.outcomes) - valid, "invalid_reasons": reasons},
            ops=self.ops.as_dict(),
        )
        return metrics


def run_scenario(scenario: Scenario) -> ScenarioResult:
    """Run one scenario to completion.  Deterministic for a fixed config."""
    return _Run(scenario).run()
