"""Brute-force ground-truth oracle and a random script driver.

The oracle never touches method internals: it keeps a plain revocation set
plus per-holder issue/sync epochs from the script events and applies the
published-at-epoch-boundary and freshness rules:

* live methods (the list family): valid iff the id is not in the published
  revocation set at verification time.
* anchored methods (witness/path + signed state): valid iff the holder
  synced at some epoch s strictly after its issuance epoch (the first
  boundary that contains it), was not published-revoked at s, and s is
  within the verifier's freshness window.
* refresh methods (re-issuance / linked companion): same, except the
  issuance itself counts as the first refresh.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from revockit.clock import LogicalTime
from revockit.credentials import issue_credential
from revockit.errors import MemberRevoked, Revoked
from revockit.identity import new_alias_key
from revockit.methods import MethodParams, VerifyContext, make_method
from revockit.methods.base import LocalChannel
from revockit.rng import derive_stream, random_bytes
from revockit.signing import KeyRegistry, make_issuer_keypair

FAMILY = {
    "simple-list": "live",
    "hidden-list": "live",
    "bit-list": "live",
    "bloom-list": "live",
    "rsa-accumulator": "anchored",
    "merkle-accumulator": "anchored",
    "credential-update": "refresh",
    "lvvc": "refresh",
}


@dataclass
class OracleState:
    family: str
    max_age: int
    issue_epoch: dict[int, int] = field(default_factory=dict)
    revoke_epoch: dict[int, int] = field(default_factory=dict)
    last_sync: dict[int, int] = field(default_factory=dict)
    denied: set[int] = field(default_factory=set)

    def published(self, slot: int, epoch: int) -> bool:
        r = self.revoke_epoch.get(slot)
        return r is not None and r < epoch

    def on_issue(self, slot: int, epoch: int) -> None:
        self.issue_epoch[slot] = epoch
        if self.family == "refresh":
            self.last_sync[slot] = epoch

    def on_revoke(self, slot: int, epoch: int) -> None:
        self.revoke_epoch[slot] = epoch

    def sync_should_succeed(self, slot: int, epoch: int) -> bool:
        return not self.published(slot, epoch)

    def on_sync(self, slot: int, epoch: int, succeeded: bool) -> None:
        if succeeded:
            self.last_sync[slot] = epoch
        else:
            self.denied.add(slot)

    def valid(self, slot: int, now: int) -> bool:
        if self.family == "live":
            return not self.published(slot, now)
        sync = self.last_sync.get(slot)
        if sync is None:
            return False
        if self.family == "anchored" and sync <= self.issue_epoch[slot]:
            return False
        return now - sync <= self.max_age


@dataclass
class ScriptEvent:
    kind: str  # issue | revoke | sync | verify | advance
    slot: int = -1


def generate_script(rng: random.Random, max_slots: int = 64, max_events: int = 200) -> list[ScriptEvent]:
    slots = rng.randint(1, max_slots)
    n_events = rng.randint(10, max_events)
    events: list[ScriptEvent] = []
    issued: list[int] = []
    unissued = list(range(slots))
    revoked: set[int] = set()
    for _ in range(n_events):
        roll = rng.random()
        if roll < 0.20 and unissued:
            slot = unissued.pop(rng.randrange(len(unissued)))
            issued.append(slot)
            events.append(ScriptEvent("issue", slot))
        elif roll < 0.30 and issued:
            candidates = [s for s in issued if s not in revoked]
            if not candidates:
                continue
            slot = rng.choice(candidates)
            revoked.add(slot)
            events.append(ScriptEvent("revoke", slot))
        elif roll < 0.45:
            events.append(ScriptEvent("advance"))
        elif roll < 0.70 and issued:
            events.append(ScriptEvent("sync", rng.choice(issued)))
        elif issued:
            events.append(ScriptEvent("verify", rng.choice(issued)))
    return events


@dataclass
class Mismatch:
    event_index: int
    slot: int
    epoch: int
    method_valid: bool
    oracle_valid: bool
    reason: str


def run_script(method_name: str, script_seed: int, max_age: int | None = None) -> list[Mismatch]:
    """Drives one random script and returns verify-outcome mismatches."""
    rng = derive_stream(script_seed, f"script:{method_name}")
    if max_age is None:
        max_age = rng.choice([0, 1, 2])
    script = generate_script(rng)

    registry = KeyRegistry("hmac-sha256")
    issuer = make_issuer_keypair("issuer-0", "hmac-sha256", rng)
    registry.register(issuer.issuer_id, issuer.verifying_key)
    params = MethodParams(capacity=64, profile="toy", max_age=max_age)
    method = make_method(method_name, params)
    state = method.setup(issuer, rng)
    channel = LocalChannel(method, state)
    ctx = VerifyContext(registry=registry, params=params, channel=channel)
    oracle = OracleState(FAMILY[method_name], max_age)
    alias_key = new_alias_key(rng)

    now = LogicalTime(0)
    credentials: dict[int, object] = {}
    artifacts: dict[int, object] = {}
    denied: set[int] = set()
    mismatches: list[Mismatch] = []

    for index, event in enumerate(script):
        if event.kind == "advance":
            now = now.next()
            channel.now = now
            method.publish(state, now.epoch)
            continue
        slot = event.slot
        if event.kind == "issue":
            cred = issue_credential(issuer, f"holder-{slot}", {"k": "v"}, now, rng)
            credentials[slot] = cred
            artifacts[slot] = method.on_issue(state, cred, now)
            oracle.on_issue(slot, now.epoch)
        elif event.kind == "revoke":
            if slot not in credentials:
                continue
            method.revoke(state, credentials[slot].id, now)
            oracle.on_revoke(slot, now.epoch)
        elif event.kind == "sync":
            if slot not in credentials or slot in denied:
                continue
            request = method.sync_request(artifacts[slot], now)
            if request is None:
                continue
            expected_ok = oracle.sync_should_succeed(slot, now.epoch)
            try:
                response = method.handle_sync(state, request, now)
                artifacts[slot] = method.apply_sync(artifacts[slot], response, now)
                succeeded = True
            except (MemberRevoked, Revoked):
                succeeded = False
                denied.add(slot)
            if succeeded != expected_ok:
                mismatches.append(Mismatch(index, slot, now.epoch, succeeded, expected_ok, "sync-denial"))
            oracle.on_sync(slot, now.epoch, succeeded)
        elif event.kind == "verify":
            if slot not in credentials:
                continue
            nonce = random_bytes(rng, 16)
            proof = method.prove(artifacts[slot], credentials[slot], alias_key, nonce, now, issuer_channel=channel)
            outcome = method.verify(proof, ctx, nonce, now)
            expected = oracle.valid(slot, now.epoch)
            if outcome.valid != expected:
                mismatches.append(Mismatch(index, slot, now.epoch, outcome.valid, expected, outcome.reason))
            if method_name in ("simple-list", "hidden-list") and not outcome.issuer_contacted:
                mismatches.append(Mismatch(index, slot, now.epoch, outcome.valid, expected, "missing-contact"))
            if FAMILY[method_name] in ("anchored", "refresh") and outcome.issuer_contacted:
                mismatches.append(Mismatch(index, slot, now.epoch, outcome.valid, expected, "calling-home"))
    return mismatches
