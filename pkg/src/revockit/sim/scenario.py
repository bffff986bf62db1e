"""Scenario configuration: one struct fully determines a run.

Schedules are lists of ``[epoch, count]`` pairs; ``revocation_fraction``
instead revokes ``floor(fraction * population)`` holders at every epoch
from 1 on.  ``sync_policy`` is ``every-epoch`` (all holders refresh each
epoch), ``tracked`` (only ``tracked_holders`` refresh; used by scaling
sweeps so measurements stay per-holder), or ``none``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..errors import ConfigError
from ..methods import METHOD_NAMES

SYNC_POLICIES = ("every-epoch", "tracked", "none")
PROFILES = ("toy", "full")
ID_MODES = ("stable", "pairwise")


@dataclass
class Scenario:
    method: str
    population: int
    epochs: int
    seed: int = 0
    profile: str = "toy"
    id_mode: str = "stable"
    max_age: int = 1
    claims_per_credential: int = 3
    claim_value_len: int = 8
    revocations: list[list[int]] = field(default_factory=list)  # [epoch, count]
    revocation_fraction: float | None = None
    revoke_holders: list[list[int]] = field(default_factory=list)  # [epoch, holder] explicit targets
    verifications: list[list[int]] = field(default_factory=list)  # [epoch, count]
    presentations: list[list[int]] = field(default_factory=list)  # [epoch, holder, verifier]
    n_verifiers: int = 1
    sync_policy: str = "every-epoch"
    tracked_holders: list[int] = field(default_factory=list)
    protect_tracked: bool = True
    audit: bool = False
    scheme: str | None = None  # None: hmac-sha256 for toy, ed25519 for full
    bloom_target_fpr: float = 0.01
    rsa_use_trapdoor: bool = False

    def validate(self) -> None:
        if self.method not in METHOD_NAMES:
            raise ConfigError(f"unknown method {self.method!r}")
        if self.population < 1:
            raise ConfigError("population must be >= 1")
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if self.profile not in PROFILES:
            raise ConfigError(f"profile must be one of {PROFILES}")
        if self.id_mode not in ID_MODES:
            raise ConfigError(f"id_mode must be one of {ID_MODES}")
        if self.max_age < 0:
            raise ConfigError("max_age must be >= 0")
        if self.sync_policy not in SYNC_POLICIES:
            raise ConfigError(f"sync_policy must be one of {SYNC_POLICIES}")
        if self.revocation_fraction is not None and not 0 <= self.revocation_fraction <= 1:
            raise ConfigError("revocation_fraction must be in [0, 1]")
        if self.revocation_fraction is not None and self.revocations:
            raise ConfigError("give either revocations or revocation_fraction, not both")
        for epoch, count in list(self.revocations) + list(self.verifications):
            if not 0 <= epoch < self.epochs:
                raise ConfigError(f"scheduled epoch {epoch} outside [0, {self.epochs})")
            if count < 0:
                raise ConfigError("schedule counts must be >= 0")
        total_revoked = sum(c for _, c in self.revocations)
        if total_revoked > self.population:
            raise ConfigError("cannot revoke more credentials than issued")
        for entry in self.presentations:
            if len(entry) != 3:
                raise ConfigError("presentations entries are [epoch, holder, verifier]")
            epoch, holder, verifier = entry
            if not 0 <= epoch < self.epochs:
                raise ConfigError(f"presentation epoch {epoch} outside [0, {self.epochs})")
            if not 0 <= holder < self.population:
                raise ConfigError("presentation holder index outside population")
            if not 0 <= verifier < self.n_verifiers:
                raise ConfigError("presentation verifier index outside n_verifiers")
        for entry in self.revoke_holders:
            if len(entry) != 2:
                raise ConfigError("revoke_holders entries are [epoch, holder]")
            epoch, holder = entry
            if not 0 <= epoch < self.epochs:
                raise ConfigError(f"revocation epoch {epoch} outside [0, {self.epochs})")
            if not 0 <= holder < self.population:
                raise ConfigError("revocation holder index outside population")
        if any(not 0 <= h < self.population for h in self.tracked_holders):
            raise ConfigError("tracked holder index outside population")
        if self.sync_policy == "tracked" and not self.tracked_holders:
            raise ConfigError("tracked sync policy needs tracked_holders")
        if self.n_verifiers < 1:
            raise ConfigError("n_verifiers must be >= 1")

    @property
    def scheme_name(self) -> str:
        if self.scheme is not None:
            return self.scheme
        return "hmac-sha256" if self.profile == "toy" else "ed25519"

    def resolved_revocations(self) -> list[list[int]]:
        if self.revocation_fraction is None:
            return [list(x) for x in self.revocations]
        per_epoch = int(self.revocation_fraction * self.population)
        return [[epoch, per_epoch] for epoch in range(1, self.epochs)]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown scenario fields: {sorted(unknown)}")
        try:
            scenario = cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
        scenario.validate()
        return scenario

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("scenario config must be a JSON object")
        return cls.from_dict(data)
