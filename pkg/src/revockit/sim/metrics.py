"""Metrics derived from the interaction ledger and end-of-run state sizes.

Everything serialized here is reproducible for a fixed seed; wall-clock
timings are reported separately by the runner precisely so this document
stays byte identical across replays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Metrics:
    metadata: dict = field(default_factory=dict)
    interaction_counts: dict = field(default_factory=dict)
    internal_counts: dict = field(default_factory=dict)
    bytes_by_phase: dict = field(default_factory=dict)
    total_bytes: int = 0
    storage: dict = field(default_factory=dict)
    sync: dict = field(default_factory=dict)
    verification: dict = field(default_factory=dict)
    artifact_sizes: list = field(default_factory=list)
    outcomes: dict = field(default_factory=dict)
    ops: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "schema_version": 1,
            "metadata": self.metadata,
            "interaction_counts": self.interaction_counts,
            "internal_counts": self.internal_counts,
            "bytes_by_phase": self.bytes_by_phase,
            "total_bytes": self.total_bytes,
            "storage": self.storage,
            "sync": self.sync,
            "verification": self.verification,
            "artifact_sizes": self.artifact_sizes,
            "outcomes": self.outcomes,
            "ops": self.ops,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)
