"""Append-only record of every cross-role contact and internal process step.

Records with ``from_role == to_role`` mark issuer-internal acts (register,
revoke, publish) so phase participation can be read off the ledger.
``issuer_visible`` distinguishes direct issuer endpoints from public-mirror
downloads the issuer cannot observe.  Replaying a scenario with the same
seed yields a byte-identical CSV export.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable

from ..roles import Phase, Role

CSV_COLUMNS = [
    "seq",
    "epoch",
    "phase",
    "from_role",
    "to_role",
    "from_id",
    "to_id",
    "kind",
    "channel",
    "payload_bytes",
    "issuer_visible",
]

REDACTED_COLUMNS = [
    "seq",
    "epoch",
    "phase",
    "from_role",
    "to_role",
    "kind",
    "payload_bytes",
    "issuer_visible",
]


@dataclass(frozen=True)
class LedgerRecord:
    seq: int
    epoch: int
    phase: str
    from_role: str
    to_role: str
    from_id: str
    to_id: str
    kind: str  # baseline | method | internal
    channel: str
    payload_bytes: int
    issuer_visible: bool

    def row(self, columns: list[str]) -> list[str]:
        data = asdict(self)
        return [str(int(v)) if isinstance(v, bool) else str(v) for v in (data[c] for c in columns)]


class InteractionLedger:
    def __init__(self, scenario_seed: int):
        self.scenario_seed = scenario_seed
        self.records: list[LedgerRecord] = []

    def record(
        self,
        epoch: int,
        phase: Phase,
        from_role: Role,
        to_role: Role,
        from_id: str,
        to_id: str,
        kind: str,
        channel: str,
        payload_bytes: int,
        issuer_visible: bool = True,
    ) -> LedgerRecord:
        rec = LedgerRecord(
            seq=len(self.records),
            epoch=epoch,
            phase=phase.value,
            from_role=from_role.value,
            to_role=to_role.value,
            from_id=from_id,
            to_id=to_id,
            kind=kind,
            channel=channel,
            payload_bytes=payload_bytes,
            issuer_visible=issuer_visible,
        )
        self.records.append(rec)
        return rec

    # -- views -------------------------------------------------------------

    def total_bytes(self) -> int:
        return sum(r.payload_bytes for r in self.records)

    def bytes_by_phase(self) -> dict[str, int]:
        out = {p.value: 0 for p in Phase}
        for r in self.records:
            out[r.phase] += r.payload_bytes
        return out

    def messages(self) -> list[LedgerRecord]:
        """Cross-role contacts only (internal steps excluded)."""
        return [r for r in self.records if r.from_role != r.to_role]

    def issuer_view(self) -> list[LedgerRecord]:
        """Events the issuer can observe: traffic touching it, minus
        public-mirror downloads."""
        issuer = Role.ISSUER.value
        return [
            r
            for r in self.records
            if r.issuer_visible and (r.to_role == issuer or r.from_role == issuer)
        ]

    def phase_roles(self, kinds: Iterable[str] = ("method", "internal")) -> dict[str, set[str]]:
        wanted = set(kinds)
        out: dict[str, set[str]] = {p.value: set() for p in Phase}
        for r in self.records:
            if r.kind in wanted:
                out[r.phase].update((r.from_role, r.to_role))
        return out

    # -- exports -----------------------------------------------------------

    def to_csv(self, redacted: bool = False) -> str:
        columns = REDACTED_COLUMNS if redacted else CSV_COLUMNS
        lines = [",".join(columns)]
        for r in self.records:
            lines.append(",".join(r.row(columns)))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": 1,
                "scenario_seed": self.scenario_seed,
                "records": [asdict(r) for r in self.records],
            },
            indent=None,
            separators=(",", ":"),
        )

    def redacted(self) -> "InteractionLedger":
        """Probe-observable copy: actor identities stripped."""
        copy = InteractionLedger(self.scenario_seed)
        for r in self.records:
            copy.records.append(
                LedgerRecord(
                    r.seq, r.epoch, r.phase, r.from_role, r.to_role, "", "", r.kind, "", r.payload_bytes, r.issuer_visible
                )
            )
        return copy
