"""What a verifier retains from a presentation: exactly the bytes that
crossed the holder->verifier boundary, as named fields."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PresentationTranscript:
    verifier_id: str
    epoch: int
    method: str
    fields: tuple[tuple[str, bytes], ...]
    outcome_valid: bool
    holder_index: int  # harness bookkeeping for grouping; not presentation content

    def field(self, name: str) -> bytes | None:
        for field_name, data in self.fields:
            if field_name == name:
                return data
        return None

    def field_map(self) -> dict[str, bytes]:
        return dict(self.fields)

    def total_bytes(self) -> int:
        return sum(len(data) for _, data in self.fields)
