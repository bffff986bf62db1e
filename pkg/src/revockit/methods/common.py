"""Issuer-side status bookkeeping shared by all method states.

Revocations requested during an epoch stay pending until the next epoch
boundary, when ``fold`` publishes them; every method reads validity off the
published set so effectiveness semantics are uniform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..encoding import concat, encode_str, encode_u64, frame


@dataclass
class StatusRecords:
    issued: dict[bytes, str] = field(default_factory=dict)  # id value -> holder id
    order: list[bytes] = field(default_factory=list)
    pending: list[bytes] = field(default_factory=list)
    published: set[bytes] = field(default_factory=set)
    published_epoch: int = 0
    query_log: list[tuple[str, str, int]] = field(default_factory=list)

    def register(self, id_value: bytes, holder_id: str) -> None:
        self.issued[id_value] = holder_id
        self.order.append(id_value)

    def request_revocation(self, id_value: bytes) -> None:
        if id_value not in self.issued:
            raise KeyError("unknown credential")
        if id_value not in self.published and id_value not in self.pending:
            self.pending.append(id_value)

    def fold(self, epoch: int) -> list[bytes]:
        """Publish pending revocations; returns the newly published ids."""
        folded = list(self.pending)
        self.published.update(folded)
        self.pending.clear()
        self.published_epoch = epoch
        return folded

    def is_revoked(self, id_value: bytes) -> bool:
        return id_value in self.published

    def log_query(self, requester: str, reference: str, epoch: int) -> None:
        self.query_log.append((requester, reference, epoch))

    def to_bytes(self) -> bytes:
        parts = [encode_u64(self.published_epoch), encode_u64(len(self.order))]
        for id_value in self.order:
            parts.append(frame(id_value))
            parts.append(encode_str(self.issued[id_value]))
            parts.append(frame(b"\x01" if id_value in self.published else b"\x00"))
        return concat(*parts)
