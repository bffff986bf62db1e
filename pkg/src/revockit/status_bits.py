"""Bit-array status list indexed by issuance ordinal.

Serialized size is ceil(capacity/8) bytes plus a fixed 28-byte header
(capacity and epoch framed, plus the bit-body frame) -- independent of how
many bits are set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoding import Reader, concat, encode_u64, frame
from .errors import OutOfRange

HEADER_BYTES = 28  # two framed u64 fields + bit-body length prefix


@dataclass
class StatusBitArray:
    capacity: int
    epoch: int = 0
    bits: bytearray = field(default_factory=bytearray)

    def __post_init__(self):
        if not self.bits:
            self.bits = bytearray((self.capacity + 7) // 8)

    def _check(self, ordinal: int) -> None:
        if not 0 <= ordinal < self.capacity:
            raise OutOfRange(f"ordinal {ordinal} outside capacity {self.capacity}")

    def set(self, ordinal: int, revoked: bool) -> None:
        self._check(ordinal)
        if revoked:
            self.bits[ordinal >> 3] |= 1 << (ordinal & 7)
        else:
            self.bits[ordinal >> 3] &= ~(1 << (ordinal & 7))

    def get(self, ordinal: int) -> bool:
        self._check(ordinal)
        return bool(self.bits[ordinal >> 3] & (1 << (ordinal & 7)))

    def copy(self, epoch: int) -> "StatusBitArray":
        return StatusBitArray(self.capacity, epoch, bytearray(self.bits))

    def to_bytes(self) -> bytes:
        return concat(encode_u64(self.capacity), encode_u64(self.epoch), frame(bytes(self.bits)))

    @classmethod
    def from_bytes(cls, data: bytes) -> "StatusBitArray":
        reader = Reader(data)
        capacity = reader.take_u64()
        epoch = reader.take_u64()
        bits = bytearray(reader.take())
        return cls(capacity, epoch, bits)
