"""Bloom filter used as a compressed revocation blocklist.

Double hashing (two SHA-256 derived streams) yields the k indexes.  Inserted
items always answer "maybe"; the false-positive rate for absent items tracks
the standard approximation (1 - e^(-kn/m))^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .counters import OpCounter
from .encoding import Reader, concat, encode_u64, frame, sha256


@dataclass
class BloomFilter:
    bit_count: int
    hash_count: int
    inserted_count: int = 0
    bits: bytearray = field(default_factory=bytearray)
    ops: OpCounter | None = None

    def __post_init__(self):
        if self.bit_count <= 0 or self.hash_count <= 0:
            raise ValueError("bit_count and hash_count must be positive")
        if not self.bits:
            self.bits = bytearray((self.bit_count + 7) // 8)

    def _indexes(self, item: bytes):
        if self.ops is not None:
            self.ops.hash += 2
        h1 = int.from_bytes(sha256(b"\x00", item), "big")
        h2 = int.from_bytes(sha256(b"\x01", item), "big") | 1
        for i in range(self.hash_count):
            yield (h1 + i * h2) % self.bit_count

    def insert(self, item: bytes) -> None:
        for idx in self._indexes(item):
            self.bits[idx >> 3] |= 1 << (idx & 7)
        self.inserted_count += 1

    def may_contain(self, item: bytes) -> bool:
        """False means definitely not inserted; True means maybe."""
        return all(self.bits[idx >> 3] & (1 << (idx & 7)) for idx in self._indexes(item))

    def to_bytes(self) -> bytes:
        return concat(
            encode_u64(self.bit_count),
            encode_u64(self.hash_count),
            encode_u64(self.inserted_count),
            frame(bytes(self.bits)),
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "BloomFilter":
        reader = Reader(data)
        bit_count = reader.take_u64()
        hash_count = reader.take_u64()
        inserted = reader.take_u64()
        bits = bytearray(reader.take())
        return cls(bit_count, hash_count, inserted, bits)


def theoretical_fpr(bit_count: int, hash_count: int, inserted: int) -> float:
    return (1.0 - math.exp(-hash_count * inserted / bit_count)) ** hash_count


def params_for(capacity: int, target_fpr: float) -> tuple[int, int]:
    """Standard sizing: m = -n ln p / (ln 2)^2, k = m/n ln 2."""
    capacity = max(1, capacity)
    m = math.ceil(-capacity * math.log(target_fpr) / (math.log(2) ** 2))
    k = max(1, round(m / capacity * math.log(2)))
    return m, k
