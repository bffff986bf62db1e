"""Canonical binary encoding used for every byte-size measurement.

Layout: each field is a 4-byte big-endian length prefix followed by the raw
field bytes, concatenated in declared field order.  Integers are encoded as
8-byte big-endian before framing, strings as UTF-8.  The format is shared by
credentials, accumulator snapshots, sync payloads and presentation fields, so
reported sizes are platform independent and bit exact.
"""

from __future__ import annotations

import hashlib
import hmac as _hmac
from typing import Iterable, Sequence

LEN_PREFIX = 4


def frame(data: bytes) -> bytes:
    return len(data).to_bytes(LEN_PREFIX, "big") + data


def encode_u64(value: int) -> bytes:
    return frame(value.to_bytes(8, "big"))


def encode_str(value: str) -> bytes:
    return frame(value.encode("utf-8"))


def encode_int(value: int) -> bytes:
    """Arbitrary-size non-negative integer, minimal big-endian body."""
    length = max(1, (value.bit_length() + 7) // 8)
    return frame(value.to_bytes(length, "big"))


def encode_int_fixed(value: int, width: int) -> bytes:
    return frame(value.to_bytes(width, "big"))


def encode_pairs(pairs: Iterable[tuple[str, str]]) -> bytes:
    """Ordered key/value map: count, then each key and value framed in order."""
    items = list(pairs)
    out = [encode_u64(len(items))]
    for key, value in items:
        out.append(encode_str(key))
        out.append(encode_str(value))
    return b"".join(out)


def concat(*fields: bytes) -> bytes:
    return b"".join(fields)


class Reader:
    """Sequential decoder for the framed format."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0

    def take(self) -> bytes:
        if self._pos + LEN_PREFIX > len(self._data):
            raise ValueError("truncated frame header")
        length = int.from_bytes(self._data[self._pos : self._pos + LEN_PREFIX], "big")
        self._pos += LEN_PREFIX
        if self._pos + length > len(self._data):
            raise ValueError("truncated frame body")
        body = self._data[self._pos : self._pos + length]
        self._pos += length
        return body

    def take_u64(self) -> int:
        return int.from_bytes(self.take(), "big")

    def take_int(self) -> int:
        return int.from_bytes(self.take(), "big")

    def take_str(self) -> str:
        return self.take().decode("utf-8")

    def take_pairs(self) -> list[tuple[str, str]]:
        count = self.take_u64()
        return [(self.take_str(), self.take_str()) for _ in range(count)]

    @property
    def exhausted(self) -> bool:
        return self._pos == len(self._data)


def sha256(*parts: bytes) -> bytes:
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
    return h.digest()


def hmac_sha256(key: bytes, *parts: bytes) -> bytes:
    h = _hmac.new(key, digestmod=hashlib.sha256)
    for part in parts:
        h.update(part)
    return h.digest()


def mask_bytes(data: bytes, key: bytes) -> bytes:
    """Size-preserving one-way masking: replaces ``data`` with a keyed
    SHA-256 stream of the same length.  Used to model presentation-scoped
    blinding; the output carries no recoverable or stable byte runs."""
    out = bytearray()
    counter = 0
    while len(out) < len(data):
        out.extend(sha256(key, counter.to_bytes(8, "big"), data))
        counter += 1
    return bytes(out[: len(data)])


def byte_windows(data: bytes, size: int) -> set[bytes]:
    """All contiguous windows of ``size`` bytes (rolling, stride 1)."""
    if len(data) < size:
        return set()
    return {data[i : i + size] for i in range(len(data) - size + 1)}


def measured_size(parts: Sequence[bytes]) -> int:
    return sum(len(p) + LEN_PREFIX for p in parts)
