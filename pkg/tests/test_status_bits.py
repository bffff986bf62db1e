import pytest

from revockit.errors import OutOfRange
from revockit.status_bits import HEADER_BYTES, StatusBitArray


def test_set_then_get():
    arr = StatusBitArray(capacity=64)
    arr.set(5, True)
    assert arr.get(5)
    arr.set(5, False)
    assert not arr.get(5)
    assert not arr.get(6)


def test_out_of_range():
    arr = StatusBitArray(capacity=8)
    with pytest.raises(OutOfRange):
        arr.set(8, True)
    with pytest.raises(OutOfRange):
        arr.get(-1)


def test_serialized_size_formula_at_one_million():
    arr = StatusBitArray(capacity=1_000_000)
    payload = arr.to_bytes()
    assert len(payload) == 125_000 + HEADER_BYTES


def test_size_independent_of_revocation_count():
    empty = StatusBitArray(capacity=1_000_000)
    half = StatusBitArray(capacity=1_000_000)
    for ordinal in range(0, 1_000_000, 2):
        half.bits[ordinal >> 3] |= 1 << (ordinal & 7)
    assert len(empty.to_bytes()) == len(half.to_bytes())


def test_roundtrip():
    arr = StatusBitArray(capacity=100, epoch=3)
    arr.set(42, True)
    back = StatusBitArray.from_bytes(arr.to_bytes())
    assert back.capacity == 100
    assert back.epoch == 3
    assert back.get(42)
    assert not back.get(41)
