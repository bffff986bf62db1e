from hypothesis import given, settings
from hypothesis import strategies as st

from revockit.bloom import BloomFilter, params_for, theoretical_fpr
from revockit.rng import derive_stream, random_bytes


def test_empty_filter_answers_definitely_not():
    filt = BloomFilter(bit_count=128, hash_count=3)
    assert not filt.may_contain(b"anything")


def test_inserted_items_always_maybe():
    filt = BloomFilter(bit_count=128, hash_count=3)
    filt.insert(b"x")
    assert filt.may_contain(b"x")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.binary(min_size=1, max_size=16), min_size=1, max_size=50))
def test_no_false_negatives(items):
    filt = BloomFilter(bit_count=256, hash_count=4)
    for item in items:
        filt.insert(item)
    assert all(filt.may_contain(item) for item in items)


def test_observed_fpr_within_factor_two_of_formula():
    """Monte-Carlo at (m=9585, k=7, n=1000) over 100k absent probes."""
    m, k, n = 9585, 7, 1000
    filt = BloomFilter(bit_count=m, hash_count=k)
    rng = derive_stream(2024, "bloom-fpr")
    for i in range(n):
        filt.insert(b"member" + i.to_bytes(4, "big"))
    probes = 100_000
    false_positives = sum(
        filt.may_contain(b"absent" + i.to_bytes(4, "big")) for i in range(probes)
    )
    observed = false_positives / probes
    analytic = theoretical_fpr(m, k, n)
    assert analytic / 2 <= observed <= analytic * 2


def test_serialization_roundtrip():
    filt = BloomFilter(bit_count=100, hash_count=2)
    filt.insert(b"a")
    filt.insert(b"b")
    back = BloomFilter.from_bytes(filt.to_bytes())
    assert back.bit_count == filt.bit_count
    assert back.hash_count == filt.hash_count
    assert back.bits == filt.bits
    assert back.may_contain(b"a")


def test_params_for_standard_sizing():
    m, k = params_for(1000, 0.01)
    assert m == 9586 or m == 9585  # ceil of 9585.06
    assert k == 7
