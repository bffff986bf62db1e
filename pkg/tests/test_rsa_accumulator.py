import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revockit.errors import AlreadyMember, MemberRevoked, NotMember
from revockit.primes import hash_to_prime
from revockit.rng import derive_stream
from revockit.rsa_acc import (
    DELETE,
    RsaAccumulator,
    RsaWitness,
    apply_updates,
    update_witness,
    verify_membership,
)

PRIME_BITS = 64


def make_acc(seed=5, use_trapdoor=False):
    rng = derive_stream(seed, "rsa-test")
    return RsaAccumulator.generate(512, PRIME_BITS, rng, use_trapdoor=use_trapdoor)


def brute_value(acc, items):
    """Independent recomputation: g ** prod(primes) with fresh prime lookups."""
    exponent = math.prod(hash_to_prime(i, PRIME_BITS) for i in items) if items else 1
    return pow(acc.generator, exponent, acc.modulus)


def brute_witness(acc, items, target):
    exponent = math.prod(hash_to_prime(i, PRIME_BITS) for i in items if i != target)
    if not [i for i in items if i != target]:
        exponent = 1
    return pow(acc.generator, exponent, acc.modulus)


def test_add_to_empty_gives_generator_witness():
    acc = make_acc()
    g = acc.value
    wit = acc.add(b"x")
    assert wit.value == g
    assert acc.value == pow(g, hash_to_prime(b"x", PRIME_BITS), acc.modulus)
    assert acc.verify(wit, b"x")


def test_add_two_members_both_verify_against_brute_force():
    acc = make_acc()
    wx = acc.add(b"x")
    wy = acc.add(b"y")
    assert acc.value == brute_value(acc, [b"x", b"y"])
    wx = apply_updates(wx, acc.updates_since(wx.as_of), acc.modulus)
    assert acc.verify(wx, b"x")
    assert acc.verify(wy, b"y")


def test_double_add_raises():
    acc = make_acc()
    acc.add(b"x")
    with pytest.raises(AlreadyMember):
        acc.add(b"x")


def test_delete_only_member_returns_to_generator():
    acc = make_acc()
    g = acc.value
    acc.add(b"x")
    acc.delete(b"x")
    assert acc.value == g


def test_delete_middle_matches_direct_recompute():
    acc = make_acc()
    for item in (b"x", b"y", b"z"):
        acc.add(item)
    acc.delete(b"y")
    assert acc.value == brute_value(acc, [b"x", b"z"])


def test_delete_nonmember_raises():
    acc = make_acc()
    with pytest.raises(NotMember):
        acc.delete(b"ghost")


def test_dynamic_round_trip_delete_then_readd():
    acc = make_acc()
    acc.add(b"x")
    acc.add(b"y")
    acc.delete(b"x")
    wit = acc.add(b"x")
    assert acc.verify(wit, b"x")


def test_trapdoor_delete_agrees_with_recompute():
    plain = make_acc(seed=9)
    trap = make_acc(seed=9, use_trapdoor=True)
    for acc in (plain, trap):
        for item in (b"a", b"b", b"c"):
            acc.add(item)
        acc.delete(b"b")
    assert plain.value == trap.value


def test_update_witness_identity_when_no_changes():
    acc = make_acc()
    acc.add(b"x")
    wit = acc.add(b"y")
    same = update_witness(wit, [], [], acc.modulus)
    assert same.value == wit.value


def test_update_witness_after_unrelated_delete_matches_fresh_witness():
    acc = make_acc()
    wx = acc.add(b"x")
    acc.add(b"y")
    acc.add(b"z")
    wx = apply_updates(wx, acc.updates_since(wx.as_of), acc.modulus)
    acc.delete(b"z")
    deletion = acc.log[-1]
    repaired = update_witness(wx, [deletion], [], acc.modulus)
    assert repaired.value == brute_witness(acc, [b"x", b"y"], b"x")
    assert acc.verify(repaired, b"x")


def test_update_witness_own_deletion_raises():
    acc = make_acc()
    wx = acc.add(b"x")
    acc.add(b"y")
    acc.delete(b"x")
    deletion = next(r for r in acc.log if r.kind == DELETE)
    with pytest.raises(MemberRevoked):
        update_witness(wx, [deletion], [], acc.modulus)


def test_stale_witness_fails_until_repaired():
    acc = make_acc()
    wx = acc.add(b"x")
    acc.add(b"y")
    assert not acc.verify(wx, b"x")  # stale: y was added after
    wx = apply_updates(wx, acc.updates_since(wx.as_of), acc.modulus)
    assert acc.verify(wx, b"x")
    acc.delete(b"y")
    assert not acc.verify(wx, b"x")  # stale again after deletion


def test_random_group_elements_never_verify():
    acc = make_acc()
    acc.add(b"x")
    prime = hash_to_prime(b"x", PRIME_BITS)
    rng = derive_stream(123, "random-witness")
    hits = sum(
        verify_membership(rng.randrange(2, acc.modulus), prime, acc.value, acc.modulus)
        for _ in range(1000)
    )
    assert hits == 0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([b"a", b"b", b"c", b"d", b"e", b"f"]), min_size=1, max_size=30))
def test_equational_invariant_over_random_scripts(script):
    """After any add/delete sequence the value equals a fresh recomputation."""
    acc = make_acc(seed=31)
    members = set()
    for item in script:
        if item in members:
            acc.delete(item)
            members.discard(item)
        else:
            acc.add(item)
            members.add(item)
        assert acc.value == brute_value(acc, sorted(members))
        assert acc.member_primes == {hash_to_prime(i, PRIME_BITS) for i in members}


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=15), min_size=1, max_size=40))
def test_witness_soundness_exhaustive(script):
    """Every current member's replayed witness verifies; no deleted item's
    stored witness verifies."""
    acc = make_acc(seed=67)
    items = [bytes([40 + i]) for i in range(16)]
    witnesses: dict[bytes, RsaWitness] = {}
    members: set[bytes] = set()
    for pick in script:
        item = items[pick]
        if item in members:
            acc.delete(item)
            members.discard(item)
        else:
            witnesses[item] = acc.add(item)
            members.add(item)
    for item in members:
        repaired = apply_updates(witnesses[item], acc.updates_since(witnesses[item].as_of), acc.modulus)
        assert acc.verify(repaired, item)
    for item in set(witnesses) - members:
        assert not acc.verify(witnesses[item], item)


def test_update_record_serialization_roundtrip():
    acc = make_acc()
    acc.add(b"x")
    acc.add(b"y")
    acc.delete(b"x")
    from revockit.encoding import Reader
    from revockit.rsa_acc import AccUpdate

    for record in acc.log:
        blob = record.to_bytes(acc.value_width, acc.prime_width)
        assert AccUpdate.read(Reader(blob)) == record
