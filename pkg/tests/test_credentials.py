import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revockit.clock import LogicalTime
from revockit.credentials import (
    check_freshness,
    check_link,
    issue_credential,
    issue_lvvc,
    verify_signature,
)
from revockit.errors import UnknownIssuer
from revockit.identity import new_alias_key, presentation_subject
from revockit.rng import derive_stream
from revockit.signing import make_issuer_keypair

T0 = LogicalTime(0)


def test_issue_credential_verifies(issuer, registry, rng):
    cred = issue_credential(issuer, "holder-1", {"degree": "MSc"}, T0, rng)
    assert verify_signature(cred, registry)


def test_identical_inputs_give_distinct_ids(issuer, rng):
    a = issue_credential(issuer, "holder-1", {"degree": "MSc"}, T0, rng)
    b = issue_credential(issuer, "holder-1", {"degree": "MSc"}, T0, rng)
    assert a.id.value != b.id.value


def test_claim_count_changes_serialized_size(issuer, rng):
    small = issue_credential(issuer, "h", {"c0": "v"}, T0, rng)
    many = issue_credential(issuer, "h", {f"c{i}": "v" for i in range(100)}, T0, rng)
    assert len(many.to_bytes()) > len(small.to_bytes())


def test_flipped_claim_byte_fails_verification(issuer, registry, rng):
    cred = issue_credential(issuer, "h", {"degree": "MSc"}, T0, rng)
    tampered = cred.__class__(
        cred.id, cred.holder_id, cred.issuer_id, (("degree", "BSc"),), cred.issued_at, cred.signature
    )
    assert not verify_signature(tampered, registry)


def test_unknown_issuer_raises(issuer, rng, registry):
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    ghost = cred.__class__(cred.id, cred.holder_id, "nobody", cred.claims, cred.issued_at, cred.signature)
    with pytest.raises(UnknownIssuer):
        verify_signature(ghost, registry)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_single_byte_mutation_always_fails(position):
    rng = derive_stream(99, "mutation")
    keypair = make_issuer_keypair("issuer-M", "hmac-sha256", rng)
    from revockit.signing import KeyRegistry

    registry = KeyRegistry("hmac-sha256")
    registry.register(keypair.issuer_id, keypair.verifying_key)
    cred = issue_credential(keypair, "h", {"k": "v" * 40}, T0, rng)
    body = bytearray(cred.unsigned_bytes())
    body[position % len(body)] ^= 0x01
    assert not registry.verify(cred.issuer_id, bytes(body), cred.signature)


def test_lvvc_fields_and_copy(issuer, registry, rng):
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    lvvc = issue_lvvc(issuer, cred.id, T0)
    assert lvvc.linked_credential_id.value == cred.id.value
    assert lvvc.issued_at == T0
    assert verify_signature(lvvc, registry)


def test_lvvc_reissue_differs_only_in_time_and_signature(issuer, rng):
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    at5 = issue_lvvc(issuer, cred.id, LogicalTime(5))
    at9 = issue_lvvc(issuer, cred.id, LogicalTime(9))
    assert at5.linked_credential_id == at9.linked_credential_id
    assert at5.issuer_id == at9.issuer_id
    assert at5.issued_at != at9.issued_at
    assert at5.signature != at9.signature


def test_lvvc_size_independent_of_linked_credential(issuer, rng):
    small = issue_credential(issuer, "h", {"c": "v"}, T0, rng)
    huge = issue_credential(issuer, "h", {f"c{i}": "v" * 50 for i in range(200)}, T0, rng)
    assert len(issue_lvvc(issuer, small.id, T0).to_bytes()) == len(issue_lvvc(issuer, huge.id, T0).to_bytes())


def test_lvvc_under_reference_size_budget(issuer, rng):
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    assert len(issue_lvvc(issuer, cred.id, T0).to_bytes()) < 1100


def test_lvvc_resigned_by_other_issuer_fails_original_lookup(issuer, registry, rng):
    other = make_issuer_keypair("issuer-B", "hmac-sha256", rng)
    registry.register(other.issuer_id, other.verifying_key)
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    lvvc = issue_lvvc(issuer, cred.id, T0)
    forged = lvvc.__class__(lvvc.linked_credential_id, lvvc.issuer_id, lvvc.issued_at, other.sign(lvvc.unsigned_bytes()))
    assert not verify_signature(forged, registry)


def test_check_link(issuer, registry, rng):
    x = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    y = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    lvvc_x = issue_lvvc(issuer, x.id, T0)
    assert check_link(x, lvvc_x)
    assert not check_link(y, lvvc_x)


def test_check_link_rejects_cross_issuer(issuer, registry, rng):
    other = make_issuer_keypair("issuer-B", "hmac-sha256", rng)
    registry.register(other.issuer_id, other.verifying_key)
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    lvvc = issue_lvvc(other, cred.id, T0)
    assert not check_link(cred, lvvc)


def test_check_freshness_boundaries(issuer, rng):
    cred = issue_credential(issuer, "h", {"a": "b"}, LogicalTime(10), rng)
    lvvc = issue_lvvc(issuer, cred.id, LogicalTime(10))
    assert check_freshness(lvvc, LogicalTime(10), 0)
    assert not check_freshness(lvvc, LogicalTime(12), 1)


def test_check_freshness_sweep_gap_three(issuer, rng):
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng)
    lvvc = issue_lvvc(issuer, cred.id, LogicalTime(0))
    got = [check_freshness(lvvc, LogicalTime(3), max_age) for max_age in range(6)]
    assert got == [False, False, False, True, True, True]


@given(st.integers(min_value=0, max_value=50))
@settings(max_examples=30, deadline=None)
def test_link_gate_always_accepts_own_lvvc(epoch):
    rng = derive_stream(7, "linkgate")
    keypair = make_issuer_keypair("issuer-G", "hmac-sha256", rng)
    cred = issue_credential(keypair, "h", {"a": "b"}, T0, rng)
    assert check_link(cred, issue_lvvc(keypair, cred.id, LogicalTime(epoch)))


def test_pairwise_presentations_share_no_long_subsequence(issuer):
    rng = derive_stream(42, "pairwise")
    cred = issue_credential(issuer, "h", {"a": "b"}, T0, rng, id_mode="pairwise")
    key = new_alias_key(rng)
    one = presentation_subject(cred.id, key, b"nonce-1")
    two = presentation_subject(cred.id, key, b"nonce-2")
    from revockit.encoding import byte_windows

    assert not byte_windows(one, 16) & byte_windows(two, 16)
    # stable mode keeps the identical token
    stable = issue_credential(issuer, "h", {"a": "b"}, T0, rng, id_mode="stable")
    assert presentation_subject(stable.id, key, b"n1") == presentation_subject(stable.id, key, b"n2")
