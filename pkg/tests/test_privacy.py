"""Privacy probes and level derivation, including the golden table cells."""

import pytest

from revockit.errors import Incomplete
from revockit.methods import GROUPS, VerifyContext
from revockit.privacy.assessment import assess_group, assess_method, assess_mode
from revockit.privacy.classify import AspectReport, MethodTraits, classify_levels
from revockit.privacy.probes import probe_correlation, probe_transaction_data
from revockit.privacy.transcripts import PresentationTranscript

EXPECTED_GROUP_ROWS = {
    "List Based": ("yes", "No Privacy", "yes", "yes", "No Privacy"),
    "List Based Hidden": ("yes", "No Privacy", "depends", "depends", "Semi Privacy"),
    "Compressed List": ("yes", "No Privacy", "yes", "yes", "Semi Privacy"),
    "Cryptographic Accumulators": ("no", "Full Privacy", "depends", "no", "Full Privacy"),
    "Credential Update": ("no", "Full Privacy", "depends", "no", "Full Privacy"),
    "LVVC": ("no", "Full Privacy", "depends", "no", "Full Privacy"),
}


# -- classifier unit behaviour ------------------------------------------------


def test_classifier_full_privacy_row():
    report = classify_levels(
        AspectReport("no", "no", "no"), MethodTraits(public_lookup=False, access_gated=False)
    )
    assert report.level_holder_issuer == "Full Privacy"
    assert report.level_holder_verifier == "Full Privacy"


def test_classifier_simple_list_row():
    report = classify_levels(
        AspectReport("yes", "yes", "yes"), MethodTraits(public_lookup=True, access_gated=False)
    )
    assert report.level_holder_issuer == "No Privacy"
    assert report.level_holder_verifier == "No Privacy"


def test_classifier_compressed_row_is_semi_to_verifier():
    report = classify_levels(
        AspectReport("yes", "yes", "yes"), MethodTraits(public_lookup=False, access_gated=False)
    )
    assert report.level_holder_issuer == "No Privacy"
    assert report.level_holder_verifier == "Semi Privacy"


def test_classifier_gated_never_full_to_verifier():
    report = classify_levels(
        AspectReport("depends", "depends", "yes"), MethodTraits(public_lookup=False, access_gated=True)
    )
    assert report.level_holder_verifier == "Semi Privacy"


def test_classifier_incomplete_aspects():
    with pytest.raises(Incomplete):
        classify_levels(AspectReport("yes", "maybe", "yes"), MethodTraits(False, False))
    with pytest.raises(Incomplete):
        classify_levels(AspectReport("yes", "yes", "depends"), MethodTraits(False, False))


# -- probe mechanics -----------------------------------------------------------


def _transcript(verifier, fields, holder=0):
    return PresentationTranscript(
        verifier_id=verifier, epoch=1, method="x", fields=tuple(fields), outcome_valid=True, holder_index=holder
    )


def test_correlation_detects_shared_token():
    token = bytes(range(32))
    a = _transcript("verifier-0", [("subject", token)])
    b = _transcript("verifier-1", [("credential", b"\xaa" * 10 + token)])
    assert probe_correlation([a, b]) == "yes"


def test_correlation_ignores_short_and_distinct_tokens():
    a = _transcript("verifier-0", [("subject", b"\x01" * 15), ("body", bytes(range(16)))])
    b = _transcript("verifier-1", [("subject", b"\x01" * 15), ("body", bytes(range(100, 132)))])
    assert probe_correlation([a, b]) == "no"


def test_correlation_needs_two_verifiers():
    a = _transcript("verifier-0", [("subject", bytes(32))])
    with pytest.raises(ValueError):
        probe_correlation([a, a])


def test_transaction_data_counts_verification_events():
    class R:
        def __init__(self, phase):
            self.phase = phase

    assert probe_transaction_data([R("verification")]) == "yes"
    assert probe_transaction_data([R("revocation"), R("issuance")]) == "no"


# -- measured aspects per method and mode --------------------------------------


@pytest.mark.parametrize(
    "method,mode,corr",
    [
        ("simple-list", "stable", "yes"),
        ("simple-list", "pairwise", "yes"),  # lookup key must be revealed
        ("hidden-list", "stable", "yes"),
        ("hidden-list", "pairwise", "no"),
        ("bit-list", "stable", "yes"),
        ("bit-list", "pairwise", "yes"),  # list position must be revealed
        ("bloom-list", "pairwise", "yes"),  # filter key must be revealed
        ("rsa-accumulator", "stable", "yes"),
        ("rsa-accumulator", "pairwise", "no"),
        ("lvvc", "stable", "yes"),
        ("lvvc", "pairwise", "no"),
        ("credential-update", "pairwise", "no"),
        ("merkle-accumulator", "pairwise", "no"),
    ],
)
def test_correlation_by_mode(method, mode, corr):
    assert assess_mode(method, mode).correlation == corr


@pytest.mark.parametrize(
    "method,mode,link",
    [
        ("simple-list", "stable", "yes"),
        ("simple-list", "pairwise", "yes"),
        ("hidden-list", "stable", "yes"),
        ("hidden-list", "pairwise", "no"),  # single-use grant consumed
        ("bit-list", "pairwise", "yes"),
        ("bloom-list", "stable", "yes"),
        ("rsa-accumulator", "stable", "no"),  # witness/statement went stale
        ("merkle-accumulator", "stable", "no"),
        ("credential-update", "stable", "no"),
        ("lvvc", "stable", "no"),
        ("lvvc", "pairwise", "no"),
    ],
)
def test_linkage_by_mode(method, mode, link):
    assert assess_mode(method, mode).linkage == link


@pytest.mark.parametrize(
    "method,td",
    [
        ("simple-list", "yes"),
        ("hidden-list", "yes"),
        ("bit-list", "yes"),
        ("bloom-list", "yes"),  # revoked presentation escalates
        ("rsa-accumulator", "no"),
        ("merkle-accumulator", "no"),
        ("credential-update", "no"),
        ("lvvc", "no"),
    ],
)
def test_transaction_data_by_method(method, td):
    assessment = assess_method(method)
    assert assessment.aspects.transaction_data == td


def test_bloom_without_escalations_has_no_transaction_data():
    # a run whose only presentations hit clean definitely-not answers
    from revockit.sim import Scenario, run_scenario

    scenario = Scenario(
        method="bloom-list",
        population=8,
        epochs=3,
        seed=23,
        presentations=[[1, 0, 0], [1, 0, 1]],
        n_verifiers=2,
        sync_policy="every-epoch",
    )
    result = run_scenario(scenario)
    assert all(o["valid"] and not o["issuer_contacted"] for o in result.outcomes)
    assert probe_transaction_data(result.ledger.issuer_view()) == "no"


# -- golden table --------------------------------------------------------------


@pytest.mark.parametrize("group,members", GROUPS)
def test_golden_privacy_rows(group, members):
    a = assess_group(group, members)
    measured = (
        a.aspects.transaction_data,
        a.report.level_holder_issuer,
        a.aspects.correlation,
        a.aspects.linkage,
        a.report.level_holder_verifier,
    )
    assert measured == EXPECTED_GROUP_ROWS[group]


def test_probes_identical_on_redacted_ledger():
    """Probe soundness: decisions rely only on observable columns."""
    from revockit.privacy.assessment import probe_scenario
    from revockit.sim import run_scenario

    result = run_scenario(probe_scenario("bit-list", "stable"))
    full = probe_transaction_data(result.ledger.issuer_view())
    redacted = probe_transaction_data(result.ledger.redacted().issuer_view())
    assert full == redacted == "yes"
    transcripts = result.transcripts_for_holder(0)
    assert probe_correlation(transcripts) == "yes"
