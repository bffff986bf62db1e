"""End-to-end privacy assessment: run a probe scenario per method and id
mode, decide the three aspects from observables, and derive levels.

The probe scenario uses two verifiers and two target holders: holder 0 is
presented to both verifiers at epoch 1 (correlation material) and stays
valid; holder 1 presents at epoch 1, is revoked at epoch 1, and presents
again at epoch 2 after publication, which also forces an escalation for
filter-based methods.  Linkage re-evaluates verifier 0's epoch-1 retained
material after the run against the known end-state validity.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..methods import METHOD_CLASSES, VerifyContext
from ..sim.runner import ScenarioResult, run_scenario
from ..sim.scenario import Scenario
from .classify import AspectReport, MethodTraits, PrivacyReport, classify_levels
from .probes import probe_correlation, probe_linkage, probe_transaction_data

PROBE_POPULATION = 8


def probe_scenario(method_name: str, id_mode: str, seed: int = 23, profile: str = "toy") -> Scenario:
    return Scenario(
        method=method_name,
        population=PROBE_POPULATION,
        epochs=3,
        seed=seed,
        profile=profile,
        id_mode=id_mode,
        revoke_holders=[[1, 1]],
        presentations=[[1, 0, 0], [1, 0, 1], [1, 1, 0], [2, 1, 0]],
        n_verifiers=2,
        sync_policy="every-epoch",
    )


@dataclass
class ModeAssessment:
    correlation: str
    linkage: str
    transaction_data: str
    result: ScenarioResult


def assess_mode(method_name: str, id_mode: str, seed: int = 23, profile: str = "toy") -> ModeAssessment:
    result = run_scenario(probe_scenario(method_name, id_mode, seed, profile))
    correlation = probe_correlation(result.transcripts_for_holder(0))
    verifier0 = result.verifiers[0]
    retained = [t for t in verifier0.transcripts if t.epoch == 1]
    truth = {0: True, 1: False}  # end-state validity of the two targets
    ctx = VerifyContext(
        registry=result.registry,
        params=result.method.params,
        channel=result.probe_channel(),
    )
    linkage = probe_linkage(result.method, retained, truth, ctx, result.clock_now)
    transaction_data = probe_transaction_data(result.ledger.issuer_view())
    return ModeAssessment(correlation, linkage, transaction_data, result)


@dataclass
class MethodAssessment:
    method: str
    group: str
    by_mode: dict[str, ModeAssessment]
    aspects: AspectReport
    report: PrivacyReport

    def mode_note(self, aspect: str) -> str:
        stable = getattr(self.by_mode["stable"], aspect)
        pairwise = getattr(self.by_mode["pairwise"], aspect)
        if stable == pairwise:
            return stable
        return f"y-n (stable={stable}, pairwise={pairwise})"


def _combine(stable: str, pairwise: str) -> str:
    return stable if stable == pairwise else "depends"


def assess_method(method_name: str, seed: int = 23, profile: str = "toy") -> MethodAssessment:
    cls = METHOD_CLASSES[method_name]
    by_mode = {mode: assess_mode(method_name, mode, seed, profile) for mode in ("stable", "pairwise")}
    # transaction data is a worst-case claim: any observed escalation decides
    td_values = {by_mode["stable"].transaction_data, by_mode["pairwise"].transaction_data}
    aspects = AspectReport(
        correlation=_combine(by_mode["stable"].correlation, by_mode["pairwise"].correlation),
        linkage=_combine(by_mode["stable"].linkage, by_mode["pairwise"].linkage),
        transaction_data="yes" if "yes" in td_values else "no",
    )
    traits = MethodTraits(public_lookup=cls.public_lookup, access_gated=cls.access_gated)
    report = classify_levels(aspects, traits)
    return MethodAssessment(
        method=method_name,
        group=cls.group,
        by_mode=by_mode,
        aspects=aspects,
        report=report,
    )


def assess_group(group_name: str, members: list[str], seed: int = 23, profile: str = "toy") -> MethodAssessment:
    """Group row: member methods must agree on levels; aspect cells combine
    worst-case (any member measuring `yes` makes the group `yes`)."""
    assessments = [assess_method(m, seed, profile) for m in members]
    first = assessments[0]
    for other in assessments[1:]:
        if other.report.level_holder_issuer != first.report.level_holder_issuer:
            raise AssertionError(f"group {group_name}: issuer levels disagree")
        if other.report.level_holder_verifier != first.report.level_holder_verifier:
            raise AssertionError(f"group {group_name}: verifier levels disagree")

    def combine_cell(name: str) -> str:
        values = {getattr(a.aspects, name) for a in assessments}
        if values == {"depends"}:
            return "depends"
        if "yes" in values:
            return "yes"
        if values == {"no"}:
            return "no"
        return "depends"

    aspects = AspectReport(
        correlation=combine_cell("correlation"),
        linkage=combine_cell("linkage"),
        transaction_data=combine_cell("transaction_data"),
    )
    merged_modes = first.by_mode
    return MethodAssessment(
        method=",".join(members),
        group=group_name,
        by_mode=merged_modes,
        aspects=aspects,
        report=PrivacyReport(
            correlation=aspects.correlation,
            linkage=aspects.linkage,
            transaction_data=aspects.transaction_data,
            level_holder_issuer=first.report.level_holder_issuer,
            level_holder_verifier=first.report.level_holder_verifier,
        ),
    )
