"""Phase/role participation matrix measured from a canonical probe run."""

from __future__ import annotations

from ..methods import GROUPS
from ..roles import Phase, Role
from .runner import run_scenario
from .scenario import Scenario

ROLE_ORDER = [Role.ISSUER.value, Role.HOLDER.value, Role.VERIFIER.value]
LETTER = {Role.ISSUER.value: "I", Role.HOLDER.value: "H", Role.VERIFIER.value: "V"}
PHASE_ORDER = [Phase.ISSUANCE.value, Phase.REVOCATION.value, Phase.VERIFICATION.value]


def canonical_probe_scenario(method_name: str, seed: int = 7, profile: str = "toy") -> Scenario:
    """Four holders, one revocation, one verification per credential."""
    return Scenario(
        method=method_name,
        population=4,
        epochs=3,
        seed=seed,
        profile=profile,
        revocations=[[1, 1]],
        presentations=[[1, h, 0] for h in range(4)],
        sync_policy="every-epoch",
        n_verifiers=1,
    )


def interaction_matrix(method_name: str, seed: int = 7, profile: str = "toy") -> dict[str, set[str]]:
    """Maps each phase to the set of role letters that participate in the
    method's own machinery (baseline credential delivery excluded)."""
    result = run_scenario(canonical_probe_scenario(method_name, seed, profile))
    measured = result.ledger.phase_roles(kinds=("method", "internal"))
    return {phase: {LETTER[r] for r in roles} for phase, roles in measured.items()}


def group_matrices(seed: int = 7, profile: str = "toy", methods: list[str] | None = None):
    """Per-group matrices (sub-variant methods must agree), plus the
    per-method detail."""
    per_method: dict[str, dict[str, set[str]]] = {}
    groups: list[tuple[str, dict[str, set[str]], list[str]]] = []
    for group_name, members in GROUPS:
        chosen = [m for m in members if methods is None or m in methods]
        if not chosen:
            continue
        matrices = {m: interaction_matrix(m, seed, profile) for m in chosen}
        per_method.update(matrices)
        first = matrices[chosen[0]]
        for m in chosen[1:]:
            if matrices[m] != first:
                raise AssertionError(f"group {group_name!r} sub-variants disagree: {matrices}")
        groups.append((group_name, first, chosen))
    return groups, per_method
