"""Rendering of the two assessment tables (plain text, CSV, JSON) plus the
reference patterns the measured tables are checked against.

The reference patterns are the methods' declared contracts: list-family
groups do issuance and revocation alone but call home at verification;
witness/refresh-family groups involve the holder at issuance and
revocation and verify offline.  A mismatch between measurement and
reference is a nonzero-exit condition for the CLI.
"""

from __future__ import annotations

import json

from .methods import GROUPS, METHOD_CLASSES
from .privacy.assessment import MethodAssessment
from .roles import Phase

PHASES = [Phase.ISSUANCE.value, Phase.REVOCATION.value, Phase.VERIFICATION.value]
ROLES = ["I", "H", "V"]

# group -> phase -> participating roles, from the methods' declared contracts
def expected_interactions() -> dict[str, dict[str, set[str]]]:
    letter = {"issuer": "I", "holder": "H", "verifier": "V"}
    out: dict[str, dict[str, set[str]]] = {}
    for group, members in GROUPS:
        declared = METHOD_CLASSES[members[0]].declared_interactions
        out[group] = {phase.value: {letter[r.value] for r in roles} for phase, roles in declared.items()}
    return out


# group -> reference privacy row: (transaction_data, issuer level, correlation,
# linkage, verifier level); aspects use y / n / y-n
EXPECTED_PRIVACY: dict[str, tuple[str, str, str, str, str]] = {
    "List Based": ("y", "No Privacy", "y", "y", "No Privacy"),
    "List Based Hidden": ("y", "No Privacy", "y-n", "y-n", "Semi Privacy"),
    "Compressed List": ("y", "No Privacy", "y", "y", "Semi Privacy"),
    "Cryptographic Accumulators": ("n", "Full Privacy", "y-n", "n", "Full Privacy"),
    "Credential Update": ("n", "Full Privacy", "y-n", "n", "Full Privacy"),
    "LVVC": ("n", "Full Privacy", "y-n", "n", "Full Privacy"),
}


def aspect_cell(value: str) -> str:
    return {"yes": "y", "no": "n", "depends": "y-n"}[value]


# -- interactions table ------------------------------------------------------


def render_interactions_text(groups: list[tuple[str, dict[str, set[str]], list[str]]]) -> str:
    header = f"{'Group':34s}" + "".join(f"| {p.capitalize():14s}" for p in PHASES)
    subhead = f"{'':34s}" + "".join(f"| {'I  H  V':14s}" for _ in PHASES)
    lines = [header, subhead, "-" * len(header)]
    for group, matrix, members in groups:
        cells = ""
        for phase in PHASES:
            marks = "  ".join("x" if role in matrix[phase] else " " for role in ROLES)
            cells += f"| {marks:14s}"
        lines.append(f"{group:34s}" + cells)
        if len(members) > 1:
            for member in members:
                lines.append(f"  - {member:30s}" + cells)
    return "\n".join(lines) + "\n"


def interactions_rows(groups) -> list[dict]:
    rows = []
    for group, matrix, members in groups:
        row: dict = {"group": group, "methods": list(members)}
        for phase in PHASES:
            row[phase] = sorted(matrix[phase], key=ROLES.index)
        rows.append(row)
    return rows


def render_interactions_csv(groups) -> str:
    columns = ["group", "methods"] + [f"{p}_{r}" for p in PHASES for r in ROLES]
    lines = [",".join(columns)]
    for group, matrix, members in groups:
        row = [group, ";".join(members)]
        for phase in PHASES:
            for role in ROLES:
                row.append("1" if role in matrix[phase] else "0")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def render_interactions_json(groups) -> str:
    return json.dumps({"schema_version": 1, "table": "required-interactions", "rows": interactions_rows(groups)}, indent=2, sort_keys=True)


def interactions_match_reference(groups) -> list[str]:
    """Returns mismatch descriptions (empty = golden)."""
    reference = expected_interactions()
    problems = []
    for group, matrix, _members in groups:
        for phase in PHASES:
            if matrix[phase] != reference[group][phase]:
                problems.append(
                    f"{group}/{phase}: measured {sorted(matrix[phase])} != expected {sorted(reference[group][phase])}"
                )
    return problems


# -- privacy table -----------------------------------------------------------


def privacy_row(assessment: MethodAssessment) -> tuple[str, str, str, str, str]:
    return (
        aspect_cell(assessment.aspects.transaction_data),
        assessment.report.level_holder_issuer,
        aspect_cell(assessment.aspects.correlation),
        aspect_cell(assessment.aspects.linkage),
        assessment.report.level_holder_verifier,
    )


def render_privacy_text(assessments: list[MethodAssessment]) -> str:
    header = (
        f"{'Group':28s}| {'Txn data':9s}| {'H->I level':13s}| {'Correlation':12s}| {'Linkage':8s}| H->V level"
    )
    lines = [header, "-" * len(header)]
    for a in assessments:
        td, li, corr, link, lv = privacy_row(a)
        lines.append(f"{a.group:28s}| {td:9s}| {li:13s}| {corr:12s}| {link:8s}| {lv}")
        for aspect, cell in (("correlation", corr), ("linkage", link)):
            if cell == "y-n":
                stable = aspect_cell(getattr(a.by_mode["stable"], aspect))
                pairwise = aspect_cell(getattr(a.by_mode["pairwise"], aspect))
                lines.append(f"    {aspect}: y-n resolved by id mode (stable={stable}, pairwise={pairwise})")
    return "\n".join(lines) + "\n"


def render_privacy_csv(assessments: list[MethodAssessment]) -> str:
    columns = [
        "group",
        "transaction_data",
        "level_holder_issuer",
        "correlation",
        "correlation_stable",
        "correlation_pairwise",
        "linkage",
        "linkage_stable",
        "linkage_pairwise",
        "level_holder_verifier",
    ]
    lines = [",".join(columns)]
    for a in assessments:
        td, li, corr, link, lv = privacy_row(a)
        lines.append(
            ",".join(
                [
                    a.group,
                    td,
                    li,
                    corr,
                    aspect_cell(a.by_mode["stable"].correlation),
                    aspect_cell(a.by_mode["pairwise"].correlation),
                    link,
                    aspect_cell(a.by_mode["stable"].linkage),
                    aspect_cell(a.by_mode["pairwise"].linkage),
                    lv,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_privacy_json(assessments: list[MethodAssessment]) -> str:
    rows = []
    for a in assessments:
        td, li, corr, link, lv = privacy_row(a)
        rows.append(
            {
                "group": a.group,
                "transaction_data": td,
                "level_holder_issuer": li,
                "correlation": corr,
                "linkage": link,
                "level_holder_verifier": lv,
                "modes": {
                    mode: {
                        "correlation": aspect_cell(m.correlation),
                        "linkage": aspect_cell(m.linkage),
                        "transaction_data": aspect_cell(m.transaction_data),
                    }
                    for mode, m in a.by_mode.items()
                },
            }
        )
    return json.dumps({"schema_version": 1, "table": "holder-privacy", "rows": rows}, indent=2, sort_keys=True)


def privacy_match_reference(assessments: list[MethodAssessment]) -> list[str]:
    problems = []
    for a in assessments:
        measured = privacy_row(a)
        expected = EXPECTED_PRIVACY[a.group]
        if measured != expected:
            problems.append(f"{a.group}: measured {measured} != expected {expected}")
    return problems
