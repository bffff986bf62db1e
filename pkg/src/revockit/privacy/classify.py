"""Privacy level derivation from probed aspects plus structural traits.

Aspect values: ``yes`` / ``no``, or ``depends`` where stable and pairwise
presentation modes disagree (the mode-dependent cells).  Levels assume a
privacy-preserving implementation, so ``depends`` resolves to its best
case; they additionally need two structural traits of the method --
whether validity is publicly computable from the credential alone, and
whether lookups sit behind an access gate -- because aspects alone cannot
separate an open list (everyone can re-check anyone, no restriction at
all) from a compressed one (the verifier still needs the holder-supplied
list position).

Holder-to-issuer: any observable transaction data means the issuer
operator sees who verifies what, i.e. no privacy; a deployment that splits
the gate operator from the issuer could soften this to semi privacy, but
none of the built-in methods models an independent gate.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import Incomplete

FULL = "Full Privacy"
SEMI = "Semi Privacy"
NO = "No Privacy"

_ASPECT_VALUES = ("yes", "no", "depends")


@dataclass(frozen=True)
class AspectReport:
    correlation: str
    linkage: str
    transaction_data: str

    def validate(self) -> None:
        for name in ("correlation", "linkage", "transaction_data"):
            value = getattr(self, name)
            if value not in _ASPECT_VALUES:
                raise Incomplete(f"aspect {name} undecided: {value!r}")
        if self.transaction_data == "depends":
            raise Incomplete("transaction_data must be decided worst-case, not 'depends'")


@dataclass(frozen=True)
class MethodTraits:
    public_lookup: bool
    access_gated: bool


@dataclass(frozen=True)
class PrivacyReport:
    correlation: str
    linkage: str
    transaction_data: str
    level_holder_issuer: str
    level_holder_verifier: str


def _best(value: str) -> str:
    return "no" if value in ("no", "depends") else "yes"


def classify_levels(aspects: AspectReport, traits: MethodTraits) -> PrivacyReport:
    aspects.validate()
    issuer_level = NO if aspects.transaction_data == "yes" else FULL
    if _best(aspects.correlation) == "no" and _best(aspects.linkage) == "no" and not traits.access_gated:
        verifier_level = FULL
    elif traits.public_lookup and aspects.correlation == "yes" and aspects.linkage == "yes":
        verifier_level = NO
    else:
        verifier_level = SEMI
    return PrivacyReport(
        correlation=aspects.correlation,
        linkage=aspects.linkage,
        transaction_data=aspects.transaction_data,
        level_holder_issuer=issuer_level,
        level_holder_verifier=verifier_level,
    )
