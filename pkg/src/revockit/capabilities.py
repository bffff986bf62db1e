"""Capability taxonomy for revocation structures.

Update property: whether the underlying structure supports adding items,
removing them, both (including re-adding a removed element), or neither.
Proof property: whether it proves membership, non-membership, or both.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class UpdateProperty(str, Enum):
    STATIC = "static"
    ADDITIVE = "additive"
    SUBTRACTIVE = "subtractive"
    DYNAMIC = "dynamic"


class ProofProperty(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    UNIVERSAL = "universal"


@dataclass(frozen=True)
class MethodCapabilities:
    update_property: UpdateProperty
    proof_property: ProofProperty

    def as_dict(self) -> dict[str, str]:
        return {
            "update_property": self.update_property.value,
            "proof_property": self.proof_property.value,
        }
