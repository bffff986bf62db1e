"""Credential identifiers and presentation-scoped aliases.

Two generation modes exist and are recorded on the identifier:

* ``stable``   -- the same 32 bytes are shown in every presentation, so two
  verifiers comparing notes can correlate the holder.
* ``pairwise`` -- each presentation shows a fresh alias derived with a
  holder-held key from (id, nonce); only the holder can link aliases back
  to the credential.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal

from .encoding import hmac_sha256
from .rng import random_bytes

IdMode = Literal["stable", "pairwise"]

ID_BYTES = 32


@dataclass(frozen=True)
class CredentialId:
    value: bytes
    mode: IdMode = "stable"

    def __post_init__(self):
        if len(self.value) != ID_BYTES:
            raise ValueError("credential id must be 32 bytes")
        if self.mode not in ("stable", "pairwise"):
            raise ValueError(f"unknown id mode: {self.mode}")


def new_credential_id(rng: random.Random, mode: IdMode = "stable") -> CredentialId:
    return CredentialId(random_bytes(rng, ID_BYTES), mode)


def new_alias_key(rng: random.Random) -> bytes:
    return random_bytes(rng, 32)


def presentation_subject(cid: CredentialId, alias_key: bytes, nonce: bytes) -> bytes:
    """The 32-byte subject token a holder shows for this presentation."""
    if cid.mode == "stable":
        return cid.value
    return hmac_sha256(alias_key, cid.value, nonce)
