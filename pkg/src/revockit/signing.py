"""Deterministic signature schemes behind a registry-based verification API.

Two interchangeable schemes are provided; the active one is fixed per
scenario and recorded in output metadata:

* ``ed25519``     -- real asymmetric signatures (cryptography package),
  64-byte signatures.  Default for the ``full`` profile.
* ``hmac-sha256`` -- keyed-hash tags with the verification key held by the
  registry, 32-byte tags.  Fast enough for 100k-credential scenarios;
  default for the ``toy`` profile.  Adequate here because scenarios contain
  no forging adversary; binding (any byte flip fails) still holds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)

from .encoding import hmac_sha256
from .errors import UnknownIssuer
from .rng import random_bytes


class Ed25519Scheme:
    name = "ed25519"
    signature_size = 64

    def generate_keypair(self, rng: random.Random) -> tuple[Any, bytes]:
        private = Ed25519PrivateKey.from_private_bytes(random_bytes(rng, 32))
        public = private.public_key().public_bytes_raw()
        return private, public

    def sign(self, signing_key: Any, data: bytes) -> bytes:
        return signing_key.sign(data)

    def verify(self, verifying_key: bytes, data: bytes, signature: bytes) -> bool:
        try:
            Ed25519PublicKey.from_public_bytes(verifying_key).verify(signature, data)
            return True
        except InvalidSignature:
            return False


class HmacScheme:
    name = "hmac-sha256"
    signature_size = 32

    def generate_keypair(self, rng: random.Random) -> tuple[Any, bytes]:
        key = random_bytes(rng, 32)
        return key, key

    def sign(self, signing_key: Any, data: bytes) -> bytes:
        return hmac_sha256(signing_key, data)

    def verify(self, verifying_key: bytes, data: bytes, signature: bytes) -> bool:
        return hmac_sha256(verifying_key, data) == signature


SCHEMES = {
    Ed25519Scheme.name: Ed25519Scheme(),
    HmacScheme.name: HmacScheme(),
}


def scheme_for_profile(profile: str):
    return SCHEMES["hmac-sha256" if profile == "toy" else "ed25519"]


@dataclass(frozen=True)
class IssuerKeypair:
    issuer_id: str
    scheme_name: str
    signing_key: Any
    verifying_key: bytes

    @property
    def scheme(self):
        return SCHEMES[self.scheme_name]

    def sign(self, data: bytes) -> bytes:
        return self.scheme.sign(self.signing_key, data)


def make_issuer_keypair(issuer_id: str, scheme_name: str, rng: random.Random) -> IssuerKeypair:
    scheme = SCHEMES[scheme_name]
    signing_key, verifying_key = scheme.generate_keypair(rng)
    return IssuerKeypair(issuer_id, scheme_name, signing_key, verifying_key)


@dataclass
class KeyRegistry:
    """In-process stand-in for the trust layer: issuer id -> verifying key.

    Append-only within a scenario; lookups are not interactions with the
    issuer and are never ledger-recorded.
    """

    scheme_name: str
    _keys: dict[str, bytes] = field(default_factory=dict)

    def register(self, issuer_id: str, verifying_key: bytes) -> None:
        if issuer_id in self._keys:
            raise ValueError(f"issuer {issuer_id!r} already registered")
        self._keys[issuer_id] = verifying_key

    def verifying_key(self, issuer_id: str) -> bytes:
        try:
            return self._keys[issuer_id]
        except KeyError:
            raise UnknownIssuer(issuer_id) from None

    def verify(self, issuer_id: str, data: bytes, signature: bytes) -> bool:
        key = self.verifying_key(issuer_id)
        return SCHEMES[self.scheme_name].verify(key, data, signature)
