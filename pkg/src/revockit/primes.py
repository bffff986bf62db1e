"""Hash-to-prime mapping and deterministic RSA parameter generation.

Items are mapped to primes by hashing into an odd candidate of the requested
bit length and walking to the next prime; the map is deterministic, so
replays produce identical accumulator values.  Primality and prime search
use gmpy2 (Miller-Rabin with BPSW preselection).
"""

from __future__ import annotations

import random
from functools import lru_cache

import gmpy2

from .encoding import sha256
from .rng import random_bytes

TOY_MODULUS_BITS = 512
FULL_MODULUS_BITS = 2048
TOY_PRIME_BITS = 64
FULL_PRIME_BITS = 128


def profile_modulus_bits(profile: str) -> int:
    return TOY_MODULUS_BITS if profile == "toy" else FULL_MODULUS_BITS


def profile_prime_bits(profile: str) -> int:
    return TOY_PRIME_BITS if profile == "toy" else FULL_PRIME_BITS


@lru_cache(maxsize=1 << 16)
def hash_to_prime(item: bytes, bits: int) -> int:
    """Deterministic item -> prime map: SHA-256 truncated to ``bits`` with
    the top and low bits forced, then next-prime search."""
    digest = sha256(b"htp", bits.to_bytes(4, "big"), item)
    candidate = int.from_bytes(digest, "big") >> (256 - bits)
    candidate |= (1 << (bits - 1)) | 1
    return int(gmpy2.next_prime(candidate - 1))


def is_probable_prime(n: int) -> bool:
    return bool(gmpy2.is_prime(n))


def _random_prime(rng: random.Random, bits: int) -> int:
    candidate = int.from_bytes(random_bytes(rng, bits // 8), "big")
    candidate |= (1 << (bits - 1)) | 1
    return int(gmpy2.next_prime(candidate - 1))


def generate_rsa_params(bits: int, rng: random.Random) -> tuple[int, int, int]:
    """Deterministic (modulus, p, q) from a seeded stream.  The factors stay
    issuer-side as the optional trapdoor."""
    half = bits // 2
    p = _random_prime(rng, half)
    q = _random_prime(rng, half)
    while q == p:
        q = _random_prime(rng, half)
    return p * q, p, q


def derive_generator(modulus: int, rng: random.Random) -> int:
    """A quadratic residue with unknown discrete log relative to the items."""
    while True:
        h = int.from_bytes(random_bytes(rng, (modulus.bit_length() + 7) // 8), "big") % modulus
        g = pow(h, 2, modulus)
        if g not in (0, 1):
            return g
