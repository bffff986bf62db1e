"""Seeded random streams.

A scenario owns one master seed; every consumer derives an independent
stream from (seed, label) so insertion of a new consumer never perturbs
existing streams.  Replays of the same seed are byte identical.
"""

from __future__ import annotations

import hashlib
import random


def derive_stream(seed: int, label: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def random_bytes(rng: random.Random, n: int) -> bytes:
    return rng.getrandbits(n * 8).to_bytes(n, "big")
