"""RSA dynamic accumulator with per-event update records.

The accumulator value is ``g ** (product of member primes) mod n``.  Every
mutation appends an update record ``(kind, prime, value_after)`` to an
ordered log; a holder repairs its witness by replaying the records issued
since its last sync, so repair cost grows with the number of records and the
downloaded bytes grow with the revocation volume.  Batched or aggregated
witness updates are deliberately not provided.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .counters import OpCounter
from .encoding import Reader, concat, encode_int_fixed, encode_u64, frame
from .errors import AlreadyMember, MemberRevoked, NotMember
from .primes import derive_generator, generate_rsa_params, hash_to_prime

ADD = 0
DELETE = 1


@dataclass(frozen=True)
class AccUpdate:
    """One accumulator mutation, in log order.

    ``value_after`` is the accumulator value immediately after this
    mutation; deletion repairs need it (see ``apply_delete``)."""

    kind: int
    prime: int
    value_after: int
    seq: int

    def to_bytes(self, value_width: int, prime_width: int) -> bytes:
        return concat(
            frame(bytes([self.kind])),
            encode_int_fixed(self.prime, prime_width),
            encode_int_fixed(self.value_after, value_width),
            encode_u64(self.seq),
        )

    @classmethod
    def read(cls, reader: Reader) -> "AccUpdate":
        kind = reader.take()[0]
        prime = reader.take_int()
        value_after = reader.take_int()
        seq = reader.take_u64()
        return cls(kind, prime, value_after, seq)


@dataclass(frozen=True)
class RsaWitness:
    value: int
    for_prime: int
    as_of: int  # log position (seq of last applied record)


@dataclass
class RsaAccumulator:
    modulus: int
    generator: int
    prime_bits: int
    value: int = 0
    trapdoor: tuple[int, int] | None = None
    use_trapdoor: bool = False
    ops: OpCounter | None = None
    log: list[AccUpdate] = field(default_factory=list)
    _primes: dict[bytes, int] = field(default_factory=dict)
    _prime_set: set[int] = field(default_factory=set)

    def __post_init__(self):
        if self.value == 0:
            self.value = self.generator % self.modulus

    @classmethod
    def generate(
        cls,
        modulus_bits: int,
        prime_bits: int,
        rng: random.Random,
        keep_trapdoor: bool = True,
        use_trapdoor: bool = False,
        ops: OpCounter | None = None,
    ) -> "RsaAccumulator":
        modulus, p, q = generate_rsa_params(modulus_bits, rng)
        generator = derive_generator(modulus, rng)
        return cls(
            modulus=modulus,
            generator=generator,
            prime_bits=prime_bits,
            trapdoor=(p, q) if keep_trapdoor else None,
            use_trapdoor=use_trapdoor,
            ops=ops,
        )

    # -- membership bookkeeping ------------------------------------------

    @property
    def member_primes(self) -> set[int]:
        return set(self._prime_set)

    @property
    def value_width(self) -> int:
        return (self.modulus.bit_length() + 7) // 8

    @property
    def prime_width(self) -> int:
        return self.prime_bits // 8 + 1  # next_prime may spill one bit

    def prime_for(self, item: bytes) -> int:
        prime = hash_to_prime(item, self.prime_bits)
        known = self._primes.get(item)
        if known is not None:
            return known
        if prime in self._prime_set:
            raise ValueError("hash-to-prime collision between distinct items")
        return prime

    def _pow(self, base: int, exponent: int) -> int:
        if self.ops is not None:
            self.ops.modexp += 1
        return pow(base, exponent, self.modulus)

    # -- mutations ---------------------------------------------------------

    def add(self, item: bytes) -> RsaWitness:
        """Accumulate ``item``; the returned witness is the pre-add value."""
        if item in self._primes:
            raise AlreadyMember(item.hex())
        prime = self.prime_for(item)
        witness_value = self.value
        self.value = self._pow(self.value, prime)
        self._primes[item] = prime
        self._prime_set.add(prime)
        self.log.append(AccUpdate(ADD, prime, self.value, len(self.log)))
        return RsaWitness(witness_value, prime, as_of=len(self.log) - 1)

    def delete(self, item: bytes) -> None:
        """Remove ``item``.  The default path recomputes from the remaining
        primes; the trapdoor path exponentiates by the prime's inverse mod
        the group order and is an issuer-side optimization only."""
        prime = self._primes.get(item)
        if prime is None:
            raise NotMember(item.hex())
        del self._primes[item]
        self._prime_set.discard(prime)
        if self.use_trapdoor and self.trapdoor is not None:
            p, q = self.trapdoor
            order = (p - 1) * (q - 1)
            self.value = self._pow(self.value, pow(prime, -1, order))
        else:
            self.value = self._recompute()
        self.log.append(AccUpdate(DELETE, prime, self.value, len(self.log)))

    def _recompute(self) -> int:
        exponent = math.prod(self._prime_set) if self._prime_set else 1
        return self._pow(self.generator, exponent)

    def recompute_value(self) -> int:
        """Fresh ``g ** prod(primes)`` for invariant checks."""
        return self._recompute()

    # -- queries -----------------------------------------------------------

    def contains(self, item: bytes) -> bool:
        return item in self._primes

    def verify(self, witness: RsaWitness, item: bytes) -> bool:
        return verify_membership(witness.value, self.prime_for(item), self.value, self.modulus, self.ops)

    def updates_since(self, position: int) -> list[AccUpdate]:
        return self.log[position + 1 :]

    def state_bytes(self) -> bytes:
        parts = [
            encode_int_fixed(self.modulus, self.value_width),
            encode_int_fixed(self.generator, self.value_width),
            encode_int_fixed(self.value, self.value_width),
            encode_u64(len(self.log)),
        ]
        for prime in sorted(self._prime_set):
            parts.append(encode_int_fixed(prime, self.prime_width))
        return concat(*parts)


def verify_membership(
    witness_value: int,
    prime: int,
    acc_value: int,
    modulus: int,
    ops: OpCounter | None = None,
) -> bool:
    if ops is not None:
        ops.modexp += 1
    return pow(witness_value, prime, modulus) == acc_value


def apply_add(witness_value: int, added_prime: int, modulus: int, ops: OpCounter | None = None) -> int:
    if ops is not None:
        ops.modexp += 1
    return pow(witness_value, added_prime, modulus)


def apply_delete(
    witness_value: int,
    own_prime: int,
    deleted_prime: int,
    value_after: int,
    modulus: int,
    ops: OpCounter | None = None,
) -> int:
    """Repair a witness across one deletion.

    With a*own + b*deleted = 1 the repaired witness is
    ``value_after**a * witness**b``; raising it to ``own`` gives exactly
    ``value_after``.  ``b`` may be negative; Python's pow inverts mod n."""
    if own_prime == deleted_prime:
        raise MemberRevoked("witness item was deleted")
    g, a, b = _xgcd(own_prime, deleted_prime)
    if g != 1:
        raise ValueError("member primes are not coprime")
    if ops is not None:
        ops.modexp += 2
    return (pow(value_after, a, modulus) * pow(witness_value, b, modulus)) % modulus


def apply_updates(
    witness: RsaWitness,
    updates: list[AccUpdate],
    modulus: int,
    ops: OpCounter | None = None,
) -> RsaWitness:
    """Replay log records (in log order) onto a witness."""
    value = witness.value
    position = witness.as_of
    for record in updates:
        if record.seq <= position:
            continue
        if record.kind == ADD:
            value = apply_add(value, record.prime, modulus, ops)
        else:
            value = apply_delete(value, witness.for_prime, record.prime, record.value_after, modulus, ops)
        position = record.seq
    return RsaWitness(value, witness.for_prime, position)


def update_witness(
    witness: RsaWitness,
    deletions: list[AccUpdate],
    additions: list[int],
    modulus: int,
    ops: OpCounter | None = None,
) -> RsaWitness:
    """Epoch-shaped repair: additions (primes) first, then the epoch's
    deletion records in order.  Matches the publication ordering, where all
    of an epoch's additions precede its boundary deletions."""
    value = witness.value
    for prime in additions:
        value = apply_add(value, prime, modulus, ops)
    position = witness.as_of
    for record in deletions:
        value = apply_delete(value, witness.for_prime, record.prime, record.value_after, modulus, ops)
        position = record.seq
    return RsaWitness(value, witness.for_prime, position)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
        old_t, t = t, old_t - quotient * t
    return old_r, old_s, old_t
