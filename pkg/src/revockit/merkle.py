"""Merkle-tree accumulator over an ordered allowlist of items.

Leaves and interior nodes are domain separated (0x00 / 0x01 prefixes).  Odd
nodes are promoted unchanged, so a power-of-two leaf count gives paths of
exactly log2(n) siblings.  Deletion is rebuild-from-scratch: the tree is an
allowlist, and removing a leaf invalidates every other path by design.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counters import OpCounter
from .encoding import concat, frame, sha256
from .errors import NotPresent

LEFT = 0
RIGHT = 1


def leaf_hash(item: bytes, ops: OpCounter | None = None) -> bytes:
    if ops is not None:
        ops.hash += 1
    return sha256(b"\x00", item)


def _node_hash(left: bytes, right: bytes, ops: OpCounter | None = None) -> bytes:
    if ops is not None:
        ops.hash += 1
    return sha256(b"\x01", left, right)


def _next_level(level: list[bytes], ops: OpCounter | None = None) -> list[bytes]:
    nxt = [_node_hash(level[i], level[i + 1], ops) for i in range(0, len(level) - 1, 2)]
    if len(level) % 2:
        nxt.append(level[-1])
    return nxt


@dataclass(frozen=True)
class MerklePath:
    leaf_index: int
    siblings: tuple[tuple[int, bytes], ...]  # (side the sibling sits on, hash)

    def to_bytes(self) -> bytes:
        parts = [frame(self.leaf_index.to_bytes(8, "big"))]
        for side, digest in self.siblings:
            parts.append(frame(bytes([side]) + digest))
        return concat(*parts)


@dataclass
class MerkleAccumulator:
    leaves: list[bytes]
    root: bytes
    epoch: int = 0
    ops: OpCounter | None = None

    @classmethod
    def build(cls, items: list[bytes], epoch: int = 0, ops: OpCounter | None = None) -> "MerkleAccumulator":
        leaves = [leaf_hash(item, ops) for item in items]
        acc = cls(leaves=leaves, root=b"", epoch=epoch, ops=ops)
        acc.root = acc._compute_root()
        return acc

    def _compute_root(self) -> bytes:
        if not self.leaves:
            return sha256(b"\x02empty")
        level = list(self.leaves)
        while len(level) > 1:
            level = _next_level(level, self.ops)
        return level[0]

    def prove(self, item: bytes) -> MerklePath:
        target = leaf_hash(item, self.ops)
        try:
            index = self.leaves.index(target)
        except ValueError:
            raise NotPresent(item.hex()) from None
        siblings: list[tuple[int, bytes]] = []
        level = list(self.leaves)
        pos = index
        while len(level) > 1:
            if pos % 2 == 1:
                siblings.append((LEFT, level[pos - 1]))
            elif pos + 1 < len(level):
                siblings.append((RIGHT, level[pos + 1]))
            # else: odd node promoted unchanged, no sibling at this level
            pos //= 2
            level = _next_level(level, self.ops)
        return MerklePath(index, tuple(siblings))


def verify_path(root: bytes, item: bytes, path: MerklePath, ops: OpCounter | None = None) -> bool:
    digest = leaf_hash(item, ops)
    for side, sibling in path.siblings:
        if side == LEFT:
            digest = _node_hash(sibling, digest, ops)
        else:
            digest = _node_hash(digest, sibling, ops)
    return digest == root
