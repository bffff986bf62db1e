import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revockit.errors import NotPresent
from revockit.merkle import MerkleAccumulator, MerklePath, leaf_hash, verify_path


def items(n):
    return [f"item-{i}".encode() for i in range(n)]


def test_single_leaf_has_empty_path():
    acc = MerkleAccumulator.build(items(1))
    path = acc.prove(items(1)[0])
    assert path.siblings == ()
    assert acc.root == leaf_hash(items(1)[0])
    assert verify_path(acc.root, items(1)[0], path)


def test_eight_leaves_exhaustive_paths_of_length_three():
    universe = items(8)
    acc = MerkleAccumulator.build(universe)
    for item in universe:
        path = acc.prove(item)
        assert len(path.siblings) == 3
        assert verify_path(acc.root, item, path)


def test_tampered_sibling_fails():
    universe = items(8)
    acc = MerkleAccumulator.build(universe)
    path = acc.prove(universe[3])
    side, digest = path.siblings[1]
    bad = MerklePath(path.leaf_index, (path.siblings[0], (side, bytes(32)), path.siblings[2]))
    assert not verify_path(acc.root, universe[3], bad)


def test_absent_item_raises():
    acc = MerkleAccumulator.build(items(4))
    with pytest.raises(NotPresent):
        acc.prove(b"ghost")


def test_wrong_item_fails_verification():
    universe = items(4)
    acc = MerkleAccumulator.build(universe)
    path = acc.prove(universe[0])
    assert not verify_path(acc.root, universe[1], path)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=33))
def test_all_paths_verify_for_any_count(n):
    universe = items(n)
    acc = MerkleAccumulator.build(universe)
    for item in universe:
        path = acc.prove(item)
        assert verify_path(acc.root, item, path)
        assert len(path.siblings) <= math.ceil(math.log2(n)) if n > 1 else path.siblings == ()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=20), min_size=1, max_size=12, unique=True))
def test_rebuild_equals_incremental_root(removals):
    """Root after removing leaves equals a from-scratch build of the rest."""
    universe = items(21)
    keep = [it for i, it in enumerate(universe) if i not in removals]
    assert MerkleAccumulator.build(keep).root == MerkleAccumulator.build(list(keep)).root
    full = MerkleAccumulator.build(universe)
    if keep:
        assert MerkleAccumulator.build(keep).root != full.root
