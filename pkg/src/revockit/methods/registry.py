"""Method catalog: names, groups, and construction."""

from __future__ import annotations

from .base import MethodParams, RevocationMethod
from .bit_list import CompressedBitList
from .bloom_list import BloomList
from .credential_update import CredentialUpdateMethod
from .hidden_list import HiddenList
from .lvvc import LvvcMethod
from .merkle_method import MerkleAccumulatorMethod
from .rsa_method import RsaAccumulatorMethod
from .simple_list import SimpleList

METHOD_CLASSES: dict[str, type[RevocationMethod]] = {
    cls.name: cls
    for cls in (
        SimpleList,
        HiddenList,
        CompressedBitList,
        BloomList,
        RsaAccumulatorMethod,
        MerkleAccumulatorMethod,
        CredentialUpdateMethod,
        LvvcMethod,
    )
}

METHOD_NAMES = list(METHOD_CLASSES)

# assessment groups in presentation order, with their member methods
GROUPS: list[tuple[str, list[str]]] = [
    ("List Based", ["simple-list"]),
    ("List Based Hidden", ["hidden-list"]),
    ("Compressed List", ["bit-list", "bloom-list"]),
    ("Cryptographic Accumulators", ["rsa-accumulator", "merkle-accumulator"]),
    ("Credential Update", ["credential-update"]),
    ("LVVC", ["lvvc"]),
]


def make_method(name: str, params: MethodParams) -> RevocationMethod:
    try:
        cls = METHOD_CLASSES[name]
    except KeyError:
        raise ValueError(f"unknown method {name!r}; known: {', '.join(METHOD_NAMES)}") from None
    return cls(params)
