import pytest

from revockit.rng import derive_stream
from revockit.signing import KeyRegistry, make_issuer_keypair


@pytest.fixture
def rng():
    return derive_stream(1234, "tests")


@pytest.fixture
def registry():
    return KeyRegistry(scheme_name="hmac-sha256")


@pytest.fixture
def issuer(rng, registry):
    keypair = make_issuer_keypair("issuer-A", "hmac-sha256", rng)
    registry.register(keypair.issuer_id, keypair.verifying_key)
    return keypair
