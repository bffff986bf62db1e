"""Random-script equivalence against the brute-force oracle (fast slice;
the acceptance suite runs the full 1000-script version)."""

import pytest

from revockit.methods import METHOD_NAMES

from oracle_utils import run_script

SCRIPTS_PER_METHOD = 120


@pytest.mark.parametrize("method", METHOD_NAMES)
def test_scripts_match_oracle(method):
    failures = []
    for seed in range(SCRIPTS_PER_METHOD):
        mismatches = run_script(method, seed)
        if mismatches:
            failures.append((seed, mismatches[:3]))
    assert not failures, f"{method}: {failures[:5]}"


@pytest.mark.parametrize("max_age", [0, 1, 3])
def test_freshness_window_respected(max_age):
    for seed in range(40):
        assert not run_script("lvvc", seed, max_age=max_age)
        assert not run_script("rsa-accumulator", seed, max_age=max_age)
