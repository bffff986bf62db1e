"""Privacy probes decided purely from observable artifacts.

* correlation -- do two verifiers of the same holder share a stable byte
  token (>= 16 contiguous bytes inside some presentation field)?
* linkage -- can a verifier re-evaluate a credential's validity at another
  epoch from retained presentation bytes alone, without the holder?
* transaction data -- does the issuer's observable log contain any
  verification-phase events?
"""

from __future__ import annotations

from ..encoding import byte_windows
from ..methods import RevocationMethod, VerifyContext
from ..sim.ledger import LedgerRecord
from .transcripts import PresentationTranscript

MIN_TOKEN_BYTES = 16


def _window_set(transcript: PresentationTranscript) -> set[bytes]:
    windows: set[bytes] = set()
    for _, data in transcript.fields:
        windows |= byte_windows(data, MIN_TOKEN_BYTES)
    return windows


def probe_correlation(transcripts: list[PresentationTranscript]) -> str:
    """`yes` iff some >=16-byte token shows up at two different verifiers."""
    if len({t.verifier_id for t in transcripts}) < 2:
        raise ValueError("correlation probe needs transcripts from >= 2 verifiers")
    if len({t.holder_index for t in transcripts}) != 1:
        raise ValueError("correlation probe compares presentations of one holder")
    by_verifier: dict[str, set[bytes]] = {}
    for t in transcripts:
        by_verifier.setdefault(t.verifier_id, set()).update(_window_set(t))
    seen: set[bytes] = set()
    for verifier_id, windows in sorted(by_verifier.items()):
        if windows & seen:
            return "yes"
        seen |= windows
    return "no"


def probe_linkage(
    method: RevocationMethod,
    retained: list[PresentationTranscript],
    truth: dict[int, bool],
    ctx: VerifyContext,
    now,
) -> str:
    """`yes` iff every retained presentation can be re-evaluated at ``now``
    and every re-evaluation matches the ground-truth validity."""
    for transcript in retained:
        verdict = method.reevaluate_retained(transcript.field_map(), ctx, now)
        if verdict is None or verdict != truth[transcript.holder_index]:
            return "no"
    return "yes"


def probe_transaction_data(issuer_view: list[LedgerRecord]) -> str:
    """`yes` iff verification-phase events are observable in the issuer's
    log (count > 0)."""
    count = sum(1 for r in issuer_view if r.phase == "verification")
    return "yes" if count > 0 else "no"
