"""Reproducible operation counters.

Wall-clock timings are device-bound; these counts are not, so they are the
portable half of every timing report.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    modexp: int = 0
    hash: int = 0
    sign: int = 0
    sig_verify: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "modexp": self.modexp,
            "hash": self.hash,
            "sign": self.sign,
            "sig_verify": self.sig_verify,
        }
