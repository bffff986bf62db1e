from .classify import AspectReport, PrivacyReport, classify_levels
from .probes import probe_correlation, probe_linkage, probe_transaction_data
from .transcripts import PresentationTranscript

__all__ = [
    "AspectReport",
    "PresentationTranscript",
    "PrivacyReport",
    "classify_levels",
    "probe_correlation",
    "probe_linkage",
    "probe_transaction_data",
]
