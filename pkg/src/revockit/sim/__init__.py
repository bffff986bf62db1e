from .ledger import InteractionLedger, LedgerRecord
from .matrix import canonical_probe_scenario, group_matrices, interaction_matrix
from .metrics import Metrics
from .runner import ScenarioResult, run_scenario
from .scenario import Scenario
from .sweep import MethodSweep, SweepPoint, scaling_sweep

__all__ = [
    "InteractionLedger",
    "LedgerRecord",
    "Metrics",
    "MethodSweep",
    "Scenario",
    "ScenarioResult",
    "SweepPoint",
    "canonical_probe_scenario",
    "group_matrices",
    "interaction_matrix",
    "run_scenario",
    "scaling_sweep",
]
