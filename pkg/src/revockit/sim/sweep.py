"""Scaling sweeps: measure each method's characteristic payload across
populations, fit a log-log slope, and classify the growth."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..methods import METHOD_CLASSES
from .runner import run_scenario
from .scenario import Scenario


@dataclass(frozen=True)
class SweepPoint:
    method: str
    population: int
    kind: str
    value: int


@dataclass
class MethodSweep:
    method: str
    kind: str
    points: list[SweepPoint]
    slope: float
    residual: float
    verdict: str
    declared: str

    @property
    def ok(self) -> bool:
        return self.verdict == self.declared


def sweep_scenario(method_name: str, population: int, seed: int, profile: str, epochs: int, revocation_fraction: float) -> Scenario:
    cls = METHOD_CLASSES[method_name]
    if cls.series_kind == "holder_sync_bytes" or cls.series_kind == "refresh_payload_bytes":
        return Scenario(
            method=method_name,
            population=population,
            epochs=epochs,
            seed=seed,
            profile=profile,
            revocation_fraction=revocation_fraction,
            sync_policy="tracked",
            tracked_holders=[0],
            protect_tracked=True,
            presentations=[[epochs - 1, 0, 0]],
            # issuer-side deletion shortcut; downloaded bytes are unaffected
            rsa_use_trapdoor=True,
        )
    # verifier-side series: one cold verification after one revocation epoch
    return Scenario(
        method=method_name,
        population=population,
        epochs=3,
        seed=seed,
        profile=profile,
        revocations=[[1, 1]],
        sync_policy="none",
        presentations=[[2, 0, 0]],
        protect_tracked=True,
        tracked_holders=[0],
    )


def measure_point(method_name: str, population: int, seed: int = 11, profile: str = "toy",
                  epochs: int = 6, revocation_fraction: float = 0.01) -> SweepPoint:
    cls = METHOD_CLASSES[method_name]
    scenario = sweep_scenario(method_name, population, seed, profile, epochs, revocation_fraction)
    result = run_scenario(scenario)
    kind = cls.series_kind
    if kind == "holder_sync_bytes":
        value = result.metrics.sync["tracked_download_bytes"]["holder-0"]
    elif kind == "refresh_payload_bytes":
        sizes = result.metrics.sync["response_sizes"]
        value = max(sizes) if sizes else 0
    else:  # verifier download / query bytes
        value = sum(o["bytes_queried"] for o in result.outcomes)
    return SweepPoint(method_name, population, kind, value)


def fit_loglog(points: list[SweepPoint]) -> tuple[float, float]:
    xs = np.log([p.population for p in points])
    ys = np.log([max(p.value, 1) for p in points])
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return float(slope), residual


def classify_slope(slope: float) -> str:
    if slope < 0.5:
        return "constant"
    if slope < 1.5:
        return "linear"
    return "superlinear"


def scaling_sweep(method_name: str, populations: list[int], seed: int = 11, profile: str = "toy",
                  epochs: int = 6, revocation_fraction: float = 0.01) -> MethodSweep:
    if len(populations) < 2:
        raise ValueError("need at least two populations to fit a slope")
    points = [
        measure_point(method_name, n, seed, profile, epochs, revocation_fraction)
        for n in sorted(populations)
    ]
    slope, residual = fit_loglog(points)
    cls = METHOD_CLASSES[method_name]
    return MethodSweep(
        method=method_name,
        kind=cls.series_kind,
        points=points,
        slope=slope,
        residual=residual,
        verdict=classify_slope(slope),
        declared=cls.scaling_class,
    )
