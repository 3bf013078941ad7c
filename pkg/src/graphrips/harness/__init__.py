"""Scenario-driven recovery runs, sweeps and reports."""

from .pipeline import MatrixCache, RecoveryReport, run, run_gh_pipeline, run_h_pipeline
from .scenario import Sampling, ScalePolicy, Scenario, load_scenario
from .sweep import SUMMARY_HEADER, sweep

__all__ = [
    "MatrixCache",
    "RecoveryReport",
    "run",
    "run_gh_pipeline",
    "run_h_pipeline",
    "Sampling",
    "ScalePolicy",
    "Scenario",
    "load_scenario",
    "SUMMARY_HEADER",
    "sweep",
]
