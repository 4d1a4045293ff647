"""Configurable experiments over the scale-field library with CSV output."""

from .config import ExperimentConfig
from .report import Check, RunReport, Table, write_report
from .runs import (
    run,
    run_axioms,
    run_commerce_demo,
    run_detector_sweep,
    run_gauge_check,
    run_packet,
    run_paths,
)

__all__ = [
    "ExperimentConfig",
    "RunReport",
    "Table",
    "Check",
    "write_report",
    "run",
    "run_axioms",
    "run_paths",
    "run_packet",
    "run_detector_sweep",
    "run_gauge_check",
    "run_commerce_demo",
]
