"""Run reports and their CSV form."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..scaled_algebra import format_value


@dataclass
class Table:
    name: str
    header: list[str]
    rows: list[list] = field(default_factory=list)

    def add(self, *row):
        if len(row) != len(self.header):
            raise ValueError(f"row of length {len(row)} for {len(self.header)} columns in {self.name}")
        self.rows.append(list(row))


@dataclass
class Check:
    name: str
    operation: str
    value: float
    tolerance: float
    passed: bool
    note: str = ""


@dataclass
class RunReport:
    experiment: str
    config_echo: list[tuple[str, str]]
    tables: list[Table]
    checks: list[Check]
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def table(self, name) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "nan" if math.isnan(v) else format_value(v)
    if isinstance(v, (complex, np.complexfloating)):
        return format_value(v)
    return str(v)


def checks_table(report: RunReport) -> Table:
    t = Table("checks", ["check", "operation", "value", "tolerance", "passed", "note"])
    for c in report.checks:
        t.add(c.name, c.operation, c.value, c.tolerance, c.passed, c.note)
    return t


def render(table: Table, echo) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.header)
    for k, v in echo:
        buf.write(f"# {k} = {v}\n")
    for row in table.rows:
        w.writerow([cell(v) for v in row])
    return buf.getvalue()


def output_paths(out, report: RunReport) -> dict[str, Path]:
    """Main table goes to ``out``; every other table to ``<stem>_<name>.csv`` beside it."""
    out = Path(out)
    paths = {report.tables[0].name: out}
    for t in report.tables[1:] + [checks_table(report)]:
        paths[t.name] = out.with_name(f"{out.stem}_{t.name}{out.suffix or '.csv'}")
    return paths


def write_report(report: RunReport, out) -> list[Path]:
    paths = output_paths(out, report)
    written = []
    for t in report.tables + [checks_table(report)]:
        p = paths[t.name]
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(render(t, report.config_echo))
        written.append(p)
    return written
