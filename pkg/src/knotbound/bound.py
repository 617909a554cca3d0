"""Check the composite crossing-number inequality against a knot table.

For summands with crossing numbers ``c_i`` and a diagram of the sum with
``c`` crossings, the verdict is ``c > sum(c_i)/16`` and ``c <= sum(c_i)``,
both decided with exact rationals.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .diagram import Diagram, DiagramError, iterated_sum, parse_pd_code
from .models import AggregateReport, ModelSet, aggregate_bound, per_crossing_bound

FIXTURE_ENV = "KNOTBOUND_FIXTURES"


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class KnotTable:
    entries: dict[str, int]
    provenance: dict[str, str] = field(default_factory=dict)

    def __getitem__(self, name: str) -> int:
        try:
            return self.entries[name]
        except KeyError:
            raise BoundError(f"unknown knot {name!r}") from None

    def names(self) -> list[str]:
        return list(self.entries)


def load_knot_table(source: str, provenance: str = "input") -> KnotTable:
    entries: dict[str, int] = {}
    first = True
    for lineno, row in enumerate(csv.reader(io.StringIO(source)), 1):
        if not row or not "".join(row).strip() or row[0].startswith("#"):
            continue
        if len(row) != 2:
            raise BoundError(f"line {lineno}: expected name,crossing_number")
        name, raw = row[0].strip(), row[1].strip()
        if first:
            first = False
            if raw == "crossing_number":
                continue
        try:
            value = int(raw)
        except ValueError:
            raise BoundError(f"line {lineno}: {raw!r} is not an integer") from None
        if value < 0:
            raise BoundError(f"line {lineno}: crossing number {value} out of range")
        if name in entries:
            raise BoundError(f"line {lineno}: duplicate name {name!r}")
        entries[name] = value
    return KnotTable(entries, {n: provenance for n in entries})


def _fixture_text(filename: str) -> str:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return (Path(override) / filename).read_text()
    return resources.files("knotbound").joinpath("data", filename).read_text()


def bundled_table() -> KnotTable:
    return load_knot_table(_fixture_text("crossing_numbers.csv"), provenance="bundled table")


def bundled_diagrams() -> dict[str, Diagram]:
    return _bundled_diagrams(os.environ.get(FIXTURE_ENV, ""))


@lru_cache(maxsize=4)
def _bundled_diagrams(_key: str) -> dict[str, Diagram]:
    out = {}
    for line in _fixture_text("prime_pd.txt").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, pd = line.split(None, 1)
        out[name] = parse_pd_code(pd)
    return out


@dataclass(frozen=True)
class BoundReport:
    components: tuple[str, ...]
    component_sum: int
    crossings: int
    lower: Fraction
    verdict: bool
    faces_ok: bool = True
    budget: AggregateReport | None = None

    def to_dict(self) -> dict[str, object]:
        out: dict[str, object] = {
            "components": list(self.components),
            "component_sum": self.component_sum,
            "crossings": self.crossings,
            "lower_bound": f"{self.lower.numerator}/{self.lower.denominator}",
            "verdict": self.verdict,
            "faces_ok": self.faces_ok,
        }
        if self.budget is not None:
            out["budget"] = dict(self.budget._asdict())
        return out

    def summary(self) -> str:
        names = " # ".join(self.components) or "(none)"
        rel = ">" if self.crossings > self.lower else "<="
        return (f"{names}: c = {self.crossings} {rel} {self.lower} = {self.component_sum}/16, "
                f"verdict {'true' if self.verdict else 'false'}")


def verdict(c: int, s: int) -> bool:
    return Fraction(c) > Fraction(s, 16) and c <= s


def check_bound(components: Sequence[str], table: KnotTable, diagram: Diagram | None = None,
                diagrams: Mapping[str, Diagram] | None = None) -> BoundReport:
    s = sum(table[n] for n in components)
    if diagram is None:
        pool = bundled_diagrams() if diagrams is None else diagrams
        missing = [n for n in components if n not in pool]
        if missing:
            raise BoundError(f"no bundled diagram for {', '.join(missing)}")
        diagram = iterated_sum([pool[n] for n in components])
    c = diagram.n_crossings
    faces_ok = diagram.is_unknot_sentinel or len(diagram.faces()) == c + 2
    return BoundReport(tuple(components), s, c, Fraction(s, 16), verdict(c, s), faces_ok)


def budget_certificate(diagram: Diagram, assignment: Mapping[int, ModelSet]) -> BoundReport:
    v = diagram.n_crossings
    missing = [c for c in range(v) if c not in assignment]
    if missing:
        raise BoundError(f"uncovered crossing(s): {missing}")
    extra = sorted(set(assignment) - set(range(v)))
    if extra:
        raise BoundError(f"assignment names crossings outside the diagram: {extra}")
    budgets = [per_crossing_bound(assignment[c]) for c in range(v)]
    agg = aggregate_bound(budgets, v)
    return BoundReport(
        components=(),
        component_sum=agg.total,
        crossings=v,
        lower=Fraction(agg.total, 16),
        verdict=agg.holds and not agg.degenerate,
        budget=agg,
    )


__all__ = [
    "BoundError", "BoundReport", "KnotTable", "bundled_diagrams", "bundled_table", "budget_certificate",
    "check_bound", "load_knot_table", "verdict", "DiagramError",
]
