"""Piece models, their crossing budgets, and the per-crossing counting bound.

Each crossing region hosts a small set of piece models.  A model's budget is
the largest number of crossings its arcs can be forced to make inside the
projected region, found by enumerating boundary endpoint orders.  Summing
budgets per crossing and over a diagram gives the aggregate bound.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence


class ModelError(ValueError):
    pass


class ModelInfo(NamedTuple):
    name: str
    handle_kind: str  # "one-handle" or "zero-handle"
    k_arcs: int
    sheets: int
    mu_arcs: int  # auxiliary arcs the budget enumerator places
    note: str


_ONE = "one-handle"
_ZERO = "zero-handle"

CATALOG: tuple[ModelInfo, ...] = (
    ModelInfo("Z1", _ONE, 1, 1, 0, "single knot arc"),
    ModelInfo("Z2", _ONE, 1, 2, 2, "at most two auxiliary arcs"),
    ModelInfo("Z3", _ONE, 1, 3, 2, "at most three arcs in total"),
    ModelInfo("Zbar3", _ONE, 1, 3, 0, "same shape as Z3, adds no crossings"),
    ModelInfo("XZ3", _ZERO, 1, 3, 3, ""),
    ModelInfo("YZ3", _ZERO, 1, 3, 3, ""),
    ModelInfo("YZ1", _ONE, 1, 1, 0, "single knot arc"),
    ModelInfo("X1", _ZERO, 1, 1, 1, ""),
    ModelInfo("X2", _ZERO, 1, 2, 2, ""),
    ModelInfo("X3", _ZERO, 1, 3, 3, "top, bottom and middle boundary pieces"),
    ModelInfo("X4", _ZERO, 1, 4, 4, ""),
    ModelInfo("XY2", _ZERO, 1, 2, 2, ""),
    ModelInfo("Y2", _ZERO, 1, 2, 2, ""),
    ModelInfo("X1pY", _ZERO, 1, 1, 1, ""),
    ModelInfo("X2pY", _ZERO, 1, 2, 2, ""),
    ModelInfo("X3pY", _ZERO, 1, 3, 3, ""),
    ModelInfo("Y3p", _ZERO, 1, 3, 3, ""),
    ModelInfo("YZ2p", _ZERO, 1, 2, 2, ""),
    ModelInfo("Y2pZ", _ZERO, 1, 2, 2, ""),
    ModelInfo("X2ppZ", _ZERO, 1, 2, 2, ""),
    ModelInfo("O2pp", _ZERO, 1, 2, 2, ""),
    ModelInfo("Y3ppZ", _ZERO, 1, 3, 3, "combination of Z3 and O2pp"),
)
GENERALIZED: tuple[ModelInfo, ...] = (
    ModelInfo("GZ1", _ONE, 1, 1, 0, "merged Z1/YZ1 pieces"),
    ModelInfo("GZ2", _ONE, 1, 2, 2, "merged Z2 pieces"),
    ModelInfo("GZ3", _ONE, 1, 3, 2, "merged Z3/Zbar3 pieces"),
)
INFO = {m.name: m for m in CATALOG + GENERALIZED}

# zero-handle models left once the Z pieces are merged into generalized one-handles
REDUCED = ("X1", "X2", "X3", "X4", "XY2", "Y2", "X1pY", "X2pY", "X3pY", "Y3p", "YZ2p", "Y2pZ", "X2ppZ", "XZ3", "YZ3")

Z_FAMILY = frozenset({"Z1", "Z2", "Z3", "YZ1"})
PAIRABLE = frozenset({"Y2", "YZ3", "Y2pZ"})
NULL = "Null"

MUTATIONS: dict[str, tuple[str, ...]] = {
    "X1": ("X1pY",),
    "X2": ("X2pY", "Z2"),
    "X3": ("X3pY", "Y3p", "Z3"),
    "Z2": (NULL,),
    "Y2": ("Y2pZ",),
    "Y3p": ("Z3",),
    "XY2": ("YZ2p",),
    "X2pY": ("X2ppZ", "Z2"),
    "X3pY": ("Z3",),
}

_Y2_SLOT = ("Y2", "YZ3", "Z1")
# (case, slots); each slot lists the model and its replacements
COOCCURRENCE: tuple[tuple[int, tuple[tuple[str, ...], ...]], ...] = (
    (1, (("Z2", "Z1", "Z3"), ("Z2", "Z1", "Z3"))),
    (1, (("X4",), ("Z1",), ("Z1",))),
    (1, (("X3",), ("Z1",))),
    (1, (("X2",),)),
    (2, (_Y2_SLOT, _Y2_SLOT)),
    (3, (("X2pY",),)),
    (3, (("Y3p",), ("Z1",))),
    (3, (("X3pY", "Z3"), ("Z1",))),
    (4, (("Y2pZ",), _Y2_SLOT)),
    (5, (("XZ3",), ("Z1",), ("Z1",))),
    (5, (("XY2",), ("Z1",))),
    (5, (("X1",),)),
    (6, (("YZ1",), _Y2_SLOT + ("YZ1",))),
    (7, (("YZ2p",), ("Z1",))),
    (7, (("X1pY",),)),
    (8, (("Y2pZ",), ("YZ1",))),
)


def model_catalog(generalized: bool = True) -> tuple[ModelInfo, ...]:
    return CATALOG + GENERALIZED if generalized else CATALOG


def mutate_model(m: str) -> frozenset[str]:
    if m not in INFO:
        raise ModelError(f"unknown model {m!r}")
    return frozenset(MUTATIONS.get(m, ()))


def mutation_closure(m: str) -> frozenset[str]:
    """``m`` together with everything it can turn into, ``Null`` meaning removal."""
    seen = {m}
    stack = [m]
    while stack:
        cur = stack.pop()
        if cur == NULL:
            continue
        for nxt in MUTATIONS.get(cur, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


@dataclass(frozen=True)
class ModelSet:
    crossing: int
    models: tuple[str, ...]

    def __post_init__(self) -> None:
        for m in self.models:
            if m not in INFO:
                raise ModelError(f"unknown model {m!r}")


class Template(NamedTuple):
    case: int
    row: int
    models: tuple[str, ...]


def cooccurrence_sets() -> list[Template]:
    """Every row expanded over its replacement choices, slot by slot."""
    out = []
    for row, (case, slots) in enumerate(COOCCURRENCE):
        for combo in itertools.product(*slots):
            out.append(Template(case, row, combo))
    return out


def _canon(models: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(m for m in models if m != NULL))


def template_variants(t: Template) -> frozenset[tuple[str, ...]]:
    """All multisets reachable from a template by mutating any of its entries."""
    return frozenset(_canon(c) for c in itertools.product(*(sorted(mutation_closure(m)) for m in t.models)))


@lru_cache(maxsize=1)
def allowed_multisets() -> frozenset[tuple[str, ...]]:
    out: set[tuple[str, ...]] = set()
    for t in cooccurrence_sets():
        out |= template_variants(t)
    return frozenset(out)


# -- crossing budgets ------------------------------------------------------

def chord_layout(mu_arcs: int) -> list[tuple[int, int]]:
    """Chords on a square with sides 0..3: the knot arc runs 0->2, auxiliary arcs alternate corners."""
    chords = [(0, 2)]
    for i in range(mu_arcs):
        if i == 0:
            chords.append((0, 2))
        elif i % 2:
            chords.append((0, 1))
        else:
            chords.append((2, 3))
    return chords


def max_forced_crossings(chords: Sequence[tuple[int, int]]) -> int:
    """Largest number of interleaving chord pairs over all endpoint orders along each side.

    Straight chords realize exactly the interleaving pairs, and any drawing
    must cross each interleaving pair, so this is the worst minimal count.
    """
    per_side: dict[int, list[int]] = {s: [] for s in range(4)}
    for i, (a, b) in enumerate(chords):
        per_side[a].append(i)
        per_side[b].append(i)
    best = 0
    sides = [s for s in range(4) if per_side[s]]
    for perms in itertools.product(*(itertools.permutations(per_side[s]) for s in sides)):
        pos: dict[int, list[int]] = {i: [] for i in range(len(chords))}
        k = 0
        for perm in perms:
            for i in perm:
                pos[i].append(k)
                k += 1
        count = 0
        for i, j in itertools.combinations(range(len(chords)), 2):
            lo, hi = sorted(pos[i])
            inside = sum(lo < p < hi for p in pos[j])
            count += inside == 1
        best = max(best, count)
    return best


@lru_cache(maxsize=None)
def max_crossings(m: str) -> int:
    info = INFO.get(m)
    if info is None:
        raise ModelError(f"unknown model {m!r}")
    if m == "Zbar3":
        return 0
    return max_forced_crossings(chord_layout(info.mu_arcs))


def budget_provenance(m: str) -> str:
    return "calibrated" if m in ("X3", "Zbar3") else "derived"


class CrossingBudget(NamedTuple):
    crossing: int
    per_model: tuple[tuple[str, int], ...]
    allowance: int
    total: int
    cap: int

    @property
    def holds(self) -> bool:
        return self.total <= self.cap


def _base(m: str) -> str:
    return {"GZ1": "Z1", "GZ2": "Z2", "GZ3": "Z3"}.get(m, m)


def per_crossing_bound(ms: ModelSet, check_template: bool = True) -> CrossingBudget:
    models = [_base(m) for m in ms.models if m != "Zbar3"]
    if check_template and models and _canon(models) not in allowed_multisets():
        raise ModelError(f"crossing {ms.crossing}: {' '.join(ms.models)} matches no co-occurrence row")
    heavy = [m for m in models if m not in Z_FAMILY]
    allowance = 1 if len(heavy) >= 2 and all(m in PAIRABLE for m in heavy) else 0
    per_model = tuple((m, max_crossings(m)) for m in ms.models)
    total = sum(v for _, v in per_model) + allowance
    cap = 11 if heavy else 16
    budget = CrossingBudget(ms.crossing, per_model, allowance, total, cap)
    if not budget.holds:
        raise ModelError(f"crossing {ms.crossing}: budget {total} exceeds cap {cap}; enumerator model is wrong")
    return budget


class AggregateReport(NamedTuple):
    total: int
    limit: int
    holds: bool
    strict: bool
    strict_witness: int | None
    degenerate: bool

    def format(self) -> str:
        rel = "<" if self.total < self.limit else "<=" if self.holds else ">"
        parts = [f"{self.total} {rel} {self.limit}"]
        if self.strict_witness is not None:
            parts.append(f"strict at crossing {self.strict_witness}")
        if self.degenerate:
            parts.append("degenerate")
        return ", ".join(parts)


def aggregate_bound(per_crossing: Sequence[CrossingBudget], c_total: int) -> AggregateReport:
    if len(per_crossing) != c_total:
        raise ModelError(f"missing budgets: {len(per_crossing)} given for {c_total} crossings")
    total = sum(b.total for b in per_crossing)
    limit = 16 * c_total
    witness = next((b.crossing for b in per_crossing if b.total < 16), None)
    return AggregateReport(
        total=total,
        limit=limit,
        holds=total <= limit and all(b.holds for b in per_crossing),
        strict=witness is not None,
        strict_witness=witness,
        degenerate=total == 0,
    )


# -- generalized one-handles -----------------------------------------------

MERGE_GROUP = {"Z1": "GZ1", "YZ1": "GZ1", "Z2": "GZ2", "Z3": "GZ3", "Zbar3": "GZ3"}


class MergedHandle(NamedTuple):
    model: str
    members: tuple[str, ...]


def merge_generalized(pieces: Mapping[str, str], contacts: Iterable[tuple[str, str]]) -> list[MergedHandle]:
    """Contract touching Z pieces of one family into generalized one-handles.

    A contraction that closes a loop would build a solid torus, which cannot
    happen for a nontrivial summand, so it is an error.
    """
    parent = {p: p for p in pieces}

    def find(p: str) -> str:
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for a, b in contacts:
        if a not in pieces or b not in pieces:
            raise ModelError(f"contact {a}-{b} names an unknown piece")
        ga, gb = MERGE_GROUP.get(pieces[a]), MERGE_GROUP.get(pieces[b])
        if ga is None or ga != gb:
            continue
        ra, rb = find(a), find(b)
        if ra == rb:
            raise ModelError(f"merging {a} and {b} closes a loop (solid torus)")
        parent[ra] = rb
    groups: dict[str, list[str]] = {}
    for p in sorted(pieces):
        groups.setdefault(find(p), []).append(p)
    out = []
    for members in groups.values():
        m = pieces[members[0]]
        model = MERGE_GROUP.get(m, m) if m in MERGE_GROUP else m
        out.append(MergedHandle(model, tuple(members)))
    return sorted(out, key=lambda h: h.members)


# -- emission --------------------------------------------------------------

def budget_table_text() -> str:
    rows = [(m.name, str(max_crossings(m.name)), budget_provenance(m.name), m.handle_kind, str(m.sheets)) for m in model_catalog()]
    head = ("model", "budget", "source", "kind", "sheets")
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(len(head))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def tables_document() -> dict[str, object]:
    return {
        "catalog": [dict(m._asdict(), budget=max_crossings(m.name), source=budget_provenance(m.name)) for m in model_catalog()],
        "mutations": [{"model": k, "to": list(v), "source": "tabulated"} for k, v in MUTATIONS.items()],
        "cooccurrence": [{"case": t.case, "row": t.row, "models": list(t.models), "source": "tabulated"} for t in cooccurrence_sets()],
    }


def tables_json() -> str:
    return json.dumps(tables_document(), indent=2, sort_keys=True)


def counting_lemma_report() -> list[tuple[tuple[str, ...], int, int]]:
    """(multiset, total, cap) for every mutation-closed co-occurrence variant."""
    out = []
    for ms in sorted(allowed_multisets()):
        b = per_crossing_bound(ModelSet(0, ms), check_template=False)
        out.append((ms, b.total, b.cap))
    return out


def row_counts() -> Counter[int]:
    return Counter(t.case for t in cooccurrence_sets())
