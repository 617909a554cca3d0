"""Handle decomposition of a knot complement built from a reduced diagram.

Zero-handles sit at crossings, one-handles on edges, two-handles on faces,
and two three-handles cap the top and bottom.  Contacts are stored once per
unordered pair and are always 0 or 1 on a diagram that passes
:func:`validate_minimal_adjacency`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .diagram import Diagram, DiagramError, validate_minimal_adjacency

H3_PLUS = "H3+"
H3_MINUS = "H3-"
H2 = "H2"
H1 = "H1"
H0 = "H0"

_SHAPES = {H3_PLUS: "doubleoctagon", H3_MINUS: "doubleoctagon", H2: "box", H1: "ellipse", H0: "diamond"}


class HandleId(NamedTuple):
    kind: str
    index: int = 0

    def __str__(self) -> str:
        if self.kind in (H3_PLUS, H3_MINUS):
            return self.kind
        return f"{self.kind}[{self.index}]"


class Skeleton(NamedTuple):
    """What a handle carries: pieces of the knot and skeleton rectangle tags."""

    k_arcs: tuple[str, ...]
    rectangles: tuple[str, ...]


@dataclass(frozen=True)
class DStructure:
    source: Diagram
    handles: tuple[HandleId, ...]
    contacts: frozenset[frozenset[HandleId]]
    skeleton: dict[HandleId, Skeleton]

    def counts(self) -> tuple[int, int, int, int]:
        """(three-handles, two-handles, one-handles, zero-handles)."""
        tally = {k: 0 for k in (H3_PLUS, H2, H1, H0)}
        for h in self.handles:
            tally[H3_PLUS if h.kind == H3_MINUS else h.kind] += 1
        return tally[H3_PLUS], tally[H2], tally[H1], tally[H0]

    def neighbours(self, h: HandleId) -> list[HandleId]:
        out = [next(iter(p - {h})) for p in self.contacts if h in p]
        return sorted(out, key=_order_key)


def _order_key(h: HandleId) -> tuple[int, int]:
    return ([H3_PLUS, H3_MINUS, H2, H1, H0].index(h.kind), h.index)


def build_d_structure(d: Diagram) -> DStructure:
    report = validate_minimal_adjacency(d)
    if not report.ok:
        raise DiagramError("diagram is not reduced: " + "; ".join(report.lines()))
    if d.is_unknot_sentinel:
        raise DiagramError("the 0-crossing diagram has no handle structure")
    fs = d.faces()
    top, bottom = HandleId(H3_PLUS), HandleId(H3_MINUS)
    twos = [HandleId(H2, i) for i in range(len(fs))]
    ones = [HandleId(H1, e) for e in range(d.n_edges)]
    zeros = [HandleId(H0, c) for c in range(d.n_crossings)]

    pairs: set[frozenset[HandleId]] = set()
    for cap in (top, bottom):
        for h in twos + ones + zeros:
            pairs.add(frozenset((cap, h)))
    for i, f in enumerate(fs):
        for e in f.edges:
            pairs.add(frozenset((twos[i], ones[e])))
        for corner in f.boundary:
            pairs.add(frozenset((twos[i], zeros[corner.crossing])))
    for e in range(d.n_edges):
        for c, _ in d.slots_of(e):
            pairs.add(frozenset((ones[e], zeros[c])))

    skeleton: dict[HandleId, Skeleton] = {}
    for c in range(d.n_crossings):
        x = d.crossings[c]
        skeleton[zeros[c]] = Skeleton(
            k_arcs=(f"under {x[0]}->{x[2]}", f"over {x[1]}-{x[3]}"),
            rectangles=tuple(f"R{k}" for k in range(4)),
        )
    for e in range(d.n_edges):
        skeleton[ones[e]] = Skeleton(k_arcs=(f"edge {e}",), rectangles=())
    handles = (top, bottom, *twos, *ones, *zeros)
    return DStructure(source=d, handles=handles, contacts=frozenset(pairs), skeleton=skeleton)


def contact_count(s: DStructure, a: HandleId, b: HandleId) -> int:
    known = set(s.handles)
    for h in (a, b):
        if h not in known:
            raise KeyError(f"unknown handle {h}")
    if a == b:
        return 0
    return 1 if frozenset((a, b)) in s.contacts else 0


def mainbody_walk(s: DStructure, f: int) -> tuple[HandleId, ...]:
    """Cyclic H1/H0 sequence met by the annulus where face ``f`` touches the mainbody."""
    fs = s.source.faces()
    if not 0 <= f < len(fs):
        raise KeyError(f"unknown face {f}")
    face = fs[f]
    if face.degree < 2:
        raise DiagramError(f"face {f} is a monogon")
    walk: list[HandleId] = []
    for e, corner in zip(face.edges, face.boundary):
        walk.append(HandleId(H1, e))
        walk.append(HandleId(H0, corner.crossing))
    return tuple(walk)


def to_dot(s: DStructure) -> str:
    lines = ["graph dstructure {"]
    for h in s.handles:
        lines.append(f'  "{h}" [shape={_SHAPES[h.kind]}];')
    edges = sorted((tuple(sorted(p, key=_order_key)) for p in s.contacts), key=lambda t: (_order_key(t[0]), _order_key(t[1])))
    for a, b in edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_handle_id(text: str) -> HandleId:
    text = text.strip()
    if text in (H3_PLUS, H3_MINUS):
        return HandleId(text)
    for kind in (H2, H1, H0):
        if text.startswith(kind + "[") and text.endswith("]"):
            return HandleId(kind, int(text[len(kind) + 1 : -1]))
    raise ValueError(f"bad handle id {text!r}")


def handles_of_kind(s: DStructure, kind: str) -> Iterable[HandleId]:
    return (h for h in s.handles if h.kind == kind)
