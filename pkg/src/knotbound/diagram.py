"""Knot diagrams from PD and signed Gauss codes, faces, and connected sums.

PD convention: ``X(a,b,c,d)`` lists the four edge labels of a crossing
counterclockwise, starting from the incoming under-strand.  Strands pass
straight through, so ``a -> c`` is the under-strand and ``b``/``d`` the over.
"""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class DiagramError(ValueError):
    """Raised for malformed or unsupported diagram input."""


class Corner(NamedTuple):
    crossing: int
    index: int  # corner k sits between slot k and slot k+1


@dataclass(frozen=True)
class Face:
    boundary: tuple[Corner, ...]
    edges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class Diagram:
    """Immutable 4-valent knot diagram.

    ``crossings[i]`` holds the four edge labels (``0..2V-1``) of crossing ``i``
    in PD order.  Labels are normalized so that walking along the knot visits
    them in increasing order, starting at the incoming under-strand of
    crossing 0.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    incoming: tuple[tuple[bool, bool, bool, bool], ...] = ()
    _faces: tuple[Face, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    @property
    def is_unknot_sentinel(self) -> bool:
        return not self.crossings

    def slots_of(self, label: int) -> list[tuple[int, int]]:
        return [(c, s) for c, x in enumerate(self.crossings) for s, e in enumerate(x) if e == label]

    def edge_ends(self, label: int) -> tuple[int, int]:
        """Crossings at the tail and head of an oriented edge."""
        tail = head = -1
        for c, x in enumerate(self.crossings):
            for s, e in enumerate(x):
                if e == label:
                    if self.incoming[c][s]:
                        head = c
                    else:
                        tail = c
        return tail, head

    def sign(self, c: int) -> int:
        """+1 for a right-handed crossing, -1 for left-handed."""
        return 1 if self.incoming[c][3] else -1

    def faces(self) -> tuple[Face, ...]:
        if self._faces is None:
            object.__setattr__(self, "_faces", _trace_faces(self.crossings))
        return self._faces  # type: ignore[return-value]

    def fingerprint(self) -> tuple[int, int, tuple[int, ...]]:
        """Isomorphism-invariant summary: (V, F, sorted face degrees)."""
        if self.is_unknot_sentinel:
            return (0, 2, (0, 0))
        fs = self.faces()
        return (self.n_crossings, len(fs), tuple(sorted(f.degree for f in fs)))


UNKNOT = Diagram(crossings=())


# -- parsing ---------------------------------------------------------------

_TUPLE = re.compile(r"[A-Za-z]?\s*[\(\[]([^\(\)\[\]]*)[\)\]]")


def parse_pd_code(text: str) -> Diagram:
    groups = _TUPLE.findall(text)
    stripped = _TUPLE.sub("", text).replace(",", " ").replace(";", " ").strip()
    if stripped:
        raise DiagramError(f"malformed tuple near {stripped[:20]!r}")
    if not groups:
        raise DiagramError("no crossings")
    raw: list[tuple[int, ...]] = []
    for g in groups:
        parts = [p.strip() for p in g.split(",") if p.strip()]
        try:
            vals = tuple(int(p) for p in parts)
        except ValueError:
            raise DiagramError(f"malformed tuple ({g})") from None
        if len(vals) != 4:
            raise DiagramError(f"malformed tuple ({g}): expected 4 labels")
        raw.append(vals)
    return from_pd(raw)


def from_pd(raw: Sequence[Sequence[int]]) -> Diagram:
    if not raw:
        raise DiagramError("no crossings")
    uses = Counter(e for x in raw for e in x)
    for label, k in sorted(uses.items()):
        if k == 1:
            raise DiagramError(f"open strand: label {label} used once")
        if k > 2:
            raise DiagramError(f"label {label} used {k} times")
    _check_connected(raw)
    where: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for c, x in enumerate(raw):
        for s, e in enumerate(x):
            where[e].append((c, s))

    # walk the knot from the incoming under-strand of crossing 0
    relabel: dict[int, int] = {}
    inc = [[False] * 4 for _ in raw]
    c, s = 0, 0
    while raw[c][s] not in relabel:
        relabel[raw[c][s]] = len(relabel)
        if inc[c][s]:
            break
        inc[c][s] = True
        out = (s + 2) % 4
        ends = where[raw[c][out]]
        c, s = ends[1] if ends[0] == (c, out) else ends[0]
    if len(relabel) != len(uses):
        raise DiagramError("multiple components")
    crossings = tuple(tuple(relabel[e] for e in x) for x in raw)
    for i, row in enumerate(inc):
        if not row[0] or row[2]:
            raise DiagramError(f"crossing {i}: first slot is not the incoming under-strand")
    d = Diagram(crossings=crossings, incoming=tuple(tuple(r) for r in inc))  # type: ignore[arg-type]
    if len(d.faces()) != d.n_crossings + 2:
        raise DiagramError("non-planar: rotation system does not embed in the sphere")
    return d


def _check_connected(raw: Sequence[Sequence[int]]) -> None:
    parent = list(range(len(raw)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first: dict[int, int] = {}
    for c, x in enumerate(raw):
        for e in x:
            if e in first:
                parent[find(c)] = find(first[e])
            else:
                first[e] = c
    if len({find(i) for i in range(len(raw))}) > 1:
        raise DiagramError("disconnected")


_GAUSS = re.compile(r"^([OUou])(\d+)([+-])$")


def parse_gauss_code(text: str) -> Diagram:
    """Build a diagram from a signed Gauss code like ``O1+ U2+ O3+ ...``."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise DiagramError("no crossings")
    seq: list[tuple[bool, int, int]] = []
    for tok in tokens:
        m = _GAUSS.match(tok)
        if not m:
            raise DiagramError(f"bad Gauss token {tok!r}")
        seq.append((m.group(1).upper() == "O", int(m.group(2)), 1 if m.group(3) == "+" else -1))
    seen: dict[int, list[int]] = defaultdict(list)
    for pos, (_, lab, _) in enumerate(seq):
        seen[lab].append(pos)
    for lab, ps in seen.items():
        if len(ps) != 2:
            raise DiagramError(f"crossing {lab} appears {len(ps)} time(s)")
        (o1, _, s1), (o2, _, s2) = seq[ps[0]], seq[ps[1]]
        if o1 == o2:
            raise DiagramError(f"crossing {lab} is not over once and under once")
        if s1 != s2:
            raise DiagramError(f"crossing {lab} has inconsistent signs")
    n = len(seq)
    order = sorted(seen, key=lambda lab: seen[lab][0])
    raw: list[tuple[int, int, int, int]] = []
    for lab in order:
        p, q = seen[lab]
        under, over = (p, q) if not seq[p][0] else (q, p)
        # edge k runs from token k to token k+1
        u_in, u_out = (under - 1) % n, under
        o_in, o_out = (over - 1) % n, over
        if seq[p][2] > 0:
            raw.append((u_in, o_out, u_out, o_in))
        else:
            raw.append((u_in, o_in, u_out, o_out))
    return from_pd(raw)


# -- faces -----------------------------------------------------------------

def _trace_faces(crossings: Sequence[Sequence[int]]) -> tuple[Face, ...]:
    # slot (c, s) is stored flat as 4*c + s; partner[i] is the other end of its edge
    first: dict[int, int] = {}
    partner = [0] * (4 * len(crossings))
    flat = [e for x in crossings for e in x]
    for i, e in enumerate(flat):
        j = first.pop(e, None)
        if j is None:
            first[e] = i
        else:
            partner[i], partner[j] = j, i

    seen = [False] * len(flat)
    out: list[Face] = []
    for start in range(len(flat)):
        if seen[start]:
            continue
        corners: list[Corner] = []
        edges: list[int] = []
        i = start
        while not seen[i]:
            seen[i] = True
            # leave through slot i, arrive at the far end, turn to the next slot clockwise
            edges.append(flat[i])
            j = partner[i]
            c2 = j >> 2
            nxt = 4 * c2 + ((j - 1) & 3)
            corners.append(Corner(c2, nxt & 3))
            i = nxt
        out.append(Face(boundary=tuple(corners), edges=tuple(edges)))
    return tuple(out)


def faces(d: Diagram) -> tuple[Face, ...]:
    """Faces of ``d``.  The 0-crossing sentinel has two empty faces."""
    if d.is_unknot_sentinel:
        return (Face((), ()), Face((), ()))
    return d.faces()


# -- minimality checks -----------------------------------------------------

class Violation(NamedTuple):
    kind: str
    region: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"{v.kind}: {v.region} ({v.detail})" for v in self.violations]


FACE_CROSSING_TWICE = "face meets crossing twice"
FACE_EDGE_TWICE = "face meets edge twice"
EDGE_CROSSING_TWICE = "edge region meets crossing region twice"


def validate_minimal_adjacency(d: Diagram) -> ValidationReport:
    if d.is_unknot_sentinel:
        return ValidationReport(())
    found: list[Violation] = []
    for e in range(d.n_edges):
        cs = {c for c, _ in d.slots_of(e)}
        if len(cs) == 1:
            c = next(iter(cs))
            found.append(Violation(EDGE_CROSSING_TWICE, f"edge {e}", f"both ends at crossing {c}"))
    for i, f in enumerate(d.faces()):
        per = Counter(k.crossing for k in f.boundary)
        for c, k in sorted(per.items()):
            if k > 1:
                found.append(Violation(FACE_CROSSING_TWICE, f"face {i}", f"crossing {c} at {k} corners"))
        for e, k in sorted(Counter(f.edges).items()):
            if k > 1:
                found.append(Violation(FACE_EDGE_TWICE, f"face {i}", f"edge {e} on both sides"))
    return ValidationReport(tuple(found))


# -- emission and connected sum -------------------------------------------

def emit_pd_code(d: Diagram) -> str:
    return " ".join("X(%d,%d,%d,%d)" % tuple(e + 1 for e in x) for x in d.crossings)


def default_site(d: Diagram) -> int:
    """Lowest-labeled edge on a face of maximal degree."""
    fs = d.faces()
    top = max(f.degree for f in fs)
    return min(e for f in fs if f.degree == top for e in f.edges)


def connected_sum(d1: Diagram, d2: Diagram, site1: int | None = None, site2: int | None = None) -> Diagram:
    """Splice ``d2`` into ``d1`` by cutting one edge of each and crossing the ends over."""
    if d2.is_unknot_sentinel:
        return d1
    if d1.is_unknot_sentinel:
        return d2
    e1 = default_site(d1) if site1 is None else site1
    e2 = default_site(d2) if site2 is None else site2
    for d, e in ((d1, e1), (d2, e2)):
        if not 0 <= e < d.n_edges:
            raise DiagramError(f"edge {e} out of range")
    shift = d1.n_edges
    # tag each endpoint by whether it is the head (incoming) or tail (outgoing) end of the cut edge
    raw: list[list[int]] = []
    head1, tail1, head2, tail2 = -1, -2, -3, -4
    for c, x in enumerate(d1.crossings):
        row = []
        for s, e in enumerate(x):
            row.append(e if e != e1 else (head1 if d1.incoming[c][s] else tail1))
        raw.append(row)
    for c, x in enumerate(d2.crossings):
        row = []
        for s, e in enumerate(x):
            row.append(e + shift if e != e2 else (head2 if d2.incoming[c][s] else tail2))
        raw.append(row)
    # tail of e1 now feeds head of e2, tail of e2 feeds head of e1
    a, b = shift + d2.n_edges, shift + d2.n_edges + 1
    fix = {tail1: a, head2: a, tail2: b, head1: b}
    return from_pd([[fix.get(e, e) for e in row] for row in raw])


def iterated_sum(parts: Iterable[Diagram]) -> Diagram:
    out = UNKNOT
    for p in parts:
        out = connected_sum(out, p)
    return out
