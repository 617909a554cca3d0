"""Which block boundary curves, and which zero-handle disk classes, can coexist.

The boundary sphere of a block is cut into six faces by the knot arc, the
axis and the three side quadrilaterals.  Each block type is a closed curve
given by the cyclic list of sub-edges it crosses.  Two curve families are
disjoint when some ordering of their crossing points along every shared
sub-edge leaves every face with non-interleaving chords.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .disks import TYPE_NAMES, UNIVERSAL, BlockVector, params

# sub-edge -> (x position, low t, high t) or a horizontal segment at t for x in [0, 1]
_VERTICAL = {
    "v-": (0.0, -1.0, -0.5),
    "v0": (0.0, -0.5, 0.5),
    "v+": (0.0, 0.5, 1.0),
    "h1+hi": (1.0, 0.5, 1.0),
    "h1+lo": (1.0, -1.0, 0.5),
    "h2": (2.0, -1.0, 1.0),
    "h1-hi": (3.0, -0.5, 1.0),
    "h1-lo": (3.0, -1.0, -0.5),
}
_K_PLUS = "K+"

# face -> rectangle (x0, x1, t0, t1); the axis appears at x=0 and again at x=4
FACES = {
    "U+": (0.0, 1.0, 0.5, 1.0),
    "L+": (0.0, 1.0, -1.0, 0.5),
    "R+": (1.0, 2.0, -1.0, 1.0),
    "R-": (2.0, 3.0, -1.0, 1.0),
    "U-": (3.0, 4.0, -0.5, 1.0),
    "L-": (3.0, 4.0, -1.0, -0.5),
}
SIDES = {
    "v+": ("U+", "U-"),
    "v0": ("L+", "U-"),
    "v-": ("L+", "L-"),
    "K+": ("U+", "L+"),
    "h1+hi": ("U+", "R+"),
    "h1+lo": ("L+", "R+"),
    "h2": ("R+", "R-"),
    "h1-hi": ("R-", "U-"),
    "h1-lo": ("R-", "L-"),
}
SUB_EDGES = tuple(SIDES)

# which parameter each sub-edge feeds
_PARAM_OF = {"v+": "iv_plus", "v0": "iv_0", "v-": "iv_minus", "h1+hi": "h1_plus", "h1+lo": "h1_plus",
             "h2": "h2", "h1-hi": "h1_minus", "h1-lo": "h1_minus", "K+": "kappa"}

CANONICAL: dict[str, tuple[str, ...]] = {
    "I+": ("h1+hi", "h2", "h1-hi", "v+"),
    "I": ("h1+lo", "h2", "h1-hi", "v0"),
    "I-": ("h1+lo", "h2", "h1-lo", "v-"),
    "II+": ("h1+hi", "h1+lo", "v0", "v+"),
    "II": ("h1+hi", "h1+lo", "v-", "h1-lo", "h1-hi", "v+"),
    "II-": ("h1-hi", "h1-lo", "v-", "v0"),
    "III": ("h1+hi", "h2", "h1-lo", "v-", "v0", "v+"),
    "tau1": ("K+", "h1+hi", "h2", "h1-lo", "v-"),
    "tau2": ("K+", "v+", "h1-hi", "h1-lo", "v-"),
}


class Arc(NamedTuple):
    start: str
    end: str
    face: str


@dataclass(frozen=True)
class BoundaryPattern:
    name: str
    crossings: tuple[str, ...]
    arcs: tuple[Arc, ...]

    def hits(self) -> dict[str, int]:
        out = {k: 0 for k in ("iv_plus", "iv_0", "iv_minus", "h1_plus", "h1_minus", "h2", "kappa")}
        for e in self.crossings:
            out[_PARAM_OF[e]] += 1
        return out


def _arcs_of(cycle: Sequence[str]) -> tuple[Arc, ...] | None:
    """Faces of the arcs between consecutive crossings, or None if the cycle cannot close."""
    n = len(cycle)
    for first in SIDES[cycle[0]]:
        face = first
        arcs: list[Arc] = []
        ok = True
        for i in range(n):
            a, b = cycle[i], cycle[(i + 1) % n]
            if face not in SIDES[b]:
                ok = False
                break
            arcs.append(Arc(a, b, face))
            face = SIDES[b][1] if SIDES[b][0] == face else SIDES[b][0]
        if ok and arcs[0].face != face:
            continue
        if ok:
            return tuple(arcs)
    return None


def block_boundary_pattern(t: str) -> BoundaryPattern:
    if t not in CANONICAL:
        raise KeyError(f"unknown block type {t!r}")
    arcs = _arcs_of(CANONICAL[t])
    if arcs is None:
        raise AssertionError(f"canonical curve for {t} does not close")
    return BoundaryPattern(t, CANONICAL[t], arcs)


def _point(edge: str, face: str, u: float) -> tuple[float, float]:
    if edge == _K_PLUS:
        return (u, 0.5)
    x, lo, hi = _VERTICAL[edge]
    if edge.startswith("v") and face in ("U-", "L-"):
        x = 4.0
    return (x, lo + u * (hi - lo))


def _angle(face: str, p: tuple[float, float]) -> float:
    x0, x1, t0, t1 = FACES[face]
    return math.atan2(p[1] - (t0 + t1) / 2, p[0] - (x0 + x1) / 2)


def _interleave(a: tuple[float, float], b: tuple[float, float]) -> bool:
    lo, hi = sorted(a)
    return (lo < b[0] < hi) != (lo < b[1] < hi)


def _crosses(curves: Sequence[tuple[int, BoundaryPattern]], order: dict[str, list[int]]) -> bool:
    """Do any two arcs from different curves cross, with points placed per ``order``?"""
    chords: dict[str, list[tuple[int, tuple[float, float]]]] = {f: [] for f in FACES}
    for cid, pat in curves:
        for arc in pat.arcs:
            ends = []
            for e in (arc.start, arc.end):
                pts = order[e]
                u = (pts.index(cid) + 1) / (len(pts) + 1)
                ends.append(_angle(arc.face, _point(e, arc.face, u)))
            chords[arc.face].append((cid, (ends[0], ends[1])))
    for items in chords.values():
        for (c1, a), (c2, b) in itertools.combinations(items, 2):
            if c1 != c2 and _interleave(a, b):
                return True
    return False


@lru_cache(maxsize=None)
def _pair_feasible(a: str, b: str) -> frozenset[tuple[tuple[str, bool], ...]]:
    """Relative orders (per shared sub-edge: does ``a`` come first) that keep the two curves apart."""
    pa, pb = block_boundary_pattern(a), block_boundary_pattern(b)
    shared = sorted(set(pa.crossings) & set(pb.crossings))
    good = set()
    for bits in itertools.product((True, False), repeat=len(shared)):
        order: dict[str, list[int]] = {}
        for e in SUB_EDGES:
            ids = [i for i, p in ((0, pa), (1, pb)) if e in p.crossings]
            order[e] = ids
        for e, first in zip(shared, bits):
            order[e] = [0, 1] if first else [1, 0]
        if not _crosses([(0, pa), (1, pb)], order):
            good.add(tuple(zip(shared, bits)))
    return frozenset(good)


def disjoint_realizable(a: str, b: str) -> bool:
    """Can curves of types ``a`` and ``b`` sit disjointly on one block boundary?"""
    return bool(_pair_feasible(a, b))


def realizable_family(types: Sequence[str]) -> bool:
    """Can one curve of each listed type (repeats allowed) be placed pairwise disjoint?

    Crossing is decided pair by pair from relative orders on shared sub-edges,
    so we search pair assignments and require the orders on each sub-edge to be
    transitive.
    """
    n = len(types)
    pairs = list(itertools.combinations(range(n), 2))
    options = []
    for i, j in pairs:
        opts = _pair_feasible(types[i], types[j])
        if not opts:
            return False
        options.append(sorted(opts))
    before: dict[str, set[tuple[int, int]]] = {e: set() for e in SUB_EDGES}

    def consistent(e: str) -> bool:
        rel = before[e]
        for (i, j) in rel:
            for (k, l) in rel:
                if j == k and (l, i) in rel:
                    return False
        return True

    def rec(k: int) -> bool:
        if k == len(pairs):
            return True
        i, j = pairs[k]
        for opt in options[k]:
            added = []
            ok = True
            for e, first in opt:
                rel = (i, j) if first else (j, i)
                before[e].add(rel)
                added.append((e, rel))
                if not consistent(e):
                    ok = False
                    break
            if ok and rec(k + 1):
                return True
            for e, rel in added:
                before[e].discard(rel)
        return False

    return rec(0)


class CompatGraph(NamedTuple):
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    realizable_cliques: tuple[frozenset[str], ...]

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def is_clique(self, names: Iterable[str]) -> bool:
        ns = sorted(set(names))
        return all(self.adjacent(a, b) for a, b in itertools.combinations(ns, 2))

    def triangles(self) -> list[frozenset[str]]:
        return [frozenset(t) for t in itertools.combinations(self.vertices, 3) if self.is_clique(t)]

    def to_dot(self, name: str) -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        for a, b in _sorted_edges(self):
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sorted_edges(g: CompatGraph) -> list[tuple[str, str]]:
    pos = {v: i for i, v in enumerate(g.vertices)}
    return sorted((tuple(sorted(e, key=pos.__getitem__)) for e in g.edges), key=lambda t: (pos[t[0]], pos[t[1]]))  # type: ignore[misc]


def _maximal_cliques(vertices: Sequence[str], edges: frozenset[frozenset[str]]) -> list[frozenset[str]]:
    nbr = {v: {u for u in vertices if frozenset((u, v)) in edges} for v in vertices}
    out: list[frozenset[str]] = []

    def bk(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        for v in sorted(p):
            bk(r | {v}, p & nbr[v], x & nbr[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(vertices), set())
    return sorted(out, key=lambda c: sorted(TYPE_NAMES.index(v) for v in c))


@lru_cache(maxsize=1)
def block_type_graph() -> CompatGraph:
    edges = frozenset(frozenset(p) for p in itertools.combinations(TYPE_NAMES, 2) if disjoint_realizable(*p))
    cliques = tuple(c for c in _maximal_cliques(TYPE_NAMES, edges) if realizable_family(sorted(c)))
    return CompatGraph(TYPE_NAMES, edges, cliques)


def closed_curves(max_len: int = 6) -> list[tuple[str, ...]]:
    """Every cyclic sub-edge sequence (each sub-edge at most once) that closes up.

    Sequences are reported once per rotation/reversal class, starting from
    the smallest sub-edge name.
    """
    seen: set[tuple[str, ...]] = set()
    out: list[tuple[str, ...]] = []
    for n in range(2, max_len + 1):
        for seq in itertools.permutations(SUB_EDGES, n):
            if seq[0] != min(seq):
                continue
            rev = (seq[0],) + tuple(reversed(seq[1:]))
            key = min(seq, rev)
            if key in seen or _arcs_of(seq) is None:
                continue
            seen.add(key)
            out.append(key)
    return out


def curves_matching(t: str, max_len: int = 6) -> list[tuple[str, ...]]:
    """Closed curves whose hit counts equal the parameter column of ``t``."""
    want = params(BlockVector.generator(t))._asdict()
    res = []
    for c in closed_curves(max_len):
        got = {k: 0 for k in want}
        for e in c:
            got[_PARAM_OF[e]] += 1
        if got == want:
            res.append(c)
    return res


def hits_match_table(t: str) -> bool:
    """Does the canonical curve hit each boundary piece as often as the parameter table says?"""
    return block_boundary_pattern(t).hits() == params(BlockVector.generator(t))._asdict()


# -- zero-handle disk subclasses -------------------------------------------

SUBCLASS_VERTICES = ("F0", "Fp", "Fm", "Cp", "Cm", "Tp", "Tm", "FpM", "FmP", "CpM", "CmP")

CASE_SUPPORTS: dict[int, frozenset[str]] = {
    1: frozenset({"Fp", "Fm", "Cp", "Cm", "F0"}),
    2: frozenset({"Fp", "Fm", "Tm", "Cp", "Cm"}),
    3: frozenset({"Fp", "Fm", "Cm", "CmP", "FmP"}),
    4: frozenset({"Fp", "Fm", "Cm", "Tm", "FmP"}),
}

# reflection across the squares swaps the twist; reversing the move direction swaps signs
REFLECT = {"Tm": "Tp", "Tp": "Tm"}
REVERSE = {"Fp": "Fm", "Fm": "Fp", "Cp": "Cm", "Cm": "Cp", "FmP": "FpM", "FpM": "FmP", "CmP": "CpM", "CpM": "CmP"}


def _images(s: frozenset[str]) -> set[frozenset[str]]:
    out = {s}
    frontier = [s]
    while frontier:
        cur = frontier.pop()
        for m in (REFLECT, REVERSE):
            img = frozenset(m.get(v, v) for v in cur)
            if img not in out:
                out.add(img)
                frontier.append(img)
    return out


@lru_cache(maxsize=1)
def subclass_graph() -> CompatGraph:
    supports: set[frozenset[str]] = set()
    for s in CASE_SUPPORTS.values():
        supports |= _images(s)
    edges: set[frozenset[str]] = set()
    for s in supports:
        edges.update(frozenset(p) for p in itertools.combinations(sorted(s), 2))
    for f in ("Fp", "Fm"):
        edges.update(frozenset((f, v)) for v in SUBCLASS_VERTICES if v != f)
    order = {v: i for i, v in enumerate(SUBCLASS_VERTICES)}
    cliques = tuple(sorted(supports, key=lambda c: sorted(order[v] for v in c)))
    return CompatGraph(SUBCLASS_VERTICES, frozenset(edges), cliques)


def unwitnessed_triangles(g: CompatGraph) -> list[frozenset[str]]:
    return [t for t in g.triangles() if not any(t <= c for c in g.realizable_cliques)]


def edge_provenance(g: CompatGraph) -> dict[frozenset[str], str]:
    """Why each subclass edge is present."""
    out = {}
    for e in g.edges:
        if any(e <= CASE_SUPPORTS[k] for k in CASE_SUPPORTS):
            out[e] = "case support"
        elif any(e <= c for c in g.realizable_cliques):
            out[e] = "symmetric image of a case support"
        else:
            out[e] = "flat-disk universality"
    return out


def report() -> str:
    bg = block_type_graph()
    lines = ["block types:"]
    for a, b in _sorted_edges(bg):
        tag = "universal vertex" if a in UNIVERSAL or b in UNIVERSAL else "placement search"
        lines.append(f"  {a} -- {b}  [{tag}]")
    lines.append("block cliques witnessed by a joint placement:")
    for c in bg.realizable_cliques:
        lines.append("  {" + ", ".join(v for v in TYPE_NAMES if v in c) + "}")
    sg = subclass_graph()
    prov = edge_provenance(sg)
    lines.append("zero-handle subclasses:")
    for a, b in _sorted_edges(sg):
        lines.append(f"  {a} -- {b}  [{prov[frozenset((a, b))]}]")
    loose = unwitnessed_triangles(sg)
    lines.append(f"triangles without a witnessing case: {len(loose)}")
    pos = {v: i for i, v in enumerate(SUBCLASS_VERTICES)}
    for t in sorted(loose, key=lambda t: sorted(pos[v] for v in t)):
        lines.append("  {" + ", ".join(sorted(t, key=pos.__getitem__)) + "}")
    return "\n".join(lines) + "\n"
