"""Moves on knot-meeting points and normalization to the standard form.

Points are typed ``1+`` .. ``4-``.  Working upward, a zero-move applies to
``3+``, ``2-``, ``4-`` and a one-move (same-side ``one_s`` or opposite-side
``one_d``) to ``4+``, ``1-``, ``3-``.  Working downward every sign flips.

The raw relation has two-cycles (``3+ -> 4+ -> 3+`` and its mirror).  Each
real move lowers a geometric complexity, which the combinatorics cannot see,
so :func:`normalize` only offers moves that lower :func:`rank`, the move
distance to the fixpoint types.  That makes every policy terminate.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"


class MoveKind(str, Enum):
    ZERO = "zero"
    ONE_S = "one_s"
    ONE_D = "one_d"


class TauType(NamedTuple):
    base: int
    sign: int  # +1 or -1

    def __str__(self) -> str:
        return f"{self.base}{'+' if self.sign > 0 else '-'}"

    def flip(self) -> "TauType":
        return TauType(self.base, -self.sign)

    @classmethod
    def parse(cls, text: str) -> "TauType":
        t = text.strip().replace("⁺", "+").replace("⁻", "-")
        if len(t) != 2 or t[0] not in "1234" or t[1] not in "+-":
            raise ValueError(f"bad point type {text!r}")
        return cls(int(t[0]), 1 if t[1] == "+" else -1)


ALL_TYPES = tuple(TauType(b, s) for s in (1, -1) for b in (1, 2, 3, 4))


def _t(text: str) -> TauType:
    return TauType.parse(text)


_UP: dict[tuple[TauType, MoveKind], frozenset[TauType]] = {
    (_t("3+"), MoveKind.ZERO): frozenset({_t("2+"), _t("4+")}),
    (_t("2-"), MoveKind.ZERO): frozenset({_t("3-")}),
    (_t("4-"), MoveKind.ZERO): frozenset({_t("3-")}),
    (_t("4+"), MoveKind.ONE_S): frozenset({_t("1+"), _t("3+")}),
    (_t("1-"), MoveKind.ONE_S): frozenset({_t("4-")}),
    (_t("3-"), MoveKind.ONE_S): frozenset({_t("4-")}),
    (_t("4+"), MoveKind.ONE_D): frozenset({_t("4-")}),
    (_t("1-"), MoveKind.ONE_D): frozenset({_t("1+"), _t("3+")}),
    (_t("3-"), MoveKind.ONE_D): frozenset({_t("1+"), _t("3+")}),
}

_KIND_ORDER = (MoveKind.ZERO, MoveKind.ONE_S, MoveKind.ONE_D)


def applicable_moves(tau: TauType, direction: Direction = Direction.UP) -> frozenset[MoveKind]:
    if direction == Direction.DOWN:
        return applicable_moves(tau.flip(), Direction.UP)
    return frozenset(k for (t, k) in _UP if t == tau)


def transition(tau: TauType, kind: MoveKind, direction: Direction = Direction.UP) -> frozenset[TauType]:
    if direction == Direction.DOWN:
        return frozenset(t.flip() for t in transition(tau.flip(), kind, Direction.UP))
    try:
        return _UP[(tau, kind)]
    except KeyError:
        raise ValueError(f"{kind.value}-move does not apply to {tau}") from None


def terminal_types(direction: Direction = Direction.UP) -> frozenset[TauType]:
    return frozenset(t for t in ALL_TYPES if not applicable_moves(t, direction))


def rank(tau: TauType, direction: Direction = Direction.UP) -> int:
    """Fewest moves from ``tau`` to a terminal type."""
    return _ranks(direction)[tau]


_RANK_CACHE: dict[Direction, dict[TauType, int]] = {}


def _ranks(direction: Direction) -> dict[TauType, int]:
    if direction in _RANK_CACHE:
        return _RANK_CACHE[direction]
    preds: dict[TauType, set[TauType]] = {t: set() for t in ALL_TYPES}
    for t in ALL_TYPES:
        for k in applicable_moves(t, direction):
            for s in transition(t, k, direction):
                preds[s].add(t)
    dist = {t: 0 for t in terminal_types(direction)}
    queue = deque(dist)
    while queue:
        cur = queue.popleft()
        for p in preds[cur]:
            if p not in dist:
                dist[p] = dist[cur] + 1
                queue.append(p)
    if len(dist) != len(ALL_TYPES):
        raise AssertionError("some point type cannot reach a terminal type")
    _RANK_CACHE[direction] = dist
    return dist


def successor_graph(direction: Direction = Direction.UP, decreasing_only: bool = False) -> dict[TauType, set[tuple[MoveKind, TauType]]]:
    out: dict[TauType, set[tuple[MoveKind, TauType]]] = {}
    for t in ALL_TYPES:
        opts = set()
        for k in applicable_moves(t, direction):
            for s in transition(t, k, direction):
                if not decreasing_only or rank(s, direction) < rank(t, direction):
                    opts.add((k, s))
        out[t] = opts
    return out


# -- states ----------------------------------------------------------------

Rectangles = tuple[tuple[TauType, ...], tuple[TauType, ...], tuple[TauType, ...], tuple[TauType, ...]]


def _type_key(t: TauType) -> int:
    return ALL_TYPES.index(t)


@dataclass(frozen=True)
class TauState:
    """Point types per crossing and per skeleton rectangle (four per crossing)."""

    crossings: tuple[tuple[int, Rectangles], ...] = ()

    @classmethod
    def build(cls, data: Mapping[int, Sequence[Iterable[TauType | str]]]) -> "TauState":
        rows = []
        for c in sorted(data):
            rects = list(data[c]) + [()] * (4 - len(data[c]))
            if len(rects) != 4:
                raise ValueError("a crossing has four rectangles")
            norm = tuple(tuple(sorted((t if isinstance(t, TauType) else TauType.parse(t) for t in r), key=_type_key)) for r in rects)
            rows.append((c, norm))
        return cls(tuple(rows))  # type: ignore[arg-type]

    def points(self) -> list[tuple[int, int, TauType]]:
        return [(c, r, t) for c, rects in self.crossings for r, rect in enumerate(rects) for t in rect]

    def replace(self, crossing: int, rect: int, old: TauType, new: TauType) -> "TauState":
        rows = []
        for c, rects in self.crossings:
            if c == crossing:
                lst = list(rects[rect])
                lst.remove(old)
                lst.append(new)
                rl = list(rects)
                rl[rect] = tuple(sorted(lst, key=_type_key))
                rects = tuple(rl)  # type: ignore[assignment]
            rows.append((c, rects))
        return TauState(tuple(rows))

    def format(self) -> str:
        parts = []
        for c, rects in self.crossings:
            body = " | ".join(",".join(str(t) for t in r) or "-" for r in rects)
            parts.append(f"c{c}: {body}")
        return "; ".join(parts) if parts else "empty"


def measure(state: TauState, direction: Direction = Direction.UP) -> int:
    return sum(rank(t, direction) for _, _, t in state.points())


Option = tuple[MoveKind, TauType]
Policy = Callable[[TauType, Sequence[Option]], Option]


def default_policy(direction: Direction = Direction.UP) -> Policy:
    def choose(tau: TauType, options: Sequence[Option]) -> Option:
        return min(options, key=lambda o: (rank(o[1], direction), _type_key(o[1]), _KIND_ORDER.index(o[0])))

    return choose


class TraceLine(NamedTuple):
    step: int
    crossing: int
    rectangle: int
    kind: MoveKind
    before: TauType
    after: TauType
    measure: int

    def __str__(self) -> str:
        return (f"{self.step} crossing={self.crossing} rect={self.rectangle} {self.kind.value} "
                f"{self.before}->{self.after} measure={self.measure}")


def normalize(state: TauState, direction: Direction = Direction.UP,
              policy: Policy | None = None) -> tuple[TauState, list[TraceLine]]:
    choose = policy or default_policy(direction)
    trace: list[TraceLine] = []
    m = measure(state, direction)
    while True:
        movable = [(c, r, t) for c, r, t in state.points() if applicable_moves(t, direction)]
        if not movable:
            return state, trace
        c, r, t = movable[0]
        options = sorted(
            ((k, s) for k in applicable_moves(t, direction) for s in transition(t, k, direction)
             if rank(s, direction) < rank(t, direction)),
            key=lambda o: (_KIND_ORDER.index(o[0]), _type_key(o[1])),
        )
        kind, succ = choose(t, options)
        if (kind, succ) not in options:
            raise ValueError(f"policy chose {kind.value} {t}->{succ}, which does not lower the measure")
        state = state.replace(c, r, t, succ)
        new_m = measure(state, direction)
        assert new_m < m
        m = new_m
        trace.append(TraceLine(len(trace), c, r, kind, t, succ, m))


STANDARD_TYPES = frozenset({_t("1+"), _t("2+")})


def is_standard_form(state: TauState) -> bool:
    for _, rects in state.crossings:
        if sum(1 for rect in rects if rect) > 1:
            return False
        if any(t not in STANDARD_TYPES for rect in rects for t in rect):
            return False
    return True


# -- closure checks --------------------------------------------------------

def closure_report(direction: Direction = Direction.UP) -> dict[str, object]:
    """Reachability facts about the raw and the rank-restricted relations."""
    raw = successor_graph(direction)
    dec = successor_graph(direction, decreasing_only=True)
    sinks = terminal_types(direction)

    def reach(g: dict[TauType, set[Option]], src: TauType) -> set[TauType]:
        seen, stack = {src}, [src]
        while stack:
            for _, s in g[stack.pop()]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        return seen

    def maximal_paths_end_in_sinks(g: dict[TauType, set[Option]]) -> bool:
        # acyclic relation: every path is finite and dead ends must be sinks
        return all(t in sinks or g[t] for t in ALL_TYPES)

    raw_cycles = sorted(
        {tuple(sorted((str(a), str(b)))) for a in ALL_TYPES for _, b in raw[a] if a in {s for _, s in raw[b]}}
    )
    zero_only = {t: {o for o in raw[t] if o[0] == MoveKind.ZERO} for t in ALL_TYPES}
    one_only = {t: {o for o in raw[t] if o[0] != MoveKind.ZERO} for t in ALL_TYPES}
    mixed = all(t not in reach_strict(g, t) for g in (zero_only, one_only) for t in ALL_TYPES)
    trap_free = all(reach(raw, t) & sinks for t in ALL_TYPES)
    acyclic = all(t not in reach_strict(dec, t) for t in ALL_TYPES)
    return {
        "sinks": sorted(str(t) for t in sinks),
        "every type reaches a sink": trap_free,
        "raw two-cycles": raw_cycles,
        "every raw cycle mixes zero and one moves": mixed,
        "restricted relation acyclic": acyclic,
        "restricted maximal paths end in sinks": acyclic and maximal_paths_end_in_sinks(dec),
    }


def reach_strict(g: dict[TauType, set[Option]], src: TauType) -> set[TauType]:
    seen: set[TauType] = set()
    stack = [s for _, s in g[src]]
    while stack:
        cur = stack.pop()
        if cur not in seen:
            seen.add(cur)
            stack.extend(s for _, s in g[cur])
    return seen


def maximal_paths(start: TauType, direction: Direction = Direction.UP) -> list[list[TauType]]:
    """All maximal paths from ``start`` in the rank-restricted relation."""
    g = successor_graph(direction, decreasing_only=True)
    out: list[list[TauType]] = []

    def walk(path: list[TauType]) -> None:
        nxt = sorted({s for _, s in g[path[-1]]}, key=_type_key)
        if not nxt:
            out.append(path)
            return
        for s in nxt:
            walk(path + [s])

    walk([start])
    return out
