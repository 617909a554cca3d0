"""Re-derive the block admissibility graph and probe where parameters stop being injective.

Run as ``python -m knotbound.derive`` to print both results.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterator

from . import disks
from .disks import TYPE_NAMES, UNIVERSAL, BlockVector, DiskError, params

FIELD_TO_TYPE = dict(zip((f for f in BlockVector.__dataclass_fields__), TYPE_NAMES))


def vectors_up_to(total: int, names: tuple[str, ...] = TYPE_NAMES) -> Iterator[BlockVector]:
    """Every block vector supported on ``names`` with entry sum at most ``total``."""
    idx = [TYPE_NAMES.index(n) for n in names]

    def rec(i: int, left: int) -> Iterator[list[int]]:
        if i == len(idx):
            yield []
            return
        for k in range(left + 1):
            for rest in rec(i + 1, left - k):
                yield [k, *rest]

    for combo in rec(0, total):
        vals = [0] * 9
        for j, k in zip(idx, combo):
            vals[j] = k
        yield BlockVector(*vals)


def branch_supports(limit: int = 4) -> dict[str, frozenset[str]]:
    """Types each reconstruction branch may assign, read off by running the branches."""
    seen: dict[str, set[str]] = defaultdict(set)
    for xi in vectors_up_to(limit):
        p = params(xi)
        try:
            branch = disks.reconstruction_branch(p)
            assigned = disks._branch_values(p)
        except DiskError:
            continue
        seen[branch].update(FIELD_TO_TYPE[k] for k in assigned)
    return {b: frozenset(s) for b, s in seen.items()}


def derived_edges(limit: int = 4) -> frozenset[frozenset[str]]:
    edges = set()
    for support in branch_supports(limit).values():
        rest = sorted(support - UNIVERSAL)
        edges.update(frozenset(p) for p in itertools.combinations(rest, 2))
    return frozenset(edges)


def injective_on(names: tuple[str, ...], total: int) -> bool:
    seen: dict[tuple[int, ...], BlockVector] = {}
    for xi in vectors_up_to(total, names):
        key = params(xi)
        if key in seen:
            return False
        seen[key] = xi
    return True


def find_collision(total: int = 4, both_inadmissible: bool = True) -> tuple[BlockVector, BlockVector] | None:
    """Two distinct vectors with equal parameters; smallest entry sums first."""
    buckets: dict[tuple[int, ...], list[BlockVector]] = defaultdict(list)
    for xi in sorted(vectors_up_to(total), key=lambda v: (sum(v.as_tuple()), v.as_tuple())):
        buckets[params(xi)].append(xi)
        group = buckets[params(xi)]
        if len(group) > 1:
            for other in group[:-1]:
                if not both_inadmissible or not (disks.is_admissible(other) or disks.is_admissible(xi)):
                    return other, xi
    return None


def main() -> None:
    for branch, support in sorted(branch_supports().items()):
        print(f"{branch:20s} {' '.join(n for n in TYPE_NAMES if n in support)}")
    edges = derived_edges()
    print("edges:", ", ".join(sorted("-".join(sorted(e, key=TYPE_NAMES.index)) for e in edges)))
    print("matches shipped constant:", edges == disks.ADMISSIBLE_EDGES)
    pair = find_collision()
    if pair:
        print("collision:", pair[0].format(), "|", pair[1].format(), "->", tuple(params(pair[0])))


if __name__ == "__main__":
    main()
