"""One test per acceptance criterion, each printing a PASS or FAIL line."""
import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

import oracles
from knotbound import bound as bd
from knotbound import compat as cp
from knotbound import derive
from knotbound import disks as dk
from knotbound import models as md
from knotbound import moves as mv
from knotbound.diagram import connected_sum


@pytest.fixture
def criterion(report_line):
    @contextmanager
    def run(number: int, title: str, limit_s: float):
        detail: dict[str, object] = {}
        t0 = time.perf_counter()
        try:
            yield detail
            elapsed = time.perf_counter() - t0
            assert elapsed < limit_s, f"took {elapsed:.2f}s, limit {limit_s}s"
        except AssertionError as e:
            elapsed = time.perf_counter() - t0
            report_line(f"FAIL criterion {number}: {title} ({elapsed:.2f}s) {e}")
            raise
        extra = " ".join(f"{k}={v}" for k, v in detail.items())
        report_line(f"PASS criterion {number}: {title} ({elapsed:.2f}s) {extra}".rstrip())

    return run


def test_criterion_1_table_fidelity(criterion):
    with criterion(1, "parameter and derived tables", 1.0) as info:
        cells = 0
        for t in oracles.TYPES:
            xi = dk.BlockVector.generator(t)
            p = dk.params(xi)
            assert tuple(p) == oracles.PARAMS[t], t
            assert tuple(dk.derived(p)) == oracles.DERIVED[t], t
            cells += len(p) + len(oracles.DERIVED[t])
        assert cells == 9 * 7 + 9 * 6
        info["cells"] = cells


def test_criterion_2_reconstruction(criterion):
    with criterion(2, "reconstruction round trip", 60.0) as info:
        count = failures = 0
        for v in oracles.vectors(8):
            if not oracles.admissible(v):
                continue
            count += 1
            xi = dk.BlockVector(*v)
            try:
                if dk.reconstruct(dk.params(xi)) != xi:
                    failures += 1
            except dk.DiskError:
                failures += 1
        assert count == oracles.ADMISSIBLE_UP_TO_8
        assert failures == 0, f"{failures} failures"
        a, b = derive.find_collision(4)
        assert a != b and dk.params(a) == dk.params(b)
        assert not dk.is_admissible(a) and not dk.is_admissible(b)
        info["vectors"] = count
        info["collision"] = f"[{a.format()}] vs [{b.format()}]"


def test_criterion_3_identities(criterion):
    with criterion(3, "identities on 10^5 random vectors", 30.0) as info:
        rng = random.Random(20240101)
        bad = 0
        n = 100_000
        for _ in range(n):
            xi = dk.BlockVector(*(rng.randrange(0, 1000) for _ in range(9)))
            p = dk.params(xi)
            d = dk.derived(p)
            ok = (p.kappa == xi.t1 + xi.t2 and d.eta == -xi.x + xi.z + xi.t2
                  and d.sigma == -xi.x + xi.y + xi.t2 and d.eta == d.a_plus + d.a_minus - p.iv_0)
            bad += not ok
        assert bad == 0, f"{bad} vectors break an identity"
        info["vectors"] = n


def test_criterion_4_move_closure(criterion):
    with criterion(4, "move closure and duality", 1.0) as info:
        up = mv.Direction.UP
        paths = 0
        for name in sorted(oracles.UP_START):
            for path in mv.maximal_paths(mv.TauType.parse(name), up):
                paths += 1
                assert str(path[-1]) in oracles.UP_TERMINAL, path
        assert {str(t) for t in mv.terminal_types(up)} == oracles.UP_TERMINAL
        rep = mv.closure_report(up)
        assert rep["every type reaches a sink"] and rep["restricted relation acyclic"]
        pairs = 0
        for t in mv.ALL_TYPES:
            for kind in mv.MoveKind:
                pairs += 1
                flipped_up = mv.applicable_moves(t.flip(), up)
                assert (kind in mv.applicable_moves(t, mv.Direction.DOWN)) == (kind in flipped_up)
                if kind in flipped_up:
                    down = mv.transition(t, kind, mv.Direction.DOWN)
                    assert down == {s.flip() for s in mv.transition(t.flip(), kind, up)}
        info["paths"] = paths
        info["pairs"] = pairs


def test_criterion_5_counting_lemma(criterion):
    with criterion(5, "counting lemma", 300.0) as info:
        rows = 0
        worst = 0
        for t in md.cooccurrence_sets():
            for ms in md.template_variants(t):
                b = md.per_crossing_bound(md.ModelSet(0, ms), check_template=False)
                rows += 1
                worst = max(worst, b.total)
                assert b.total <= oracles.CAP_ALL_Z, ms
                if set(ms) - oracles.Z_MODELS:
                    assert b.total <= oracles.CAP_WITH_HEAVY, ms
        assert md.max_crossings("X3") == oracles.X3_CROSSINGS
        info["variants"] = rows
        info["max"] = worst


def test_criterion_6_desk_check(criterion):
    with criterion(6, "connected sums of bundled primes", 120.0) as info:
        table = bd.bundled_table()
        primes = bd.bundled_diagrams()
        names = sorted(primes)
        checked = 0
        pair_cache = {}
        for a, b in itertools.combinations_with_replacement(names, 2):
            d = connected_sum(primes[a], primes[b])
            pair_cache[(a, b)] = d
            r = bd.check_bound([a, b], table, diagram=d)
            assert r.verdict and r.faces_ok and r.crossings == table[a] + table[b], (a, b)
            checked += 1
        pairs = checked
        for a, b, c in itertools.combinations_with_replacement(names, 3):
            d = connected_sum(pair_cache[(a, b)], primes[c])
            s = table[a] + table[b] + table[c]
            r = bd.check_bound([a, b, c], table, diagram=d)
            assert r.crossings == s and r.lower == Fraction(s, 16), (a, b, c)
            assert r.verdict and r.faces_ok, (a, b, c)
            checked += 1
        info["primes"] = len(names)
        info["pairs"] = pairs
        info["triples"] = checked - pairs


def test_criterion_7_compatibility(criterion):
    with criterion(7, "compatibility graphs", 60.0) as info:
        g = cp.block_type_graph()
        supports = {frozenset(t for t, c in zip(oracles.TYPES, v) if c)
                    for v in oracles.vectors(4) if oracles.admissible(v)}
        for s in supports:
            assert g.is_clique(s), sorted(s)
        sg = cp.subclass_graph()
        for case, s in cp.CASE_SUPPORTS.items():
            assert sg.is_clique(s), case
        rest = set(oracles.TYPES) - oracles.UNIVERSAL
        six = {e for e in g.edges if e <= rest}
        assert six == oracles.EDGES == set(derive.derived_edges())
        info["supports"] = len(supports)
        info["edges"] = len(six)
