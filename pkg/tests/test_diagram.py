import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from knotbound import diagram as dg
from knotbound.bound import bundled_diagrams

PRIMES = bundled_diagrams()
NAMES = sorted(PRIMES)


def test_trefoil_counts_follow_euler():
    d = dg.parse_pd_code(oracles.TREFOIL_PD)
    assert d.n_crossings == 3
    assert (d.n_edges, len(d.faces())) == oracles.euler_counts(3)
    assert d.fingerprint() == (3, 5, (2, 2, 2, 3, 3))


def test_three_component_string_is_rejected():
    with pytest.raises(dg.DiagramError, match="multiple components"):
        dg.parse_pd_code("X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)")


@pytest.mark.parametrize("text,msg", [
    ("", "no crossings"),
    ("X(1,2,3)", "expected 4"),
    ("X(1,2,3,x)", "malformed"),
    ("X(1,1,1,2)", "used"),
    ("X(1,2,3,4)", "used once"),
    ("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2) junk", "malformed"),
    ("X(1,2,2,1) X(3,4,4,3)", "disconnected"),
])
def test_malformed_pd(text, msg):
    with pytest.raises(dg.DiagramError, match=msg):
        dg.parse_pd_code(text)


def test_brackets_and_separators_accepted():
    a = dg.parse_pd_code("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]")
    b = dg.parse_pd_code(oracles.TREFOIL_PD)
    assert a == b


def test_gauss_matches_pd():
    g = dg.parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+")
    assert g.fingerprint() == dg.parse_pd_code(oracles.TREFOIL_PD).fingerprint()
    assert {g.sign(c) for c in range(3)} == {1}


def test_mirror_gauss_flips_signs():
    g = dg.parse_gauss_code("O1- U2- O3- U1- O2- U3-")
    assert [g.sign(c) for c in range(3)] == [-1, -1, -1]


@pytest.mark.parametrize("text,msg", [
    ("O1+ U1-", "inconsistent signs"),
    ("O1+ O1+", "not over once"),
    ("O1+ U2+ U1+", "appears 1"),
    ("Q1+", "bad Gauss token"),
])
def test_malformed_gauss(text, msg):
    with pytest.raises(dg.DiagramError, match=msg):
        dg.parse_gauss_code(text)


def test_figure_eight_is_amphichiral_in_signs():
    d = dg.parse_pd_code(oracles.FIGURE_EIGHT_PD)
    assert sorted(d.sign(c) for c in range(4)) == [-1, -1, 1, 1]


@pytest.mark.parametrize("name", NAMES)
def test_bundled_face_structure(name):
    d = PRIMES[name]
    v = d.n_crossings
    assert v == oracles.crossing_number_from_name(name)
    fs = d.faces()
    assert len(fs) == v + 2
    assert sum(f.degree for f in fs) == 4 * v
    # every edge borders exactly two face sides
    assert Counter(e for f in fs for e in f.edges) == Counter({e: 2 for e in range(2 * v)})
    assert dg.parse_pd_code(dg.emit_pd_code(d)) == d


@pytest.mark.parametrize("name", NAMES)
def test_bundled_diagrams_are_reduced(name):
    assert dg.validate_minimal_adjacency(PRIMES[name]).ok


def test_labels_walk_in_order():
    d = PRIMES["7_4"]
    for e in range(d.n_edges):
        tail, head = d.edge_ends(e)
        nxt_tail, _ = d.edge_ends((e + 1) % d.n_edges)
        assert head == nxt_tail


def _scramble(d, rng):
    n = d.n_edges
    shift = rng.randrange(n)
    order = list(range(d.n_crossings))
    rng.shuffle(order)
    return [[(d.crossings[c][s] + shift) % n + 1 for s in range(4)] for c in order]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 10**6))
def test_relabeling_preserves_invariants(name, seed):
    d = PRIMES[name]
    e = dg.from_pd(_scramble(d, random.Random(seed)))
    assert e.fingerprint() == d.fingerprint()
    assert sorted(e.sign(c) for c in range(e.n_crossings)) == sorted(d.sign(c) for c in range(d.n_crossings))
    assert dg.validate_minimal_adjacency(e).ok


def test_kinked_trefoil_reports_every_violation():
    d = dg.parse_pd_code("X(1,5,2,4) X(3,1,4,8) X(5,3,6,2) X(6,8,7,7)")
    rep = dg.validate_minimal_adjacency(d)
    kinds = Counter(v.kind for v in rep.violations)
    assert kinds[dg.EDGE_CROSSING_TWICE] == 1
    assert kinds[dg.FACE_CROSSING_TWICE] == 1
    assert any("crossing 3" in line for line in rep.lines())


def test_reidemeister_two_unknot_fails_face_check():
    d = dg.parse_gauss_code("O1+ O2- U2- U1+")
    rep = dg.validate_minimal_adjacency(d)
    assert not rep.ok
    assert dg.FACE_CROSSING_TWICE in {v.kind for v in rep.violations}


def test_unknot_sentinel():
    assert dg.faces(dg.UNKNOT) == (dg.Face((), ()), dg.Face((), ()))
    assert dg.validate_minimal_adjacency(dg.UNKNOT).ok
    assert dg.iterated_sum([]) == dg.UNKNOT
    t = PRIMES["3_1"]
    assert dg.connected_sum(dg.UNKNOT, t) == t
    assert dg.connected_sum(t, dg.UNKNOT) == t


def test_connected_sum_rejects_bad_site():
    t = PRIMES["3_1"]
    with pytest.raises(dg.DiagramError, match="out of range"):
        dg.connected_sum(t, t, site1=99)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(NAMES), min_size=1, max_size=4), st.data())
def test_connected_sum_additivity(names, data):
    parts = [PRIMES[n] for n in names]
    out = parts[0]
    for p in parts[1:]:
        s1 = data.draw(st.integers(0, out.n_edges - 1))
        s2 = data.draw(st.integers(0, p.n_edges - 1))
        out = dg.connected_sum(out, p, s1, s2)
    total = sum(p.n_crossings for p in parts)
    assert out.n_crossings == total
    assert len(out.faces()) == total + 2
    signs = Counter(p.sign(c) for p in parts for c in range(p.n_crossings))
    assert Counter(out.sign(c) for c in range(total)) == signs
    assert dg.validate_minimal_adjacency(out).ok


def test_default_site_is_on_a_largest_face():
    d = PRIMES["5_2"]
    e = dg.default_site(d)
    top = max(f.degree for f in d.faces())
    assert any(e in f.edges and f.degree == top for f in d.faces())
