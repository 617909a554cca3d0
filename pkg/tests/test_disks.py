import itertools
import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from knotbound import disks as dk
from knotbound.bound import bundled_diagrams
from knotbound.diagram import parse_pd_code

coeff = st.integers(0, 30)
vectors = st.builds(dk.BlockVector, *([coeff] * 9))


@pytest.mark.parametrize("name", oracles.TYPES)
def test_generator_params(name):
    p = dk.params(dk.BlockVector.generator(name))
    assert tuple(p) == oracles.PARAMS[name]


@pytest.mark.parametrize("name", oracles.TYPES)
def test_generator_derived(name):
    dv = dk.derived(dk.params(dk.BlockVector.generator(name)))
    assert tuple(dv) == oracles.DERIVED[name]


@settings(max_examples=300)
@given(vectors)
def test_params_linear_and_derived_match_fractions(xi):
    p = dk.params(xi)
    assert tuple(p) == oracles.params_of(xi.as_tuple())
    assert tuple(dk.derived(p)) == oracles.derived_of(p)


@settings(max_examples=300)
@given(vectors)
def test_identities(xi):
    p = dk.params(xi)
    dv = dk.derived(p)
    assert p.kappa == xi.t1 + xi.t2
    assert dv.eta == -xi.x + xi.z + xi.t2
    assert dv.sigma == -xi.x + xi.y + xi.t2
    assert dv.eta == dv.a_plus + dv.a_minus - p.iv_0


def test_odd_numerator_rejected():
    with pytest.raises(dk.DiskError, match="odd numerator"):
        dk.derived(dk.ParamVector(1, 0, 0, 0, 0, 0, 0))


def test_negative_coefficients_rejected():
    with pytest.raises(dk.DiskError):
        dk.BlockVector(x=-1)


def test_admissible_edges_match_oracle():
    assert dk.ADMISSIBLE_EDGES == oracles.EDGES
    assert dk.UNIVERSAL == oracles.UNIVERSAL


@settings(max_examples=400)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_admissibility_agrees(vals):
    xi = dk.BlockVector(*vals)
    assert dk.is_admissible(xi) == oracles.admissible(vals)


def test_reconstruct_example():
    assert dk.reconstruct(dk.ParamVector(1, 2, 2, 1, 5, 1, 0)).format() == "I+:1 II-:2"


def test_reconstruct_against_brute_force():
    table = oracles.preimage_table(5)
    for p, pre in table.items():
        assert len(pre) == 1, (p, pre)
        assert dk.reconstruct(dk.ParamVector(*p)).as_tuple() == pre[0]


@settings(max_examples=300)
@given(vectors)
def test_round_trip_on_admissible(xi):
    assume(dk.is_admissible(xi))
    assert dk.reconstruct(dk.params(xi)) == xi


@pytest.mark.parametrize("p", [
    dk.ParamVector(0, 0, 0, 0, 0, 1, 0),  # odd numerator
    dk.ParamVector(0, 0, 0, 2, 2, 0, 1),  # a+ and h+ both set with kappa > 0
    dk.ParamVector(1, 0, 0, 3, 3, 3, 0),  # would need a negative II+ count
])
def test_reconstruct_rejects(p):
    with pytest.raises(dk.DiskError):
        dk.reconstruct(p)


def test_format_and_parse_block():
    xi = dk.BlockVector.from_mapping({"I+": 1, "II-": 2})
    assert xi.format() == "I+:1 II-:2"
    assert dk.parse_block(xi.format()) == xi
    assert dk.parse_block("0") == dk.BlockVector()
    assert dk.BlockVector().format() == "0"
    with pytest.raises(dk.DiskError):
        dk.parse_block("IV:2")
    assert 2 * xi + xi == dk.BlockVector.from_mapping({"I+": 3, "II-": 6})


# -- pasting ---------------------------------------------------------------

def _base_inputs():
    for case in (1, 2, 3, 4):
        for args in itertools.product(range(4), range(4), range(4), range(3), range(3), range(3)):
            try:
                blocks = dk.case_blocks(case, *args)
                cfg = dk.paste_blocks(*blocks)
            except dk.DiskError:
                continue
            if cfg.case_tag == case:
                yield case, args, blocks, cfg


BASE = list(_base_inputs())


def test_every_base_case_is_exercised():
    assert {c for c, *_ in BASE} == {1, 2, 3, 4}


def test_paste_matches_closed_forms():
    for case, args, _, cfg in BASE:
        assert cfg.as_dict() == oracles.paste_counts(case, *args), (case, args)


def test_paste_examples():
    cfg = dk.paste_blocks(*dk.case_blocks(1, 2, 3, 2, 1, 1))
    assert cfg.format() == "F0:1 Fp:1 Fm:1 Cp:1 Cm:1"
    cfg = dk.paste_blocks(*dk.case_blocks(2, 1, 1, 1, 1, 1))
    assert cfg.format() == "Tm:1"


def test_paste_weight_is_axis_count():
    for case, (xp, x, xm, *_), _, cfg in BASE:
        assert cfg.weight() == xp + x + xm


def test_bands_preserve_weight_and_merge_disks():
    seen_tags = set()
    for case, (xp, x, xm, *_), blocks, base in BASE:
        n0 = sum(k for _, k in base.counts)
        for bp, bm in itertools.product(range(6), range(6)):
            if bp == bm == 0:
                continue
            try:
                cfg = dk.paste_blocks(*blocks, bands=dk.Bands(bp, bm))
            except dk.DiskError:
                continue
            seen_tags.add(cfg.case_tag)
            assert cfg.weight() == xp + x + xm
            assert n0 - sum(k for _, k in cfg.counts) == bp + bm
    assert seen_tags == {5, 6, 7, 8}


def test_twisted_counts_in_case_six():
    # seven flat disks above, four below, five twisted; seven bands right, two left
    blocks = dk.case_blocks(2, 12, 5, 9, 5, 5)
    assert dk.paste_blocks(*blocks).as_dict() == {"Fp": 7, "Fm": 4, "Tm": 5}
    cfg = dk.paste_blocks(*blocks, bands=dk.Bands(7, 2))
    # q+ = 1, r+ = 2, q- = 0, r- = 2, so r+' = 2 <= r-
    assert cfg.as_dict() == {"Fm": 2, "Tm(1,0)": 3, "Tm(2,1)": 2}


def test_twisted_mirror_symmetry():
    blocks = dk.case_blocks(2, 12, 5, 12, 5, 5)
    for bp, bm in [(7, 2), (3, 1), (5, 5), (4, 4), (9, 3)]:
        try:
            a = dk.paste_blocks(*blocks, bands=dk.Bands(bp, bm))
            b = dk.paste_blocks(*blocks, bands=dk.Bands(bm, bp))
        except dk.DiskError:
            continue
        swap = {}
        for n, k in a.counts:
            base, r, s = dk.split_twisted(n)
            name = {"Fp": "Fm", "Fm": "Fp"}.get(n, dk.twisted("-", s, r) if base == "Tm" else n)
            swap[name] = k
        assert swap == b.as_dict()


def test_paste_side_conditions():
    xi = dk.BlockVector(x_plus=1)
    with pytest.raises(dk.DiskError, match="axis counts"):
        dk.paste_blocks(xi, xi, xi, dk.BlockVector(x_minus=1))
    b1, b2, b3, b4 = dk.case_blocks(1, 2, 3, 2, 1, 1)
    with pytest.raises(dk.DiskError):
        dk.paste_blocks(b2, b1, b3, b4)


def test_ii_disks_fold_to_flat_pairs():
    b = dk.BlockVector(y=1)
    folded = dk.BlockVector(x_plus=1, x_minus=1)
    assert dk.paste_blocks(b, b, b, b) == dk.paste_blocks(folded, folded, folded, folded)


def test_twist_names():
    assert dk.twisted("-", 0, 0) == "Tm"
    assert dk.split_twisted("Tp(2,1)") == ("Tp", 2, 1)
    assert dk.disk_weight("Tm(2,1)") == 6
    with pytest.raises(dk.DiskError, match="differ by more than one"):
        dk.ZeroHandleConfig((("Tm(3,1)", 1),), 6)


# -- normal surfaces -------------------------------------------------------

def test_level_surface_complexity():
    d = parse_pd_code(oracles.TREFOIL_PD)
    assert dk.complexity(d, dk.level_surface(d)) == oracles.level_complexity(3, spheres=2) == (10, 12, 6)
    assert dk.complexity(d, dk.level_surface(d, 1, 0)) == oracles.level_complexity(3) == (5, 6, 3)


@pytest.mark.parametrize("name", ["3_1", "4_1", "6_3", "8_19", "9_40"])
def test_level_surfaces_match(name):
    d = bundled_diagrams()[name]
    s = dk.level_surface(d, 2, 1)
    assert dk.matching_errors(d, s) == []
    assert dk.complexity(d, s) == oracles.level_complexity(d.n_crossings, 3)


def test_json_round_trip_and_schema():
    d = parse_pd_code(oracles.FIGURE_EIGHT_PD)
    s = dk.level_surface(d)
    text = s.to_json()
    assert json.loads(text)["schema"] == dk.SCHEMA_VERSION
    assert dk.NormalSurfaceVector.from_json(text) == s
    bad = json.loads(text)
    bad["schema"] = 99
    with pytest.raises(dk.DiskError, match="schema"):
        dk.NormalSurfaceVector.from_json(json.dumps(bad))


def test_mismatch_detected():
    d = parse_pd_code(oracles.TREFOIL_PD)
    s = dk.level_surface(d)
    broken = dk.NormalSurfaceVector((3,) + s.two_handles[1:], s.one_handles, s.zero_handles)
    assert dk.matching_errors(d, broken)
    with pytest.raises(dk.DiskError, match="matching failure"):
        dk.complexity(d, broken)


def test_curved_one_handle_disks_match_one_side():
    d = parse_pd_code(oracles.TREFOIL_PD)
    s = dk.level_surface(d)
    # a curved disk on one side of edge 0 feeds two arcs to one neighbouring face only
    ones = list(s.one_handles)
    ones[0] = dk.OneHandleDisks(flat=2, curved_left=1)
    errs = dk.matching_errors(d, dk.NormalSurfaceVector(s.two_handles, tuple(ones), s.zero_handles))
    assert any("H1[0]" in e for e in errs)


def test_complexity_order():
    a, b = dk.ComplexityTriple(1, 5, 5), dk.ComplexityTriple(2, 0, 0)
    assert dk.compare_complexity(a, b) == dk.Ordering.LESS
    assert dk.compare_complexity(b, a) == dk.Ordering.GREATER
    assert dk.compare_complexity(a, a) == dk.Ordering.EQUAL
