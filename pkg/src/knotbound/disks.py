"""Normal-disk vector algebra inside a single zero-handle block.

A block vector counts boundary curves of the nine block types.  Seven linear
parameters (axis hits split three ways, two side-face counts, the face count
and the knot-hit count) determine an admissible vector, and four block
vectors around a crossing paste into a zero-handle disk configuration.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, fields
from enum import IntEnum
from typing import Iterable, Mapping, NamedTuple

from .diagram import Diagram


class DiskError(ValueError):
    """Inputs that no normal surface can produce."""


TYPE_NAMES = ("I+", "I", "I-", "II+", "II", "II-", "III", "tau1", "tau2")
UNIVERSAL = frozenset({"I+", "I-", "II-"})

# Rows: iv_plus, iv_0, iv_minus, h1_plus, h1_minus, h2, kappa.  Columns follow TYPE_NAMES.
PARAM_TABLE: tuple[tuple[int, ...], ...] = (
    (1, 0, 0, 1, 1, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 1, 1, 0, 0),
    (0, 0, 1, 0, 1, 1, 1, 1, 1),
    (1, 1, 1, 2, 2, 0, 1, 1, 0),
    (1, 1, 1, 0, 2, 2, 1, 1, 2),
    (1, 1, 1, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 1),
)

# Pairs of non-universal types that may share a block.  Regenerated by
# knotbound.derive from the reconstruction branches and checked in tests.
ADMISSIBLE_EDGES: frozenset[frozenset[str]] = frozenset(
    frozenset(p)
    for p in (
        ("I", "II+"),
        ("III", "II+"),
        ("II", "II+"),
        ("III", "tau1"),
        ("II", "tau2"),
        ("tau1", "tau2"),
    )
)


@dataclass(frozen=True)
class BlockVector:
    x_plus: int = 0
    x: int = 0
    x_minus: int = 0
    y_plus: int = 0
    y: int = 0
    y_minus: int = 0
    z: int = 0
    t1: int = 0
    t2: int = 0

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.as_tuple()):
            raise DiskError(f"negative block coefficient in {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    @classmethod
    def from_tuple(cls, vals: Iterable[int]) -> "BlockVector":
        return cls(*vals)

    @classmethod
    def generator(cls, name: str, k: int = 1) -> "BlockVector":
        vals = [0] * 9
        vals[TYPE_NAMES.index(name)] = k
        return cls(*vals)

    @classmethod
    def from_mapping(cls, m: Mapping[str, int]) -> "BlockVector":
        vals = [0] * 9
        for name, k in m.items():
            vals[TYPE_NAMES.index(name)] += k
        return cls(*vals)

    def __add__(self, other: "BlockVector") -> "BlockVector":
        return BlockVector(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __rmul__(self, k: int) -> "BlockVector":
        return BlockVector(*(k * a for a in self.as_tuple()))

    def support(self) -> frozenset[str]:
        return frozenset(n for n, v in zip(TYPE_NAMES, self.as_tuple()) if v)

    def format(self) -> str:
        """Nonzero entries as ``name:count`` in type order; ``0`` for the zero vector."""
        parts = [f"{n}:{v}" for n, v in zip(TYPE_NAMES, self.as_tuple()) if v]
        return " ".join(parts) if parts else "0"


class ParamVector(NamedTuple):
    iv_plus: int
    iv_0: int
    iv_minus: int
    h1_plus: int
    h1_minus: int
    h2: int
    kappa: int

    @property
    def iv(self) -> int:
        return self.iv_plus + self.iv_0 + self.iv_minus


class DerivedVector(NamedTuple):
    a_plus: int
    a_minus: int
    h_plus: int
    h_minus: int
    eta: int
    sigma: int


def params(xi: BlockVector) -> ParamVector:
    v = xi.as_tuple()
    return ParamVector(*(sum(r * c for r, c in zip(row, v)) for row in PARAM_TABLE))


def _half(n: int) -> int:
    if n % 2:
        raise DiskError("non-realizable parameter vector: odd numerator")
    return n // 2


def derived(p: ParamVector) -> DerivedVector:
    iv = p.iv
    return DerivedVector(
        a_plus=_half(iv - p.h1_minus),
        a_minus=_half(iv - p.h1_plus),
        h_plus=_half(p.h1_plus - p.h2),
        h_minus=_half(p.h1_minus - p.h2),
        eta=p.iv_plus + p.iv_minus - _half(p.h1_plus + p.h1_minus),
        sigma=_half(p.iv_plus - p.iv_0 + p.iv_minus - p.h2),
    )


def is_admissible(xi: BlockVector) -> bool:
    rest = sorted(xi.support() - UNIVERSAL)
    return all(frozenset((a, b)) in ADMISSIBLE_EDGES for i, a in enumerate(rest) for b in rest[i + 1 :])


# Which branch of the reconstruction handles a parameter vector.  derive.py
# reads the same labels to recover the admissibility graph.
BRANCH_ETA_NEG = "kappa=0, eta<0"
BRANCH_ETA_POS = "kappa=0, eta>0"
BRANCH_ETA_ZERO = "kappa=0, eta=0"
BRANCH_A_PLUS = "kappa>0, a+>0"
BRANCH_H_PLUS = "kappa>0, h+>0"
BRANCH_REST = "kappa>0, a+=h+=0"


def reconstruction_branch(p: ParamVector) -> str:
    dv = derived(p)
    if p.kappa == 0:
        if dv.eta < 0:
            return BRANCH_ETA_NEG
        return BRANCH_ETA_POS if dv.eta > 0 else BRANCH_ETA_ZERO
    if dv.a_plus and dv.h_plus:
        raise DiskError("not realizable: a+ and h+ both nonzero with kappa > 0")
    if dv.a_plus:
        return BRANCH_A_PLUS
    return BRANCH_H_PLUS if dv.h_plus else BRANCH_REST


def _branch_values(p: ParamVector) -> dict[str, int]:
    dv = derived(p)
    branch = reconstruction_branch(p)
    v: dict[str, int] = {}
    if branch == BRANCH_ETA_NEG:
        v["x"] = -dv.eta
        v["y_plus"], v["y_minus"] = dv.a_plus, dv.a_minus
        v["x_plus"] = p.iv_plus - v["y_plus"]
        v["x_minus"] = p.iv_minus - v["y_minus"]
    elif branch == BRANCH_ETA_POS:
        v["z"] = dv.eta
        v["y_plus"], v["y_minus"] = dv.h_plus, dv.h_minus
        v["x_plus"] = p.iv_plus - v["y_plus"] - v["z"]
        v["x_minus"] = p.iv_minus - v["y_minus"] - v["z"]
    elif branch == BRANCH_ETA_ZERO:
        v["y"] = dv.sigma
        v["y_plus"], v["y_minus"] = dv.a_plus, dv.a_minus
        v["x_plus"] = p.iv_plus - v["y_plus"] - v["y"]
        v["x_minus"] = p.iv_minus - v["y_minus"] - v["y"]
    elif branch == BRANCH_A_PLUS:
        v["z"] = dv.a_plus
        v["t1"] = p.kappa
        v["y_minus"] = dv.h_minus
        v["x_plus"] = p.iv_plus - v["z"]
        v["x_minus"] = p.iv_minus - v["y_minus"] - v["z"] - v["t1"]
    elif branch == BRANCH_H_PLUS:
        v["y"] = dv.h_plus
        v["t2"] = p.kappa
        v["y_minus"] = dv.a_minus - v["t2"]
        v["x_plus"] = p.iv_plus - v["y"] - v["t2"]
        v["x_minus"] = p.iv_minus - v["y_minus"] - v["y"] - v["t2"]
    else:
        v["t2"] = dv.eta
        v["y_minus"] = dv.a_minus - v["t2"]
        v["x_plus"] = p.iv_plus - v["t2"]
        v["t1"] = p.kappa - v["t2"]
        v["x_minus"] = p.iv_minus - v["y_minus"] - v["t1"] - v["t2"]
    return v


def reconstruct(p: ParamVector) -> BlockVector:
    """The unique admissible block vector with parameters ``p``."""
    p = ParamVector(*p)
    v = _branch_values(p)
    if any(k < 0 for k in v.values()):
        raise DiskError(f"not realizable: negative count in branch {reconstruction_branch(p)}")
    xi = BlockVector(**v)
    if params(xi) != p or not is_admissible(xi):
        raise DiskError("not realizable: reconstruction does not reproduce the parameters")
    return xi


# -- pasting four blocks into a zero-handle --------------------------------

@dataclass(frozen=True)
class Bands:
    """Bands added between disks: ``plus`` along the right edge, ``minus`` along the left."""

    plus: int = 0
    minus: int = 0

    def __post_init__(self) -> None:
        if self.plus < 0 or self.minus < 0:
            raise DiskError("band counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.plus + self.minus


SUBCLASSES = ("F0", "Fp", "Fm", "C0", "Cp", "Cm", "Tm", "Tp", "FmP", "FpM", "CmP", "CpM", "C0P", "C0M")

# Axis points each disk class contributes; twisted disks add one per band.
_WEIGHT = {"F0": 1, "Fp": 1, "Fm": 1, "C0": 2, "Cp": 2, "Cm": 2, "Tm": 3, "Tp": 3,
           "FmP": 1, "FpM": 1, "CmP": 2, "CpM": 2, "C0P": 2, "C0M": 2}


def twisted(sign: str, r: int, s: int) -> str:
    base = "Tm" if sign == "-" else "Tp"
    return base if r == s == 0 else f"{base}({r},{s})"


def split_twisted(name: str) -> tuple[str, int, int]:
    if "(" not in name:
        return name, 0, 0
    base, rest = name.split("(")
    r, s = rest.rstrip(")").split(",")
    return base, int(r), int(s)


def disk_weight(name: str) -> int:
    base, r, s = split_twisted(name)
    return _WEIGHT[base] + r + s


@dataclass(frozen=True)
class ZeroHandleConfig:
    counts: tuple[tuple[str, int], ...]
    case_tag: int

    def __post_init__(self) -> None:
        for name, k in self.counts:
            base, r, s = split_twisted(name)
            if base not in _WEIGHT:
                raise DiskError(f"unknown disk subclass {name}")
            if abs(r - s) > 1:
                raise DiskError(f"{name}: twist indices differ by more than one")
            if k <= 0:
                raise DiskError(f"{name}: stored counts must be positive")

    def get(self, name: str) -> int:
        return dict(self.counts).get(name, 0)

    def as_dict(self) -> dict[str, int]:
        return dict(self.counts)

    def weight(self) -> int:
        return sum(disk_weight(n) * k for n, k in self.counts)

    def format(self) -> str:
        return " ".join(f"{n}:{k}" for n, k in self.counts) if self.counts else "empty"


def _config(raw: Mapping[str, int], tag: int) -> ZeroHandleConfig:
    bad = {n: k for n, k in raw.items() if k < 0}
    if bad:
        raise DiskError(f"negative derived count {bad}: inputs are inconsistent")
    order = {n: i for i, n in enumerate(SUBCLASSES)}

    def key(n: str) -> tuple[int, int, int]:
        base, r, s = split_twisted(n)
        return order[base], r, s

    return ZeroHandleConfig(tuple(sorted(((n, k) for n, k in raw.items() if k), key=lambda t: key(t[0]))), tag)


def _fold_ii(xi: BlockVector) -> BlockVector:
    # a II-disk is an I+ and an I- disk joined by a band along the vertical edge
    if not xi.y:
        return xi
    v = list(xi.as_tuple())
    v[0] += xi.y
    v[2] += xi.y
    v[4] = 0
    return BlockVector(*v)


def _combo(**kw: int) -> BlockVector:
    if any(k < 0 for k in kw.values()):
        raise DiskError(f"negative derived count {kw}: inputs are inconsistent")
    return BlockVector(**kw)


def base_case(xi1: BlockVector) -> int:
    p = params(xi1)
    dv = derived(p)
    if p.kappa == 0:
        return 1 if dv.eta <= 0 else 2
    return 3 if dv.a_plus == 0 else 4


def case_blocks(case: int, x_plus: int, x: int, x_minus: int, y_plus: int = 0,
                y_minus: int = 0, t: int = 0) -> tuple[BlockVector, BlockVector, BlockVector, BlockVector]:
    """The four block vectors that realize a base pasting case."""
    xi4 = _combo(x_plus=x_plus, x=x, x_minus=x_minus)
    xi2 = _combo(x_plus=x_plus - y_plus, x=x - y_plus, x_minus=x_minus, y_plus=y_plus)
    if case in (1, 2):
        xi3 = _combo(x_plus=x_plus, x=x - y_minus, x_minus=x_minus - y_minus, y_minus=y_minus)
        if case == 1:
            xi1 = _combo(x_plus=x_plus - y_plus, x=x - y_plus - y_minus, x_minus=x_minus - y_minus,
                         y_plus=y_plus, y_minus=y_minus)
        else:
            xi1 = _combo(x_plus=x_plus - y_plus, x_minus=x_minus - y_minus, y_plus=x - y_minus,
                         y_minus=x - y_plus, z=y_plus + y_minus - x)
    elif case == 3:
        xi1 = xi3 = _combo(x_plus=x_plus - y_minus + x, x_minus=x_minus - x - t, y_minus=x,
                           t1=t - y_minus + x, t2=y_minus - x)
        xi2 = xi4
    elif case == 4:
        xi3 = _combo(x_plus=x_plus, x_minus=x_minus - x - t, y_minus=x, t1=t)
        xi1 = _combo(x_plus=x_plus - y_plus, x_minus=x_minus - x - t, y_minus=x - y_plus, z=y_plus, t1=t)
    else:
        raise DiskError(f"unknown base case {case}")
    return xi1, xi2, xi3, xi4


def paste_blocks(xi1: BlockVector, xi2: BlockVector, xi3: BlockVector, xi4: BlockVector,
                 bands: Bands | None = None) -> ZeroHandleConfig:
    """Zero-handle disk classes produced by four normalized block vectors and optional bands."""
    bands = bands or Bands()
    blocks = [_fold_ii(b) for b in (xi1, xi2, xi3, xi4)]
    ps = [params(b) for b in blocks]
    if len({(p.iv_plus, p.iv_0, p.iv_minus) for p in ps}) != 1:
        raise DiskError("side condition: the four blocks must share their axis counts")
    ds = [derived(p) for p in ps]
    if ds[1].a_minus != 0 or ds[2].a_plus != 0:
        raise DiskError("side condition: a-(block 2) and a+(block 3) must vanish")
    if ds[0].a_plus != ds[1].a_plus or ds[2].a_plus != ds[3].a_plus or \
            ds[0].a_minus != ds[2].a_minus or ds[1].a_minus != ds[3].a_minus:
        raise DiskError("side condition: shared-rectangle counts disagree")
    if blocks[3].support() - {"I+", "I", "I-"}:
        raise DiskError("side condition: block 4 must only hold flat types")
    b1 = blocks[0]
    p1, d1 = ps[0], ds[0]
    xp, x, xm = ps[3].iv_plus, ps[3].iv_0, ps[3].iv_minus
    yp, ym, t = d1.a_plus, d1.a_minus, p1.kappa
    case = base_case(b1)
    expect = case_blocks(case, xp, x, xm, yp, ym, t)
    if tuple(blocks) != expect:
        raise DiskError(f"inputs are inconsistent with pasting case {case}")

    if case == 1:
        raw = {"Fp": xp - yp, "Fm": xm - ym, "Cp": yp, "Cm": ym, "F0": x - yp - ym}
    elif case == 2:
        raw = {"Fp": xp - yp, "Fm": xm - ym, "Tm": yp + ym - x, "Cp": x - ym, "Cm": x - yp}
    elif case == 3:
        raw = {"Cm": x, "Fm": xm - x - t, "Fp": xp - ym + x, "CmP": ym - x, "FmP": t - ym + x}
    else:
        raw = {"Fp": xp - yp, "Fm": xm - x - t, "FmP": t, "Tm": yp, "Cm": x - yp}
    if any(v < 0 for v in raw.values()):
        raise DiskError(f"negative derived count in case {case}: inputs are inconsistent")
    if bands.total == 0:
        return _config(raw, case)
    return _config(_add_bands(case, raw, bands), case + 4)


def _one_block(bands: Bands) -> int:
    if bands.plus and bands.minus:
        raise DiskError("unsupported band pattern: bands fit in one block only")
    return bands.total


def _join_flat(raw: dict[str, int], b: int) -> None:
    # a band joining an upper and a lower flat disk gives a curved disk around the axis
    raw["Fp"] -= b
    raw["Fm"] -= b
    raw["C0"] = raw.get("C0", 0) + b


def _add_bands(case: int, raw: dict[str, int], bands: Bands) -> dict[str, int]:
    raw = dict(raw)
    if case == 1:
        if raw["F0"]:
            raise DiskError("unsupported band pattern: flat disks through the axis block every band")
        _join_flat(raw, _one_block(bands))
        return raw
    if case == 2:
        return _bands_twisted(raw, bands)
    if case == 3:
        if raw["CmP"] and raw["FmP"]:
            raise DiskError("unsupported band pattern: both kinds of knot-meeting disks present")
        b = _one_block(bands)
        if raw["CmP"]:
            _join_flat(raw, b)
            return raw
        if raw["Cm"]:
            raise DiskError("unsupported band pattern: curved disks block the band")
        k = min(b, raw["FmP"])
        raw["FmP"] -= k
        raw["Fp"] -= k
        raw["C0P"] = k
        if b > k:
            _join_flat(raw, b - k)
        return raw
    # case 4
    if raw["Cm"]:
        raise DiskError("unsupported band pattern: curved disks block the band")
    b = _one_block(bands)
    t0, t = raw.pop("Tm"), raw["FmP"]
    raw["Fp"] -= b
    if b < t0:
        raw[twisted("-", 1, 0)] = b
        raw["Tm"] = t0 - b
    else:
        raw[twisted("-", 1, 0)] = t0
        k = min(b - t0, t)
        raw["C0P"] = k
        raw["FmP"] -= k
        rest = b - t0 - k
        if rest:
            raw["Fm"] -= rest
            raw["C0"] = rest
    return raw


def _bands_twisted(raw: dict[str, int], bands: Bands) -> dict[str, int]:
    t0 = raw.pop("Tm")
    cp, cm = raw["Cp"], raw["Cm"]
    if cp and cm:
        raise DiskError("unsupported band pattern: curved disks on both sides")
    if cp or cm:
        # only the side away from the curved disks takes bands
        if (cp and bands.minus) or (cm and bands.plus):
            raise DiskError("unsupported band pattern: band on the curved side")
        b = bands.total
        near, far = ("Fp", "Fm") if cp else ("Fm", "Fp")
        tw = twisted("-", 1, 0) if cp else twisted("-", 0, 1)
        raw[near] -= b
        if t0 >= b:
            raw[tw] = b
            raw["Tm"] = t0 - b
        else:
            raw[tw] = t0
            raw[far] -= b - t0
            raw["C0"] = b - t0
        return raw
    mirror = bands.plus // t0 < bands.minus // t0
    bp, bm = (bands.minus, bands.plus) if mirror else (bands.plus, bands.minus)
    tp, tm = (raw["Fm"], raw["Fp"]) if mirror else (raw["Fp"], raw["Fm"])
    qp, rp = divmod(bp, t0)
    qm, rm = divmod(bm, t0)
    q = min(qp, qm)
    out: dict[tuple[int, int], int] = {}
    c0 = 0
    if qp == qm:
        if rp + rm <= t0:
            out[(q + 1, q)] = rp
            out[(q, q + 1)] = rm
            out[(q, q)] = t0 - rp - rm
        else:
            out[(q + 1, q)] = t0 - rm
            out[(q, q + 1)] = t0 - rp
            out[(q + 1, q + 1)] = rp + rm - t0
        fp, fm = tp - bp, tm - bm
    else:
        rp2 = (qp - q - 1) * t0 + rp
        if rm >= rp2:
            out[(q + 2, q + 1)] = rp2
            out[(q + 1, q + 1)] = rm - rp2
            out[(q + 1, q)] = t0 - rm
        else:
            out[(q + 1, q)] = t0 - rm
            out[(q + 2, q + 1)] = rm
            c0 = rp2 - rm
        fp, fm = tp - bp, tm - max(bm, bp - t0)
    if mirror:
        fp, fm = fm, fp
        out = {(s, r): k for (r, s), k in out.items()}
    for (r, s), k in out.items():
        if k:
            name = twisted("-", r, s)
            raw[name] = raw.get(name, 0) + k
    raw["Fp"], raw["Fm"] = fp, fm
    if c0:
        raw["C0"] = raw.get("C0", 0) + c0
    return raw


# -- normal surfaces and complexity ----------------------------------------

class ComplexityTriple(NamedTuple):
    i2: int
    i1: int
    i0: int


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare_complexity(a: ComplexityTriple, b: ComplexityTriple) -> Ordering:
    ta, tb = tuple(a), tuple(b)
    return Ordering.LESS if ta < tb else Ordering.GREATER if ta > tb else Ordering.EQUAL


class OneHandleDisks(NamedTuple):
    flat: int = 0
    curved_left: int = 0
    curved_right: int = 0

    @property
    def total(self) -> int:
        return self.flat + self.curved_left + self.curved_right


SCHEMA_VERSION = 1


@dataclass(frozen=True)
class NormalSurfaceVector:
    """Disk counts of a normal surface, keyed by handle.

    ``zero_handles[c]`` holds four block vectors, block ``k`` sitting in
    corner ``k`` of crossing ``c``.  Block ``k`` meets the one-handle at
    slot ``k`` on its minus side and the one at slot ``k+1`` on its plus
    side, and meets the two-handle of the face through corner ``k``.
    """

    two_handles: tuple[int, ...]
    one_handles: tuple[OneHandleDisks, ...]
    zero_handles: tuple[tuple[BlockVector, BlockVector, BlockVector, BlockVector], ...]

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "H2": {f"H2[{i}]": n for i, n in enumerate(self.two_handles)},
            "H1": {f"H1[{e}]": list(d) for e, d in enumerate(self.one_handles)},
            "H0": {f"H0[{c}]": [b.format() for b in blocks] for c, blocks in enumerate(self.zero_handles)},
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "NormalSurfaceVector":
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA_VERSION:
            raise DiskError(f"unsupported schema {doc.get('schema')!r}")

        def indexed(section: Mapping[str, object]) -> list:
            items = sorted(section.items(), key=lambda kv: int(kv[0].split("[")[1].rstrip("]")))
            return [v for _, v in items]

        twos = tuple(int(n) for n in indexed(doc["H2"]))
        ones = tuple(OneHandleDisks(*d) for d in indexed(doc["H1"]))
        zeros = tuple(tuple(parse_block(b) for b in blocks) for blocks in indexed(doc["H0"]))
        return cls(twos, ones, zeros)  # type: ignore[arg-type]


def parse_block(text: str) -> BlockVector:
    if text.strip() == "0":
        return BlockVector()
    m: dict[str, int] = {}
    for tok in text.split():
        name, _, k = tok.partition(":")
        if name not in TYPE_NAMES:
            raise DiskError(f"unknown block type {name!r}")
        m[name] = m.get(name, 0) + int(k)
    return BlockVector.from_mapping(m)


def matching_errors(d: Diagram, s: NormalSurfaceVector) -> list[str]:
    fs = d.faces()
    errs: list[str] = []
    if len(s.two_handles) != len(fs) or len(s.one_handles) != d.n_edges or len(s.zero_handles) != d.n_crossings:
        return ["handle counts do not match the diagram"]
    for i, f in enumerate(fs):
        for pos, e in enumerate(f.edges):
            h = s.one_handles[e]
            side = h.curved_left if _walks_with_edge(d, f, pos) else h.curved_right
            if s.two_handles[i] != h.flat + 2 * side:
                errs.append(f"H2[{i}] holds {s.two_handles[i]} disks but H1[{e}] delivers {h.flat + 2 * side}")
    face_at = {(k.crossing, k.index): i for i, f in enumerate(fs) for k in f.boundary}
    for c, blocks in enumerate(s.zero_handles):
        ps = [params(b) for b in blocks]
        if len({(p.iv_plus, p.iv_0, p.iv_minus) for p in ps}) != 1:
            errs.append(f"H0[{c}]: blocks disagree on axis counts")
        for k, p in enumerate(ps):
            n = s.two_handles[face_at[(c, k)]]
            if p.h2 != n:
                errs.append(f"H0[{c}] block {k}: {p.h2} face arcs against {n} disks")
        for slot in range(4):
            e = d.crossings[c][slot]
            from_minus = ps[slot].h1_minus
            from_plus = ps[(slot - 1) % 4].h1_plus
            if not from_minus == from_plus == s.one_handles[e].total:
                errs.append(f"H0[{c}] slot {slot}: blocks give {from_plus}/{from_minus}, H1[{e}] has {s.one_handles[e].total}")
    return errs


def _walks_with_edge(d: Diagram, face, pos: int) -> bool:
    # edge ``pos`` of a face walk leaves the crossing of the previous corner
    # through the slot named by that corner; the walk follows the knot's
    # direction when that slot is outgoing, which puts the face on the left
    prev = face.boundary[pos - 1]
    return not d.incoming[prev.crossing][prev.index]


def complexity(d: Diagram, s: NormalSurfaceVector) -> ComplexityTriple:
    errs = matching_errors(d, s)
    if errs:
        raise DiskError("matching failure: " + "; ".join(errs[:3]))
    i2 = sum(s.two_handles)
    i1 = sum(h.flat + 2 * (h.curved_left + h.curved_right) for h in s.one_handles)
    i0 = sum(params(blocks[0]).iv for blocks in s.zero_handles)
    return ComplexityTriple(i2, i1, i0)


def level_surface(d: Diagram, above: int = 1, below: int = 1) -> NormalSurfaceVector:
    """Parallel level disks above and below the knot in every handle."""
    n = above + below
    block = BlockVector(x_plus=above, x_minus=below)
    return NormalSurfaceVector(
        two_handles=tuple(n for _ in d.faces()),
        one_handles=tuple(OneHandleDisks(flat=n) for _ in range(d.n_edges)),
        zero_handles=tuple((block,) * 4 for _ in range(d.n_crossings)),
    )
