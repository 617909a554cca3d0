"""Command-line front end.  Every subcommand prints text by default and a
versioned JSON document with ``--format json``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import bound, compat, diagram, disks, handles, models, moves

SCHEMA = "knotbound/1"
DEFAULT_SEED = 20240101
log = logging.getLogger("knotbound")


def _text_or_file(value: str) -> str:
    p = Path(value)
    try:
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return value


def _diagram(args: argparse.Namespace) -> diagram.Diagram:
    if getattr(args, "gauss", None):
        return diagram.parse_gauss_code(_text_or_file(args.gauss))
    if getattr(args, "pd", None):
        return diagram.parse_pd_code(_text_or_file(args.pd))
    raise diagram.DiagramError("give --pd or --gauss")


def _ints(text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(f"expected integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise ValueError(f"expected {n} integers, got {len(vals)}")
    return vals


def _block(text: str) -> disks.BlockVector:
    if ":" in text or text.strip() == "0":
        return disks.parse_block(text)
    return disks.BlockVector(*_ints(text, 9))


# -- subcommands -----------------------------------------------------------

def cmd_parse(args: argparse.Namespace) -> tuple[Any, str]:
    d = _diagram(args)
    v, f, degs = d.fingerprint()
    data = {"pd": diagram.emit_pd_code(d), "crossings": v, "edges": d.n_edges, "faces": f,
            "face_degrees": list(degs), "signs": [d.sign(c) for c in range(v)]}
    return data, f"{data['pd']}\nV={v} E={d.n_edges} F={f}"


def cmd_faces(args: argparse.Namespace) -> tuple[Any, str]:
    d = _diagram(args)
    rows = []
    lines = []
    for i, face in enumerate(diagram.faces(d)):
        corners = [[k.crossing, k.index] for k in face.boundary]
        rows.append({"face": i, "degree": face.degree, "corners": corners, "edges": list(face.edges)})
        lines.append(f"face {i} degree {face.degree}: " + " ".join(f"{c}.{k}" for c, k in corners))
    return rows, "\n".join(lines)


class DomainFailure(Exception):
    def __init__(self, data: Any, text: str):
        super().__init__(text)
        self.data, self.text = data, text


def cmd_validate(args: argparse.Namespace) -> tuple[Any, str]:
    d = _diagram(args)
    report = diagram.validate_minimal_adjacency(d)
    lines = report.lines()
    data = {"ok": report.ok, "violations": lines}
    if not report.ok:
        raise DomainFailure(data, "\n".join(lines))
    return data, "ok"


def cmd_dstructure(args: argparse.Namespace) -> tuple[Any, str]:
    s = handles.build_d_structure(_diagram(args))
    if args.format == "dot":
        return None, handles.to_dot(s).rstrip("\n")
    three, two, one, zero = s.counts()
    walks = {f"H2[{f}]": [str(h) for h in handles.mainbody_walk(s, f)] for f in range(two)}
    data = {"counts": {"H3": three, "H2": two, "H1": one, "H0": zero}, "contacts": len(s.contacts), "walks": walks}
    text = [f"handles: {three} + {two} + {one} + {zero}", f"contacts: {len(s.contacts)}"]
    text += [f"{k}: {' '.join(v)}" for k, v in walks.items()]
    return data, "\n".join(text)


def cmd_params(args: argparse.Namespace) -> tuple[Any, str]:
    xi = _block(args.vector)
    p = disks.params(xi)
    data: dict[str, Any] = {"vector": xi.format(), "params": p._asdict(), "admissible": disks.is_admissible(xi)}
    text = f"params {','.join(map(str, p))}"
    try:
        dv = disks.derived(p)
        data["derived"] = dv._asdict()
        text += f"\nderived {','.join(map(str, dv))}"
    except disks.DiskError as e:
        data["derived"] = None
        text += f"\nderived: {e}"
    return data, text


def cmd_reconstruct(args: argparse.Namespace) -> tuple[Any, str]:
    p = disks.ParamVector(*_ints(args.params, 7))
    xi = disks.reconstruct(p)
    return {"params": p._asdict(), "vector": xi.format(), "coefficients": list(xi.as_tuple())}, xi.format()


def cmd_paste(args: argparse.Namespace) -> tuple[Any, str]:
    if args.case is not None:
        vals = _ints(args.counts or "", None)
        blocks = disks.case_blocks(args.case, *vals)
    else:
        if not args.blocks:
            raise ValueError("give --blocks or --case with --counts")
        parts = [b for b in args.blocks.split(";")]
        if len(parts) != 4:
            raise ValueError("--blocks needs four vectors separated by ';'")
        blocks = tuple(_block(b) for b in parts)  # type: ignore[assignment]
    cfg = disks.paste_blocks(*blocks, bands=disks.Bands(args.bands_plus, args.bands_minus))
    data = {"case": cfg.case_tag, "counts": cfg.as_dict(), "blocks": [b.format() for b in blocks]}
    return data, f"case {cfg.case_tag}: {cfg.format()}"


def cmd_compat_graph(args: argparse.Namespace) -> tuple[Any, str]:
    g = compat.block_type_graph() if args.which == "blocks" else compat.subclass_graph()
    if args.format == "dot":
        return None, g.to_dot("blocks" if args.which == "blocks" else "subclasses").rstrip("\n")
    edges = [list(e) for e in compat._sorted_edges(g)]
    data = {"vertices": list(g.vertices), "edges": edges,
            "cliques": [sorted(c, key=g.vertices.index) for c in g.realizable_cliques]}
    if args.which == "subclasses":
        data["unwitnessed_triangles"] = [sorted(t, key=g.vertices.index) for t in compat.unwitnessed_triangles(g)]
    return data, compat.report().rstrip("\n")


def _state(text: str) -> moves.TauState:
    """``crossing:rectangle:type`` items separated by spaces or commas."""
    data: dict[int, list[list[str]]] = {}
    for tok in text.replace(",", " ").split():
        try:
            c, r, t = tok.split(":")
            ci, ri = int(c), int(r)
        except ValueError:
            raise ValueError(f"bad point {tok!r}; expected crossing:rectangle:type") from None
        if not 0 <= ri < 4:
            raise ValueError(f"rectangle {ri} out of range")
        data.setdefault(ci, [[], [], [], []])[ri].append(t)
    return moves.TauState.build(data)


def cmd_normalize(args: argparse.Namespace) -> tuple[Any, str]:
    state = _state(args.state)
    direction = moves.Direction(args.direction)
    final, trace = moves.normalize(state, direction)
    data = {"start": state.format(), "final": final.format(), "trace": [str(t) for t in trace],
            "standard_form": moves.is_standard_form(final)}
    text = "\n".join([*(str(t) for t in trace), f"final {final.format()}", f"standard form: {data['standard_form']}"])
    return data, text


def cmd_models(args: argparse.Namespace) -> tuple[Any, str]:
    if args.table == "budgets":
        return models.tables_document()["catalog"], models.budget_table_text().rstrip("\n")
    if args.table == "mutations":
        rows = models.tables_document()["mutations"]
        return rows, "\n".join(f"{r['model']} -> {' | '.join(r['to'])}" for r in rows)  # type: ignore[index]
    if args.table == "cooccurrence":
        ts = models.cooccurrence_sets()
        return [t._asdict() for t in ts], "\n".join(f"case {t.case} row {t.row}: {' '.join(t.models)}" for t in ts)
    rep = models.counting_lemma_report()
    lines = [f"{' '.join(ms) or '(empty)'}: {tot} <= {cap}" for ms, tot, cap in rep]
    return [{"models": list(ms), "total": tot, "cap": cap} for ms, tot, cap in rep], "\n".join(lines)


def _assignment(text: str) -> dict[int, models.ModelSet]:
    """``crossing=Model,Model`` items separated by ';' or whitespace; ``*`` covers the rest."""
    out: dict[int, models.ModelSet] = {}
    default = None
    for item in text.replace(";", " ").split():
        key, _, val = item.partition("=")
        names = tuple(v for v in val.split(",") if v)
        if key == "*":
            default = names
        else:
            out[int(key)] = models.ModelSet(int(key), names)
    if default is not None:
        out["*"] = default  # type: ignore[index]
    return out


def cmd_budget(args: argparse.Namespace) -> tuple[Any, str]:
    d = _diagram(args) if (args.pd or args.gauss) else diagram.iterated_sum(
        bound.bundled_diagrams()[n] for n in args.components.split(","))
    raw = _assignment(args.assign)
    default = raw.pop("*", None)  # type: ignore[call-overload]
    if default is not None:
        for c in range(d.n_crossings):
            raw.setdefault(c, models.ModelSet(c, default))
    rep = bound.budget_certificate(d, raw)
    assert rep.budget is not None
    data = rep.to_dict()
    return data, f"V={d.n_crossings}: {rep.budget.format()}"


def cmd_bound(args: argparse.Namespace) -> tuple[Any, str]:
    table = bound.load_knot_table(_text_or_file(args.table), "input") if args.table else bound.bundled_table()
    names = [n for n in args.components.split(",") if n]
    d = _diagram(args) if (args.pd or args.gauss) else None
    rep = bound.check_bound(names, table, d)
    if not rep.verdict:
        raise DomainFailure(rep.to_dict(), rep.summary())
    return rep.to_dict(), rep.summary()


# -- wiring ----------------------------------------------------------------

def _add_diagram_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pd", help="PD code text or a file holding it")
    p.add_argument("--gauss", help="signed Gauss code text or a file holding it")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized searches (none use it yet)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="knotbound", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=fn)
        return p

    for name, fn, h in (("parse", cmd_parse, "normalize a diagram and print its summary"),
                        ("faces", cmd_faces, "list faces of a diagram"),
                        ("validate", cmd_validate, "check the reduced-diagram adjacency conditions"),
                        ("dstructure", cmd_dstructure, "build the handle decomposition")):
        _add_diagram_args(add(name, fn, h))

    p = add("params", cmd_params, "parameters and derived functions of a block vector")
    p.add_argument("--vector", required=True, help="'I+:1 II-:2' or nine comma-separated counts")

    p = add("reconstruct", cmd_reconstruct, "block vector from seven parameters")
    p.add_argument("--params", required=True, help="iv+,iv0,iv-,h1+,h1-,h2,kappa")

    p = add("paste", cmd_paste, "paste four block vectors into a zero-handle configuration")
    p.add_argument("--blocks", help="four block vectors separated by ';'")
    p.add_argument("--case", type=int, choices=(1, 2, 3, 4), help="build the blocks of a base case")
    p.add_argument("--counts", help="x+,x,x-,y+,y-,t for --case")
    p.add_argument("--bands-plus", type=int, default=0)
    p.add_argument("--bands-minus", type=int, default=0)

    p = add("compat-graph", cmd_compat_graph, "block-type and disk-subclass compatibility graphs")
    p.add_argument("--which", choices=("blocks", "subclasses"), default="blocks")

    p = add("normalize", cmd_normalize, "run moves to the fixpoint")
    p.add_argument("--state", required=True, help="points as crossing:rectangle:type, e.g. '0:0:2-'")
    p.add_argument("--direction", choices=("up", "down"), default="up")

    p = add("models", cmd_models, "piece-model tables")
    p.add_argument("--table", choices=("budgets", "mutations", "cooccurrence", "lemma"), default="budgets")

    p = add("budget", cmd_budget, "per-crossing budget certificate for a diagram")
    _add_diagram_args(p)
    p.add_argument("--components", default="", help="build the diagram from bundled summands instead")
    p.add_argument("--assign", required=True, help="'0=X2 1=Z2,Z1' ; '*=...' covers unlisted crossings")

    p = add("bound", cmd_bound, "check the crossing-number inequality for a connected sum")
    _add_diagram_args(p)
    p.add_argument("--components", required=True, help="comma-separated knot names")
    p.add_argument("--table", help="CSV name,crossing_number (defaults to the bundled table)")
    return parser


def _emit(args: argparse.Namespace, data: Any, text: str, ok: bool = True) -> None:
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": args.command, "ok": ok, "result": data}
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    if args.format == "dot" and args.command not in ("dstructure", "compat-graph"):
        parser.error(f"--format dot is not available for {args.command}")
    try:
        data, text = args.func(args)
    except DomainFailure as e:
        _emit(args, e.data, e.text, ok=False)
        return 1
    except (ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=sys.stderr)
        return 1
    _emit(args, data, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
