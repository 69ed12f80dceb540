"""Command-line front end.

Every subcommand reads files named on the command line, writes a
deterministic report to stdout, and exits 0 (ok), 10 (distinct),
11 (unknown) or 1 (error).  Emitting subcommands (product, gamma-q,
alpha) write the corresponding file format directly; analytic ones
write key=value lines, or a JSON object under --json.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cells import CellError, f_vector
from .complexes import ComplexError, gamma_q, load_facets
from .fundamental import (
    a1_invariants,
    a1_presentation,
    loop_to_word,
    loops_equivalent_detail,
)
from .graphs import Graph, GraphError, cartesian_product, load_graph
from .grids import (
    GridError,
    GridMap,
    HomotopyCertificate,
    check_certificate,
    load_grid,
    parse_grid_json,
)
from .loopspace import a0, build_loop_graph, loop_token_graph, unfold_loop_grid
from .presentations import PresentationError

EXIT_CODES = {"ok": 0, "distinct": 10, "unknown": 11, "error": 1}


class CliError(Exception):
    """Bad command line or failed run, reported on stderr."""


class _Parser(argparse.ArgumentParser):
    # argparse wants to sys.exit on bad flags; surface them as errors
    # instead so run() stays a pure function of argv.
    def error(self, message):
        raise CliError(message)


@dataclass
class CommandResult:
    status: str
    report: str = ""
    payload: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def _build_parser() -> _Parser:
    top = _Parser(prog="ahomotopy", description=__doc__)
    top.add_argument("--seed", type=int, default=None,
                     help="reserved for randomized harness runs; accepted and ignored")
    sub = top.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("product", help="Cartesian product of two graphs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("a1", help="loop group of a based graph")
    p.add_argument("graph")
    p.add_argument("--base", default=None)
    p.add_argument("--presentation", action="store_true")
    p.add_argument("--abelianize", action="store_true")
    p.add_argument("--loop", default=None, help="comma-separated loop to read as a word")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gamma-q", help="q-connectivity graph of a complex")
    p.add_argument("facets")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--mode", choices=("maximal", "all"), default="maximal")
    p.add_argument("--sigma0", default=None, help="comma-separated base simplex")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fvec", help="nondegenerate cell counts of a graph")
    p.add_argument("graph")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("loop-graph", help="truncated loop graph of a based graph")
    p.add_argument("graph")
    p.add_argument("--base", default=None)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--no-collapse", action="store_true")
    p.add_argument("--components", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("homotopy", help="decide equivalence of two based loops")
    p.add_argument("graph")
    p.add_argument("--loop", action="append", required=True,
                   help="comma-separated loop; give exactly twice")
    p.add_argument("--base", default=None)
    p.add_argument("--box", default=None, help="search box widths, e.g. 7 or 7x4")
    p.add_argument("--max-layers", type=int, default=6)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-cert", help="check a stacked deformation certificate")
    p.add_argument("graph")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("alpha", help="unfold a grid map of loops into the host graph")
    p.add_argument("graph")
    p.add_argument("gridmap")
    p.add_argument("--json", action="store_true")
    return top


def _parse_box(text):
    if text is None:
        return None
    parts = text.lower().split("x")
    try:
        widths = [int(p) for p in parts]
    except ValueError:
        raise CliError(f"bad --box value {text!r}") from None
    return widths[0] if len(widths) == 1 else tuple(widths)


def _parse_loop(text) -> tuple[str, ...]:
    return tuple(text.split(","))


def _json_report(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _graph_obj(g: Graph) -> dict:
    obj = {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}
    if g.base is not None:
        obj["base"] = g.base
    return obj


def _grid_obj(f: GridMap) -> dict:
    return json.loads(f.to_json())


def _cmd_product(ns) -> CommandResult:
    g = cartesian_product(load_graph(ns.left), load_graph(ns.right))
    return CommandResult("ok", g.to_json())


def _cmd_a1(ns) -> CommandResult:
    g = load_graph(ns.graph)
    base = g.require_base(ns.base)
    pres = a1_presentation(g, base)
    payload = {
        "status": "ok",
        "generators": list(pres.generators),
        "relators": [pres.format_word(r) for r in pres.relators],
    }
    lines = []
    if ns.presentation:
        gens = " ".join(pres.generators) if pres.generators else "(none)"
        lines.append(f"generators: {gens}")
        lines.extend(f"relator: {pres.format_word(r)}" for r in pres.relators)
    if ns.abelianize:
        inv = a1_invariants(g, base)
        torsion = "[" + ",".join(str(t) for t in inv.torsion) + "]"
        lines.append(f"free_rank={inv.free_rank} torsion={torsion}")
        payload["free_rank"] = inv.free_rank
        payload["torsion"] = list(inv.torsion)
    if ns.loop is not None:
        word = loop_to_word(_parse_loop(ns.loop), g, base)
        lines.append(f"word={pres.format_word(word)}")
        payload["word"] = pres.format_word(word)
    if not lines:
        lines.append(f"generators={len(pres.generators)} relators={len(pres.relators)}")
    report = _json_report(payload) if ns.json else "\n".join(lines) + "\n"
    return CommandResult("ok", report, payload)


def _cmd_gamma_q(ns) -> CommandResult:
    delta = load_facets(ns.facets)
    sigma0 = tuple(ns.sigma0.split(",")) if ns.sigma0 else None
    g = gamma_q(delta, ns.q, mode=ns.mode, sigma0=sigma0)
    return CommandResult("ok", g.to_json())


def _cmd_fvec(ns) -> CommandResult:
    g = load_graph(ns.graph)
    fv = f_vector(g, ns.max_dim)
    payload = {"status": "ok", "max_dim": ns.max_dim, "f_vector": list(fv)}
    if ns.json:
        report = _json_report(payload)
    else:
        report = "f_vector: (" + ", ".join(str(c) for c in fv) + ")\n"
    return CommandResult("ok", report, payload)


def _cmd_loop_graph(ns) -> CommandResult:
    g = load_graph(ns.graph)
    base = g.require_base(ns.base)
    omega = build_loop_graph(g, base, ns.max_len, collapse=not ns.no_collapse)
    payload = {
        "status": "ok",
        "m_max": ns.max_len,
        "collapse": not ns.no_collapse,
        "graph": _graph_obj(omega),
    }
    lines = [
        f"m_max={ns.max_len}",
        f"vertices={len(omega.vertices)}",
        f"edges={len(omega.edges)}",
    ]
    if ns.components:
        comps = a0(omega)
        payload["components"] = [list(c) for c in comps]
        lines.append(f"components={len(comps)}")
        for i, comp in enumerate(comps, start=1):
            flag = "yes" if omega.base in comp else "no"
            lines.append(f"component={i} size={len(comp)} base={flag}")
    report = _json_report(payload) if ns.json else "\n".join(lines) + "\n"
    return CommandResult("ok", report, payload)


def _cmd_homotopy(ns) -> CommandResult:
    if len(ns.loop) != 2:
        raise CliError("give exactly two --loop arguments")
    g = load_graph(ns.graph)
    base = g.require_base(ns.base)
    l1, l2 = (_parse_loop(t) for t in ns.loop)
    status, method, cert = loops_equivalent_detail(
        l1, l2, g, base, box=_parse_box(ns.box), max_layers=ns.max_layers
    )
    result_status = {"equal": "ok", "distinct": "distinct", "unknown": "unknown"}[status]
    payload = {"status": result_status, "result": status}
    parts = [f"result={status}"]
    if method is not None:
        payload["method"] = method
        parts.append(f"method={method}")
    if cert is not None:
        payload["layers"] = cert.steps
        payload["certificate"] = _grid_obj(cert.h())
        parts.append(f"layers={cert.steps}")
    report = _json_report(payload) if ns.json else " ".join(parts) + "\n"
    return CommandResult(result_status, report, payload)


def _cmd_verify_cert(ns) -> CommandResult:
    g = load_graph(ns.graph)
    f = load_grid(ns.f, g)
    gg = load_grid(ns.g, g)
    h = load_grid(ns.h, g)
    cert = HomotopyCertificate(f, gg, h=h)
    if not check_certificate(cert):
        raise CliError("certificate invalid")
    payload = {"status": "ok", "valid": True, "layers": cert.steps}
    if ns.json:
        report = _json_report(payload)
    else:
        report = f"certificate=valid layers={cert.steps}\n"
    return CommandResult("ok", report, payload)


def _cmd_alpha(ns) -> CommandResult:
    host = load_graph(ns.graph)
    with open(ns.gridmap, encoding="utf-8") as fh:
        dim, base, support = parse_grid_json(fh.read(), source=str(ns.gridmap))
    tokens = set(support.values())
    token_graph = loop_token_graph(host, base, tokens)
    f = GridMap(token_graph, dim, base, support)
    out = unfold_loop_grid(f, host)
    return CommandResult("ok", out.to_json())


_COMMANDS = {
    "product": _cmd_product,
    "a1": _cmd_a1,
    "gamma-q": _cmd_gamma_q,
    "fvec": _cmd_fvec,
    "loop-graph": _cmd_loop_graph,
    "homotopy": _cmd_homotopy,
    "verify-cert": _cmd_verify_cert,
    "alpha": _cmd_alpha,
}


def run(argv) -> CommandResult:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise CliError("missing command; see --help")
        return _COMMANDS[ns.command](ns)
    except CliError as e:
        return CommandResult("error", str(e))
    except (GraphError, GridError, CellError, ComplexError, PresentationError) as e:
        return CommandResult("error", str(e))
    except OSError as e:
        return CommandResult("error", str(e))


def main(argv=None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    if result.status == "error":
        print(f"error: {result.report}", file=sys.stderr)
    elif result.report:
        sys.stdout.write(result.report)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
