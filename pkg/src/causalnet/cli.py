"""Command-line front end: ``causalnet <command> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import difflib
import io
import json
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from . import textio
from .classify import ALL_LABELS, FundamentalKind, classify
from .coloring import (
    SortingNet,
    condense,
    coloring_partition,
    enumerate_colorings,
    enumerate_harmonic,
    gaps,
    minimal_sorting_net,
)
from .construct import build_quotient, fundamental
from .decompose import THEOREMS
from .errors import CausalNetError, ExpectationMismatch, MissingFixture
from .minor import COSPAN_LABELS, DEFAULT_VERTEX_BOUND, RELATIONS, minor_search
from .morphism import find_isomorphism
from .net import DEFAULT_CAP, enumerate_paths, structure_flags


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


@dataclass
class _Ctx:
    args: argparse.Namespace
    out: TextIO
    base: Path

    def path(self, p: str) -> Path:
        return self.base / p

    def emit(self, text: str, data):
        if self.args.json:
            self.out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        else:
            self.out.write(text)


def _section(name: str, body: str) -> str:
    return f"--- {name}\n{body}"


def _write_out(ctx: _Ctx, files: dict[str, str]):
    if ctx.args.out:
        d = ctx.path(ctx.args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, body in files.items():
            (d / name).write_text(body)


def _path_text(p) -> str:
    return " ".join(p.edges) if p.edges else f"@{p.source}"


# -- commands -------------------------------------------------------------------------------


def cmd_validate(ctx: _Ctx):
    a = ctx.args
    if a.morphism:
        m = textio.read_morphism(ctx.path(a.morphism))
        ctx.emit(
            f"ok morphism {len(m.dom.vertices)}v/{len(m.dom.edges)}e -> {len(m.cod.vertices)}v/{len(m.cod.edges)}e\n",
            {"kind": "morphism", "valid": True, "morphism": textio.morphism_to_dict(m)},
        )
    elif a.sorting:
        S = textio.parse_sorting_net(_read(ctx, a.sorting), a.sorting)
        ctx.emit(f"ok sorting-net order {' '.join(S.order)}\n", {"kind": "sorting-net", "valid": True, "order": list(S.order)})
    elif a.net:
        G = textio.read_net(ctx.path(a.net))
        if a.spec:
            spec = textio.parse_quotient_spec(_read(ctx, a.spec), a.spec)
            from .construct import check_spec

            check_spec(G, spec)
            ctx.emit("ok quotient-spec\n", {"kind": "quotient-spec", "valid": True})
            return
        flags = structure_flags(G)
        on = sorted(k for k, v in vars(flags).items() if v)
        ctx.emit(
            f"ok net {len(G.vertices)} vertices {len(G.edges)} edges\nflags {' '.join(on)}\n",
            {"kind": "net", "valid": True, "vertices": len(G.vertices), "edges": len(G.edges), "flags": on},
        )
    else:
        raise UsageError("validate: one of --net, --morphism, --sorting is required")


def _read(ctx: _Ctx, p: str) -> str:
    path = ctx.path(p)
    if not path.is_file():
        raise MissingFixture(path)
    return path.read_text()


def cmd_hom(ctx: _Ctx):
    a = ctx.args
    G = textio.read_net(ctx.path(a.net))
    paths = sorted(enumerate_paths(G, a.source, a.target, a.cap), key=lambda p: p.edges)
    text = "".join(_path_text(p) + "\n" for p in paths)
    ctx.emit(text, {"from": a.source, "to": a.target, "count": len(paths), "paths": [list(p.edges) for p in paths]})


def cmd_classify(ctx: _Ctx):
    m = textio.read_morphism(ctx.path(ctx.args.morphism))
    held = {str(x.value) for x in classify(m, ctx.args.cap)}
    ctx.emit("".join(x + "\n" for x in sorted(held)), {str(x.value): str(x.value) in held for x in ALL_LABELS})


def cmd_decompose(ctx: _Ctx):
    a = ctx.args
    m = textio.read_morphism(ctx.path(a.morphism))
    fac = THEOREMS[a.theorem](m)
    files: dict[str, str] = {}
    parts = [f"# theorem {a.theorem}: {len(fac.stages)} stage(s)\n"]
    stages = []
    for i, (s, labels) in enumerate(zip(fac.stages, fac.stage_labels), 1):
        net_name, mor_name = f"N{i}.net", f"stage{i}.mor"
        files[net_name] = textio.serialize_net(s.cod)
        files[mor_name] = textio.serialize_morphism(s, f"N{i - 1}.net", net_name)
        label = " ".join(sorted(labels))
        parts.append(_section(net_name, files[net_name]))
        parts.append(_section(f"{mor_name} {label}", files[mor_name]))
        stages.append({"labels": sorted(labels), "morphism": textio.morphism_to_dict(s)})
    if fac.residual is not None:
        files["residual.mor"] = textio.serialize_morphism(fac.residual, "N0.net", "residual.net")
        files["residual.net"] = textio.serialize_net(fac.residual.cod)
        parts.append(_section("residual.net", files["residual.net"]))
        parts.append(_section("residual.mor isomorphism", files["residual.mor"]))
    if files:
        files["N0.net"] = textio.serialize_net(m.dom)
    _write_out(ctx, files)
    ctx.emit(
        "".join(parts),
        {
            "theorem": a.theorem,
            "stages": stages,
            "residual": None if fac.residual is None else textio.morphism_to_dict(fac.residual),
        },
    )


def _emit_built(ctx: _Ctx, m, net_ref: str):
    files = {"result.net": textio.serialize_net(m.cod), "result.mor": textio.serialize_morphism(m, net_ref, "result.net")}
    _write_out(ctx, files)
    ctx.emit(
        _section("result.net", files["result.net"]) + _section("result.mor", files["result.mor"]),
        textio.morphism_to_dict(m),
    )


def cmd_construct(ctx: _Ctx):
    a = ctx.args
    G = textio.read_net(ctx.path(a.net))
    if a.what == "quotient":
        if not a.spec:
            raise UsageError("construct quotient: --spec is required")
        spec = textio.parse_quotient_spec(_read(ctx, a.spec), a.spec)
        _emit_built(ctx, build_quotient(G, spec), a.net)
    else:
        if not a.kind:
            raise UsageError("construct fundamental: --kind is required")
        try:
            m = fundamental(G, a.kind, *a.args)
        except TypeError as exc:
            raise UsageError(f"construct fundamental: wrong --args for {a.kind}") from exc
        _emit_built(ctx, m, a.net)


def cmd_harmonic(ctx: _Ctx):
    a = ctx.args
    n = a.count if a.count is not None else a.list
    if n is None:
        raise UsageError("harmonic: one of --count, --list is required")
    nets = enumerate_harmonic(n, a.bound if a.bound is not None else 6)
    if a.count is not None:
        ctx.emit(f"{len(nets)}\n", {"n": n, "count": len(nets)})
        return
    text = "".join(_section(f"H{i}.net", textio.serialize_net(G)) for i, G in enumerate(nets, 1))
    ctx.emit(text, {"n": n, "nets": [textio.net_to_dict(G) for G in nets]})


def _blocks(partition) -> list[list[str]]:
    return sorted(sorted(b) for b in partition)


def cmd_coloring(ctx: _Ctx):
    a = ctx.args
    G = textio.read_net(ctx.path(a.net))
    cols = enumerate_colorings(G, a.bound if a.bound is not None else 5)
    parts = sorted(_blocks(coloring_partition(m)) for m in cols)
    text = "".join(" | ".join(" ".join(b) for b in p) + "\n" for p in parts)
    ctx.emit(text, {"count": len(parts), "colorings": parts})


def _sorting_net(ctx: _Ctx) -> SortingNet:
    a = ctx.args
    text = _read(ctx, a.net)
    if a.order:
        G = textio.parse_net("\n".join(l for l in text.splitlines() if not l.strip().startswith("order")), a.net)
        return SortingNet(G, tuple(a.order))
    return textio.parse_sorting_net(text, a.net)


def cmd_sorting(ctx: _Ctx):
    a = ctx.args
    S = _sorting_net(ctx)
    if a.what == "gaps":
        gs = gaps(S)
        ctx.emit("".join(f"{x} {y}\n" for x, y in gs), {"gaps": [list(g) for g in gs]})
        return
    if a.what == "condense":
        if a.gap is None:
            raise UsageError("sorting condense: --gap is required")
        R = condense(S, a.gap)
    else:
        R = minimal_sorting_net(S)
    ctx.emit(textio.serialize_sorting_net(R), {"net": textio.net_to_dict(R.net), "order": list(R.order)})


def cmd_minor(ctx: _Ctx):
    a = ctx.args
    H = textio.read_net(ctx.path(a.minor))
    G = textio.read_net(ctx.path(a.host))
    relation = a.relation.replace("-", "_")
    bound = a.bound if a.bound is not None else DEFAULT_VERTEX_BOUND
    res = minor_search(H, G, relation, bound, a.deadline_ms)
    if res.witness is None:
        verdict = "exhaustive" if res.exhaustive else "bound"
        ctx.emit(f"NONE ({verdict})\n", {"relation": a.relation, "witness": None, "exhaustive": res.exhaustive})
        return
    w = res.witness
    files: dict[str, str] = {}
    mid_ref = None
    if w.middle is not None:
        mid_ref = "middle.net"
        files[mid_ref] = textio.serialize_net(w.middle)

    M, minor, host = mid_ref, a.minor, a.host
    if relation in COSPAN_LABELS:
        ends = [(minor, M), (host, M)]
    elif w.middle is not None:
        ends = [(M, host), (M, minor), (minor, M)]
    else:
        ends = [(minor, host)]

    for i, m in enumerate(w.morphisms, 1):
        files[f"witness{i}.mor"] = textio.serialize_morphism(m, *ends[i - 1])
    _write_out(ctx, files)
    text = f"WITNESS {a.relation}\n" + "".join(_section(k, v) for k, v in files.items())
    ctx.emit(
        text,
        {
            "relation": a.relation,
            "exhaustive": True,
            "middle": None if w.middle is None else textio.net_to_dict(w.middle),
            "morphisms": [textio.morphism_to_dict(m) for m in w.morphisms],
        },
    )


def cmd_iso(ctx: _Ctx):
    a = ctx.args
    G = textio.read_net(ctx.path(a.net))
    H = textio.read_net(ctx.path(a.other))
    m = find_isomorphism(G, H)
    if m is None:
        ctx.emit("NONE\n", {"isomorphism": None})
        return
    ctx.emit(textio.serialize_morphism(m, a.net, a.other), {"isomorphism": textio.morphism_to_dict(m)})


def cmd_corpus_check(ctx: _Ctx):
    report = corpus_check(ctx.path(ctx.args.directory))
    ctx.emit(f"{report.passed} passed\n", {"passed": report.passed, "cases": report.cases})


# -- corpus ---------------------------------------------------------------------------------------


@dataclass
class CorpusReport:
    passed: int = 0
    cases: list[str] = field(default_factory=list)


def corpus_check(directory: str | Path) -> CorpusReport:
    """Run every ``<case>.cmd`` in ``directory`` and compare stdout with ``<case>.out``.

    A ``.cmd`` file holds one command line; file arguments are relative to the directory.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFixture(directory)
    report = CorpusReport()
    diffs = []
    for cmd in sorted(directory.glob("*.cmd")):
        expected_path = cmd.with_suffix(".out")
        if not expected_path.is_file():
            raise MissingFixture(expected_path)
        buf, err = io.StringIO(), io.StringIO()
        code = run(shlex.split(cmd.read_text()), buf, base=directory, err=err)
        got = buf.getvalue()
        if code != 0:
            got += err.getvalue() + f"[exit {code}]\n"
        want = expected_path.read_text()
        if got != want:
            diffs.append("".join(difflib.unified_diff(want.splitlines(True), got.splitlines(True), str(expected_path), cmd.name)))
        else:
            report.passed += 1
        report.cases.append(cmd.stem)
    if diffs:
        raise ExpectationMismatch("\n".join(diffs))
    return report


# -- parser ---------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--bound", type=int, default=None, help="size bound for searches")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--deadline-ms", type=int, default=None, help="wall-clock budget for searches")
    common.add_argument("--out", default=None, help="directory to write result files into")

    p = _Parser(prog="causalnet", description="Causal-nets, morphisms and minors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a net, morphism, sorting-net or quotient spec")
    s.add_argument("--net")
    s.add_argument("--morphism")
    s.add_argument("--sorting")
    s.add_argument("--spec")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("hom", parents=[common], help="list directed paths between two vertices")
    s.add_argument("--net", required=True)
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("classify", parents=[common], help="class labels of a morphism")
    s.add_argument("--morphism", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", parents=[common], help="factor a morphism by a decomposition theorem")
    s.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    s.add_argument("--morphism", required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("construct", parents=[common], help="build a quotient or a fundamental morphism")
    s.add_argument("what", choices=["quotient", "fundamental"])
    s.add_argument("--net", required=True)
    s.add_argument("--spec")
    s.add_argument("--kind", choices=[k.value for k in FundamentalKind])
    s.add_argument("--args", nargs="*", default=[])
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("harmonic", parents=[common], help="harmonic nets on n vertices")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=int)
    g.add_argument("--list", type=int)
    s.set_defaults(func=cmd_harmonic)

    s = sub.add_parser("coloring", parents=[common], help="causal-colorings of a net")
    s.add_argument("--net", required=True)
    s.add_argument("--list", action="store_true", required=True)
    s.set_defaults(func=cmd_coloring)

    s = sub.add_parser("sorting", parents=[common], help="sorting-net gaps and condensation")
    s.add_argument("what", choices=["gaps", "condense", "minimal"])
    s.add_argument("--net", required=True)
    s.add_argument("--order", nargs="+")
    s.add_argument("--gap", type=int)
    s.set_defaults(func=cmd_sorting)

    s = sub.add_parser("minor", parents=[common], help="search for a generalized minor witness")
    s.add_argument("--relation", required=True, choices=[r.replace("_", "-") for r in RELATIONS])
    s.add_argument("--minor", required=True)
    s.add_argument("--host", required=True)
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("iso", parents=[common], help="find an isomorphism between two nets")
    s.add_argument("--net", required=True)
    s.add_argument("--other", required=True)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("corpus-check", parents=[common], help="run a golden-file corpus")
    s.add_argument("directory")
    s.set_defaults(func=cmd_corpus_check)
    return p


def run(argv: list[str], out: TextIO | None = None, base: str | Path | None = None, err: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(str(exc))
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    ctx = _Ctx(args, out, Path(base) if base is not None else Path("."))
    try:
        args.func(ctx)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except CausalNetError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
