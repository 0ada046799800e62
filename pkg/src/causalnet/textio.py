"""Line-oriented text formats for nets, morphisms, quotient specs and sorting-nets."""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Iterator

from .coloring import SortingNet
from .construct import QuotientSpec
from .errors import CausalNetError, MissingFixture, ParseError
from .morphism import Morphism, validate_morphism
from .net import CausalNet, validate_net


def _lines(text: str, where: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if line:
            yield no, line


def _arity(where: str, no: int, toks: list[str], n: int | None = None, at_least: int | None = None):
    if n is not None and len(toks) != n:
        raise ParseError(f"{where}:{no}", f"'{toks[0]}' takes {n - 1} argument(s)")
    if at_least is not None and len(toks) < at_least:
        raise ParseError(f"{where}:{no}", f"'{toks[0]}' takes at least {at_least - 1} argument(s)")


# -- nets -----------------------------------------------------------------------------


def _parse_net_lines(text: str, where: str, extra: dict[str, Callable] | None = None) -> CausalNet:
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    for no, toks in _lines(text, where):
        head = toks[0]
        if head == "vertex":
            _arity(where, no, toks, 2)
            vertices.append(toks[1])
        elif head == "edge":
            _arity(where, no, toks, 4)
            edges.append((toks[1], toks[2], toks[3]))
        elif extra and head in extra:
            extra[head](no, toks)
        else:
            raise ParseError(f"{where}:{no}", f"unknown declaration '{head}'")
    try:
        return validate_net(vertices, edges)
    except CausalNetError as exc:
        raise ParseError(where, str(exc)) from exc


def parse_net(text: str, where: str = "<net>") -> CausalNet:
    return _parse_net_lines(text, where)


def serialize_net(net: CausalNet) -> str:
    out = [f"vertex {v}" for v in net.vertices]
    out += [f"edge {e} {net.ends[e][0]} {net.ends[e][1]}" for e in net.edges]
    return "".join(line + "\n" for line in out)


def read_net(path: str | Path) -> CausalNet:
    path = Path(path)
    if not path.is_file():
        raise MissingFixture(path)
    return parse_net(path.read_text(), str(path))


# -- sorting-nets ------------------------------------------------------------------------


def parse_sorting_net(text: str, where: str = "<sorting-net>") -> SortingNet:
    order: list[list[str]] = []

    def take(no, toks):
        if order:
            raise ParseError(f"{where}:{no}", "duplicate 'order' line")
        order.append(toks[1:])

    net = _parse_net_lines(text, where, {"order": take})
    if not order:
        raise ParseError(where, "missing 'order' line")
    return SortingNet(net, tuple(order[0]))


def serialize_sorting_net(S: SortingNet) -> str:
    return serialize_net(S.net) + "order " + " ".join(S.order) + "\n"


# -- morphisms ----------------------------------------------------------------------------


def parse_morphism(text: str, where: str = "<morphism>", base: str | Path | None = None, nets: dict[str, CausalNet] | None = None) -> Morphism:
    """``dom``/``cod`` name net files relative to ``base``, or keys of ``nets``."""
    ends: dict[str, CausalNet] = {}
    vmap: dict[str, str] = {}
    emap: dict[str, object] = {}
    for no, toks in _lines(text, where):
        head = toks[0]
        if head in ("dom", "cod"):
            _arity(where, no, toks, 2)
            ref = toks[1]
            if nets is not None and ref in nets:
                ends[head] = nets[ref]
            else:
                ends[head] = read_net(Path(base or ".") / ref)
        elif head == "vmap":
            _arity(where, no, toks, 3)
            vmap[toks[1]] = toks[2]
        elif head == "emap":
            _arity(where, no, toks, at_least=3)
            if toks[2].startswith("@"):
                _arity(where, no, toks, 3)
                emap[toks[1]] = toks[2]
            else:
                emap[toks[1]] = toks[2:]
        else:
            raise ParseError(f"{where}:{no}", f"unknown declaration '{head}'")
    for side in ("dom", "cod"):
        if side not in ends:
            raise ParseError(where, f"missing '{side}' line")
    try:
        return validate_morphism(ends["dom"], ends["cod"], vmap, emap)
    except CausalNetError as exc:
        raise ParseError(where, str(exc)) from exc


def serialize_morphism(m: Morphism, dom_ref: str, cod_ref: str) -> str:
    out = [f"dom {dom_ref}", f"cod {cod_ref}"]
    out += [f"vmap {v} {m.vmap[v]}" for v in m.dom.vertices]
    for e in m.dom.edges:
        p = m.emap[e]
        out.append(f"emap {e} " + (" ".join(p.edges) if p.edges else f"@{p.source}"))
    return "".join(line + "\n" for line in out)


def read_morphism(path: str | Path) -> Morphism:
    path = Path(path)
    if not path.is_file():
        raise MissingFixture(path)
    return parse_morphism(path.read_text(), str(path), base=path.parent)


# -- quotient specs ---------------------------------------------------------------------------


def parse_quotient_spec(text: str, where: str = "<spec>") -> QuotientSpec:
    vblocks: list[list[str]] = []
    segments: list[str] = []
    eblocks: list[list[str]] = []
    for no, toks in _lines(text, where):
        head = toks[0]
        if head == "vblock":
            _arity(where, no, toks, at_least=2)
            vblocks.append(toks[1:])
        elif head == "segment":
            _arity(where, no, toks, 2)
            segments.append(toks[1])
        elif head == "eblock":
            _arity(where, no, toks, at_least=2)
            eblocks.append(toks[1:])
        else:
            raise ParseError(f"{where}:{no}", f"unknown declaration '{head}'")
    return QuotientSpec.of(vblocks, segments, eblocks)


def serialize_quotient_spec(spec: QuotientSpec) -> str:
    out = ["vblock " + " ".join(sorted(b)) for b in sorted(spec.vertex_blocks, key=sorted)]
    out += [f"segment {e}" for e in sorted(spec.segments)]
    out += ["eblock " + " ".join(sorted(b)) for b in sorted(spec.edge_blocks, key=sorted)]
    return "".join(line + "\n" for line in out)


# -- structured output ---------------------------------------------------------------------------


def net_to_dict(net: CausalNet) -> dict:
    return {
        "vertices": list(net.vertices),
        "edges": [[e, net.ends[e][0], net.ends[e][1]] for e in net.edges],
    }


def morphism_to_dict(m: Morphism) -> dict:
    return {
        "dom": net_to_dict(m.dom),
        "cod": net_to_dict(m.cod),
        "vmap": {v: m.vmap[v] for v in m.dom.vertices},
        "emap": {e: (list(m.emap[e].edges) if m.emap[e].edges else f"@{m.emap[e].source}") for e in m.dom.edges},
    }
