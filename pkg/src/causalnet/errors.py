"""Exception hierarchy shared by every module.

All domain errors derive from :class:`CausalNetError` so the CLI can map them
to exit code 1 with a single ``except`` clause.
"""

from __future__ import annotations


class CausalNetError(Exception):
    """Base class for domain errors."""


class CycleFound(CausalNetError):
    def __init__(self, edges):
        self.edges = tuple(edges)
        super().__init__(f"directed cycle through edges {list(self.edges)}")


class DanglingEndpoint(CausalNetError):
    def __init__(self, edge, vertex):
        self.edge = edge
        self.vertex = vertex
        super().__init__(f"edge {edge} has unknown endpoint {vertex}")


class DuplicateId(CausalNetError):
    def __init__(self, kind, ident):
        self.ident = ident
        super().__init__(f"duplicate {kind} id {ident}")


class UnknownVertex(CausalNetError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex}")


class UnknownEdge(CausalNetError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"unknown edge {edge}")


class NonComposable(CausalNetError):
    def __init__(self, left, right):
        super().__init__(f"cannot compose: target {left} differs from source {right}")


class LimitExceeded(CausalNetError):
    def __init__(self, cap, what="results"):
        self.cap = cap
        super().__init__(f"more than {cap} {what}")


class DeadlineExceeded(CausalNetError):
    def __init__(self):
        super().__init__("deadline exceeded")


class EndpointMismatch(CausalNetError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"image of edge {edge} does not match the images of its endpoints")


class PartialMap(CausalNetError):
    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"map is undefined on {ident}")


class PathNotInCodomain(CausalNetError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"image of edge {edge} is not a directed path of the codomain")


class DomainMismatch(CausalNetError):
    def __init__(self):
        super().__init__("codomain of the first morphism differs from domain of the second")


class SpecViolation(CausalNetError):
    def __init__(self, condition, detail):
        self.condition = condition
        super().__init__(f"quotient spec violates {condition}: {detail}")


class QuotientNotAcyclic(CausalNetError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"quotient has a directed cycle through {list(self.cycle)}")


class NotCoclique(CausalNetError):
    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__(f"vertices {u} and {v} are comparable")


class NotMultiEdge(CausalNetError):
    def __init__(self, detail):
        super().__init__(f"not a complete multi-edge: {detail}")


class ZeroLength(CausalNetError):
    def __init__(self, edge):
        super().__init__(f"subdivision length for {edge} must be positive")


class WrongClass(CausalNetError):
    """A factorization or builder received a morphism outside its class."""

    def __init__(self, expected, detail=""):
        self.expected = expected
        msg = f"morphism is not a {expected}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotAGap(CausalNetError):
    def __init__(self, position):
        super().__init__(f"position {position} is not a gap")


class DifferentNets(CausalNetError):
    def __init__(self):
        super().__init__("colorings are defined on different nets")


class NoLemmaApplies(CausalNetError):
    def __init__(self, detail):
        super().__init__(f"no commutation lemma applies: {detail}")


class ParseError(CausalNetError):
    def __init__(self, where, detail):
        super().__init__(f"{where}: {detail}")


class MissingFixture(CausalNetError):
    def __init__(self, path):
        super().__init__(f"missing fixture {path}")


class ExpectationMismatch(CausalNetError):
    def __init__(self, diff):
        self.diff = diff
        super().__init__(f"expectation mismatch:\n{diff}")
