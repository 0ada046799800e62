"""Causal-nets, their morphisms, decompositions and generalized minors."""

from .errors import CausalNetError
from .morphism import Morphism, compose, identity, validate_morphism
from .net import CausalNet, DirectedPath, validate_net

__version__ = "0.1.0"

__all__ = [
    "CausalNet",
    "CausalNetError",
    "DirectedPath",
    "Morphism",
    "compose",
    "identity",
    "validate_morphism",
    "validate_net",
]
