"""famop: verification and enumeration kit for family algebraic structures.

Submodules:

- ``omega``: finite parameter structures (Cayley tables), law checks,
  enumeration, symbolic models.
- ``trees``: typed decorated planar binary trees, grafting, codecs.
- ``duplicial``: family products on typed trees and their axiom checkers.
- ``linear``: finite-dimensional family algebras over exact rationals.
- ``operads``: the pairs / corolla / perm / orders set operads.
- ``presentations``: free-operad terms, congruence-closure quotients,
  colored composition, color-mixing membership.
- ``dims``: dimension polynomials, the cubic series identity, and the
  pattern-avoiding counting oracle.
- ``cli``: the ``famop`` command-line interface.
"""

from . import dims, duplicial, linear, omega, operads, presentations, trees
from .errors import (FamopError, MixingConsistencyError, ParseError,
                     PreconditionError, ResourceBoundError)
from .report import LawReport

__all__ = [
    "omega", "trees", "duplicial", "linear", "operads", "presentations",
    "dims", "LawReport", "FamopError", "PreconditionError",
    "ResourceBoundError", "ParseError", "MixingConsistencyError",
]

__version__ = "0.1.0"
