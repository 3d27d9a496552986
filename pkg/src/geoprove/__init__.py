"""Algebraic proofs of elementary geometry statements, with difficulty scores.

A construction is translated into polynomial hypotheses and a thesis, the
thesis (or 1) is written as an explicit combination of the hypotheses, and
the largest cofactor degree grades how hard the statement is.
"""

__version__ = "0.1.0"

from .algebraizer import PolySystem, default_specialization, specialize, translate
from .dsl import Construction, Predicate, load_construction, parse_construction, parse_polynomial
from .polycore import MonomialOrder, Polynomial, Ring
from .prover import Certificate, Difficulty, Mode, difficulty, minimize_difficulty, prove

__all__ = [
    "Certificate",
    "Construction",
    "Difficulty",
    "Mode",
    "MonomialOrder",
    "PolySystem",
    "Polynomial",
    "Predicate",
    "Ring",
    "default_specialization",
    "difficulty",
    "load_construction",
    "minimize_difficulty",
    "parse_construction",
    "parse_polynomial",
    "prove",
    "specialize",
    "translate",
]
