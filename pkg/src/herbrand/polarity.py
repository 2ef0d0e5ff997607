"""Negation parity and the existentialoid/universaloid classification.

A quantifier occurrence is *existentialoid* (gamma) if it is an ``exists``
under an even number of negations or a ``forall`` under an odd number;
otherwise it is *universaloid* (delta).  It is *accessible* if no other
quantifier lies above it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import Not, Position, Quantifier, children, path_nodes

GAMMA = "gamma"
DELTA = "delta"
EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class QuantifierOccurrence:
    position: Position
    quantifier: str  # "forall" | "exists"
    variable: str
    negation_parity: str
    cls: str
    accessible: bool


def quantifier_class(kind: str, parity: int) -> str:
    return GAMMA if (kind == "exists") == (parity % 2 == 0) else DELTA


def classify_quantifiers(A) -> list[QuantifierOccurrence]:
    out = []

    def walk(B, pos, parity, under_quantifier):
        if isinstance(B, Quantifier):
            out.append(QuantifierOccurrence(
                pos, B.kind, B.var, EVEN if parity % 2 == 0 else ODD,
                quantifier_class(B.kind, parity), not under_quantifier))
            walk(B.body, pos + (0,), parity, True)
            return
        bump = 1 if isinstance(B, Not) else 0
        for i, k in enumerate(children(B)):
            walk(k, pos + (i,), parity + bump, under_quantifier)

    walk(A, (), 0, False)
    return out


def negation_parity(A, p: Position) -> int:
    """Number of negations strictly above ``p``, modulo 2."""
    return sum(isinstance(B, Not) for B in path_nodes(A, p)) % 2


def polarity_at(A, p: Position) -> str:
    return EVEN if negation_parity(A, p) == 0 else ODD


def is_accessible_position(A, p: Position) -> bool:
    """True if no quantifier lies strictly above ``p``."""
    return not any(isinstance(B, Quantifier) for B in path_nodes(A, p))
