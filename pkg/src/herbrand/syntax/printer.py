from __future__ import annotations

from .formula import And, Atom, Formula, Not, Or, Quantifier, format_term, format_var
from .parser import LT

_OR, _AND, _UNARY, _ATOM = 1, 2, 3, 4


def _prec(A: Formula) -> int:
    if isinstance(A, Or):
        return _OR
    if isinstance(A, And):
        return _AND
    if isinstance(A, Atom):
        return _ATOM
    return _UNARY


def print_formula(A: Formula) -> str:
    """Canonical text; ``parse(print_formula(A))`` is alpha-equal to ``A``."""
    out: list[str] = []

    def emit(B, need):
        if _prec(B) < need:
            out.append("(")
            emit(B, 0)
            out.append(")")
            return
        if isinstance(B, Atom):
            if B.pred.name == LT and B.pred.arity == 2:
                out.append(f"({format_term(B.args[0])} < {format_term(B.args[1])})")
            elif B.args:
                out.append(B.pred.name + "(" + ", ".join(format_term(t) for t in B.args) + ")")
            else:
                out.append(B.pred.name)
        elif isinstance(B, Not):
            out.append("~")
            emit(B.body, _UNARY)
        elif isinstance(B, Quantifier):
            out.append(f"{B.kind} {format_var(B.var)}. ")
            emit(B.body, _UNARY)
        elif isinstance(B, Or):
            # mixed connectives are parenthesised for readability
            emit(B.left, _OR if not isinstance(B.left, And) else _UNARY)
            out.append(" \\/ ")
            emit(B.right, _AND if not isinstance(B.right, And) else _UNARY)
        else:
            emit(B.left, _AND)
            out.append(" /\\ ")
            emit(B.right, _UNARY)

    emit(A, 0)
    return "".join(out)

