"""Outer Skolemized form."""
from __future__ import annotations

from .polarity import GAMMA, quantifier_class
from .syntax import (
    SKOLEM_PREFIX, App, Atom, Not, Quantifier, Symbol, Var, children, function_symbols,
    substitute_term, with_children,
)


def skolem_symbol_name(var: str, used: set[str]) -> str:
    name = SKOLEM_PREFIX + var
    k = 1
    while name in used:
        name = f"{SKOLEM_PREFIX}{var}#{k}"
        k += 1
    return name


def outer_skolemize(A, table: dict | None = None):
    """Delete every universaloid quantifier of ``A``.

    Its variable ``x`` is replaced by ``sk$x(y1, ..., ym)`` where ``y1..ym``
    are the existentialoid variables enclosing the quantifier, outermost
    first.  Free variables stay as they are.  If ``table`` is given it is
    filled with ``delta-variable -> Skolem Symbol``.
    """
    used = {s.name for s in function_symbols(A)}
    if table is None:
        table = {}

    def walk(B, parity, gammas, sigma):
        if isinstance(B, Atom):
            if not sigma:
                return B
            return Atom(B.pred, tuple(substitute_term(t, sigma) for t in B.args))
        if isinstance(B, Quantifier):
            if quantifier_class(B.kind, parity) == GAMMA:
                inner = {v: t for v, t in sigma.items() if v != B.var}
                return type(B)(B.var, walk(B.body, parity, gammas + (B.var,), inner))
            name = skolem_symbol_name(B.var, used)
            used.add(name)
            sym = Symbol(name, len(gammas), "skolem")
            table[B.var] = sym
            sk = App(sym, tuple(Var(y) for y in gammas))
            return walk(B.body, parity, gammas, {**sigma, B.var: sk})
        bump = 1 if isinstance(B, Not) else 0
        return with_children(B, [walk(k, parity + bump, gammas, sigma) for k in children(B)])

    return walk(A, 0, (), {})
