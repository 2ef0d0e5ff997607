"""Term height, the champ fini T_n(F) and the expansion A^T."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .syntax import (
    BULLET, And, App, Atom, Exists, Or, Quantifier, Var, bound_variables, children,
    format_term, free_variables, function_symbols, rectify, substitute_term, term_variables,
    with_children,
)


class AtomBudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int, what: str = "atom instances"):
        super().__init__(f"{what}: {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class OrderTooSmall(ValueError):
    """Expansion over an empty term set of a formula that has quantifiers."""


def height(t) -> int:
    if isinstance(t, Var) or not t.args:
        return 1
    return 1 + max(height(a) for a in t.args)


def term_sort_key(t):
    return (height(t), format_term(t))


@dataclass(frozen=True)
class ChampFini:
    order: int
    signature: tuple  # base terms (constants, free variables, maybe bullet) then function symbols
    terms: tuple

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def signature_of(F):
    """``(base_terms, functions)`` built from the symbols occurring free in ``F``."""
    syms = function_symbols(F)
    base = [App(s) for s in syms if s.arity == 0]
    base += [Var(v) for v in free_variables(F)]
    if not base:
        base = [BULLET]
    funcs = sorted((s for s in syms if s.arity > 0), key=lambda s: (s.name, s.arity))
    return sorted(base, key=term_sort_key), funcs


def champ_size(n: int, F) -> int:
    """Number of terms in T_n(F), computed without building them."""
    base, funcs = signature_of(F)
    if n <= 1:
        return 0
    upto = [0, len(base)]  # upto[h] = number of terms with height <= h
    for h in range(2, n):
        new = sum(upto[h - 1] ** f.arity - upto[h - 2] ** f.arity for f in funcs)
        upto.append(upto[h - 1] + new)
    return upto[n - 1]


def champ_fini(n: int, F, budget: int | None = None) -> ChampFini:
    """All terms of height < n over F's free symbols, ordered by (height, text)."""
    if n < 1:
        raise ValueError("order must be a positive natural number")
    base, funcs = signature_of(F)
    signature = tuple(base) + tuple(funcs)
    if n == 1:
        return ChampFini(1, signature, ())
    if budget is not None:
        size = champ_size(n, F)
        if size > budget:
            raise AtomBudgetExceeded(size, budget, "champ fini terms")
    layers = [list(base)]
    upto = list(base)
    for _ in range(2, n):
        prev = set(layers[-1])
        layer = []
        for f in funcs:
            for args in itertools.product(upto, repeat=f.arity):
                if any(a in prev for a in args):
                    layer.append(App(f, args))
        layer.sort(key=format_term)
        layers.append(layer)
        upto = upto + layer
    return ChampFini(n, signature, tuple(upto))


def count_atom_instances(A, size: int) -> int:
    if isinstance(A, Atom):
        return 1
    if isinstance(A, Quantifier):
        return size * count_atom_instances(A.body, size)
    return sum(count_atom_instances(k, size) for k in children(A))


def expand(A, terms, budget: int | None = None):
    """The expansion of ``A`` over the finite term list ``terms``.

    ``exists`` becomes a disjunction and ``forall`` a conjunction over
    ``terms`` in list order, folded to the left.
    """
    terms = tuple(terms)
    if budget is not None:
        needed = count_atom_instances(A, len(terms))
        if needed > budget:
            raise AtomBudgetExceeded(needed, budget)
    tvars = set()
    for t in terms:
        tvars |= term_variables(t)
    if tvars & set(bound_variables(A)):
        A = rectify(A, avoid=tvars)

    def walk(B, sigma):
        if isinstance(B, Atom):
            if not sigma:
                return B
            return Atom(B.pred, tuple(substitute_term(t, sigma) for t in B.args))
        if isinstance(B, Quantifier):
            if not terms:
                raise OrderTooSmall("cannot expand a quantifier over an empty term set")
            parts = [walk(B.body, {**sigma, B.var: t}) for t in terms]
            return reduce(Or if isinstance(B, Exists) else And, parts)
        return with_children(B, [walk(k, sigma) for k in children(B)])

    return walk(A, {})


__all__ = [
    "AtomBudgetExceeded", "ChampFini", "OrderTooSmall", "champ_fini", "champ_size",
    "count_atom_instances", "expand", "height", "signature_of", "term_sort_key",
]
