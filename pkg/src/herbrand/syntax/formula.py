"""Terms, formulas, substitutions and positions.

All values are immutable.  Formulas are expected to be *rectified*: every
quantifier binds a distinct variable and no variable occurs both free and
bound.  The parser produces rectified formulas and the operations here keep
them that way (or raise).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

SKOLEM_PREFIX = "sk$"
BULLET_NAME = "•"


class CaptureError(ValueError):
    """A substitution would move a free variable under a binder."""

    def __init__(self, quantifier: str, variable: str):
        super().__init__(f"substitution captures {variable!r} under {quantifier!r}")
        self.quantifier = quantifier
        self.variable = variable


class PositionError(ValueError):
    pass


class RectificationError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Symbol:
    name: str
    arity: int = 0
    kind: str = "function"  # function | predicate | variable | skolem | bullet

    def __post_init__(self):
        if self.kind in ("variable", "bullet") and self.arity != 0:
            raise ValueError(f"{self.kind} symbol {self.name!r} must be nullary")


BULLET_SYMBOL = Symbol(BULLET_NAME, 0, "bullet")


# -- terms -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return format_var(self.name)


@dataclass(frozen=True, slots=True)
class App:
    head: Symbol
    args: tuple = ()

    def __post_init__(self):
        if len(self.args) != self.head.arity:
            raise ValueError(f"{self.head.name!r} expects {self.head.arity} arguments, got {len(self.args)}")

    def __str__(self):
        return format_term(self)


Term = Union[Var, App]

BULLET = App(BULLET_SYMBOL)


def func(name: str, *args: Term) -> App:
    return App(Symbol(name, len(args), "function"), tuple(args))


def skolem(name: str, *args: Term) -> App:
    return App(Symbol(name, len(args), "skolem"), tuple(args))


def is_skolem_term(t: Term) -> bool:
    return isinstance(t, App) and t.head.kind == "skolem"


def term_variables(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        else:
            stack.extend(s.args)
    return out


def substitute_term(t: Term, sigma: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args:
        return t
    return App(t.head, tuple(substitute_term(a, sigma) for a in t.args))


def replace_term(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, App) and t.args:
        return App(t.head, tuple(replace_term(a, old, new) for a in t.args))
    return t


def term_contains(t: Term, sub: Term) -> bool:
    if t == sub:
        return True
    return isinstance(t, App) and any(term_contains(a, sub) for a in t.args)


# -- formulas --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Atom:
    pred: Symbol
    args: tuple = ()

    def __post_init__(self):
        if len(self.args) != self.pred.arity:
            raise ValueError(f"predicate {self.pred.name!r} expects {self.pred.arity} arguments")


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    body: "Formula"
    kind = "forall"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"
    kind = "exists"


Formula = Union[Atom, Not, And, Or, Forall, Exists]
Quantifier = (Forall, Exists)
Position = tuple


def atom(name: str, *args: Term) -> Atom:
    return Atom(Symbol(name, len(args), "predicate"), tuple(args))


def quantifier(kind: str, var: str, body: Formula) -> Formula:
    if kind == "forall":
        return Forall(var, body)
    if kind == "exists":
        return Exists(var, body)
    raise ValueError(f"unknown quantifier {kind!r}")


def children(A: Formula) -> tuple:
    if isinstance(A, Atom):
        return ()
    if isinstance(A, (And, Or)):
        return (A.left, A.right)
    return (A.body,)


def with_children(A: Formula, kids) -> Formula:
    if isinstance(A, Atom):
        return A
    if isinstance(A, And):
        return And(kids[0], kids[1])
    if isinstance(A, Or):
        return Or(kids[0], kids[1])
    if isinstance(A, Not):
        return Not(kids[0])
    return type(A)(A.var, kids[0])


def iter_subformulas(A: Formula, pos: Position = ()) -> Iterator[tuple[Position, Formula]]:
    """Pre-order walk yielding ``(position, subformula)``."""
    stack = [(pos, A)]
    while stack:
        p, B = stack.pop()
        yield p, B
        kids = children(B)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((p + (i,), kids[i]))


def subformula_at(A: Formula, p: Position) -> Formula:
    B = A
    for i in p:
        kids = children(B)
        if not 0 <= i < len(kids):
            raise PositionError(f"position {list(p)} does not exist")
        B = kids[i]
    return B


def path_nodes(A: Formula, p: Position) -> list[Formula]:
    """Proper ancestors of position ``p``, root first."""
    out = []
    B = A
    for i in p:
        kids = children(B)
        if not 0 <= i < len(kids):
            raise PositionError(f"position {list(p)} does not exist")
        out.append(B)
        B = kids[i]
    return out


def _replace(A: Formula, p: Position, C: Formula) -> Formula:
    if not p:
        return C
    kids = list(children(A))
    i = p[0]
    if not 0 <= i < len(kids):
        raise PositionError(f"position does not exist (index {i})")
    kids[i] = _replace(kids[i], p[1:], C)
    return with_children(A, kids)


def replace_at(A: Formula, p: Position, C: Formula, check: bool = True) -> Formula:
    """``A[C]``: replace the subformula at ``p`` by ``C``."""
    out = _replace(A, tuple(p), C)
    if check and not is_rectified(out):
        raise RectificationError("replacement breaks rectification")
    return out


def atoms(A: Formula) -> Iterator[Atom]:
    for _, B in iter_subformulas(A):
        if isinstance(B, Atom):
            yield B


def is_quantifier_free(A: Formula) -> bool:
    return not any(isinstance(B, Quantifier) for _, B in iter_subformulas(A))


def quantifier_count(A: Formula) -> int:
    return sum(isinstance(B, Quantifier) for _, B in iter_subformulas(A))


def free_variables(A: Formula) -> set[str]:
    if isinstance(A, Atom):
        out: set[str] = set()
        for t in A.args:
            out |= term_variables(t)
        return out
    if isinstance(A, Quantifier):
        return free_variables(A.body) - {A.var}
    out = set()
    for k in children(A):
        out |= free_variables(k)
    return out


def bound_variables(A: Formula) -> list[str]:
    """Binder names in pre-order (with repetitions, if any)."""
    return [B.var for _, B in iter_subformulas(A) if isinstance(B, Quantifier)]


def function_symbols(A: Formula) -> set[Symbol]:
    out = set()
    for a in atoms(A):
        stack = list(a.args)
        while stack:
            t = stack.pop()
            if isinstance(t, App):
                out.add(t.head)
                stack.extend(t.args)
    return out


def is_rectified(A: Formula) -> bool:
    bound = bound_variables(A)
    if len(set(bound)) != len(bound):
        return False
    return not (set(bound) & _all_free_occurrences(A))


def _all_free_occurrences(A: Formula) -> set[str]:
    # variables occurring free somewhere (possibly inside other binders)
    out: set[str] = set()

    def walk(B, bound):
        if isinstance(B, Atom):
            for t in B.args:
                out.update(v for v in term_variables(t) if v not in bound)
        elif isinstance(B, Quantifier):
            walk(B.body, bound | {B.var})
        else:
            for k in children(B):
                walk(k, bound)

    walk(A, frozenset())
    return out


def context_free_variables(A: Formula, p: Position) -> set[str]:
    """Free variables of the context ``A[...]`` around position ``p``."""
    out: set[str] = set()
    bound: set[str] = set()
    B = A
    for i in p:
        kids = children(B)
        if not 0 <= i < len(kids):
            raise PositionError(f"position {list(p)} does not exist")
        if isinstance(B, Quantifier):
            bound.add(B.var)
        for j, k in enumerate(kids):
            if j != i:
                out |= free_variables(k) - bound
        B = kids[i]
    return out


def substitute(A: Formula, sigma: Mapping[str, Term]) -> Formula:
    """Parallel substitution of free occurrences; raises CaptureError."""
    sigma = dict(sigma)
    if not sigma:
        return A
    if isinstance(A, Atom):
        return Atom(A.pred, tuple(substitute_term(t, sigma) for t in A.args))
    if isinstance(A, Quantifier):
        inner = {v: t for v, t in sigma.items() if v != A.var}
        live = free_variables(A.body)
        for v, t in inner.items():
            if v in live and A.var in term_variables(t):
                raise CaptureError(f"{A.kind} {A.var}", A.var)
        return type(A)(A.var, substitute(A.body, inner))
    return with_children(A, [substitute(k, sigma) for k in children(A)])


def abstract_term(A: Formula, t: Term, var: str) -> Formula:
    """Replace every free occurrence of the term ``t`` by the variable ``var``."""
    tv = term_variables(t)

    def walk(B, bound):
        if isinstance(B, Atom):
            if tv & bound:
                return B
            return Atom(B.pred, tuple(replace_term(s, t, Var(var)) for s in B.args))
        if isinstance(B, Quantifier):
            return type(B)(B.var, walk(B.body, bound | {B.var}))
        return with_children(B, [walk(k, bound) for k in children(B)])

    return walk(A, frozenset())


def rename_bound(A: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename binders (and the occurrences they bind) according to ``mapping``."""

    def walk(B, env):
        if isinstance(B, Atom):
            if not env:
                return B
            return Atom(B.pred, tuple(substitute_term(s, env) for s in B.args))
        if isinstance(B, Quantifier):
            if B.var in mapping:
                new = mapping[B.var]
                return type(B)(new, walk(B.body, {**env, B.var: Var(new)}))
            inner = {k: v for k, v in env.items() if k != B.var}
            return type(B)(B.var, walk(B.body, inner))
        return with_children(B, [walk(k, env) for k in children(B)])

    return walk(A, {})


def alpha_equal(A: Formula, B: Formula) -> bool:
    """Equality up to renaming of bound variables (binders compared by depth)."""

    def term_eq(s, t, e1, e2):
        if isinstance(s, Var) and isinstance(t, Var):
            i, j = e1.get(s.name), e2.get(t.name)
            if i is None and j is None:
                return s.name == t.name
            return i == j
        if isinstance(s, App) and isinstance(t, App):
            return s.head == t.head and all(term_eq(a, b, e1, e2) for a, b in zip(s.args, t.args))
        return False

    def eq(X, Y, e1, e2, depth):
        if type(X) is not type(Y):
            return False
        if isinstance(X, Atom):
            return X.pred == Y.pred and all(term_eq(a, b, e1, e2) for a, b in zip(X.args, Y.args))
        if isinstance(X, Quantifier):
            return eq(X.body, Y.body, {**e1, X.var: depth}, {**e2, Y.var: depth}, depth + 1)
        return all(eq(a, b, e1, e2, depth) for a, b in zip(children(X), children(Y)))

    return eq(A, B, {}, {}, 0)


_SUFFIX = re.compile(r"^(.*?)#(\d+)$")


def fresh_name(base: str, used) -> str:
    m = _SUFFIX.match(base)
    if m and not base.startswith("{"):
        base = m.group(1)
    k = 1
    while f"{base}#{k}" in used:
        k += 1
    return f"{base}#{k}"


def rectify(A: Formula, avoid=()) -> Formula:
    """Rename binders apart from each other, from free variables and from ``avoid``."""
    used = set(_all_free_occurrences(A)) | set(avoid)

    def walk(B, env):
        if isinstance(B, Atom):
            if not env:
                return B
            return Atom(B.pred, tuple(substitute_term(s, env) for s in B.args))
        if isinstance(B, Quantifier):
            name = B.var
            if name in used:
                name = fresh_name(name, used)
            used.add(name)
            inner = dict(env)
            if name != B.var:
                inner[B.var] = Var(name)
            else:
                inner.pop(B.var, None)
            return type(B)(name, walk(B.body, inner))
        return with_children(B, [walk(k, env) for k in children(B)])

    return walk(A, {})


# -- printing helpers shared with the printer ------------------------------

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_#$']*$")
KEYWORDS = {"forall", "exists"}


def format_var(name: str) -> str:
    if _IDENT.match(name) and name not in KEYWORDS and not name.startswith(SKOLEM_PREFIX) \
            and name != "_dot":
        return name
    return "{" + name + "}"


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return format_var(t.name)
    if t.head.kind == "bullet":
        return "_dot"
    if not t.args:
        return t.head.name
    return t.head.name + "(" + ", ".join(format_term(a) for a in t.args) + ")"
