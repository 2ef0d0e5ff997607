"""Random formula generators: seeded ``random.Random`` ones for the acceptance
suite and hypothesis strategies for the property tests."""
import random

from hypothesis import strategies as st

from herbrand.syntax import And, Atom, Exists, Forall, Not, Or, Symbol, Var, func

PREDICATES = [("P", 1), ("Q", 1), ("R", 2), ("S", 0), ("T", 0)]
CONSTANTS = ["a", "b", "c"]


def _atom(pred, arity, terms):
    return Atom(Symbol(pred, arity, "predicate"), tuple(terms))


def random_ground_atoms(rng: random.Random, k: int):
    pool = []
    while len(pool) < k:
        name, arity = rng.choice(PREDICATES)
        a = _atom(name, arity, [Var(rng.choice(CONSTANTS)) for _ in range(arity)])
        if a not in pool:
            pool.append(a)
    return pool


def _imp(a, b):
    return Or(Not(a), b)


# tautology schemas; instances and near-misses keep the two answers balanced
SCHEMAS = [
    lambda a, b, c: Or(a, Not(a)),
    lambda a, b, c: _imp(_imp(a, b), _imp(Not(b), Not(a))),
    lambda a, b, c: _imp(_imp(_imp(a, b), a), a),
    lambda a, b, c: _imp(And(a, b), a),
    lambda a, b, c: _imp(And(_imp(a, b), _imp(b, c)), _imp(a, c)),
    lambda a, b, c: _imp(And(a, Or(b, c)), Or(And(a, b), And(a, c))),
    lambda a, b, c: _imp(Not(And(a, b)), Or(Not(a), Not(b))),
]


def random_sentential(rng: random.Random, max_atoms: int = 12, max_size: int = 60):
    pool = random_ground_atoms(rng, rng.randint(2, max_atoms))

    def go(size):
        if size <= 1 or rng.random() < 0.1:
            return rng.choice(pool)
        r = rng.random()
        if r < 0.25:
            return Not(go(size - 1))
        left = rng.randint(1, size - 1)
        op = And if r < 0.6 else Or
        return op(go(left), go(size - left))

    mode = rng.random()
    if mode < 0.4:
        return go(rng.randint(1, max_size))
    parts = [go(rng.randint(1, max_size // 3)) for _ in range(3)]
    A = rng.choice(SCHEMAS)(*parts)
    if mode < 0.7:
        return A
    # near miss: one subformula occurrence replaced
    victim = rng.choice(parts)
    return _replace_once(A, victim, go(rng.randint(1, 4)), rng)


def _replace_once(A, old, new, rng):
    if A == old and rng.random() < 0.5:
        return new
    if isinstance(A, Not):
        return Not(_replace_once(A.body, old, new, rng))
    if isinstance(A, (And, Or)):
        if rng.random() < 0.5:
            return type(A)(_replace_once(A.left, old, new, rng), A.right)
        return type(A)(A.left, _replace_once(A.right, old, new, rng))
    return A


def random_passage_formula(rng: random.Random, max_depth: int = 6):
    """Rectified formulas over ~, \\/ and quantifiers (no conjunction: the
    rules of passage say nothing about it)."""
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"v{counter[0]}"

    def leaf(scope):
        name, arity = rng.choice(PREDICATES)
        choices = scope + CONSTANTS[:1]
        return _atom(name, arity, [Var(rng.choice(choices)) for _ in range(arity)])

    def go(depth, scope):
        if depth == 0 or rng.random() < 0.1:
            return leaf(scope)
        r = rng.random()
        if r < 0.25:
            return Not(go(depth - 1, scope))
        if r < 0.55:
            return Or(go(depth - 1, scope), go(depth - 1, scope))
        v = fresh()
        Q = Forall if rng.random() < 0.5 else Exists
        return Q(v, go(depth - 1, scope + [v]))

    return go(max_depth, [])


# -- hypothesis -----------------------------------------------------------------

variables = st.sampled_from(["x", "y", "z", "u"])


def terms(max_leaves=6):
    leaf = variables.map(Var)
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            inner.map(lambda t: func("f", t)),
            st.tuples(inner, inner).map(lambda p: func("g", *p)),
        ),
        max_leaves=max_leaves,
    )


def atoms_strategy():
    return st.one_of(
        st.just(Atom(Symbol("S", 0, "predicate"), ())),
        terms(3).map(lambda t: _atom("P", 1, [t])),
        st.tuples(terms(3), terms(3)).map(lambda p: _atom("R", 2, list(p))),
    )


def formulas(max_leaves=12, connectives=(And, Or)):
    """Possibly non-rectified formulas; pass them through ``rectify``."""
    return st.recursive(
        atoms_strategy(),
        lambda inner: st.one_of(
            inner.map(Not),
            *(st.tuples(inner, inner).map(lambda p, op=op: op(*p)) for op in connectives),
            st.tuples(st.sampled_from([Forall, Exists]), variables, inner).map(
                lambda q: q[0](q[1], q[2])),
        ),
        max_leaves=max_leaves,
    )


def sentential_formulas(max_leaves=16):
    ground = st.sampled_from(
        [_atom("P", 1, [Var(c)]) for c in CONSTANTS] + [_atom("S", 0, []), _atom("T", 0, [])])
    return st.recursive(
        ground,
        lambda inner: st.one_of(
            inner.map(Not),
            st.tuples(inner, inner).map(lambda p: And(*p)),
            st.tuples(inner, inner).map(lambda p: Or(*p)),
        ),
        max_leaves=max_leaves,
    )
