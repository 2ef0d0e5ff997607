"""Property C, the semi-decision loop and the two directions of the theorem.

``build_derivation`` turns a successful Property C check into a linear
derivation in the modus-ponens-free calculus:

1. start with the expansion of the outer Skolemized form, where each
   Skolem-headed term becomes a pseudo-variable named by its own text;
2. refold it with the generalized gamma- and delta-quantification rules;
3. merge the now alpha-equivalent gamma-branches by gamma-simplification;
4. rename the bound Skolem pseudo-variables back to the original names.

``lemma4_bound`` goes the other way, from a derivation to an order.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .calculus import (
    EXISTENTIALOID, GAMMA_SIMPLIFICATION, RENAME, SIMPLIFICATION, UNIVERSALOID, Derivation,
    Step, check,
)
from .calculus.rules import (
    apply_existentialoid_quantification, apply_rename, apply_simplification,
    apply_universaloid_quantification,
)
from .polarity import GAMMA, quantifier_class
from .sentential import is_tautology
from .skolem import outer_skolemize
from .syntax import (
    And, App, Atom, Exists, Not, Or, Var, alpha_equal, atoms, bound_variables, format_term,
    free_variables, fresh_name, function_symbols, is_quantifier_free, print_formula, quantifier,
    subformula_at, substitute_term,
)
from .universe import ChampFini, champ_fini, expand, height

DEFAULT_ATOM_BUDGET = 2 ** 20


class DerivationDefect(RuntimeError):
    """The builder produced something the kernel rejects (a bug, never expected)."""


class ForeignRuleError(ValueError):
    reason = "foreign-rule"


# -- Property C ----------------------------------------------------------------

@dataclass
class PropertyCReport:
    formula: object
    order: int
    skolemized: object
    champ: ChampFini
    expansion: object  # None when order 1 meets a quantified Skolemized form
    verdict: bool
    atom_count: int

    def to_record(self) -> str:
        from .calculus.proof_file import Quoted, write_sexp
        items = [
            "property-c", ["order", str(self.order)],
            ["verdict", "true" if self.verdict else "false"],
            ["atoms", str(self.atom_count)],
            ["formula", Quoted(print_formula(self.formula))],
            ["skolemized", Quoted(print_formula(self.skolemized))],
            ["champ"] + [Quoted(format_term(t)) for t in self.champ.terms],
        ]
        if self.expansion is not None:
            items.append(["expansion", Quoted(print_formula(self.expansion))])
        return write_sexp(items)

    def to_text(self) -> str:
        lines = [
            f"order:      {self.order}",
            f"verdict:    {'true' if self.verdict else 'false'}",
            f"atoms:      {self.atom_count}",
            f"skolemized: {print_formula(self.skolemized)}",
            f"champ fini: {', '.join(format_term(t) for t in self.champ.terms) or '(empty)'}",
            "expansion:  " + (print_formula(self.expansion) if self.expansion is not None
                              else "(none: quantifiers remain at order 1)"),
        ]
        return "\n".join(lines)


def check_property_c(A, n: int, atom_budget: int | None = DEFAULT_ATOM_BUDGET) -> PropertyCReport:
    """Decide whether ``A`` has Property C of order ``n``.

    Order 1 tests the Skolemized form itself and is false whenever it still
    contains quantifiers, since the champ fini of order 1 is empty.
    """
    if n < 1:
        raise ValueError("order must be a positive natural number")
    F = outer_skolemize(A)
    if n == 1:
        champ = champ_fini(1, F)
        E = F if is_quantifier_free(F) else None
    else:
        champ = champ_fini(n, F, budget=atom_budget)
        E = expand(F, champ.terms, budget=atom_budget)
    verdict = E is not None and is_tautology(E)
    count = len(set(atoms(E))) if E is not None else 0
    return PropertyCReport(A, n, F, champ, E, verdict, count)


@dataclass
class Found:
    order: int
    derivation: Derivation
    reports: list = field(default_factory=list)


@dataclass
class ExhaustedBudget:
    max_order: int
    reports: list = field(default_factory=list)


def prove(A, max_order: int, atom_budget: int | None = DEFAULT_ATOM_BUDGET):
    """Test orders 1, 2, ... up to ``max_order``; build a checked derivation on success.

    Raises :class:`~herbrand.universe.AtomBudgetExceeded` when an order's
    expansion is over budget.
    """
    if max_order < 1:
        raise ValueError("max_order must be a positive natural number")
    reports = []
    for n in range(1, max_order + 1):
        report = check_property_c(A, n, atom_budget)
        reports.append(report)
        if report.verdict:
            D = build_derivation(A, n)
            verdict = check(D, goal=A)
            if not verdict:
                raise DerivationDefect(f"kernel rejected step {verdict.step}: {verdict.detail}")
            return Found(n, D, reports)
    return ExhaustedBudget(max_order, reports)


# -- from Property C to a linear derivation ------------------------------------

def atomize_term(t):
    """Read every maximal Skolem-headed subterm as a variable named by its text."""
    if isinstance(t, Var):
        return t
    if t.head.kind == "skolem":
        return Var(format_term(t))
    if not t.args:
        return t
    return App(t.head, tuple(atomize_term(a) for a in t.args))


def atomize(A):
    """``A`` with Skolem-headed terms read as atomic variables."""
    if isinstance(A, Atom):
        return Atom(A.pred, tuple(atomize_term(t) for t in A.args))
    if isinstance(A, Not):
        return Not(atomize(A.body))
    if isinstance(A, (And, Or)):
        return type(A)(atomize(A.left), atomize(A.right))
    return type(A)(A.var, atomize(A.body))


class _AtomNode:
    __slots__ = ("atom", "gammas", "deltas")

    def __init__(self, atom, gammas, deltas):
        self.atom, self.gammas, self.deltas = atom, gammas, deltas


class _Unary:
    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child


class _Binary:
    __slots__ = ("op", "left", "right")

    def __init__(self, op, left, right):
        self.op, self.left, self.right = op, left, right


class _Delta:
    __slots__ = ("quant", "var", "pseudo", "body", "introduced", "rank")

    def __init__(self, quant, var, pseudo):
        self.quant, self.var, self.pseudo = quant, var, pseudo
        self.body = None
        self.introduced = False
        self.rank = 0


class _Copy:
    __slots__ = ("quant", "name", "witness", "body", "introduced", "rank")

    def __init__(self, quant, name, witness):
        self.quant, self.name, self.witness = quant, name, witness
        self.body = None
        self.introduced = False
        self.rank = 0


class _Fan:
    __slots__ = ("op", "copies", "merged")

    def __init__(self, op, copies):
        self.op, self.copies, self.merged = op, copies, 0

    def remaining(self):
        return [self.copies[0]] + self.copies[self.merged + 1:]


class _Refolder:
    """Mutable picture of the formula during refolding.

    Each node of the expansion remembers where it came from in ``A`` so the
    current formula (and positions in it) can be rendered from the set of
    quantifier introductions and merges done so far.
    """

    def __init__(self, A, terms, skolem_table):
        self.terms = tuple(terms)
        self.table = skolem_table
        self.used = set(bound_variables(A)) | free_variables(A)
        self.events = []
        self.fans = []
        self.root = self._build(A, 0, (), {}, {}, {}, True)

    def _fresh(self, base):
        name = fresh_name(base, self.used)
        self.used.add(name)
        return name

    def _build(self, B, parity, gamma_order, real, copies, deltas, canonical):
        if isinstance(B, Atom):
            return _AtomNode(B, copies, deltas)
        if isinstance(B, Not):
            return _Unary(self._build(B.body, parity + 1, gamma_order, real, copies, deltas, canonical))
        if isinstance(B, (And, Or)):
            return _Binary(type(B), *(self._build(k, parity, gamma_order, real, copies, deltas, canonical)
                                      for k in (B.left, B.right)))
        if quantifier_class(B.kind, parity) == GAMMA:
            fan_copies = []
            for i, t in enumerate(self.terms):
                first = canonical and i == 0
                c = _Copy(B.kind, B.var if first else self._fresh(B.var), atomize_term(t))
                c.body = self._build(B.body, parity, gamma_order + (B.var,), {**real, B.var: t},
                                     {**copies, B.var: c}, deltas, first)
                fan_copies.append(c)
                self._event(c)
            fan = _Fan(Or if isinstance(B, Exists) else And, fan_copies)
            self.fans.append(fan)
            return fan
        sk = App(self.table[B.var], tuple(real[y] for y in gamma_order))
        d = _Delta(B.kind, B.var, format_term(sk))
        d.body = self._build(B.body, parity, gamma_order, real, copies,
                             {**deltas, B.var: Var(d.pseudo)}, canonical)
        self._event(d)
        return d

    def _event(self, e):
        # post-order rank: every event is registered after the events inside it
        e.rank = len(self.events)
        self.events.append(e)

    def render(self, node=None, pos=(), positions=None):
        node = self.root if node is None else node
        if isinstance(node, _AtomNode):
            sigma = {v: (Var(c.name) if c.introduced else c.witness) for v, c in node.gammas.items()}
            sigma.update(node.deltas)
            a = node.atom
            return Atom(a.pred, tuple(substitute_term(t, sigma) for t in a.args))
        if isinstance(node, _Unary):
            return Not(self.render(node.child, pos + (0,), positions))
        if isinstance(node, _Binary):
            return node.op(self.render(node.left, pos + (0,), positions),
                           self.render(node.right, pos + (1,), positions))
        if isinstance(node, _Fan):
            if positions is not None:
                positions[id(node)] = pos
            return self._fold(node.op, node.remaining(), pos, positions)
        if positions is not None:
            positions[id(node)] = pos
        if node.introduced:
            var = node.pseudo if isinstance(node, _Delta) else node.name
            return quantifier(node.quant, var, self.render(node.body, pos + (0,), positions))
        return self.render(node.body, pos, positions)

    def _fold(self, op, items, pos, positions):
        if len(items) == 1:
            return self.render(items[0], pos, positions)
        return op(self._fold(op, items[:-1], pos + (0,), positions),
                  self.render(items[-1], pos + (1,), positions))

    def schedule(self):
        """Quantifier introductions in an order meeting every side condition.

        An introduction waits for all introductions inside it (the new
        quantifier must be accessible), and a delta-introduction binding the
        pseudo-variable ``s`` also waits for every gamma-branch whose witness
        mentions ``s`` (eigenvariable condition).  Ties go to the smaller
        post-order rank.
        """
        deps = {id(e): set() for e in self.events}
        by_pseudo = {e.pseudo: e for e in self.events if isinstance(e, _Delta)}

        def nearest(node, owner):
            if isinstance(node, (_Delta, _Copy)):
                if owner is not None:
                    deps[id(owner)].add(id(node))
                nearest(node.body, node)
            elif isinstance(node, _Fan):
                for c in node.copies:
                    nearest(c, owner)
            elif isinstance(node, _Unary):
                nearest(node.child, owner)
            elif isinstance(node, _Binary):
                nearest(node.left, owner)
                nearest(node.right, owner)

        nearest(self.root, None)
        for e in self.events:
            if isinstance(e, _Copy):
                for v in _term_vars(e.witness):
                    d = by_pseudo.get(v)
                    if d is not None:
                        deps[id(d)].add(id(e))
        waiting = {k: len(v) for k, v in deps.items()}
        dependents = {id(e): [] for e in self.events}
        for k, v in deps.items():
            for j in v:
                dependents[j].append(k)
        by_id = {id(e): e for e in self.events}
        heap = [(e.rank, id(e)) for e in self.events if waiting[id(e)] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, k = heapq.heappop(heap)
            order.append(by_id[k])
            for j in dependents[k]:
                waiting[j] -= 1
                if waiting[j] == 0:
                    heapq.heappush(heap, (by_id[j].rank, j))
        if len(order) != len(self.events):
            stuck = next(e for e in self.events if waiting[id(e)] > 0)
            name = stuck.pseudo if isinstance(stuck, _Delta) else stuck.name
            raise DerivationDefect(f"cannot schedule the introduction of {name!r}")
        return order


def _term_vars(t):
    if isinstance(t, Var):
        return {t.name}
    out = set()
    for a in t.args:
        out |= _term_vars(a)
    return out


def build_derivation(A, n: int) -> Derivation:
    """Linear derivation of ``A`` from the expansion at order ``n``."""
    if any(s.kind == "skolem" for s in function_symbols(A)):
        raise ValueError("input formulas must not use reserved Skolem symbols")
    table: dict = {}
    F = outer_skolemize(A, table)
    if n == 1:
        if not is_quantifier_free(F):
            raise ValueError("Property C of order 1 needs a quantifier-free Skolemized form")
        terms = ()
    else:
        terms = champ_fini(n, F).terms
    R = _Refolder(A, terms, table)
    current = R.render()
    if not is_tautology(current):
        raise ValueError(f"{print_formula(A)} does not have Property C of order {n}")
    D = Derivation(current)

    def advance(step):
        nonlocal current
        current = step.result
        D.steps.append(step)

    # step 2: quantifier introductions
    for e in R.schedule():
        positions = {}
        R.render(positions=positions)
        pos = positions[id(e)]
        if isinstance(e, _Delta):
            res = apply_universaloid_quantification(current, pos, e.quant, e.pseudo)
            e.introduced = True
            advance(Step(UNIVERSALOID, pos, {"quant": e.quant, "var": e.pseudo}, res))
        else:
            e.introduced = True
            body = R.render(e.body)
            res = apply_existentialoid_quantification(current, pos, e.quant, e.name, e.witness, body)
            advance(Step(EXISTENTIALOID, pos,
                         {"quant": e.quant, "var": e.name, "witness": e.witness, "body": body}, res))
    # step 3: merge gamma-branches, innermost fans first
    for fan in R.fans:
        while len(fan.copies) - fan.merged > 1:
            positions = {}
            R.render(positions=positions)
            pos = positions[id(fan)] + (0,) * (len(fan.remaining()) - 2)
            pair = subformula_at(current, pos)
            mapping = dict(zip(bound_variables(pair.right), bound_variables(pair.left)))
            res = apply_simplification(current, pos, mapping, gamma=True)
            fan.merged += 1
            advance(Step(GAMMA_SIMPLIFICATION, pos, {"map": mapping}, res))
    if R.render() != current:
        raise DerivationDefect("refolding lost track of the current formula")
    # step 4: pseudo-variables back to the delta-variables of A
    binders = set(bound_variables(current))
    mapping = {e.pseudo: e.var for e in R.events if isinstance(e, _Delta) and e.pseudo in binders}
    if mapping:
        advance(Step(RENAME, (), {"map": mapping}, apply_rename(current, mapping)))
    if not alpha_equal(current, A):
        raise DerivationDefect("refolding did not reproduce the input formula")
    return D


# -- from a linear derivation to Property C ----------------------------------

LEMMA4_RULES = (EXISTENTIALOID, UNIVERSALOID, SIMPLIFICATION, GAMMA_SIMPLIFICATION, RENAME)


def lemma4_bound(D: Derivation) -> int:
    """``1 + sum of heights of the gamma-quantification witnesses`` of ``D``."""
    for i, s in enumerate(D.steps, start=1):
        if s.rule not in LEMMA4_RULES:
            raise ForeignRuleError(f"step {i} uses {s.rule}, outside the generalized calculus")
    verdict = check(D)
    if not verdict:
        raise ValueError(f"derivation rejected at step {verdict.step}: {verdict.reason}")
    return 1 + sum(height(s.payload["witness"]) for s in D.steps if s.rule == EXISTENTIALOID)


__all__ = [
    "DEFAULT_ATOM_BUDGET", "DerivationDefect", "ExhaustedBudget", "ForeignRuleError", "Found",
    "PropertyCReport", "atomize", "atomize_term", "build_derivation", "check_property_c",
    "lemma4_bound", "prove",
]
