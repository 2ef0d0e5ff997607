"""Sentential validity of quantifier-free formulas.

Atoms (a predicate together with its exact argument terms) are read as
propositional variables; Skolem-headed terms are just part of an atom's
name.  ``is_tautology`` decides validity as unsatisfiability of the
negation with a DPLL search; ``truth_table_tautology`` is the slow
reference used by the tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .syntax import And, Atom, Not, Or, Quantifier


class QuantifierPresent(ValueError):
    pass


@dataclass
class AtomTable:
    atoms: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def intern(self, a: Atom) -> int:
        i = self.index.get(a)
        if i is None:
            i = self.index[a] = len(self.atoms)
            self.atoms.append(a)
        return i

    def __len__(self):
        return len(self.atoms)


def abstract(A, table: AtomTable | None = None):
    """Replace atoms by dense indices.

    Returns ``(structure, table)`` where structure is built from
    ``("var", i)``, ``("not", s)``, ``("and", s, s)`` and ``("or", s, s)``.
    """
    table = table if table is not None else AtomTable()
    # post-order, iterative: expansions are deep left-folded chains
    results = []
    stack = [(A, False)]
    while stack:
        B, done = stack.pop()
        if isinstance(B, Atom):
            results.append(("var", table.intern(B)))
        elif isinstance(B, Quantifier):
            raise QuantifierPresent("sentential abstraction needs a quantifier-free formula")
        elif not done:
            stack.append((B, True))
            if isinstance(B, Not):
                stack.append((B.body, False))
            else:
                stack.append((B.right, False))
                stack.append((B.left, False))
        elif isinstance(B, Not):
            results.append(("not", results.pop()))
        else:
            right = results.pop()
            left = results.pop()
            results.append(("and" if isinstance(B, And) else "or", left, right))
    return results.pop(), table


def evaluate(structure, assignment) -> bool:
    tag = structure[0]
    if tag == "var":
        return assignment[structure[1]]
    if tag == "not":
        return not evaluate(structure[1], assignment)
    if tag == "and":
        return evaluate(structure[1], assignment) and evaluate(structure[2], assignment)
    return evaluate(structure[1], assignment) or evaluate(structure[2], assignment)


def truth_table_tautology(A, max_atoms: int = 20) -> bool:
    structure, table = abstract(A)
    k = len(table)
    if k > max_atoms:
        raise ValueError(f"truth table over {k} atoms refused (limit {max_atoms})")
    return all(evaluate(structure, bits) for bits in itertools.product((False, True), repeat=k))


# -- negation normal form ---------------------------------------------------
# NNF nodes: int literal (+/- (index + 1)), or ("and" | "or", [children]) with
# same-connective children flattened.

def nnf(structure, negate: bool = False):
    out = []
    stack = [(structure, negate, False)]
    while stack:
        s, neg, done = stack.pop()
        tag = s[0]
        if tag == "var":
            lit = s[1] + 1
            out.append(-lit if neg else lit)
        elif tag == "not":
            stack.append((s[1], not neg, False))
        elif not done:
            stack.append((s, neg, True))
            stack.append((s[2], neg, False))
            stack.append((s[1], neg, False))
        else:
            op = tag if not neg else ("or" if tag == "and" else "and")
            right = out.pop()
            left = out.pop()
            kids = []
            for k in (left, right):
                if not isinstance(k, int) and k[0] == op:
                    kids.extend(k[1])
                else:
                    kids.append(k)
            out.append((op, kids))
    return out.pop()


def _complementary_disjuncts(node) -> bool:
    # polarity-aware shortcut: p \/ ... \/ ~p at the top
    if isinstance(node, int):
        return False
    if node[0] != "or":
        return False
    lits = {k for k in node[1] if isinstance(k, int)}
    return any(-l in lits for l in lits)


def to_clauses(node, nvars: int):
    """Polarity-aware (one-directional) definitional clause form of an NNF node."""
    clauses = []
    counter = [nvars]

    def name(n):
        if isinstance(n, int):
            return n
        counter[0] += 1
        g = counter[0]
        pending.append((g, n))
        return g

    pending = []
    if isinstance(node, int):
        clauses.append([node])
    elif node[0] == "and":
        for k in node[1]:
            if isinstance(k, int):
                clauses.append([k])
            elif k[0] == "or":
                clauses.append([name(c) for c in k[1]])
            else:
                clauses.append([name(k)])
    else:
        clauses.append([name(c) for c in node[1]])
    while pending:
        g, n = pending.pop()
        if n[0] == "and":
            for c in n[1]:
                clauses.append([-g, name(c)])
        else:
            clauses.append([-g] + [name(c) for c in n[1]])
    return clauses, counter[0]


def satisfiable(nvars: int, clauses) -> bool:
    """DPLL with two watched literals and chronological backtracking."""
    assign = [0] * (nvars + 1)
    trail: list[int] = []
    watches: dict[int, list[int]] = {}
    store = []
    units = []
    occurrences = [0] * (nvars + 1)
    for c in clauses:
        c = list(dict.fromkeys(c))
        if any(-l in c for l in c):
            continue
        for l in c:
            occurrences[abs(l)] += 1
        if not c:
            return False
        if len(c) == 1:
            units.append(c[0])
            continue
        ci = len(store)
        store.append(c)
        watches.setdefault(c[0], []).append(ci)
        watches.setdefault(c[1], []).append(ci)

    def value(l):
        v = assign[abs(l)]
        return v if l > 0 else -v

    def enqueue(l):
        assign[abs(l)] = 1 if l > 0 else -1
        trail.append(l)

    for l in units:
        v = value(l)
        if v == -1:
            return False
        if v == 0:
            enqueue(l)

    qhead = 0

    def propagate() -> bool:
        nonlocal qhead
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            ws = watches.get(false_lit)
            if not ws:
                continue
            keep = []
            i = 0
            while i < len(ws):
                ci = ws[i]
                i += 1
                c = store[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if value(c[0]) == -1:
                        keep.extend(ws[i:])
                        watches[false_lit] = keep
                        return False
                    enqueue(c[0])
            watches[false_lit] = keep
        return True

    order = sorted(range(1, nvars + 1), key=lambda v: -occurrences[v])
    levels: list[tuple[int, int, bool]] = []
    while True:
        if not propagate():
            while levels:
                start, lit, flipped = levels.pop()
                for l in trail[start:]:
                    assign[abs(l)] = 0
                del trail[start:]
                qhead = start
                if not flipped:
                    levels.append((start, -lit, True))
                    enqueue(-lit)
                    break
            else:
                return False
            continue
        var = next((v for v in order if assign[v] == 0), None)
        if var is None:
            return True
        levels.append((len(trail), var, False))
        enqueue(var)


def is_tautology(A) -> bool:
    structure, table = abstract(A)
    if _complementary_disjuncts(nnf(structure)):
        return True
    negated = nnf(structure, negate=True)
    clauses, nvars = to_clauses(negated, len(table))
    return not satisfiable(nvars, clauses)
