"""Inference rules of the modus-ponens-free calculus.

Every rule is written in deduction direction: it takes the premise and the
data identifying the application and returns the conclusion, or raises
:class:`RuleError` carrying a machine-readable ``reason``.
"""
from __future__ import annotations

from ..polarity import DELTA, GAMMA, is_accessible_position, negation_parity, quantifier_class
from ..syntax import (
    And, CaptureError, Exists, Forall, Not, Or, PositionError, Quantifier, abstract_term,
    alpha_equal, bound_variables, context_free_variables, free_variables, is_rectified,
    iter_subformulas, quantifier, rename_bound, replace_at, subformula_at, substitute,
    term_variables,
)

# reason codes
BAD_POSITION = "bad-position"
NOT_ACCESSIBLE = "not-accessible"
NOT_EXISTENTIALOID = "not-existentialoid"
NOT_UNIVERSALOID = "not-universaloid"
CAPTURE_IN_H = "capture-in-H"
PREMISE_MISMATCH = "premise-mismatch"
EIGENVARIABLE = "eigenvariable"
WRONG_CONNECTIVE = "wrong-connective"
NOT_VARIANT = "not-variant"
NOT_GAMMA_SIMPLIFICATION = "not-gamma-simplification"
PATTERN_MISMATCH = "pattern-mismatch"
FREE_IN_B = "free-in-B"
NOT_RECTIFIED = "not-rectified"
BAD_RENAME = "bad-rename"
NOT_ROOT = "not-root"
BAD_PAYLOAD = "bad-payload"

PRENEX = "prenex"
ANTIPRENEX = "antiprenex"


class RuleError(ValueError):
    def __init__(self, reason: str, message: str = ""):
        super().__init__(f"{reason}: {message}" if message else reason)
        self.reason = reason


def _sub(A, p):
    try:
        return subformula_at(A, p)
    except PositionError as e:
        raise RuleError(BAD_POSITION, str(e)) from None


def _conclude(premise, p, C):
    out = replace_at(premise, p, C, check=False)
    if not is_rectified(out):
        raise RuleError(NOT_RECTIFIED, "conclusion is not rectified")
    return out


def apply_existentialoid_quantification(premise, p, quant, var, witness, body=None):
    """From ``A[H{var -> witness}]`` conclude ``A[quant var. H]``.

    ``body`` is ``H``; when omitted every free occurrence of ``witness`` in
    the designated subformula is abstracted.
    """
    p = tuple(p)
    sub = _sub(premise, p)
    if not is_accessible_position(premise, p):
        raise RuleError(NOT_ACCESSIBLE, f"a quantifier lies above {list(p)}")
    if quantifier_class(quant, negation_parity(premise, p)) != GAMMA:
        raise RuleError(NOT_EXISTENTIALOID, f"{quant} at {list(p)} would be universaloid")
    if body is None:
        body = abstract_term(sub, witness, var)
    clash = term_variables(witness) & set(bound_variables(body))
    if clash:
        raise RuleError(CAPTURE_IN_H, f"witness variable {sorted(clash)[0]!r} is bound in H")
    try:
        instance = substitute(body, {var: witness})
    except CaptureError as e:
        raise RuleError(CAPTURE_IN_H, str(e)) from None
    if not alpha_equal(instance, sub):
        raise RuleError(PREMISE_MISMATCH, "premise is not H{x -> t}")
    return _conclude(premise, p, quantifier(quant, var, body))


def apply_universaloid_quantification(premise, p, quant, var):
    """From ``A[H]`` conclude ``A[quant var. H]`` (eigenvariable condition)."""
    p = tuple(p)
    sub = _sub(premise, p)
    if not is_accessible_position(premise, p):
        raise RuleError(NOT_ACCESSIBLE, f"a quantifier lies above {list(p)}")
    if quantifier_class(quant, negation_parity(premise, p)) != DELTA:
        raise RuleError(NOT_UNIVERSALOID, f"{quant} at {list(p)} would be existentialoid")
    if var in context_free_variables(premise, p):
        raise RuleError(EIGENVARIABLE, f"{var!r} occurs free in the context")
    return _conclude(premise, p, quantifier(quant, var, sub))


def apply_simplification(premise, p, variant_map=None, gamma=False):
    """From ``A[H o H']`` conclude ``A[H]``.

    ``o`` must be ``\\/`` at even and ``/\\`` at odd negation parity.  With
    ``variant_map`` given, renaming the binders of ``H'`` by it must yield
    ``H`` exactly; otherwise alpha-equivalence is tested.  ``gamma``
    additionally requires ``H`` to start with an existentialoid quantifier.
    """
    p = tuple(p)
    sub = _sub(premise, p)
    if not isinstance(sub, (And, Or)):
        raise RuleError(PATTERN_MISMATCH, "simplification needs a binary connective")
    parity = negation_parity(premise, p)
    if not isinstance(sub, Or if parity == 0 else And):
        raise RuleError(WRONG_CONNECTIVE, "connective does not match polarity")
    H, H2 = sub.left, sub.right
    if variant_map is None:
        ok = alpha_equal(H, H2)
    else:
        ok = set(variant_map) <= set(bound_variables(H2)) and rename_bound(H2, variant_map) == H
    if not ok:
        raise RuleError(NOT_VARIANT, "right operand is not a variant of the left one")
    if gamma and not (isinstance(H, Quantifier) and quantifier_class(H.kind, parity) == GAMMA):
        raise RuleError(NOT_GAMMA_SIMPLIFICATION, "H is not an existentialoid quantification")
    return _conclude(premise, p, H)


def apply_shallow_quantification(premise, quant, var, witness=None, body=None, position=()):
    """Historic rules: the generalized rules restricted to the empty context."""
    if tuple(position):
        raise RuleError(NOT_ROOT, "shallow quantification only applies at the root")
    if witness is None:
        return apply_universaloid_quantification(premise, (), quant, var)
    return apply_existentialoid_quantification(premise, (), quant, var, witness, body)


def apply_rename(premise, mapping):
    """Rename bound variables; the result must be an alpha-variant."""
    bound = set(bound_variables(premise))
    missing = set(mapping) - bound
    if missing:
        raise RuleError(BAD_RENAME, f"{sorted(missing)[0]!r} is not bound")
    out = rename_bound(premise, mapping)
    if not is_rectified(out):
        raise RuleError(NOT_RECTIFIED, "renaming breaks rectification")
    if not alpha_equal(out, premise):
        raise RuleError(BAD_RENAME, "renaming captures a variable")
    return out


# -- rules of passage --------------------------------------------------------
#   (1) ~forall x. A        <->  exists x. ~A
#   (2) ~exists x. A        <->  forall x. ~A
#   (3) (forall x. A) \/ B  <->  forall x. (A \/ B)
#   (4) B \/ forall x. A    <->  forall x. (B \/ A)
#   (5) (exists x. A) \/ B  <->  exists x. (A \/ B)
#   (6) B \/ exists x. A    <->  exists x. (B \/ A)

_PASSAGE_QUANT = {3: Forall, 4: Forall, 5: Exists, 6: Exists}


def _passage_prenex(sub, index):
    if index in (1, 2):
        inner = Forall if index == 1 else Exists
        if isinstance(sub, Not) and isinstance(sub.body, inner):
            outer = Exists if index == 1 else Forall
            return outer(sub.body.var, Not(sub.body.body))
        return None
    Q = _PASSAGE_QUANT[index]
    if not isinstance(sub, Or):
        return None
    if index in (3, 5) and isinstance(sub.left, Q):
        q, B = sub.left, sub.right
        if q.var in free_variables(B):
            raise RuleError(FREE_IN_B, f"{q.var!r} occurs free in B")
        return Q(q.var, Or(q.body, B))
    if index in (4, 6) and isinstance(sub.right, Q):
        q, B = sub.right, sub.left
        if q.var in free_variables(B):
            raise RuleError(FREE_IN_B, f"{q.var!r} occurs free in B")
        return Q(q.var, Or(B, q.body))
    return None


def _passage_antiprenex(sub, index):
    if index in (1, 2):
        outer = Exists if index == 1 else Forall
        if isinstance(sub, outer) and isinstance(sub.body, Not):
            inner = Forall if index == 1 else Exists
            return Not(inner(sub.var, sub.body.body))
        return None
    Q = _PASSAGE_QUANT[index]
    if not (isinstance(sub, Q) and isinstance(sub.body, Or)):
        return None
    x, (left, right) = sub.var, (sub.body.left, sub.body.right)
    if index in (3, 5):
        if x in free_variables(right):
            raise RuleError(FREE_IN_B, f"{x!r} occurs free in B")
        return Or(Q(x, left), right)
    if x in free_variables(left):
        raise RuleError(FREE_IN_B, f"{x!r} occurs free in B")
    return Or(left, Q(x, right))


def apply_passage(premise, p, index, direction):
    p = tuple(p)
    if index not in range(1, 7) or direction not in (PRENEX, ANTIPRENEX):
        raise RuleError(BAD_PAYLOAD, f"no passage rule {index} {direction}")
    sub = _sub(premise, p)
    rewrite = _passage_prenex if direction == PRENEX else _passage_antiprenex
    new = rewrite(sub, index)
    if new is None:
        raise RuleError(PATTERN_MISMATCH, f"rule {index} ({direction}) does not match at {list(p)}")
    return _conclude(premise, p, new)


def passage_step(A, direction=PRENEX):
    """Leftmost-outermost applicable passage rule: ``(position, index, result)`` or None."""
    for p, _ in iter_subformulas(A):
        for index in range(1, 7):
            try:
                return p, index, apply_passage(A, p, index, direction)
            except RuleError:
                continue
    return None


def passage_normalize(A, direction=PRENEX, max_steps=None):
    """Apply passage rules leftmost-outermost until none applies.

    Returns ``(result, [(position, index), ...])``.
    """
    trace = []
    while max_steps is None or len(trace) < max_steps:
        step = passage_step(A, direction)
        if step is None:
            break
        p, index, A = step
        trace.append((p, index))
    return A, trace


def is_prenex(A) -> bool:
    B = A
    while isinstance(B, Quantifier):
        B = B.body
    return not any(isinstance(C, Quantifier) for _, C in iter_subformulas(B))
