"""Linear derivations and the trusted checker."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..sentential import is_tautology
from ..syntax import And, alpha_equal, is_quantifier_free, is_rectified, iter_subformulas
from . import rules
from .rules import PRENEX, ANTIPRENEX, RuleError

EXISTENTIALOID = "ExistentialoidQuantification"
UNIVERSALOID = "UniversaloidQuantification"
SIMPLIFICATION = "Simplification"
GAMMA_SIMPLIFICATION = "GammaSimplificationGeneralized"
SHALLOW_GAMMA = "ShallowGammaQuantification"
SHALLOW_DELTA = "ShallowDeltaQuantification"
PASSAGE_LR = "PassageLR"
PASSAGE_RL = "PassageRL"
RENAME = "RenameBound"

RULES = (
    EXISTENTIALOID, UNIVERSALOID, SIMPLIFICATION, GAMMA_SIMPLIFICATION, SHALLOW_GAMMA,
    SHALLOW_DELTA, PASSAGE_LR, PASSAGE_RL, RENAME,
)

# checker-level reasons (rule-level ones live in .rules)
RESULT_MISMATCH = "result-mismatch"
START_NOT_TAUTOLOGY = "start-not-tautology"
UNKNOWN_RULE = "unknown-rule"
CONJUNCTION_FORBIDDEN = "conjunction-forbidden"
GOAL_MISMATCH = "goal-mismatch"


@dataclass(frozen=True)
class Step:
    """One rule application.

    ``payload`` keys by rule: quantification rules use ``quant`` and ``var``,
    plus ``witness`` (a term) and optionally ``body`` for the existentialoid
    ones; simplification and renaming use ``map``; passage uses ``index``.
    """
    rule: str
    position: tuple
    payload: dict
    result: object


@dataclass
class Derivation:
    start: object
    steps: list = field(default_factory=list)

    @property
    def conclusion(self):
        return self.steps[-1].result if self.steps else self.start

    def formulas(self):
        yield self.start
        for s in self.steps:
            yield s.result


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    step: int | None = None  # 0 is the start formula, i is the i-th step
    reason: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.accepted


def apply_step(premise, step: Step):
    """Recompute a step's conclusion from its premise, position and payload."""
    pl = step.payload
    pos = tuple(step.position)
    try:
        if step.rule == EXISTENTIALOID:
            return rules.apply_existentialoid_quantification(
                premise, pos, pl["quant"], pl["var"], pl["witness"], pl.get("body"))
        if step.rule == UNIVERSALOID:
            return rules.apply_universaloid_quantification(premise, pos, pl["quant"], pl["var"])
        if step.rule in (SIMPLIFICATION, GAMMA_SIMPLIFICATION):
            return rules.apply_simplification(
                premise, pos, pl.get("map"), gamma=step.rule == GAMMA_SIMPLIFICATION)
        if step.rule == SHALLOW_GAMMA:
            return rules.apply_shallow_quantification(
                premise, pl["quant"], pl["var"], pl["witness"], pl.get("body"), position=pos)
        if step.rule == SHALLOW_DELTA:
            return rules.apply_shallow_quantification(premise, pl["quant"], pl["var"], position=pos)
        if step.rule in (PASSAGE_LR, PASSAGE_RL):
            direction = PRENEX if step.rule == PASSAGE_LR else ANTIPRENEX
            return rules.apply_passage(premise, pos, pl["index"], direction)
        if step.rule == RENAME:
            if pos:
                raise RuleError(rules.NOT_ROOT, "renaming is recorded at the root")
            return rules.apply_rename(premise, pl["map"])
    except KeyError as e:
        raise RuleError(rules.BAD_PAYLOAD, f"missing payload field {e}") from None
    raise RuleError(UNKNOWN_RULE, step.rule)


def _has_conjunction(A) -> bool:
    return any(isinstance(B, And) for _, B in iter_subformulas(A))


def check(D: Derivation, goal=None, require_tautology=True, forbid_conjunction=False) -> Verdict:
    """Re-validate every step of ``D`` without trusting its recorded results."""
    if not is_rectified(D.start):
        return Verdict(False, 0, rules.NOT_RECTIFIED, "start formula is not rectified")
    if forbid_conjunction and _has_conjunction(D.start):
        return Verdict(False, 0, CONJUNCTION_FORBIDDEN)
    if require_tautology and not (is_quantifier_free(D.start) and is_tautology(D.start)):
        return Verdict(False, 0, START_NOT_TAUTOLOGY)
    current = D.start
    for i, step in enumerate(D.steps, start=1):
        try:
            recomputed = apply_step(current, step)
        except RuleError as e:
            return Verdict(False, i, e.reason, str(e))
        if not alpha_equal(recomputed, step.result):
            return Verdict(False, i, RESULT_MISMATCH, "recorded result differs from the rule's")
        if not is_rectified(step.result):
            return Verdict(False, i, rules.NOT_RECTIFIED, "recorded result is not rectified")
        if forbid_conjunction and _has_conjunction(step.result):
            return Verdict(False, i, CONJUNCTION_FORBIDDEN)
        current = step.result
    if goal is not None and not alpha_equal(current, goal):
        return Verdict(False, len(D.steps), GOAL_MISMATCH, "derivation ends elsewhere")
    return Verdict(True)
