"""A modus-ponens-free first-order calculus: rules, derivations and the checker."""
from .derivation import (
    CONJUNCTION_FORBIDDEN, EXISTENTIALOID, GAMMA_SIMPLIFICATION, GOAL_MISMATCH, PASSAGE_LR,
    PASSAGE_RL, RENAME, RESULT_MISMATCH, RULES, SHALLOW_DELTA, SHALLOW_GAMMA, SIMPLIFICATION,
    START_NOT_TAUTOLOGY, UNIVERSALOID, UNKNOWN_RULE, Derivation, Step, Verdict, apply_step,
    check,
)
from .proof_file import ProofFormatError, dump, dumps, load, loads
from .rules import (
    ANTIPRENEX, PRENEX, RuleError, apply_existentialoid_quantification, apply_passage,
    apply_rename, apply_shallow_quantification, apply_simplification,
    apply_universaloid_quantification, is_prenex, passage_normalize, passage_step,
)
