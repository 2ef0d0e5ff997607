"""First-order derivability via Property C: expansions, tautology checks, linear derivations."""
from .calculus import Derivation, Step, Verdict, check
from .fundamental import (
    ExhaustedBudget, Found, PropertyCReport, build_derivation, check_property_c, lemma4_bound,
    prove,
)
from .sentential import is_tautology
from .skolem import outer_skolemize
from .syntax import alpha_equal, parse, print_formula
from .universe import AtomBudgetExceeded, champ_fini, expand

__version__ = "0.1.0"
