"""Terms, formulas, positions, substitution, alpha-equivalence, parsing and printing."""
from .formula import (
    BULLET, BULLET_SYMBOL, SKOLEM_PREFIX, And, App, Atom, CaptureError, Exists, Forall,
    Formula, Not, Or, Position, PositionError, Quantifier, RectificationError, Symbol, Term,
    Var, abstract_term, alpha_equal, atom, atoms, bound_variables, children,
    context_free_variables, format_term, free_variables, fresh_name, func, function_symbols,
    is_quantifier_free, is_rectified, is_skolem_term, iter_subformulas, path_nodes,
    quantifier, quantifier_count, rectify, rename_bound, replace_at, skolem, subformula_at,
    substitute, substitute_term, term_variables, with_children,
)
from .parser import ArityError, ParseError, parse, parse_term
from .printer import print_formula

__all__ = [name for name in dir() if not name.startswith("_")]
