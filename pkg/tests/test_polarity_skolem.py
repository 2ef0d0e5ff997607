import pytest
from hypothesis import given, settings

from herbrand.polarity import (
    DELTA, EVEN, GAMMA, ODD, classify_quantifiers, is_accessible_position, negation_parity,
    polarity_at, quantifier_class,
)
from herbrand.skolem import outer_skolemize
from herbrand.syntax import (
    alpha_equal, free_variables, function_symbols, is_quantifier_free, parse, print_formula,
    rectify,
)

import oracles
from corpus import ALL, PREC
from generators import formulas


def test_classification_table():
    assert quantifier_class("exists", 0) == GAMMA
    assert quantifier_class("forall", 1) == GAMMA
    assert quantifier_class("forall", 0) == DELTA
    assert quantifier_class("exists", 1) == DELTA


def test_prec_formula_classes():
    occ = classify_quantifiers(parse(PREC))
    got = [(o.variable, o.quantifier, o.cls, o.accessible) for o in occ]
    assert got == [
        ("x", "forall", DELTA, True),
        ("y", "exists", GAMMA, False),
        ("m", "exists", GAMMA, True),
        ("z", "forall", DELTA, False),
    ]


def test_negation_flips_classes():
    occ = classify_quantifiers(parse("~forall x. ~exists y. P(x, y)"))
    assert [(o.variable, o.negation_parity, o.cls) for o in occ] == [
        ("x", ODD, GAMMA), ("y", EVEN, GAMMA)]
    occ = classify_quantifiers(parse("~forall x. exists y. P(x, y)"))
    assert [(o.variable, o.negation_parity, o.cls) for o in occ] == [
        ("x", ODD, GAMMA), ("y", ODD, DELTA)]


def test_parity_and_accessibility_of_positions():
    A = parse("P \\/ ~(Q /\\ forall x. R(x))")
    assert negation_parity(A, (1, 0, 1)) == 1
    assert polarity_at(A, (0,)) == EVEN
    assert is_accessible_position(A, (1, 0, 1))
    assert not is_accessible_position(A, (1, 0, 1, 0))


def test_prec_skolemization():
    F = outer_skolemize(parse(PREC))
    assert print_formula(F) == "exists y. (sk$x < y) \\/ exists m. ~(m < sk$z(m))"


def test_skolem_arguments_are_enclosing_gammas_outermost_first():
    table = {}
    F = outer_skolemize(parse("exists a. ~exists b. exists c. forall d. R(a, d)"), table)
    # b and c sit under one negation (delta); d is a forall there (gamma)
    assert print_formula(F) == "exists a. ~forall d. R(a, d)"
    assert sorted(table) == ["b", "c"]
    assert all(s.arity == 1 and s.kind == "skolem" for s in table.values())
    G = outer_skolemize(parse("exists u. ~forall v. ~forall w. P(u, v, w)"))
    assert print_formula(G) == "exists u. ~forall v. ~P(u, v, sk$w(u, v))"


def test_free_variables_are_not_skolem_arguments():
    F = outer_skolemize(parse("forall x. P(x, w)"))
    assert print_formula(F) == "P(sk$x, w)"
    assert free_variables(F) == {"w"}


@pytest.mark.parametrize("text", ALL)
def test_skolemization_matches_oracle(text):
    A = parse(text)
    F = outer_skolemize(A)
    assert alpha_equal(F, oracles.skolemize(A))
    assert all(o.cls == GAMMA for o in classify_quantifiers(F))


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_skolemized_form_has_only_gammas(A):
    A = rectify(A)
    table = {}
    F = outer_skolemize(A, table)
    assert alpha_equal(F, oracles.skolemize(A))
    assert all(o.cls == GAMMA for o in classify_quantifiers(F))
    deltas = {o.variable for o in classify_quantifiers(A) if o.cls == DELTA}
    assert set(table) == deltas
    # vacuous delta-quantifiers leave no symbol behind
    assert {s for s in function_symbols(F) if s.kind == "skolem"} <= set(table.values())
    if not any(o.cls == GAMMA for o in classify_quantifiers(A)):
        assert is_quantifier_free(F)
    assert free_variables(F) == free_variables(A)
