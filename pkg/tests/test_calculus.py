import random
from dataclasses import replace

import pytest
from hypothesis import given, settings

from herbrand.calculus import (
    ANTIPRENEX, CONJUNCTION_FORBIDDEN, EXISTENTIALOID, GOAL_MISMATCH, PRENEX, RENAME,
    SHALLOW_DELTA, SHALLOW_GAMMA, SIMPLIFICATION, UNIVERSALOID, Derivation, ProofFormatError,
    RuleError, Step, apply_existentialoid_quantification, apply_passage, apply_rename,
    apply_shallow_quantification, apply_simplification, apply_universaloid_quantification,
    check, dump, dumps, is_prenex, load, loads, passage_normalize,
)
from herbrand.fundamental import build_derivation
from herbrand.polarity import classify_quantifiers
from herbrand.syntax import Or, Var, alpha_equal, iter_subformulas, parse, quantifier_count, rectify

from corpus import PREC, VALID
from corruptions import cases
from generators import formulas, random_passage_formula

PREMISE = "(t < t) \\/ ~forall z. (t < z)"


def test_example_first_application():
    out = apply_existentialoid_quantification(
        parse(PREMISE), (1,), "exists", "x", Var("t"), parse("~forall z. (x < z)"))
    assert alpha_equal(out, parse("(t < t) \\/ exists x. ~forall z. (x < z)"))


def test_example_second_application():
    out = apply_existentialoid_quantification(
        parse(PREMISE), (1, 0), "forall", "x", Var("t"), parse("forall z. (x < z)"))
    assert alpha_equal(out, parse("(t < t) \\/ ~forall x. forall z. (x < z)"))


def test_default_body_abstracts_every_occurrence():
    out = apply_existentialoid_quantification(parse("P(a, a) \\/ Q"), (0,), "exists", "x", Var("a"))
    assert alpha_equal(out, parse("(exists x. P(x, x)) \\/ Q"))
    partial = apply_existentialoid_quantification(
        parse("P(a, a) \\/ Q"), (0,), "exists", "x", Var("a"), parse("P(x, a)"))
    assert alpha_equal(partial, parse("(exists x. P(x, a)) \\/ Q"))


def test_universaloid_rule():
    out = apply_universaloid_quantification(parse("P(a) \\/ ~P(b)"), (1, 0), "exists", "b")
    assert alpha_equal(out, parse("P(a) \\/ ~exists b. P(b)"))
    with pytest.raises(RuleError) as e:
        apply_universaloid_quantification(parse("P(a) \\/ ~P(b)"), (1, 0), "forall", "b")
    assert e.value.reason == "not-universaloid"


def test_simplification_rule():
    out = apply_simplification(parse("(exists x. P(x)) \\/ exists y. P(y)"), (), {"y": "x"})
    assert alpha_equal(out, parse("exists x. P(x)"))
    out = apply_simplification(parse("~((P /\\ Q) /\\ (P /\\ Q))"), (0,))
    assert out == parse("~(P /\\ Q)")
    with pytest.raises(RuleError) as e:
        apply_simplification(parse("P \\/ ~P"), (0,))
    assert e.value.reason == "pattern-mismatch"


def test_shallow_rules_only_at_root():
    A = parse("P(a) \\/ ~P(a)")
    out = apply_shallow_quantification(A, "exists", "x", Var("a"), parse("P(x) \\/ ~P(x)"))
    assert alpha_equal(out, parse("exists x. (P(x) \\/ ~P(x))"))
    assert alpha_equal(apply_shallow_quantification(A, "forall", "a"), parse("forall a. (P(a) \\/ ~P(a))"))
    with pytest.raises(RuleError) as e:
        apply_shallow_quantification(A, "exists", "x", Var("a"), position=(0,))
    assert e.value.reason == "not-root"


def test_rename_rule():
    A = parse("forall x. exists y. R(x, y)")
    assert alpha_equal(apply_rename(A, {"x": "u"}), A)
    for mapping in ({"x": "y"}, {"w": "v"}):
        with pytest.raises(RuleError):
            apply_rename(A, mapping)


@pytest.mark.parametrize("case", cases(), ids=lambda c: c.name)
def test_kernel_rejections(case):
    verdict = check(case.derivation)
    assert not verdict
    assert (verdict.reason, verdict.step) == (case.reason, case.step)


def test_goal_and_historic_modes():
    D = build_derivation(parse(PREC), 3)
    assert check(D, goal=parse(PREC))
    assert check(D, goal=parse("P")).reason == GOAL_MISMATCH
    E = Derivation(parse("(P \\/ ~P) /\\ (Q \\/ ~Q)"))
    assert check(E)
    assert check(E, forbid_conjunction=True).reason == CONJUNCTION_FORBIDDEN


def test_historic_derivation():
    # P(a) \/ ~P(a)  =>  exists x. (P(x) \/ ~P(x))  =>  forall... by shallow rules only
    A = parse("P(a) \\/ ~P(a)")
    body = parse("P(x) \\/ ~P(x)")
    s1 = Step(SHALLOW_GAMMA, (), {"quant": "exists", "var": "x", "witness": Var("a"), "body": body},
              parse("exists x. (P(x) \\/ ~P(x))"))
    assert check(Derivation(A, [s1]), forbid_conjunction=True)
    s2 = Step(SHALLOW_DELTA, (), {"quant": "forall", "var": "a"}, parse("forall a. (P(a) \\/ ~P(a))"))
    assert check(Derivation(A, [s2]))


def test_unknown_rule_and_missing_payload():
    A = parse("P \\/ ~P")
    assert check(Derivation(A, [Step("ModusPonens", (), {}, A)])).reason == "unknown-rule"
    assert check(Derivation(A, [Step(UNIVERSALOID, (0,), {}, A)])).reason == "bad-payload"
    assert check(Derivation(A, [Step(RENAME, (0,), {"map": {}}, A)])).reason == "not-root"


# -- rules of passage -----------------------------------------------------------

@pytest.mark.parametrize("index,before,after", [
    (1, "~forall x. P(x)", "exists x. ~P(x)"),
    (2, "~exists x. P(x)", "forall x. ~P(x)"),
    (3, "(forall x. P(x)) \\/ Q", "forall x. (P(x) \\/ Q)"),
    (4, "Q \\/ forall x. P(x)", "forall x. (Q \\/ P(x))"),
    (5, "(exists x. P(x)) \\/ Q", "exists x. (P(x) \\/ Q)"),
    (6, "Q \\/ exists x. P(x)", "exists x. (Q \\/ P(x))"),
])
def test_passage_rules_both_directions(index, before, after):
    A, B = parse(before), parse(after)
    assert apply_passage(A, (), index, PRENEX) == B
    assert apply_passage(B, (), index, ANTIPRENEX) == A
    with pytest.raises(RuleError):
        apply_passage(B, (), index, PRENEX)


def test_passage_side_condition():
    A = parse("(forall x. P(x)) \\/ Q(x)", rename_apart=False)
    with pytest.raises(RuleError) as e:
        apply_passage(A, (), 3, PRENEX)
    assert e.value.reason == "free-in-B"


def _multiset(A):
    return sorted((o.cls, o.variable) for o in classify_quantifiers(A))


def test_passage_on_random_formulas():
    rng = random.Random(11)
    for _ in range(100):
        A = random_passage_formula(rng)
        for p, _sub in iter_subformulas(A):
            for index in range(1, 7):
                try:
                    B = apply_passage(A, p, index, PRENEX)
                except RuleError:
                    continue
                assert alpha_equal(apply_passage(B, p, index, ANTIPRENEX), A)
        N, trace = passage_normalize(A, PRENEX)
        assert is_prenex(N)
        assert len(trace) <= 10 * quantifier_count(A)
        assert _multiset(N) == _multiset(A)


@settings(max_examples=100, deadline=None)
@given(formulas(max_leaves=8, connectives=(Or,)))
def test_prenex_normalization_property(A):
    A = rectify(A)
    N, trace = passage_normalize(A, PRENEX)
    assert is_prenex(N)
    assert _multiset(N) == _multiset(A)
    back, _ = passage_normalize(N, ANTIPRENEX)
    assert _multiset(back) == _multiset(A)


# -- proof files ----------------------------------------------------------------

@pytest.mark.parametrize("text", list(VALID)[:8])
def test_proof_file_round_trip(text, tmp_path):
    A = parse(text)
    D = build_derivation(A, VALID[text])
    s = dumps(D)
    E = loads(s)
    assert dumps(E) == s
    assert E.start == D.start and [x.result for x in E.steps] == [x.result for x in D.steps]
    assert check(E, goal=A)
    dump(D, tmp_path / "d.proof")
    assert (tmp_path / "d.proof").read_text() == s
    assert dumps(load(tmp_path / "d.proof")) == s


def test_proof_file_is_deterministic():
    assert dumps(build_derivation(parse(PREC), 3)) == dumps(build_derivation(parse(PREC), 3))


@pytest.mark.parametrize("text", [
    "(derivation)",
    "(derivation (start \"P \\/ \"))",
    "(step (rule X))",
    "(derivation (start \"P\")) (step (rule Simplification) (pos a))",
    "(derivation (start \"P\"",
])
def test_malformed_proof_files(text):
    with pytest.raises((ProofFormatError, ValueError)):
        loads(text)


def test_corrupted_file_rejected_by_step():
    D = build_derivation(parse(PREC), 3)
    text = dumps(D).replace('(map ("y#1" "y"))', '(map ("y#1" "w"))')
    verdict = check(loads(text))
    assert (verdict.accepted, verdict.step, verdict.reason) == (False, 8, "not-variant")


def test_simplification_step_record():
    D = build_derivation(parse(PREC), 3)
    s = D.steps[7]
    assert s.rule == "GammaSimplificationGeneralized"
    assert check(Derivation(D.start, D.steps[:7] + [replace(s, rule=SIMPLIFICATION)] + D.steps[8:]))
    assert EXISTENTIALOID in {x.rule for x in D.steps}
