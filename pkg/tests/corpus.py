"""The formula corpus with frozen golden orders.

``VALID`` maps a formula to its least order with Property C; ``INVALID``
lists formulas with no Property C up to order 4.  The values were computed
with ``tests/oracles.py`` (truth tables over the independently built
expansion) and are re-derived by ``test_corpus_goldens_match_oracle``.
"""

PREC = "forall x. exists y. (x < y) \\/ exists m. forall z. ~(m < z)"
DRINKER = "exists x. (P(x) -> forall y. P(y))"
# the shared premise of the two rule applications, closed by a quantifier
EXAMPLE_CLOSED = "forall t. ((t < t) \\/ exists x. ~forall z. (x < z))"

VALID = {
    PREC: 3,
    DRINKER: 3,
    EXAMPLE_CLOSED: 2,
    "exists t. ((t < t) \\/ ~forall z. (t < z))": 2,
    "P \\/ ~P": 1,
    "forall x. (P(x) \\/ ~P(x))": 1,
    "forall x. (P(x) -> P(x))": 1,
    "exists x. (P(x) -> P(x))": 2,
    "forall x. P(x) -> exists y. P(y)": 2,
    "exists y. forall x. R(x, y) -> forall u. exists v. R(u, v)": 2,
    "forall x. P(x) -> forall y. P(f(y))": 3,
    "forall x. exists y. (P(x) -> P(y))": 2,
    "(forall x. (P(x) /\\ Q(x))) -> forall y. P(y)": 2,
    "(forall x. P(x)) /\\ (forall y. Q(y)) -> forall z. (P(z) /\\ Q(z))": 2,
    "~exists x. forall y. ((R(y, x) \\/ R(y, y)) /\\ (~R(y, x) \\/ ~R(y, y)))": 2,
    "forall x. exists y. R(x, y) -> forall u. exists v. R(u, v)": 3,
    "exists x. (P(x) \\/ ~P(c))": 2,
    "exists x. forall y. (P(x) -> P(y))": 3,
}

INVALID = [
    "P /\\ ~P",
    "P",
    "exists x. P(x)",
    "forall x. P(x)",
    "Human(x) /\\ exists x. Mortal(x)",
    "forall x. exists y. R(x, y)",
    "exists x. forall y. R(x, y)",
    "forall x. exists y. R(x, y) -> exists y. forall x. R(x, y)",
    "P(a) -> P(b)",
    "exists x. P(x) -> forall y. P(y)",
    "forall x. (P(x) \\/ Q(x)) -> (forall y. P(y)) \\/ forall z. Q(z)",
    "(exists x. P(x)) /\\ (exists y. Q(y)) -> exists z. (P(z) /\\ Q(z))",
    "forall x. (x < x)",
    "exists x. forall y. (x < y)",
    "Q \\/ forall x. P(f(x))",
]

ALL = list(VALID) + INVALID
