"""Command-line front end: ``herbrand <subcommand> ...``.

Exit codes: 0 success / verdict true, 1 verdict false or proof rejected,
2 prove exhausted its orders, 3 resource limit, 64 usage error, 65 input
that does not parse.
"""
from __future__ import annotations

import argparse
import os
import sys
import threading

from .calculus import (
    ANTIPRENEX, PRENEX, ProofFormatError, RuleError, apply_passage, check, dump, dumps, load,
    passage_normalize,
)
from .calculus.proof_file import Quoted, write_sexp
from .fundamental import (
    DEFAULT_ATOM_BUDGET, ExhaustedBudget, ForeignRuleError, build_derivation, check_property_c,
    lemma4_bound, prove,
)
from .skolem import outer_skolemize
from .syntax import ParseError, format_term, parse, print_formula
from .universe import AtomBudgetExceeded, champ_fini, expand

EX_OK, EX_FALSE, EX_EXHAUSTED, EX_RESOURCE = 0, 1, 2, 3
EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EX_USAGE)


def atom_budget(args) -> int:
    if args.atom_budget is not None:
        return args.atom_budget
    env = os.environ.get("HERBRAND_ATOM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HERBRAND_ATOM_BUDGET is not an integer: {env!r}") from None
    return DEFAULT_ATOM_BUDGET


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def read_formula(path: str):
    return parse(read_text(path))


def emit(args, text: str, record) -> None:
    print(write_sexp(record) if args.format == "record" else text)


def positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


# -- subcommands ---------------------------------------------------------------

def cmd_parse(args):
    A = read_formula(args.file)
    emit(args, print_formula(A), ["formula", Quoted(print_formula(A))])
    return EX_OK


def cmd_skolemize(args):
    F = outer_skolemize(read_formula(args.file))
    emit(args, print_formula(F), ["skolemized", Quoted(print_formula(F))])
    return EX_OK


def cmd_champ(args):
    F = outer_skolemize(read_formula(args.file))
    champ = champ_fini(args.order, F, budget=atom_budget(args))
    terms = [format_term(t) for t in champ.terms]
    emit(args, "\n".join(terms), ["champ", ["order", str(args.order)]] + [Quoted(t) for t in terms])
    return EX_OK


def cmd_expand(args):
    F = outer_skolemize(read_formula(args.file))
    budget = atom_budget(args)
    E = expand(F, champ_fini(args.order, F, budget=budget).terms, budget=budget)
    emit(args, print_formula(E), ["expansion", ["order", str(args.order)], Quoted(print_formula(E))])
    return EX_OK


def cmd_check_c(args):
    report = check_property_c(read_formula(args.file), args.order, atom_budget(args))
    print(report.to_record() if args.format == "record" else report.to_text())
    return EX_OK if report.verdict else EX_FALSE


def _write_derivation(args, D, summary):
    if args.output:
        dump(D, args.output)
        emit(args, f"{summary}; derivation written to {args.output}",
             ["written", Quoted(args.output)])
    else:
        print(dumps(D), end="")


def cmd_prove(args):
    A = read_formula(args.file)
    outcome = prove(A, args.max_order, atom_budget(args))
    if isinstance(outcome, ExhaustedBudget):
        msg = f"no Property C up to order {outcome.max_order}"
        emit(args, msg, ["exhausted", ["max-order", str(outcome.max_order)]])
        return EX_EXHAUSTED
    print(f"Property C at order {outcome.order}; {len(outcome.derivation.steps)} steps",
          file=sys.stderr)
    _write_derivation(args, outcome.derivation, f"found at order {outcome.order}")
    return EX_OK


def cmd_derive(args):
    A = read_formula(args.file)
    report = check_property_c(A, args.order, atom_budget(args))
    if not report.verdict:
        print(f"no Property C of order {args.order}", file=sys.stderr)
        return EX_FALSE
    D = build_derivation(A, args.order)
    _write_derivation(args, D, f"derived from order {args.order}")
    return EX_OK


def cmd_verify(args):
    D = load_proof(args.proof)
    goal = read_formula(args.goal) if args.goal else None
    verdict = check(D, goal=goal, require_tautology=not args.no_start_check,
                    forbid_conjunction=args.historic)
    if verdict:
        emit(args, f"accepted: {len(D.steps)} steps", ["verdict", "accepted"])
        return EX_OK
    text = f"rejected at step {verdict.step}: {verdict.reason}"
    if verdict.detail:
        text += f" ({verdict.detail})"
    print(text, file=sys.stderr)
    emit(args, text, ["verdict", "rejected", ["step", str(verdict.step)], ["reason", verdict.reason]])
    return EX_FALSE


def cmd_bound(args):
    D = load_proof(args.proof)
    try:
        b = lemma4_bound(D)
    except (ForeignRuleError, ValueError) as e:
        print(f"bound: {e}", file=sys.stderr)
        return EX_FALSE
    emit(args, str(b), ["bound", str(b)])
    return EX_OK


def cmd_passage(args):
    A = read_formula(args.file)
    direction = PRENEX if args.direction == "prenex" else ANTIPRENEX
    if args.index is not None:
        pos = tuple(int(x) for x in args.pos.split(".")) if args.pos else ()
        try:
            out = apply_passage(A, pos, args.index, direction)
        except RuleError as e:
            print(f"passage: {e}", file=sys.stderr)
            return EX_FALSE
        trace = [(pos, args.index)]
    else:
        limit = None if args.normalize else 1
        if args.normalize and args.max_steps is not None:
            limit = args.max_steps
        out, trace = passage_normalize(A, direction, limit)
    text = print_formula(out)
    if args.format == "record":
        steps = [["step", ["pos"] + [str(i) for i in p], ["index", str(k)]] for p, k in trace]
        print(write_sexp(["passage", ["direction", direction]] + steps + [Quoted(text)]))
    else:
        for p, k in trace:
            print(f"# rule {k} at {'.'.join(map(str, p)) or 'root'}", file=sys.stderr)
        print(text)
    return EX_OK


def load_proof(path):
    try:
        return load(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="herbrand", description="Property C, linear derivations and their checker.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help, formula=True, order=False, budget=False):
        p = sub.add_parser(name, help=help)
        if formula:
            p.add_argument("file", nargs="?", default="-", help="formula file, or - for stdin")
        if order:
            p.add_argument("--order", type=positive, required=True)
        if budget:
            p.add_argument("--atom-budget", type=positive, default=None)
        p.add_argument("--format", choices=("text", "record"), default="text")
        p.set_defaults(func=func)
        return p

    command("parse", cmd_parse, "print the rectified formula")
    command("skolemize", cmd_skolemize, "print the outer Skolemized form")
    command("champ", cmd_champ, "list the champ fini of the Skolemized form", order=True, budget=True)
    command("expand", cmd_expand, "print the expansion over the champ fini", order=True, budget=True)
    command("check-c", cmd_check_c, "decide Property C of a given order", order=True, budget=True)
    p = command("prove", cmd_prove, "search orders 1..N and build a derivation", budget=True)
    p.add_argument("--max-order", type=positive, required=True)
    p.add_argument("-o", "--output", help="write the derivation here instead of stdout")
    p = command("derive", cmd_derive, "build the derivation for a given order", order=True, budget=True)
    p.add_argument("-o", "--output", help="write the derivation here instead of stdout")
    p = command("verify", cmd_verify, "re-check a derivation file", formula=False)
    p.add_argument("proof")
    p.add_argument("--goal", help="formula file the derivation must end in")
    p.add_argument("--historic", action="store_true", help="reject conjunctions anywhere")
    p.add_argument("--no-start-check", action="store_true",
                   help="do not require the start to be a sentential tautology")
    p = command("bound", cmd_bound, "order bound from a derivation file", formula=False)
    p.add_argument("proof")
    p = command("passage", cmd_passage, "apply rules of passage")
    p.add_argument("--direction", choices=("prenex", "antiprenex"), required=True)
    p.add_argument("--normalize", action="store_true", help="apply until no rule matches")
    p.add_argument("--max-steps", type=positive, default=None)
    p.add_argument("--index", type=int, choices=range(1, 7), help="apply this rule only")
    p.add_argument("--pos", help="dotted child path for --index, e.g. 0.1 (default: root)")
    return parser


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"herbrand: {e}", file=sys.stderr)
        return EX_USAGE
    except (ParseError, ProofFormatError) as e:
        print(f"herbrand: parse error: {e}", file=sys.stderr)
        return EX_DATAERR
    except AtomBudgetExceeded as e:
        print(f"herbrand: resource limit: {e}", file=sys.stderr)
        return EX_RESOURCE


def main(argv=None) -> int:
    # expansions are long left-folded chains; give the recursive walkers room
    argv = sys.argv[1:] if argv is None else argv
    result = [EX_USAGE]

    def target():
        try:
            result[0] = run(argv)
        except SystemExit as e:
            result[0] = e.code if isinstance(e.code, int) else EX_USAGE
        except Exception:  # noqa: BLE001 - report, do not hang the thread
            import traceback
            traceback.print_exc()
            result[0] = EX_SOFTWARE

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 200_000))
    threading.stack_size(512 * 1024 * 1024)
    t = threading.Thread(target=target)
    t.start()
    t.join()
    return result[0]


if __name__ == "__main__":
    sys.exit(main())

