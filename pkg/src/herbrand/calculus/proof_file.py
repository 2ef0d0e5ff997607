"""Line-oriented s-expression serialization of derivations.

::

    (derivation (start "<formula>"))
    (step (rule <Name>) (pos <i> ...) (payload ...) (result "<formula>"))

Formula and term texts are double-quoted; the formula language has no
double quotes, so no escaping is needed.
"""
from __future__ import annotations

import re

from ..syntax import format_term, parse, parse_term, print_formula
from .derivation import Derivation, Step


class ProofFormatError(ValueError):
    pass


class Quoted(str):
    pass


_SEXP_TOKEN = re.compile(r'\s*(?:(\()|(\))|"([^"\n]*)"|([^\s()"]+))')


def read_sexp(text: str):
    pos = 0
    stack: list[list] = [[]]
    while True:
        m = _SEXP_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ProofFormatError(f"bad s-expression near {text[pos:pos + 20]!r}")
            break
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise ProofFormatError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        elif m.group(3) is not None:
            stack[-1].append(Quoted(m.group(3)))
        else:
            stack[-1].append(m.group(4))
    if len(stack) != 1:
        raise ProofFormatError("unbalanced '('")
    return stack[0]


def write_sexp(x) -> str:
    if isinstance(x, Quoted):
        return '"' + x + '"'
    if isinstance(x, str):
        return x
    return "(" + " ".join(write_sexp(y) for y in x) + ")"


def _fields(record) -> dict:
    out = {}
    for item in record[1:]:
        if not isinstance(item, list) or not item:
            raise ProofFormatError(f"malformed field {item!r}")
        out[item[0]] = item[1:]
    return out


def _payload_sexp(step: Step) -> list:
    pl = step.payload
    out: list = ["payload"]
    if "quant" in pl:
        out.append(["quant", pl["quant"]])
    if "var" in pl:
        out.append(["var", Quoted(pl["var"])])
    if "witness" in pl:
        out.append(["witness", Quoted(format_term(pl["witness"]))])
    if pl.get("body") is not None:
        out.append(["body", Quoted(print_formula(pl["body"]))])
    if pl.get("map") is not None:
        out.append(["map"] + [[Quoted(k), Quoted(v)] for k, v in pl["map"].items()])
    if "index" in pl:
        out.append(["index", str(pl["index"])])
    return out


def dumps(D: Derivation) -> str:
    lines = [write_sexp(["derivation", ["start", Quoted(print_formula(D.start))]])]
    for s in D.steps:
        lines.append(write_sexp([
            "step", ["rule", s.rule], ["pos"] + [str(i) for i in s.position],
            _payload_sexp(s), ["result", Quoted(print_formula(s.result))],
        ]))
    return "\n".join(lines) + "\n"


def _formula(x):
    if len(x) != 1 or not isinstance(x[0], Quoted):
        raise ProofFormatError("expected one quoted formula")
    return parse(x[0], rename_apart=False)


def _payload(items) -> dict:
    pl = {}
    for item in items:
        if not isinstance(item, list) or not item:
            raise ProofFormatError(f"malformed payload item {item!r}")
        key, rest = item[0], item[1:]
        if key == "quant":
            pl["quant"] = rest[0]
        elif key == "var":
            pl["var"] = str(rest[0])
        elif key == "witness":
            pl["witness"] = parse_term(rest[0])
        elif key == "body":
            pl["body"] = _formula(rest)
        elif key == "map":
            pl["map"] = {str(k): str(v) for k, v in rest}
        elif key == "index":
            pl["index"] = int(rest[0])
        else:
            raise ProofFormatError(f"unknown payload field {key!r}")
    return pl


def loads(text: str) -> Derivation:
    records = read_sexp(text)
    if not records or records[0][:1] != ["derivation"]:
        raise ProofFormatError("missing (derivation ...) header")
    header = _fields(records[0])
    if "start" not in header:
        raise ProofFormatError("derivation header has no start formula")
    D = Derivation(_formula(header["start"]))
    for rec in records[1:]:
        if rec[:1] != ["step"]:
            raise ProofFormatError(f"unexpected record {rec[:1]!r}")
        f = _fields(rec)
        try:
            D.steps.append(Step(
                rule=f["rule"][0],
                position=tuple(int(i) for i in f["pos"]),
                payload=_payload(f.get("payload", [])),
                result=_formula(f["result"]),
            ))
        except (KeyError, IndexError, ValueError) as e:
            if isinstance(e, ProofFormatError):
                raise
            raise ProofFormatError(f"malformed step record: {e}") from None
    return D


def dump(D: Derivation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(D))


def load(path) -> Derivation:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
