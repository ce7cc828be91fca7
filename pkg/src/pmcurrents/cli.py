"""Command line front end: REPL, batch scripts, JSON report stream.

Statements (one per line; '#' starts a comment):

    let NAME = EXPR
    assert_eq EXPR EXPR          exact equality of currents/verdicts/bools
    assert_zero EXPR             current is the zero normal form
    assert_close TOL EXPR EXPR   numeric agreement to relative TOL
    dim N                        fresh session in dimension N
    EXPR                         evaluate and report

Exit codes: 0 success, 1 assertion failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from .context import VarContext
from .currents import Current, NormalizeError
from .geometry import CoordinateVariety, LaurentForm
from .calculus import HoloVectorField
from .parser import Parser, ParseError, EvalError, Evaluator, Verdict
from .render import render


@dataclass
class Session:
    dim: int = 2
    seed: int = 0
    tol: float = 1e-6
    eps_ratio: float = 0.25
    eps_levels: int = 8
    quad_order: int = 64
    style: str = "ascii"
    radius: float = 1.6
    timing: bool = False
    env: dict = field(default_factory=dict)

    def __post_init__(self):
        self.reset(self.dim)

    def reset(self, dim):
        from .oracle import OracleConfig

        self.dim = dim
        self.ctx = VarContext(dim)
        self.env = {}
        self.rng = random.Random(self.seed)
        self.oracle = OracleConfig(radial_n=self.quad_order)

    def reg_spec(self, hs):
        from .oracle import RegularizationSpec

        return RegularizationSpec(h=hs, ratio=self.eps_ratio, levels=self.eps_levels)


def split_top_level(text):
    """Split on whitespace outside any bracket nesting."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch.isspace() and depth == 0:
            if cur:
                parts.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


def value_json(session, val):
    from .oracle.regularized import PairingReport
    from .oracle.testforms import TestForm

    if isinstance(val, Current):
        return {"kind": "current", "value": render(val, session.style)}
    if isinstance(val, complex):
        return {"kind": "number", "value": [val.real, val.imag]}
    if isinstance(val, bool):
        return {"kind": "bool", "value": val}
    if isinstance(val, Verdict):
        return {"kind": "verdict", "value": val.value}
    if isinstance(val, PairingReport):
        out = {"kind": "report"}
        out.update(val.to_json(include_seconds=session.timing))
        return out
    if isinstance(val, list) and all(isinstance(x, complex) for x in val):
        return {"kind": "constants", "value": [[x.real, x.imag] for x in val]}
    if isinstance(val, CoordinateVariety):
        return {"kind": "variety", "value": repr(val)}
    if isinstance(val, (TestForm, HoloVectorField, LaurentForm)):
        return {"kind": type(val).__name__.lower()}
    if isinstance(val, frozenset):
        return {"kind": "subspace", "value": sorted(session.ctx.name(j) for j in val)}
    return {"kind": "other", "value": repr(val)}


def _eval(session, text):
    ast = Parser(text).parse()
    return Evaluator(session).eval(ast)


def _numeric(session, text):
    ast = Parser(text).parse()
    val = Evaluator(session, allow_float=True).eval(ast)
    return Evaluator(session).to_number(val)


def execute(session, line, index, lineno):
    """Run one statement; returns (record, status) with status ok/fail/error."""
    record = {"index": index, "line": lineno, "command": line}
    try:
        parts = split_top_level(line)
        head = parts[0]
        if head == "let":
            if len(parts) < 4 or parts[2] != "=":
                raise ParseError("let NAME = EXPR")
            name = parts[1]
            val = _eval(session, " ".join(parts[3:]))
            session.env[name] = val
            record.update(status="ok", result=value_json(session, val))
            return record, "ok"
        if head == "dim":
            if len(parts) != 2:
                raise ParseError("dim N")
            session.reset(int(parts[1]))
            record.update(status="ok", result={"kind": "dim", "value": session.dim})
            return record, "ok"
        if head == "assert_eq":
            if len(parts) != 3:
                raise ParseError("assert_eq EXPR EXPR")
            a = _eval(session, parts[1])
            b = _eval(session, parts[2])
            ok = a == b
            record.update(status="ok" if ok else "fail",
                          result={"kind": "assert", "passed": bool(ok)})
            return record, "ok" if ok else "fail"
        if head == "assert_zero":
            if len(parts) != 2:
                raise ParseError("assert_zero EXPR")
            a = _eval(session, parts[1])
            ok = isinstance(a, Current) and a.is_zero()
            record.update(status="ok" if ok else "fail",
                          result={"kind": "assert", "passed": bool(ok)})
            return record, "ok" if ok else "fail"
        if head == "assert_close":
            if len(parts) != 4:
                raise ParseError("assert_close TOL EXPR EXPR")
            tol = float(parts[1]) if parts[1] != "default" else session.tol
            a = _numeric(session, parts[2])
            b = _numeric(session, parts[3])
            scale = max(abs(a), abs(b), 1e-300)
            ok = abs(a - b) / scale <= tol
            record.update(status="ok" if ok else "fail",
                          result={"kind": "assert", "passed": bool(ok),
                                  "difference": abs(a - b) / scale})
            return record, "ok" if ok else "fail"
        val = _eval(session, line)
        record.update(status="ok", result=value_json(session, val))
        return record, "ok"
    except (ParseError, EvalError, NormalizeError, ValueError,
            NotImplementedError, ArithmeticError) as e:
        record.update(status="error", error=f"{type(e).__name__}: {e}")
        return record, "error"


def eval_script(path, session, json_path=None):
    """Run a script; returns (exit code, records)."""
    records = []
    worst = 0
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    index = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        record, status = execute(session, line, index, lineno)
        records.append(record)
        index += 1
        if status == "fail":
            worst = max(worst, 1)
        elif status == "error":
            worst = 2
            break
    stream = "\n".join(json.dumps(r, sort_keys=True) for r in records)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(stream + "\n")
    return worst, records, stream


def repl(session):
    print(f"pmcurrents repl (dim {session.dim}); blank line or EOF to quit")
    index = 0
    while True:
        try:
            line = input("pm> ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            return 0
        record, status = execute(session, line, index, index + 1)
        index += 1
        if status == "error":
            print(record["error"])
        elif record.get("result", {}).get("kind") == "current":
            print(record["result"]["value"])
        else:
            print(json.dumps(record.get("result", {}), sort_keys=True))


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="pmcur",
        description="symbolic currents calculus with a numeric pairing oracle",
    )
    ap.add_argument("--dim", type=int, default=2, metavar="N")
    ap.add_argument("--seed", type=int, default=0, metavar="K")
    ap.add_argument("--tol", type=float, default=1e-6, metavar="X")
    ap.add_argument("--eps-ratio", type=float, default=0.25, metavar="R")
    ap.add_argument("--eps-levels", type=int, default=8, metavar="K")
    ap.add_argument("--quad-order", type=int, default=64, metavar="Q")
    ap.add_argument("--style", choices=("ascii", "unicode", "latex"), default="ascii")
    ap.add_argument("--script", metavar="PATH")
    ap.add_argument("--json", metavar="PATH")
    ap.add_argument("--timing", action="store_true",
                    help="include wall-clock seconds in reports")
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if args.dim < 1:
        print("dimension must be positive", file=sys.stderr)
        return 2
    session = Session(
        dim=args.dim, seed=args.seed, tol=args.tol, eps_ratio=args.eps_ratio,
        eps_levels=args.eps_levels, quad_order=args.quad_order,
        style=args.style, timing=args.timing,
    )
    if args.script:
        try:
            code, _records, stream = eval_script(args.script, session, args.json)
        except OSError as e:
            print(f"cannot read script: {e}", file=sys.stderr)
            return 2
        print(stream)
        return code
    return repl(session)


if __name__ == "__main__":
    sys.exit(main())
