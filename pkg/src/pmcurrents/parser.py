"""Expression grammar, evaluator and statement semantics for the CLI.

Grammar (ascii canonical forms round-trip through `render`):

    expr   := term (('+'|'-') term)*
    term   := unary (('^'|'*') unary)*        -- graded wedge / product
    unary  := '-' unary | power
    power  := atom ('**' INT)?
    atom   := NUMBER | NAME | NAME '(' args ')' | NAME '[' args ']'
              | '(' expr ')'

Bracket forms: V[m1, m2] coordinate variety, S[t1, t2] subspace variable
set, m[m1, .., mk] monomial map components, w[p1, .., pn] chart weights.
Reserved value names: i, holds, fails, unknown, true, false.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .context import VarContext
from .currents import (
    Current, NormalizeError, normalize_parts, graded_product,
    const_current, pv_current, res_current,
)
from .calculus import HoloVectorField, dbar, del_, mul_monomial, contract, lie, coeff_extract
from .forms import SmoothForm
from .geometry import (
    CoordinateVariety, LaurentForm, restrict_to, restrict_complement,
    pv_divide, solve_divide, zss_of, asm_mul, dbar_asm_mul, ch_product,
    residue_of, sep_check, dimension_check,
)
from .poly import Monomial, Poly
from .scalars import QQi


class ParseError(ValueError):
    def __init__(self, msg, pos=None):
        super().__init__(msg + (f" (column {pos + 1})" if pos is not None else ""))
        self.pos = pos


class EvalError(ValueError):
    pass


TOKEN_RE = re.compile(
    r"\s*(?:(?P<float>\d+\.\d*(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\*\*|[()\[\],^*+\-=/])"
    r")"
)


def tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.lastgroup:
            out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, val):
        kind, tok, pos = self.next()
        if tok != val:
            raise ParseError(f"expected {val!r}, found {tok!r}", pos)

    def parse(self):
        node = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {tok!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            node = ("add", node, rhs) if op == "+" else ("sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("^", "*"):
            self.next()
            node = ("wedge", node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-":
            self.next()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[1] == "**":
            self.next()
            kind, tok, pos = self.next()
            if kind != "int":
                raise ParseError("** needs an integer exponent", pos)
            node = ("pow", node, int(tok))
        return node

    def atom(self):
        kind, tok, pos = self.next()
        if kind == "int":
            if self.peek()[1] == "/":
                self.next()
                k2, t2, p2 = self.next()
                if k2 != "int":
                    raise ParseError("rational needs integer denominator", p2)
                return ("rat", Fraction(int(tok), int(t2)))
            return ("rat", Fraction(int(tok)))
        if kind == "float":
            return ("float", float(tok))
        if kind == "name":
            nxt = self.peek()[1]
            if nxt == "(":
                self.next()
                args = self.arglist(")")
                return ("call", tok, args, pos)
            if nxt == "[":
                self.next()
                args = self.arglist("]")
                return ("bracket", tok, args, pos)
            return ("name", tok, pos)
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {tok!r}", pos)

    def arglist(self, closer):
        args = []
        if self.peek()[1] == closer:
            self.next()
            return args
        while True:
            args.append(self.expr())
            kind, tok, pos = self.next()
            if tok == closer:
                return args
            if tok != ",":
                raise ParseError(f"expected ',' or {closer!r}", pos)


def parse(text):
    """Parse an expression; raises ParseError with a column position."""
    return Parser(text).parse()


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------


@dataclass
class Verdict:
    value: str

    def __eq__(self, other):
        return isinstance(other, Verdict) and self.value == other.value


class Evaluator:
    """Evaluates ASTs against a session (context, environment, oracle)."""

    def __init__(self, session, allow_float=False):
        self.session = session
        self.allow_float = allow_float

    @property
    def ctx(self):
        return self.session.ctx

    def eval(self, node, ctx=None):
        ctx = ctx or self.ctx
        op = node[0]
        if op == "rat":
            return const_current(ctx, QQi(node[1]))
        if op == "float":
            if self.allow_float:
                return complex(node[1])
            raise EvalError("floating literals are only allowed in oracle arguments")
        if op == "name":
            return self.lookup(node[1], ctx, node[2])
        if op == "neg":
            return self.negate(self.eval(node[1], ctx))
        if op == "add":
            return self.combine(node, ctx, sub=False)
        if op == "sub":
            return self.combine(node, ctx, sub=True)
        if op == "wedge":
            return self.wedge_values(self.eval(node[1], ctx), self.eval(node[2], ctx))
        if op == "pow":
            base = self.eval(node[1], ctx)
            out = const_current(ctx, 1)
            for _ in range(node[2]):
                out = self.wedge_values(out, base)
            return out
        if op == "call":
            return self.call(node[1], node[2], ctx, node[3])
        if op == "bracket":
            return self.bracket(node[1], node[2], ctx, node[3])
        raise EvalError(f"cannot evaluate node {op!r}")

    # -- helpers -----------------------------------------------------------

    def lookup(self, name, ctx, pos):
        if name == "i":
            return const_current(ctx, QQi(0, 1))
        if name in ("holds", "fails", "unknown"):
            return Verdict(name)
        if name == "true":
            return True
        if name == "false":
            return False
        if name in ctx.names:
            j = ctx.index_of(name)
            return normalize_parts(
                ctx, [(Poly.var(ctx, j), ((), ()), (), (), QQi(1))]
            )
        if name in self.session.env:
            return self.session.env[name]
        raise EvalError(f"unknown variable {name!r}")

    def negate(self, val):
        if isinstance(val, Current):
            return -val
        if isinstance(val, complex):
            return -val
        raise EvalError("cannot negate this value")

    def combine(self, node, ctx, sub):
        a = self.eval(node[1], ctx)
        b = self.eval(node[2], ctx)
        if isinstance(a, Current) and isinstance(b, Current):
            return a - b if sub else a + b
        if isinstance(a, complex) or isinstance(b, complex):
            a = self.to_number(a)
            b = self.to_number(b)
            return a - b if sub else a + b
        raise EvalError("'+'/'-' need currents or numbers")

    def wedge_values(self, a, b):
        if not isinstance(a, Current) or not isinstance(b, Current):
            raise EvalError("'^' needs current operands")
        try:
            return graded_product(a, b)
        except NormalizeError as e:
            raise EvalError(str(e)) from None

    # -- coercions -----------------------------------------------------------

    def as_smooth(self, cur: Current, quiet=False):
        if any(t.pv or t.res for t in cur.terms):
            if quiet:
                return None
            raise EvalError("expected a smooth form (no pv/res factors)")
        return SmoothForm(cur.ctx, {t.basis: t.coeff for t in cur.terms}) \
            if cur.terms else SmoothForm.zero(cur.ctx)

    def as_poly(self, cur: Current) -> Poly:
        form = self.as_smooth(cur)
        if form is None or set(form.comps) - {((), ())}:
            raise EvalError("expected a polynomial (degree-0) expression")
        return form.coefficient((), ()) if form.comps else Poly.zero(cur.ctx)

    def as_monomial(self, cur: Current) -> Monomial:
        p = self.as_poly(cur)
        terms = p.sorted_terms()
        if len(terms) != 1:
            raise EvalError("expected a monomial")
        (a, b), c = terms[0]
        if any(b) or c != QQi(1):
            raise EvalError("expected a plain holomorphic monomial with coefficient 1")
        return Monomial(cur.ctx, a)

    def as_varindex(self, node, ctx) -> int:
        if node[0] != "name" or node[1] not in ctx.names:
            raise EvalError("expected a coordinate variable")
        return ctx.index_of(node[1])

    def as_int(self, node) -> int:
        if node[0] == "rat" and node[1].denominator == 1:
            return int(node[1])
        if node[0] == "neg":
            return -self.as_int(node[1])
        raise EvalError("expected an integer")

    def as_float(self, node) -> float:
        if node[0] == "float":
            return node[1]
        if node[0] == "rat":
            return float(node[1])
        if node[0] == "neg":
            return -self.as_float(node[1])
        raise EvalError("expected a number")

    def to_number(self, val) -> complex:
        if isinstance(val, complex):
            return val
        from .oracle.regularized import PairingReport

        if isinstance(val, PairingReport):
            return val.value
        if isinstance(val, Current):
            if val.is_zero():
                return 0j
            if len(val.terms) == 1 and not val.terms[0].pv and not val.terms[0].res \
                    and val.terms[0].basis == ((), ()):
                terms = val.terms[0].coeff.sorted_terms()
                if len(terms) == 1 and not any(terms[0][0][0]) and not any(terms[0][0][1]):
                    return terms[0][1].to_complex()
        raise EvalError("expected a numeric value")

    def as_laurent(self, val) -> LaurentForm:
        if isinstance(val, LaurentForm):
            return val
        if isinstance(val, Current):
            return LaurentForm(self.as_smooth(val), Monomial.one(val.ctx))
        raise EvalError("expected a laurent form (use laurent(num, den))")

    def as_testform(self, val):
        from .oracle.testforms import TestForm

        if isinstance(val, TestForm):
            return val
        raise EvalError("expected a test form (use tf(...) or rtf(p, q))")

    def as_current(self, val) -> Current:
        if not isinstance(val, Current):
            raise EvalError("expected a current")
        return val

    # -- calls ------------------------------------------------------------

    def call(self, name, args, ctx, pos):
        from .oracle import (
            bm_pair, pair, pair_lambda, pair_regularized,
            calibrate_residue_constants,
        )
        from .oracle.pushforward import MonomialMap, pushforward_pair
        from .oracle.testforms import random_test_form

        def need(k):
            if len(args) != k:
                raise EvalError(f"{name} takes {k} argument(s), got {len(args)}")

        if name == "cj":
            need(1)
            j = self.as_varindex(args[0], ctx)
            return normalize_parts(ctx, [(Poly.cvar(ctx, j), ((), ()), (), (), QQi(1))])
        if name == "d":
            need(1)
            j = self.as_varindex(args[0], ctx)
            return normalize_parts(ctx, [(Poly.constant(ctx, 1), ((j,), ()), (), (), QQi(1))])
        if name == "db":
            need(1)
            j = self.as_varindex(args[0], ctx)
            return normalize_parts(ctx, [(Poly.constant(ctx, 1), ((), (j,)), (), (), QQi(1))])
        if name in ("pv", "res"):
            need(2)
            j = self.as_varindex(args[0], ctx)
            m = self.as_int(args[1])
            if m < 1:
                raise EvalError(f"{name} power must be >= 1")
            return pv_current(ctx, j, m) if name == "pv" else res_current(ctx, j, m)

        if name == "dbar":
            need(1)
            return dbar(self.as_current(self.eval(args[0], ctx)))
        if name == "del":
            need(1)
            return del_(self.as_current(self.eval(args[0], ctx)))
        if name == "mul":
            need(2)
            return mul_monomial(self.as_monomial(self.eval(args[0], ctx)),
                                self.as_current(self.eval(args[1], ctx)))
        if name == "vf":
            if len(args) != ctx.n:
                raise EvalError(f"vf needs {ctx.n} components")
            comps = [self.as_poly(self.eval(a, ctx)) for a in args]
            try:
                return HoloVectorField(ctx, comps)
            except ValueError as e:
                raise EvalError(str(e)) from None
        if name == "contract":
            need(2)
            xi = self.eval(args[0], ctx)
            if not isinstance(xi, HoloVectorField):
                raise EvalError("contract needs a vector field (vf(...)) first")
            return contract(xi, self.as_current(self.eval(args[1], ctx)))
        if name == "lie":
            need(2)
            xi = self.eval(args[0], ctx)
            if not isinstance(xi, HoloVectorField):
                raise EvalError("lie needs a vector field (vf(...)) first")
            return lie(xi, self.as_current(self.eval(args[1], ctx)))
        if name == "coeff":
            if len(args) < 1:
                raise EvalError("coeff needs a current and index list")
            cur = self.as_current(self.eval(args[0], ctx))
            idx = tuple(sorted(self.as_int(a) - 1 for a in args[1:]))
            if any(j < 0 or j >= ctx.n for j in idx):
                raise EvalError("coeff index out of range")
            return coeff_extract(cur, idx)

        if name == "restrict":
            need(2)
            return restrict_to(self.as_variety(self.eval(args[0], ctx)),
                               self.as_current(self.eval(args[1], ctx)))
        if name == "restrictc":
            need(2)
            return restrict_complement(self.as_variety(self.eval(args[0], ctx)),
                                       self.as_current(self.eval(args[1], ctx)))
        if name == "pvdiv":
            need(2)
            return pv_divide(self.as_monomial(self.eval(args[0], ctx)),
                             self.as_current(self.eval(args[1], ctx)))
        if name == "solvediv":
            need(2)
            return solve_divide(self.as_monomial(self.eval(args[0], ctx)),
                                self.as_current(self.eval(args[1], ctx)))
        if name == "laurent":
            need(2)
            num = self.as_smooth(self.as_current(self.eval(args[0], ctx)))
            den = self.as_monomial(self.eval(args[1], ctx))
            return LaurentForm(num, den)
        if name == "zss":
            need(1)
            return zss_of(self.as_laurent(self.eval(args[0], ctx)))
        if name == "asmmul":
            need(2)
            return asm_mul(self.as_laurent(self.eval(args[0], ctx)),
                           self.as_current(self.eval(args[1], ctx)))
        if name == "dbarasm":
            need(2)
            return dbar_asm_mul(self.as_laurent(self.eval(args[0], ctx)),
                                self.as_current(self.eval(args[1], ctx)))
        if name == "ch":
            if not args:
                raise EvalError("ch needs at least one monomial")
            return ch_product([self.as_monomial(self.eval(a, ctx)) for a in args])
        if name == "residue":
            need(1)
            return residue_of(self.as_laurent(self.eval(args[0], ctx)))
        if name == "sep":
            if len(args) < 2:
                raise EvalError("sep needs a current and S[...] components")
            cur = self.as_current(self.eval(args[0], ctx))
            comps = [self.as_subspace(self.eval(a, ctx)) for a in args[1:]]
            return Verdict(sep_check(cur, comps).value)
        if name == "dimcheck":
            need(3)
            cur = self.as_current(self.eval(args[0], ctx))
            V = self.as_variety(self.eval(args[1], ctx))
            return dimension_check(cur, V, self.as_int(args[2]))

        if name == "tf":
            if not 1 <= len(args) <= 3:
                raise EvalError("tf(expr[, radius[, order]])")
            cur = self.as_current(self.eval(args[0], ctx))
            radius = self.as_float(args[1]) if len(args) > 1 else self.session.radius
            if len(args) > 2:
                return self.testform_of(cur, radius, int(self.as_int(args[2])))
            return self.testform_of(cur, radius, None)
        if name == "rtf":
            need(2)
            return random_test_form(ctx, self.session.rng,
                                    self.as_int(args[0]), self.as_int(args[1]))
        if name == "rcur":
            from .randgen import random_current

            if args:
                need(3)
                return random_current(ctx, self.session.rng,
                                      max_terms=self.as_int(args[0]),
                                      max_pow=self.as_int(args[1]),
                                      max_deg=self.as_int(args[2]))
            return random_current(ctx, self.session.rng)

        if name == "pair":
            need(2)
            return pair(self.as_current(self.eval(args[0], ctx)),
                        self.as_testform(self.eval(args[1], ctx)),
                        self.session.oracle)
        if name == "pairreg":
            if len(args) < 3:
                raise EvalError("pairreg(a, tau, psi[, h1, h2, ...])")
            a = self.as_laurent(self.eval(args[0], ctx))
            cur = self.as_current(self.eval(args[1], ctx))
            psi = self.as_testform(self.eval(args[2], ctx))
            if len(args) > 3:
                hs = tuple(self.as_monomial(self.eval(x, ctx)) for x in args[3:])
            else:
                if a.denominator.is_constant():
                    raise EvalError("pairreg needs h components for a smooth form")
                hs = (a.denominator,)
            spec = self.session.reg_spec(hs)
            return pair_regularized(a, cur, spec, psi, self.session.oracle)
        if name == "pairlambda":
            need(3)
            return pair_lambda(self.as_int(args[0]), self.as_float(args[1]),
                               self.as_testform(self.eval(args[2], ctx)),
                               self.session.oracle)
        if name == "bm":
            if len(args) < 2:
                raise EvalError("bm(f1[, f2], psi)")
            fs = [self.as_monomial(self.eval(a, ctx)) for a in args[:-1]]
            psi = self.as_testform(self.eval(args[-1], ctx))
            return bm_pair(tuple(fs), psi, self.session.reg_spec(tuple(fs)),
                           self.session.oracle)
        if name == "push":
            if not 3 <= len(args) <= 4:
                raise EvalError("push(m[...], tau, psi[, w[...]])")
            if args[0][0] != "bracket" or args[0][1] != "m":
                raise EvalError("push needs a map literal m[...]")
            rows = [self.as_monomial(self.eval(a, ctx)).exps for a in args[0][2]]
            target = VarContext(len(rows))
            pi = MonomialMap(ctx, target, rows)
            cur = self.as_current(self.eval(args[1], ctx))
            psi = self.as_testform(self.eval(args[2], target))
            wts = {}
            if len(args) == 4:
                if args[3][0] != "bracket" or args[3][1] != "w":
                    raise EvalError("weights must be a w[...] literal")
                entries = args[3][2]
                if len(entries) != ctx.n:
                    raise EvalError(f"w[...] needs {ctx.n} entries")
                for v, e in enumerate(entries):
                    prof = self.weight_profile(e)
                    if prof is not None:
                        wts[v] = prof
            return pushforward_pair(pi, cur, psi, wts, self.session.oracle)
        if name == "calibrate":
            need(1)
            consts = calibrate_residue_constants(self.as_int(args[0]),
                                                 self.session.oracle)
            return [complex(c) for c in consts]

        raise EvalError(f"unknown function {name!r}")

    def bracket(self, name, args, ctx, pos):
        if name == "V":
            gens = [self.as_monomial(self.eval(a, ctx)) for a in args]
            try:
                return CoordinateVariety(ctx, gens)
            except ValueError as e:
                raise EvalError(str(e)) from None
        if name == "S":
            return frozenset(self.as_varindex(a, ctx) for a in args)
        raise EvalError(f"unknown bracket form {name}[...]")

    def as_variety(self, val) -> CoordinateVariety:
        if not isinstance(val, CoordinateVariety):
            raise EvalError("expected a variety V[...]")
        return val

    def as_subspace(self, val) -> frozenset:
        if not isinstance(val, frozenset):
            raise EvalError("expected a subspace S[...]")
        return val

    def testform_of(self, cur: Current, radius, order):
        from .oracle.testforms import TestForm, TFComponent
        from .oracle.profiles import SmoothBump, PolyBump

        comps = []
        mk = (lambda: PolyBump(radius, order)) if order else (lambda: SmoothBump(radius))
        for t in cur.terms:
            if t.pv or t.res:
                raise EvalError("test forms must be smooth (no pv/res factors)")
            poly = {(a, b): c for a, b, c in t.coeff.to_complex_terms()}
            profiles = tuple(mk() for _ in range(cur.ctx.n))
            comps.append(TFComponent(poly, profiles, t.basis))
        return TestForm(cur.ctx, comps)

    def weight_profile(self, node):
        from .oracle.profiles import SmoothBump, PolyBump, ChiStep, \
            InverseStepProfile, OneMinusStepProfile

        if node[0] == "rat" and node[1] == 1:
            return None
        if node[0] == "call":
            fname, fargs = node[1], node[2]
            if fname == "wbump":
                if len(fargs) == 1:
                    return SmoothBump(self.as_float(fargs[0]))
                if len(fargs) == 2:
                    return PolyBump(self.as_float(fargs[0]), self.as_int(fargs[1]))
            if fname == "winv" and len(fargs) == 2:
                return InverseStepProfile(
                    ChiStep(5, self.as_float(fargs[0]), self.as_float(fargs[1])))
            if fname == "wone" and len(fargs) == 2:
                return OneMinusStepProfile(
                    ChiStep(5, self.as_float(fargs[0]), self.as_float(fargs[1])))
        raise EvalError("weight entries are 1, wbump(R[,k]), winv(lo,hi) or wone(lo,hi)")
