"""Deterministic text rendering of currents.

The ascii style is the parser's round-trip target: parse(render(tau))
reproduces tau exactly.  unicode and latex are display-only.
"""

from __future__ import annotations

from .currents import Current
from .scalars import QQi, render_qqi

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _is_negative(c: QQi) -> bool:
    return c.re < 0 or (c.re == 0 and c.im < 0)


def _body_ascii(ctx, a, b, basis, pv, res):
    parts = []
    for j, e in enumerate(a):
        if e == 1:
            parts.append(ctx.name(j))
        elif e > 1:
            parts.append(f"{ctx.name(j)}**{e}")
    for j, e in enumerate(b):
        if e == 1:
            parts.append(f"cj({ctx.name(j)})")
        elif e > 1:
            parts.append(f"cj({ctx.name(j)})**{e}")
    I, J = basis
    parts += [f"d({ctx.name(j)})" for j in I]
    parts += [f"db({ctx.name(j)})" for j in J]
    parts += [f"pv({ctx.name(j)},{m})" for j, m in pv]
    parts += [f"res({ctx.name(j)},{m})" for j, m in res]
    return "^".join(parts)


def _body_pretty(ctx, a, b, basis, pv, res, latex: bool):
    wedge = r" \wedge " if latex else "∧"
    parts = []
    for j, e in enumerate(a):
        if e == 1:
            parts.append(_pretty_var(ctx, j, latex))
        elif e > 1:
            parts.append(_pretty_var(ctx, j, latex) + (f"^{{{e}}}" if latex else _sup(e)))
    for j, e in enumerate(b):
        bar = _pretty_bar_var(ctx, j, latex)
        if e == 1:
            parts.append(bar)
        elif e > 1:
            parts.append(bar + (f"^{{{e}}}" if latex else _sup(e)))
    I, J = basis
    for j in I:
        parts.append((r"dt_{%d}" % (j + 1)) if latex else "d" + _pretty_var(ctx, j, False))
    for j in J:
        parts.append((r"d\bar t_{%d}" % (j + 1)) if latex else "d" + _pretty_bar_var(ctx, j, False))
    for j, m in pv:
        if latex:
            parts.append(r"\Big[\frac{1}{t_{%d}%s}\Big]" % (j + 1, "" if m == 1 else "^{%d}" % m))
        else:
            parts.append("[1/" + _pretty_var(ctx, j, False) + ("" if m == 1 else _sup(m)) + "]")
    for j, m in res:
        if latex:
            parts.append(
                r"\bar\partial\Big[\frac{1}{t_{%d}%s}\Big]"
                % (j + 1, "" if m == 1 else "^{%d}" % m)
            )
        else:
            parts.append(
                "∂̄[1/" + _pretty_var(ctx, j, False) + ("" if m == 1 else _sup(m)) + "]"
            )
    return wedge.join(parts)


def _pretty_var(ctx, j, latex):
    return (r"t_{%d}" % (j + 1)) if latex else "t" + str(j + 1).translate(_SUB)


def _pretty_bar_var(ctx, j, latex):
    return (r"\bar t_{%d}" % (j + 1)) if latex else "t̄" + str(j + 1).translate(_SUB)


def _sup(e):
    sups = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
    return str(e).translate(sups)


def render(tau: Current, style: str = "ascii") -> str:
    if style not in ("ascii", "unicode", "latex"):
        raise ValueError(f"unknown style {style!r}")
    if tau.is_zero():
        return "0"
    ctx = tau.ctx
    chunks = []
    for t in tau.terms:
        for (a, b), c in t.coeff.sorted_terms():
            if style == "ascii":
                body = _body_ascii(ctx, a, b, t.basis, t.pv, t.res)
            else:
                body = _body_pretty(ctx, a, b, t.basis, t.pv, t.res, style == "latex")
            chunks.append((c, body))

    out = []
    for k, (c, body) in enumerate(chunks):
        neg = _is_negative(c)
        mag = -c if neg else c
        if style == "ascii":
            if not body:
                piece = render_qqi(mag)
            elif mag == QQi(1):
                piece = body
            else:
                piece = f"{render_qqi(mag)}*{body}"
        else:
            one = mag == QQi(1)
            cdot = r" \, " if style == "latex" else "·"
            piece = body if (one and body) else (render_qqi(mag) + (cdot + body if body else ""))
        if k == 0:
            out.append(f"-({piece})" if neg and style == "ascii" else ("-" + piece if neg else piece))
        else:
            out.append(f" - {piece}" if neg else f" + {piece}")
    return "".join(out)
