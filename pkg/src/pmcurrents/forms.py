"""Smooth differential forms with polynomial coefficients.

Basis keys are pairs (I, J) of strictly increasing index tuples selecting
dt_I ^ dtbar_J.  The fixed written order is: dt's first, then dtbar's,
each sorted by variable index; all reordering signs are folded into the
coefficients at construction time.
"""

from __future__ import annotations

from .context import VarContext
from .poly import Poly

Basis = tuple  # ((i1,...), (j1,...))


def sort_signed(indices):
    """Sort a tuple of odd symbols; return (sign, sorted) or (0, None) on repeats."""
    idx = list(indices)
    sign = 1
    # insertion sort, counting swaps; fine at these sizes
    for k in range(1, len(idx)):
        m = k
        while m > 0 and idx[m - 1] > idx[m]:
            idx[m - 1], idx[m] = idx[m], idx[m - 1]
            sign = -sign
            m -= 1
        if m > 0 and idx[m - 1] == idx[m]:
            return 0, None
    return sign, tuple(idx)


def merge_signed(left, right):
    """Sign and result of wedging two sorted blocks of odd symbols."""
    return sort_signed(tuple(left) + tuple(right))


def insert_signed(j, block):
    """Sign and result of inserting symbol j at the front of a sorted block."""
    if j in block:
        return 0, None
    pos = sum(1 for x in block if x < j)
    out = tuple(sorted(block + (j,)))
    return (-1) ** pos, out


class SmoothForm:
    """Finite sum over basis keys (I, J) of Poly coefficients."""

    __slots__ = ("ctx", "comps")

    def __init__(self, ctx: VarContext, comps=None):
        self.ctx = ctx
        clean = {}
        for (I, J), p in (comps or {}).items():
            if p.is_zero():
                continue
            key = (tuple(I), tuple(J))
            if key in clean:
                clean[key] = clean[key] + p
            else:
                clean[key] = p
        self.comps = {k: v for k, v in clean.items() if not v.is_zero()}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(ctx):
        return SmoothForm(ctx)

    @staticmethod
    def from_poly(p: Poly):
        return SmoothForm(p.ctx, {((), ()): p})

    @staticmethod
    def constant(ctx, c=1):
        return SmoothForm.from_poly(Poly.constant(ctx, c))

    @staticmethod
    def d(ctx, j: int):
        return SmoothForm(ctx, {((j,), ()): Poly.constant(ctx, 1)})

    @staticmethod
    def db(ctx, j: int):
        return SmoothForm(ctx, {((), (j,)): Poly.constant(ctx, 1)})

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "SmoothForm") -> "SmoothForm":
        self.ctx.check(other.ctx)
        out = dict(self.comps)
        for key, p in other.comps.items():
            out[key] = out[key] + p if key in out else p
        return SmoothForm(self.ctx, out)

    def __neg__(self):
        return SmoothForm(self.ctx, {k: -p for k, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SmoothForm":
        return SmoothForm(self.ctx, {k: p.scale(c) for k, p in self.comps.items()})

    def mul_poly(self, q: Poly) -> "SmoothForm":
        return SmoothForm(self.ctx, {k: p * q for k, p in self.comps.items()})

    def wedge(self, other: "SmoothForm") -> "SmoothForm":
        self.ctx.check(other.ctx)
        out = {}
        for (I1, J1), p1 in self.comps.items():
            for (I2, J2), p2 in other.comps.items():
                # move dt_I2 (|I2| odd symbols) left past dtbar_J1
                cross = (-1) ** (len(I2) * len(J1))
                si, I = merge_signed(I1, I2)
                if si == 0:
                    continue
                sj, J = merge_signed(J1, J2)
                if sj == 0:
                    continue
                c = p1 * p2
                sgn = cross * si * sj
                if sgn == -1:
                    c = -c
                key = (I, J)
                out[key] = out[key] + c if key in out else c
        return SmoothForm(self.ctx, out)

    # -- calculus ------------------------------------------------------------

    def dbar(self) -> "SmoothForm":
        out = {}
        for (I, J), p in self.comps.items():
            for j in range(self.ctx.n):
                dp = p.diff_tbar(j)
                if dp.is_zero():
                    continue
                s, nJ = insert_signed(j, J)
                if s == 0:
                    continue
                sgn = s * (-1) ** len(I)
                c = dp if sgn == 1 else -dp
                key = (I, nJ)
                out[key] = out[key] + c if key in out else c
        return SmoothForm(self.ctx, out)

    def dele(self) -> "SmoothForm":
        out = {}
        for (I, J), p in self.comps.items():
            for j in range(self.ctx.n):
                dp = p.diff_t(j)
                if dp.is_zero():
                    continue
                s, nI = insert_signed(j, I)
                if s == 0:
                    continue
                c = dp if s == 1 else -dp
                key = (nI, J)
                out[key] = out[key] + c if key in out else c
        return SmoothForm(self.ctx, out)

    def contract(self, components) -> "SmoothForm":
        """Interior product with sum(components[j] * d/dt_j); dtbar's map to 0."""
        out = {}
        for (I, J), p in self.comps.items():
            for pos, j in enumerate(I):
                pj = components[j]
                if pj.is_zero():
                    continue
                c = p * pj
                if pos % 2:
                    c = -c
                key = (tuple(x for x in I if x != j), J)
                out[key] = out[key] + c if key in out else c
        return SmoothForm(self.ctx, out)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.comps

    def degrees(self) -> set:
        return {(len(I), len(J)) for (I, J) in self.comps}

    def homogeneous_parts(self):
        """Split by total degree; needed where a graded sign depends on it."""
        parts = {}
        for (I, J), p in self.comps.items():
            d = len(I) + len(J)
            parts.setdefault(d, {})[(I, J)] = p
        return {d: SmoothForm(self.ctx, comps) for d, comps in sorted(parts.items())}

    def coefficient(self, I, J) -> Poly:
        return self.comps.get((tuple(I), tuple(J)), Poly.zero(self.ctx))

    def __eq__(self, other):
        return (
            isinstance(other, SmoothForm)
            and self.ctx == other.ctx
            and self.comps == other.comps
        )

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.comps.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        return f"SmoothForm({self.comps!r})"
