"""The level-zero associative algebra attached to a graded vertex algebra.

Two bilinear operations built from modes, for homogeneous u extended
linearly: u * v = sum_i C(wt u, i) u_{i-1} v and u o v = sum_i C(wt u, i)
u_{i-2} v.  The span O of all circle products is a two-sided ideal for *,
and A = V/O is associative; o(u) = u_{wt u - 1} makes bottom strata of
modules into A-modules with o(O) acting by zero.

V/O is approximated through a finite window: O gets its rows from pairs
with wt u >= 1 and wt u + wt v + 1 <= depth, classes are represented by
monomials of weight <= depth.  The verdict "stabilized" means the apparent
dimension agrees at depth, depth+1, depth+2 and the chosen representatives
stay independent against the deepest O span.  Reductions always happen
against the depth+2 span, so products of representatives (which can climb a
few strata) reduce correctly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .linalg import Element, RowBasis, SpanSolver, NotInSpanError
from .fock import Space, stratum_basis, transport, vacuum, conformal_vector
from .modes import mode_action

__all__ = ["star", "circ", "o_action", "ZhuContext", "build_context",
           "windowed_adim", "ZhuProducts", "a_product_table", "class_coords"]


def _graded_bilinear(u, v, shift):
    out = Element._raw(v.space, {})
    for wt, comp in u.components().items():
        if wt.denominator != 1 or wt < 0:
            raise ValueError("left factor must have nonnegative integer weights")
        for i in range(int(wt) + 1):
            out = out + comb(int(wt), i) * mode_action(comp, i - shift, v)
    return out


def star(u, v):
    """u * v = sum_i C(wt u, i) u_{i-1} v, linear in both arguments."""
    return _graded_bilinear(u, v, 1)


def circ(u, v):
    """u o v = sum_i C(wt u, i) u_{i-2} v; the span of these is the ideal O."""
    return _graded_bilinear(u, v, 2)


def o_action(u, w):
    """The weight-preserving zero mode o(u) = u_{wt u - 1} applied to w."""
    out = Element._raw(w.space, {})
    for wt, comp in u.components().items():
        if wt.denominator != 1 or wt < 0:
            raise ValueError("o(u) needs nonnegative integer weights on u")
        out = out + mode_action(comp, int(wt) - 1, w)
    return out


def _circ_rows(uspace, limit):
    rows = []
    for wu in range(1, limit):
        for bu in stratum_basis(uspace, Fraction(wu)):
            eu = Element.monomial(uspace, bu)
            for wv in range(0, limit - wu):
                for bv in stratum_basis(uspace, Fraction(wv)):
                    rows.append(circ(eu, Element.monomial(uspace, bv)))
    return rows


def windowed_adim(space, window, depth):
    """Apparent dim of V/O: monomials of weight <= window, O rows to <= depth."""
    uspace = space.algebra().unbounded()
    solver = SpanSolver(uspace)
    for r in _circ_rows(uspace, int(depth)):
        solver.add(r)
    base = solver.rank
    for d in range(int(window) + 1):
        for b in stratum_basis(uspace, Fraction(d)):
            solver.add(Element.monomial(uspace, b))
    return solver.rank - base


@dataclass
class ZhuContext:
    """Finite-window model of the quotient algebra A = V/O."""

    space: Space
    depth: int
    o_basis: RowBasis       # echelon span of the circle products at depth+2
    a_reps: list            # canonical monomial representatives, weight <= depth
    adims: tuple            # apparent dims at windows depth, depth+1, depth+2
    stabilized: bool
    _solver: SpanSolver = field(repr=False, compare=False, default=None)
    _rep_slots: list = field(repr=False, compare=False, default=None)

    @property
    def adim(self):
        return len(self.a_reps)

    def lines(self):
        out = ["quotient-algebra window: depth %d" % self.depth,
               "apparent dims at depth/+1/+2: %s" % (self.adims,),
               "stabilized: %s" % ("yes (evidence, not proof)" if self.stabilized else "no"),
               "class representatives:"]
        for rep in self.a_reps:
            out.append("  wt %s: %r" % (rep.weight(), rep))
        return out


def build_context(space, depth):
    """Assemble the reduction span, class representatives and stability data."""
    if space.is_module:
        raise ValueError("the quotient algebra is built from the algebra")
    depth = int(depth)
    uspace = space.unbounded()
    adims = tuple(windowed_adim(space, dd, dd) for dd in (depth, depth + 1, depth + 2))
    solver = SpanSolver(uspace, track=True)
    for r in _circ_rows(uspace, depth + 2):
        solver.add(r)
    o_basis = solver.to_row_basis()
    reps, slots = [], []
    for d in range(depth + 1):
        for b in stratum_basis(uspace, Fraction(d)):
            m = Element.monomial(uspace, b)
            if solver.add(m):
                reps.append(m)
                slots.append(len(solver.added) - 1)
    stabilized = (adims[0] == adims[1] == adims[2] and len(reps) == adims[2])
    return ZhuContext(space, depth, o_basis, reps, adims, stabilized,
                      _solver=solver, _rep_slots=slots)


def class_coords(ctx, elem):
    """Coordinates of [elem] over ctx.a_reps, reducing modulo the O span.

    Raises NotInSpanError when the element escapes the finite window — the
    cure is a deeper context, never a silently wrong answer.
    """
    v = transport(elem, ctx._solver.space)
    coords = ctx._solver.coords(v)
    if coords is None:
        raise NotInSpanError("element escapes the depth-%d reduction window"
                             % ctx.depth, witness=elem)
    lookup = {slot: i for i, slot in enumerate(ctx._rep_slots)}
    out = [Fraction(0)] * len(ctx.a_reps)
    for j, c in enumerate(coords):
        if c and j in lookup:
            out[lookup[j]] = c
    return tuple(out)


@dataclass
class ZhuProducts:
    """Structure constants of the quotient algebra plus the axiom checks."""

    ctx: ZhuContext
    matrix: list            # matrix[i][j] = class coords of reps[i] * reps[j]
    identity_ok: bool
    central_ok: bool
    assoc_ok: bool
    assoc_checked: int

    @property
    def ok(self):
        return self.identity_ok and self.central_ok and self.assoc_ok

    def lines(self):
        c = self.ctx
        out = ["quotient algebra dim %d (depth %d, stabilized=%s)"
               % (c.adim, c.depth, c.stabilized)]
        out.append("identity class: %s" % ("ok" if self.identity_ok else "FAILED"))
        out.append("conformal class central: %s" % ("ok" if self.central_ok else "FAILED"))
        out.append("associativity (%d triples): %s"
                   % (self.assoc_checked, "ok" if self.assoc_ok else "FAILED"))
        return out


def a_product_table(ctx, force=False):
    """Multiply all representative pairs and verify the algebra axioms.

    Checks: the vacuum class is a two-sided identity, the conformal class is
    central, and * is associative on every representative triple (computed on
    the nose, then compared class-by-class).
    """
    if not ctx.stabilized and not force:
        raise ValueError("context not stabilized; pass force=True to tabulate anyway")
    reps = ctx.a_reps
    n = len(reps)
    if not reps or reps[0] != vacuum(ctx._solver.space):
        raise RuntimeError("first representative is not the vacuum")
    matrix = [[class_coords(ctx, star(reps[i], reps[j])) for j in range(n)]
              for i in range(n)]
    unit = [tuple(Fraction(1) if k == j else Fraction(0) for k in range(n))
            for j in range(n)]
    identity_ok = all(matrix[0][j] == unit[j] and matrix[j][0] == unit[j]
                      for j in range(n))
    omega = conformal_vector(ctx._solver.space)
    central_ok = all(class_coords(ctx, star(omega, reps[j]))
                     == class_coords(ctx, star(reps[j], omega)) for j in range(n))
    assoc_ok = True
    checked = 0
    for i in range(n):
        for j in range(n):
            uv = star(reps[i], reps[j])
            for k in range(n):
                lhs = class_coords(ctx, star(uv, reps[k]))
                rhs = class_coords(ctx, star(reps[i], star(reps[j], reps[k])))
                checked += 1
                if lhs != rhs:
                    assoc_ok = False
    return ZhuProducts(ctx, matrix, identity_ok, central_ok, assoc_ok, checked)
