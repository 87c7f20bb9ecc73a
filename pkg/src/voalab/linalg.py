"""Exact sparse linear algebra over spaces with hashable basis keys.

Everything here works with `fractions.Fraction` coefficients — no floats
anywhere, so rank/membership answers are decisions, not estimates.  Vectors
are sparse dicts keyed by whatever basis objects the owning space uses; the
space object only has to provide `sort_key(key)` (a total order used for
pivot selection and printing), `weight_of(key)`, and `label(key)`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SpaceMismatchError(ValueError):
    """Raised when combining vectors that live over different spaces."""


class NotInSpanError(ValueError):
    """Raised when a claimed containment fails; carries the witness vector."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("exact coefficients only (int or Fraction), got %r" % (c,))


class Element:
    """A sparse vector: finitely many basis keys with nonzero rational coeffs.

    Supports +, -, scalar *, equality, and truth-value (nonzero).  Zero
    coefficients are pruned on construction, so equal vectors have equal
    term dicts.
    """

    __slots__ = ("space", "_terms")

    def __init__(self, space, terms=None):
        self.space = space
        clean = {}
        if terms:
            for key, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[key] = c
        self._terms = clean

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def monomial(cls, space, key, coeff=1):
        return cls(space, {key: coeff})

    @classmethod
    def _raw(cls, space, terms):
        # internal: terms must already be clean (no zeros, Fraction values)
        e = cls.__new__(cls)
        e.space, e._terms = space, terms
        return e

    # -- basic queries ----------------------------------------------------

    def terms(self):
        """Items as (key, coeff) pairs in canonical order."""
        sk = self.space.sort_key
        return sorted(self._terms.items(), key=lambda kv: sk(kv[0]))

    def items(self):
        """Raw (key, coeff) iteration, no ordering guarantee."""
        return self._terms.items()

    def coeff(self, key):
        return self._terms.get(key, Fraction(0))

    def support(self):
        return set(self._terms)

    def lead(self):
        """The canonically smallest basis key (errors on zero)."""
        sk = self.space.sort_key
        return min(self._terms, key=sk)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def components(self):
        """Split by weight; returns {weight: homogeneous Element} sorted by weight."""
        wof = self.space.weight_of
        buckets = {}
        for key, c in self._terms.items():
            buckets.setdefault(wof(key), {})[key] = c
        return {w: Element._raw(self.space, t) for w, t in sorted(buckets.items())}

    def weight(self):
        """Weight of a homogeneous element (ValueError if mixed or zero)."""
        ws = {self.space.weight_of(k) for k in self._terms}
        if len(ws) != 1:
            raise ValueError("element is not homogeneous: weights %s" % sorted(ws))
        return ws.pop()

    def max_weight(self):
        """Largest weight occurring (None for the zero vector)."""
        if not self._terms:
            return None
        return max(self.space.weight_of(k) for k in self._terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.space != other.space:
            raise SpaceMismatchError("vectors live over different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Element._raw(self.space, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) - c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Element._raw(self.space, out)

    def __neg__(self):
        return Element._raw(self.space, {k: -v for k, v in self._terms.items()})

    def __rmul__(self, c):
        c = _as_fraction(c)
        if not c:
            return Element._raw(self.space, {})
        return Element._raw(self.space, {k: c * v for k, v in self._terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        bits = []
        for key, c in self.terms():
            lab = self.space.label(key)
            if c == 1:
                bits.append("+ " + lab)
            elif c == -1:
                bits.append("- " + lab)
            elif c < 0:
                bits.append("- %s*%s" % (-c, lab))
            else:
                bits.append("+ %s*%s" % (c, lab))
        out = " ".join(bits)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _strip_content(row):
    """Divide an integer row dict by the gcd of its entries (in place)."""
    g = 0
    for v in row.values():
        g = gcd(g, int(v))
        if g == 1:
            return row
    if g > 1:
        for k in row:
            row[k] = row[k] // g
    return row


def _integerize(terms):
    """Scale a sparse Fraction dict to integer entries with content 1."""
    lcm = 1
    for c in terms.values():
        d = c.denominator
        lcm = lcm // gcd(lcm, d) * d
    row = {k: c.numerator * (lcm // c.denominator) for k, c in terms.items()}
    return _strip_content(row)


class RowBasis:
    """An echelonized tuple of independent rows spanning a subspace.

    Rows are fully reduced: each has a pivot key (its canonically minimal
    support key) with coefficient 1, and no row's pivot occurs in any other
    row.  `weight` is the common stratum of all rows, or None for spans of
    mixed weight (the Zhu construction reduces over a filtered space, which
    is the one sanctioned use of weight=None).
    """

    __slots__ = ("space", "weight", "rows", "pivots", "_pivot_index")

    def __init__(self, space, rows, weight=None):
        self.space = space
        self.rows = tuple(rows)
        self.weight = weight
        self.pivots = tuple(r.lead() for r in self.rows)
        self._pivot_index = {p: i for i, p in enumerate(self.pivots)}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        """Eliminate pivot coordinates from v; return (coords, remainder).

        Rows are fully reduced, so one sweep over the pivot keys present in
        v suffices; subtractions can only introduce non-pivot keys.
        """
        coords = [Fraction(0)] * len(self.rows)
        rem = v
        for key in [k for k in v.support() if k in self._pivot_index]:
            i = self._pivot_index[key]
            c = rem.coeff(key)
            if c:
                coords[i] = c
                rem = rem - c * self.rows[i]
        return coords, rem

    def membership(self, v):
        """Coordinates of v over self.rows, or None if v is outside the span."""
        coords, rem = self.reduce(v)
        if rem:
            return None
        return coords

    def __contains__(self, v):
        return self.membership(v) is not None

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        w = "" if self.weight is None else " @ weight %s" % (self.weight,)
        return "<RowBasis rank %d%s>" % (self.rank, w)


def row_reduce(space, vectors, weight=None):
    """Echelonize a list of Elements into a RowBasis.

    Forward elimination is fraction-free: rows are scaled to integer entries
    and combined by cross-multiplication with content stripping after every
    step, so intermediate coefficients stay integral and modest.  A final
    pass back-substitutes and rescales pivots to 1.
    """
    sk = space.sort_key
    echelon = {}  # pivot key -> integer row dict
    for v in vectors:
        if isinstance(v, Element):
            if v.space != space:
                raise SpaceMismatchError("row from a different space")
            terms = v._terms
        else:
            terms = {k: _as_fraction(c) for k, c in v.items() if c}
        if not terms:
            continue
        row = _integerize(terms)
        while row:
            lead = min(row, key=sk)
            piv = echelon.get(lead)
            if piv is None:
                echelon[lead] = row
                break
            a, b = piv[lead], row[lead]
            new = {}
            for k in set(piv) | set(row):
                val = a * row.get(k, 0) - b * piv.get(k, 0)
                if val:
                    new[k] = val
            row = _strip_content(new)
    # back-substitution: clear every pivot from every other row, monic pivots
    order = sorted(echelon, key=sk)
    reduced = {}
    for lead in reversed(order):
        row = {k: Fraction(v) for k, v in echelon[lead].items()}
        for other in sorted(row, key=sk):
            if other != lead and other in reduced:
                c = row.pop(other)
                for k, v in reduced[other].items():
                    if k == other:
                        continue
                    val = row.get(k, 0) - c * v
                    if val:
                        row[k] = val
                    else:
                        row.pop(k, None)
        pivc = row[lead]
        reduced[lead] = {k: v / pivc for k, v in row.items()}
    rows = [Element._raw(space, reduced[lead]) for lead in order]
    if weight is not None:
        for r in rows:
            if r.weight() != weight:
                raise ValueError("row of weight %s in stratum-%s basis" % (r.weight(), weight))
    return RowBasis(space, rows, weight=weight)


def quotient_dim(ambient, sub):
    """dim(ambient/sub), verifying sub ⊆ ambient exactly.

    Raises NotInSpanError (with the offending row as witness) if some row of
    `sub` is not contained in `ambient` — quotients of non-nested spans are
    a bug, not a number.
    """
    for r in sub.rows:
        if r not in ambient:
            raise NotInSpanError("subspace row escapes the ambient span", witness=r)
    return ambient.rank - sub.rank


class SpanSolver:
    """Incremental echelon structure with optional coordinate tracking.

    `add` returns True when the vector enlarged the span — the workhorse for
    greedy representative selection.  With track=True, `coords(v)` expresses
    v over the vectors that were added successfully.

    Invariant: rows are fully reduced (each pivot key occurs in exactly one
    row, with coefficient 1), and with tracking on, _combos[i] expresses
    _rows[i] exactly over self.added.
    """

    def __init__(self, space, track=False):
        self.space = space
        self.track = track
        self._rows = []
        self._pivots = {}    # pivot key -> row index
        self._combos = []
        self.added = []

    @property
    def rank(self):
        return len(self._rows)

    def _eliminate(self, v):
        """Return (remainder, combo) with remainder = v + sum combo[j]*added[j]."""
        combo = {}
        rem = v
        for key in [k for k in v.support() if k in self._pivots]:
            c = rem.coeff(key)
            if not c:
                continue
            i = self._pivots[key]
            rem = rem - c * self._rows[i]
            if self.track:
                for j, cj in self._combos[i].items():
                    s = combo.get(j, 0) - c * cj
                    if s:
                        combo[j] = s
                    else:
                        combo.pop(j, None)
        return rem, combo

    def residue(self, v):
        """The part of v outside the current span (canonical remainder)."""
        return self._eliminate(v)[0]

    def contains(self, v):
        return not self._eliminate(v)[0]

    def add(self, v):
        rem, combo = self._eliminate(v)
        if not rem:
            return False
        lead = rem.lead()
        c = rem.coeff(lead)
        rem = (1 / c) * rem
        if self.track:
            combo = {j: cj / c for j, cj in combo.items()}
            combo[len(self.added)] = 1 / c
        # keep older rows fully reduced against the new pivot
        for i, row in enumerate(self._rows):
            coef = row.coeff(lead)
            if coef:
                self._rows[i] = row - coef * rem
                if self.track:
                    ci = self._combos[i]
                    for j, cj in combo.items():
                        s = ci.get(j, 0) - coef * cj
                        if s:
                            ci[j] = s
                        else:
                            ci.pop(j, None)
        self._pivots[lead] = len(self._rows)
        self._rows.append(rem)
        self._combos.append(combo if self.track else None)
        self.added.append(v)
        return True

    def coords(self, v):
        """Coordinates of v over self.added, or None if v is outside the span."""
        if not self.track:
            raise RuntimeError("SpanSolver built without track=True")
        rem, combo = self._eliminate(v)
        if rem:
            return None
        out = [Fraction(0)] * len(self.added)
        for j, cj in combo.items():
            out[j] = -cj
        return out

    def to_row_basis(self, weight=None):
        sk = self.space.sort_key
        order = sorted(range(len(self._rows)), key=lambda i: sk(self._rows[i].lead()))
        return RowBasis(self.space, [self._rows[i] for i in order], weight=weight)


def solve_in_span(space, vectors, target):
    """Express target as a rational combination of `vectors`, or return None.

    Returns coefficients aligned with `vectors`; inputs that were linearly
    redundant get coefficient 0.
    """
    solver = SpanSolver(space, track=True)
    kept = []
    for i, v in enumerate(vectors):
        if solver.add(v):
            kept.append(i)
    inner = solver.coords(target)
    if inner is None:
        return None
    out = [Fraction(0)] * len(vectors)
    for slot, i in enumerate(kept):
        out[i] = inner[slot]
    return out


def nullspace(rows, n):
    """Solution basis of a homogeneous linear system over unknowns 0..n-1.

    `rows` is a list of sparse constraint dicts {unknown index: coefficient}.
    Returns one echelonized solution (sparse dict) per free unknown, in the
    natural unknown order — deterministic by construction.
    """
    pivots = {}  # unknown -> monic reduced constraint row
    for row in rows:
        row = {j: _as_fraction(c) for j, c in row.items() if c}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                c = row[lead]
                pivots[lead] = {j: v / c for j, v in row.items()}
                break
            c = row[lead]
            nxt = {}
            for j in set(row) | set(piv):
                val = row.get(j, Fraction(0)) - c * piv.get(j, Fraction(0))
                if val:
                    nxt[j] = val
            row = nxt
    free = [j for j in range(n) if j not in pivots]
    sols = []
    for f in free:
        sol = {f: Fraction(1)}
        for lead in sorted(pivots, reverse=True):
            row = pivots[lead]
            s = sum((row[j] * sol[j] for j in row if j != lead and j in sol), Fraction(0))
            if s:
                sol[lead] = -s
        sols.append(dict(sorted(sol.items())))
    return sols
