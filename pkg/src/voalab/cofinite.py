"""C_n subspaces, quotient tables, generator selection, and tensor checks.

The central objects are the spans C_n = {v_{-n} w} inside each weight
stratum, their quotient dimensions, and a finite generator set X: one
canonical homogeneous representative per surviving quotient class of C_2.
From X the rewriting parameters follow: r = max weight over X, N = r + 1
(every stratum >= N lies inside C_2 once the table has a zero tail), and
the repetition bound Q = 2N - 2.

Everything is computed stratum by stratum over exact rationals.  A table
"stabilizes" when every stratum in [N0, max] has quotient dimension zero
with max - N0 >= 3; this is evidence, not proof, of cofiniteness, and the
reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (Element, RowBasis, SpanSolver, row_reduce, quotient_dim,
                     NotInSpanError)
from .fock import (Space, FockBasis, TruncationOverflow, stratum_basis, strata,
                   fixed_subspace, vacuum, transport, _canon_parts)
from .modes import mode_action, virasoro_mode

__all__ = [
    "QuotientTable", "RewriteParams", "C1Data", "TensorReport",
    "cn_subspace", "quotient_table", "choose_X", "c1_reps",
    "v_words", "apply_word_to_vacuum", "v_normal_form", "v_span_check",
    "tensor_space", "embed_pair", "tensor_c2_check",
]

_CN_CACHE = {}

STABLE_MARGIN = 3


def _stratum_vectors(space, weight, sign):
    if sign is None:
        return [Element.monomial(space, b) for b in stratum_basis(space, weight)]
    return list(fixed_subspace(space, sign, weight).rows)


def cn_subspace(space, n, d, *, sign=None):
    """Echelon basis of C_n ∩ (stratum d): the span of v_{-n} w.

    v runs over homogeneous algebra vectors of weight >= 1 (the vacuum drops
    out since 1_{-n} = 0 for n >= 2), w over the stratum that makes the
    product land in weight d.  With `sign`, v is taken from the involution's
    +1 eigenspace and w from the requested eigenspace, computing C_n of the
    fixed subalgebra or of its (-1)-eigenspace module.
    """
    n = int(n)
    if n < 2:
        raise ValueError("cn_subspace needs n >= 2; C_1 has its own shape, see c1_reps")
    d = Fraction(d)
    if sign is not None and space.is_module:
        raise ValueError("sign selects involution eigenspaces of the algebra only")
    if space.cutoff is not None and d > space.cutoff:
        raise TruncationOverflow(space, d)
    key = (space.core_key(), n, d, sign)
    hit = _CN_CACHE.get(key)
    if hit is not None:
        if hit.space == space:
            return hit
        # cached under another cutoff variant; re-root the rows here so
        # callers can mix them with vectors of the requested space
        return RowBasis(space, [transport(r, space) for r in hit.rows], hit.weight)
    alg = space.algebra()
    bottom = space.bottom_weight()
    prods = []
    wv = Fraction(1)
    while wv + (n - 1) + bottom <= d:
        ww = d - wv - (n - 1)
        if ww >= bottom and (ww - bottom).denominator == 1:
            for v in _stratum_vectors(alg, wv, None if sign is None else 1):
                for w in _stratum_vectors(space, ww, sign):
                    prods.append(mode_action(v, -n, w))
        wv += 1
    out = row_reduce(space, prods, weight=d)
    _CN_CACHE[key] = out
    return out


@dataclass
class QuotientTable:
    """Per-stratum dimensions of space/C_n with a stabilization verdict."""

    space: Space
    n: int
    sign: int
    max_stratum: Fraction
    rows: list  # (weight, ambient dim, subspace dim, quotient dim)
    stabilized: bool
    stable_from: Fraction

    def quotient_dims(self):
        return [q for (_, _, _, q) in self.rows]

    def quotient_at(self, d):
        d = Fraction(d)
        for w, _, _, q in self.rows:
            if w == d:
                return q
        if self.stabilized and d > self.max_stratum:
            return 0
        raise KeyError("stratum %s not tabulated" % (d,))

    def total_quotient(self):
        return sum(self.quotient_dims())

    def lines(self):
        out = ["C_%d quotient table (sign=%s)" % (self.n, _sign_name(self.sign)),
               "stratum | ambient | C_n | quotient"]
        for w, a, s, q in self.rows:
            out.append("%7s | %7d | %3d | %d" % (w, a, s, q))
        if self.stabilized:
            out.append("stabilized: yes (zero tail from stratum %s; evidence, not proof)"
                       % (self.stable_from,))
        else:
            out.append("stabilized: no (within stratum <= %s)" % (self.max_stratum,))
        return out


def _sign_name(sign):
    return {None: "none", 1: "+", -1: "-"}[sign]


def _stable_from(rows):
    """First stratum of the all-zero quotient tail, or None."""
    tail = None
    for w, _, _, q in rows:
        if q != 0:
            tail = None
        elif tail is None:
            tail = w
    return tail


def quotient_table(space, n, max_stratum=None, *, sign=None):
    """Tabulate stratum, ambient dim, dim C_n, quotient dim, up to max_stratum.

    Containment of the C_n rows in the ambient stratum (or eigenspace) is
    verified exactly; stabilization means an all-zero quotient tail of margin
    >= 3 strata below max_stratum.
    """
    if max_stratum is None:
        max_stratum = space.cutoff
    if max_stratum is None:
        raise ValueError("unbounded space: pass max_stratum")
    max_stratum = Fraction(max_stratum)
    rows = []
    for d in strata(space, max_stratum):
        sub = cn_subspace(space, n, d, sign=sign)
        if sign is None:
            ambient_rank = len(stratum_basis(space, d))
            quot = ambient_rank - sub.rank
            if quot < 0:
                raise NotInSpanError("C_n rank exceeds the stratum dimension")
        else:
            ambient = fixed_subspace(space, sign, d)
            ambient_rank = ambient.rank
            quot = quotient_dim(ambient, sub)
        rows.append((d, ambient_rank, sub.rank, quot))
    tail = _stable_from(rows)
    stabilized = tail is not None and max_stratum - tail >= STABLE_MARGIN
    return QuotientTable(space, n, sign, max_stratum, rows, stabilized,
                         tail if stabilized else None)


@dataclass
class RewriteParams:
    """The generator data driving the spanning-set rewriter.

    xbar holds one homogeneous representative per C_2-quotient class
    (including the vacuum class); x = xbar minus the weight-0 class.  The
    derived integers: r = max weight over x, N = r + 1, Q = 2N - 2.
    """

    space: Space
    sign: int
    xbar: list
    x: list
    weights: list
    r: int
    N: int
    Q: int
    table: QuotientTable
    _caches: dict = field(default_factory=dict, repr=False, compare=False)

    def describe(self):
        out = ["generators (r=%d, N=%d, Q=%d):" % (self.r, self.N, self.Q)]
        for v, w in zip(self.x, self.weights):
            out.append("  wt %d: %r" % (w, v))
        return out


def choose_X(space, max_stratum=None, *, sign=None, table=None):
    """Pick canonical C_2-quotient representatives and the (r, N, Q) data.

    Refuses to run on a non-stabilized table: without a zero tail the set
    X cannot be certified complete.  Representatives are chosen greedily in
    canonical basis order against the C_2 span of each stratum, so reruns
    are reproducible.
    """
    if space.is_module:
        raise ValueError("generators come from the algebra, not a module")
    if table is None:
        table = quotient_table(space, 2, max_stratum, sign=sign)
    if not table.stabilized:
        raise ValueError(
            "C_2 table not stabilized within stratum <= %s; cannot certify X"
            % (table.max_stratum,))
    xbar = []
    for d, _, _, quot in table.rows:
        if quot == 0:
            continue
        solver = SpanSolver(space)
        for row in cn_subspace(space, 2, d, sign=sign).rows:
            solver.add(row)
        picked = 0
        for cand in _stratum_vectors(space, d, sign):
            if picked == quot:
                break
            if solver.add(cand):
                xbar.append(cand)
                picked += 1
        if picked != quot:
            raise RuntimeError("stratum %s: found %d of %d representatives" % (d, picked, quot))
    x = [v for v in xbar if v.weight() >= 1]
    weights = [int(v.weight()) for v in x]
    if not x:
        raise ValueError("empty generator set (space is its own C_2 up to weight 0?)")
    r = max(weights)
    return RewriteParams(space, sign, xbar, x, weights, r, r + 1, 2 * (r + 1) - 2, table)


@dataclass
class C1Data:
    """C_1 quotient data: table, representatives Y, and the C_2 ⊆ C_1 check."""

    space: Space
    table: QuotientTable
    y: list


def c1_reps(space, max_stratum=None):
    """Homogeneous representatives Y of V/C_1, with C_1 = span{u_{-1}v, L(-1)u}
    over u, v of weight >= 1.  Verifies C_2 ⊆ C_1 in every tabulated stratum.
    """
    if space.is_module:
        raise ValueError("C_1 representatives are taken in the algebra")
    if max_stratum is None:
        max_stratum = space.cutoff
    if max_stratum is None:
        raise ValueError("unbounded space: pass max_stratum")
    max_stratum = Fraction(max_stratum)
    rows = []
    y = []
    for d in strata(space, max_stratum):
        vecs = []
        wv = Fraction(1)
        while wv + 1 <= d:
            for v in _stratum_vectors(space, wv, None):
                for w in _stratum_vectors(space, d - wv, None):
                    vecs.append(mode_action(v, -1, w))
            wv += 1
        if d >= 2:
            for u in _stratum_vectors(space, d - 1, None):
                vecs.append(virasoro_mode(-1, u))
        sub = row_reduce(space, vecs, weight=d)
        if d >= 2:
            for r2 in cn_subspace(space, 2, d).rows:
                if r2 not in sub:
                    raise NotInSpanError("C_2 row outside C_1 at stratum %s" % d,
                                         witness=r2)
        ambient_rank = len(stratum_basis(space, d))
        rows.append((d, ambient_rank, sub.rank, ambient_rank - sub.rank))
        solver = SpanSolver(space)
        for r1 in sub.rows:
            solver.add(r1)
        for cand in _stratum_vectors(space, d, None):
            if solver.add(cand):
                y.append(cand)
    tail = _stable_from(rows)
    stabilized = tail is not None and max_stratum - tail >= STABLE_MARGIN
    table = QuotientTable(space, 1, None, max_stratum, rows, stabilized,
                          tail if stabilized else None)
    return C1Data(space, table, y)


# -- the algebra-side normal form --------------------------------------------

def v_words(params, d):
    """Words x^1_{-n_1}...x^k_{-n_k} with n_1 > n_2 > ... > n_k >= 1 over X
    whose operator weight (= weight on the vacuum) is exactly d."""
    d = int(d)
    out = []
    ws = params.weights

    def rec(max_n, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for lvl in range(min(max_n, remaining), 0, -1):
            for xi, wx in enumerate(ws):
                cost = wx + lvl - 1
                if cost <= remaining:
                    rec(lvl - 1, remaining - cost, acc + [(xi, -lvl)])

    rec(d, d, [])
    return out


def _x_unbounded(params):
    cache = params._caches
    if "xu" not in cache:
        u = params.space.unbounded()
        cache["xu"] = [transport(v, u) for v in params.x]
    return cache["xu"]


def apply_word_to_vacuum(params, word):
    """Evaluate a creation word on the vacuum, rightmost letter first."""
    xu = _x_unbounded(params)
    acc = vacuum(params.space.unbounded())
    for xi, m in reversed(word):
        acc = mode_action(xu[xi], m, acc)
        if not acc:
            break
    return acc


def _vnf_entry(params, d):
    cache = params._caches.setdefault("vnf", {})
    entry = cache.get(d)
    if entry is None:
        words = v_words(params, d)
        solver = SpanSolver(params.space.unbounded(), track=True)
        kept = []
        for i, wd in enumerate(words):
            val = apply_word_to_vacuum(params, wd)
            if val and solver.add(val):
                kept.append(i)
        entry = (words, kept, solver)
        cache[d] = entry
    return entry


def v_normal_form(elem, params):
    """Expand an algebra element over normal creation words on the vacuum.

    Returns [(coeff, word)] with elem = sum coeff * word(vacuum); raises
    NotInSpanError if the element escapes the span (it never should, by the
    algebra-side spanning theorem — treat that as a generator-set bug).
    """
    out = []
    for wgt, comp in elem.components().items():
        if wgt.denominator != 1 or wgt < 0:
            raise ValueError("algebra weights are nonnegative integers, got %s" % wgt)
        words, kept, solver = _vnf_entry(params, int(wgt))
        coords = solver.coords(transport(comp, params.space.unbounded()))
        if coords is None:
            raise NotInSpanError("element escapes the normal-word span at weight %s" % wgt,
                                 witness=comp)
        for slot, c in enumerate(coords):
            if c:
                out.append((c, words[kept[slot]]))
    return out


def v_span_check(params, max_stratum):
    """Sanity check of the algebra spanning set: per stratum d <= max_stratum,
    do the normal words span everything?  Returns (d, ambient, rank, ok) rows."""
    out = []
    for d in range(int(max_stratum) + 1):
        _, kept, solver = _vnf_entry(params, d)
        amb = len(stratum_basis(params.space, Fraction(d)))
        if params.sign is not None:
            amb = fixed_subspace(params.space, params.sign, Fraction(d)).rank
        out.append((d, amb, solver.rank, solver.rank == amb))
    return out


# -- tensor products ----------------------------------------------------------

def tensor_space(space1, space2, cutoff=None):
    """The orthogonal-sum space realizing the tensor of two lattice algebras."""
    for s in (space1, space2):
        if s.is_module:
            raise ValueError("tensor factors must be algebras")
        if s.heisenberg_only:
            raise ValueError("tensor factors must carry their lattices")
    return Space(norms=space1.norms + space2.norms, cutoff=cutoff)


def embed_pair(e1, e2, big):
    """The image of e1 ⊗ e2 under coordinate concatenation."""
    r1 = e1.space.rank
    out = {}
    for b1, c1 in e1.items():
        for b2, c2 in e2.items():
            parts = b1.parts + tuple((i + r1, n) for i, n in b2.parts)
            b = FockBasis(_canon_parts(parts), b1.point + b2.point)
            out[b] = out.get(b, 0) + c1 * c2
    return Element(big, out)


@dataclass
class TensorReport:
    space1: Space
    space2: Space
    max_stratum: Fraction
    rows: list  # (stratum, ambient, c2 rank, spanning ok, quotient-bound ok)
    containment_checked: int
    containment_ok: bool

    @property
    def ok(self):
        return self.containment_ok and all(s and b for (_, _, _, s, b) in self.rows)

    def lines(self):
        out = ["tensor C_2 decomposition check up to stratum %s" % self.max_stratum,
               "stratum | ambient | C_2 | spans | bound"]
        for d, a, c, s, b in self.rows:
            out.append("%7s | %7d | %3d | %5s | %s"
                       % (d, a, c, "yes" if s else "NO", "yes" if b else "NO"))
        out.append("containment checks: %d, %s"
                   % (self.containment_checked, "all passed" if self.containment_ok else "FAILED"))
        return out


def tensor_c2_check(space1, space2, max_stratum=5, factor_depth=None):
    """Verify the stratum-wise tensor C_2 decomposition.

    Three facts per stratum d <= max_stratum of the combined space:
    (1) containment: C_2(V1) ⊗ V2 and V1 ⊗ C_2(V2) land inside C_2(V1⊗V2);
    (2) spanning: C_2(V1⊗V2) + W1⊗W2 is the whole stratum, where Wi is the
        span of factor i's chosen representatives (vacuum class included);
    (3) the quotient dimension is at most the convolution of the factors'.

    Factor generator sets need stabilized tables, computed to `factor_depth`
    (default max_stratum + 1; raise it if a factor refuses to stabilize).
    """
    ms = Fraction(max_stratum)
    fd = Fraction(factor_depth) if factor_depth is not None else ms + 1
    s1 = space1.with_cutoff(max(fd, space1.cutoff or 0))
    s2 = space2.with_cutoff(max(fd, space2.cutoff or 0))
    p1 = choose_X(s1, fd)
    p2 = choose_X(s2, fd)
    big = tensor_space(s1, s2, cutoff=ms)
    q1 = dict((w, q) for w, _, _, q in p1.table.rows)
    q2 = dict((w, q) for w, _, _, q in p2.table.rows)
    rows = []
    checked = 0
    contain_ok = True
    for d in strata(big, ms):
        amb = len(stratum_basis(big, d))
        c2 = cn_subspace(big, 2, d)
        d1 = Fraction(0)
        while d1 <= d:
            for r1 in cn_subspace(s1, 2, d1).rows:
                for b2 in stratum_basis(s2, d - d1):
                    v = embed_pair(r1, Element.monomial(s2, b2), big)
                    checked += 1
                    if v not in c2:
                        contain_ok = False
            for r2 in cn_subspace(s2, 2, d1).rows:
                for b1 in stratum_basis(s1, d - d1):
                    v = embed_pair(Element.monomial(s1, b1), r2, big)
                    checked += 1
                    if v not in c2:
                        contain_ok = False
            d1 += 1
        solver = SpanSolver(big)
        for row in c2.rows:
            solver.add(row)
        for w1 in p1.xbar:
            for w2 in p2.xbar:
                if w1.weight() + w2.weight() == d:
                    solver.add(embed_pair(w1, w2, big))
        span_ok = solver.rank == amb
        bound = sum(q1.get(k, 0) * q2.get(d - k, 0) for k in q1)
        rows.append((d, amb, c2.rank, span_ok, (amb - c2.rank) <= bound))
    return TensorReport(space1, space2, ms, rows, checked, contain_ok)
