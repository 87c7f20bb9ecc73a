"""Fock spaces attached to orthogonal sums of rank-one even lattices.

A space is described by the diagonal Gram entries (d_1, ..., d_r), all even
and >= 2, together with a coset offset k_i/d_i per coordinate.  Zero offsets
give the algebra itself; nonzero offsets give its irreducible twisted-point
modules.  Basis keys pair a colored partition (creation operators a_i(-n))
with an integer lattice point, and weights are exact rationals:

    wt( a(-n_1)...a(-n_k) . e(mu) ) = sum n_j  +  sum_i mu_i^2 d_i / 2

with mu_i = m_i + k_i/d_i.  All pairings between lattice vectors here are
even integers, so the two-cocycle in the lattice operators can be taken
identically 1 and every mode index that appears is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .linalg import Element, row_reduce

__all__ = [
    "TruncationOverflow", "FockBasis", "Space", "vacuum", "basis_element",
    "strata", "stratum_basis", "enumerate_basis", "heisenberg_mode",
    "lattice_mode", "theta", "fixed_subspace", "conformal_vector", "transport",
]


class TruncationOverflow(Exception):
    """An operation needed a stratum above the space's cutoff.

    Nothing is ever silently dropped: any result component that would land
    beyond `space.cutoff` raises this instead, carrying the offending weight.
    """

    def __init__(self, space, weight):
        super().__init__(
            "needed stratum %s above cutoff %s" % (weight, space.cutoff))
        self.space = space
        self.weight = weight


class FockBasis(NamedTuple):
    """One basis monomial: creation parts and a lattice point.

    parts: tuple of (coordinate, level) pairs, level >= 1, canonically
           sorted largest level first (ties by coordinate).
    point: integer coordinates of the lattice point relative to the coset,
           one per rank.
    """

    parts: tuple
    point: tuple


def _canon_parts(parts):
    return tuple(sorted(parts, key=lambda p: (-p[1], p[0])))


def _as_cut(x):
    return None if x is None else Fraction(x)


@dataclass(frozen=True)
class Space:
    """Descriptor for one Fock space: lattice norms, coset, cutoff.

    `cutoff=None` means unbounded — operations never truncate, but basis
    enumeration then requires an explicit max_weight.  `heisenberg_only`
    restricts to the zero lattice point (the free-boson subalgebra).
    """

    norms: tuple
    coset: tuple = None
    heisenberg_only: bool = False
    cutoff: Fraction = None

    def __post_init__(self):
        norms = tuple(int(d) for d in self.norms)
        for d in norms:
            if d < 2 or d % 2:
                raise ValueError("lattice norms must be even and >= 2, got %s" % (d,))
        object.__setattr__(self, "norms", norms)
        coset = self.coset
        if coset is None:
            coset = (Fraction(0),) * len(norms)
        coset = tuple(Fraction(c) % 1 for c in coset)
        if len(coset) != len(norms):
            raise ValueError("coset length %d != rank %d" % (len(coset), len(norms)))
        for off, d in zip(coset, norms):
            if (off * d).denominator != 1:
                raise ValueError("offset %s is not in the dual of the norm-%d axis" % (off, d))
        if self.heisenberg_only and any(coset):
            raise ValueError("heisenberg_only spaces carry no coset")
        object.__setattr__(self, "coset", coset)
        object.__setattr__(self, "cutoff", _as_cut(self.cutoff))

    # -- structure ---------------------------------------------------------

    @property
    def rank(self):
        return len(self.norms)

    @property
    def is_module(self):
        return any(self.coset)

    def algebra(self):
        """The space acting on this one (drop the coset, keep everything else)."""
        if not self.is_module:
            return self
        return replace(self, coset=(Fraction(0),) * self.rank)

    def with_cutoff(self, cutoff):
        return replace(self, cutoff=_as_cut(cutoff))

    def unbounded(self):
        return self if self.cutoff is None else replace(self, cutoff=None)

    def core_key(self):
        """Identity of the space ignoring the cutoff (memo keys)."""
        return (self.norms, self.coset, self.heisenberg_only)

    # -- weights -----------------------------------------------------------

    def point_weight(self, point):
        return sum(((m + off) ** 2 * d for m, off, d in zip(point, self.coset, self.norms)),
                   Fraction(0)) / 2

    def weight_of(self, b):
        return self.point_weight(b.point) + sum(n for _, n in b.parts)

    def bottom_weight(self):
        """Least weight in the space (0 for the algebra)."""
        return sum((min(off ** 2, (1 - off) ** 2) * d for off, d in zip(self.coset, self.norms)),
                   Fraction(0)) / 2

    def sort_key(self, b):
        return (self.weight_of(b), b.point, b.parts)

    def label(self, b):
        bits = []
        i = 0
        parts = b.parts
        while i < len(parts):
            j = i
            while j < len(parts) and parts[j] == parts[i]:
                j += 1
            coord, level = parts[i]
            s = "a%d(-%d)" % (coord + 1, level)
            if j - i > 1:
                s += "^%d" % (j - i)
            bits.append(s)
            i = j
        if self.heisenberg_only:
            return "".join(bits) or "1"
        mu = ",".join(str(m + off) for m, off in zip(b.point, self.coset))
        tail = "e(%s)" % mu
        return "".join(bits) + "." + tail if bits else tail

    def check_weight(self, w):
        if self.cutoff is not None and w > self.cutoff:
            raise TruncationOverflow(self, w)


def transport(elem, space):
    """Re-root an element in another space with the same norms and coset."""
    if elem.space.core_key() != space.core_key():
        raise ValueError("transport only between cutoff-variants of one space")
    return Element(space, dict(elem.items()))


def vacuum(space):
    if space.is_module:
        raise ValueError("modules have no vacuum; use basis_element for bottom vectors")
    space.check_weight(Fraction(0))
    return Element.monomial(space, FockBasis((), (0,) * space.rank))


def basis_element(space, parts=(), point=None, coeff=1):
    """Element for a single monomial, validating coordinates and cutoff."""
    if point is None:
        point = (0,) * space.rank
    point = tuple(int(m) for m in point)
    if len(point) != space.rank:
        raise ValueError("point has wrong rank")
    if space.heisenberg_only and any(point):
        raise ValueError("nonzero lattice point in a heisenberg_only space")
    cp = []
    for i, n in parts:
        i, n = int(i), int(n)
        if not 0 <= i < space.rank:
            raise ValueError("coordinate %d out of range" % i)
        if n < 1:
            raise ValueError("creation level must be >= 1, got %d" % n)
        cp.append((i, n))
    b = FockBasis(_canon_parts(cp), point)
    space.check_weight(space.weight_of(b))
    return Element.monomial(space, b, coeff)


# -- enumeration ------------------------------------------------------------

def _points_within(space, budget):
    """Integer points with point_weight <= budget, in lex order."""
    out = []

    def axis_values(i, rem):
        d, off = space.norms[i], space.coset[i]
        vals = []
        m = 0
        while (m + off) ** 2 * d / 2 <= rem:
            vals.append(m)
            m += 1
        m = -1
        while (m + off) ** 2 * d / 2 <= rem:
            vals.append(m)
            m -= 1
        return sorted(vals)

    def rec(i, rem, acc):
        if i == space.rank:
            out.append(tuple(acc))
            return
        for m in axis_values(i, rem):
            w = (m + space.coset[i]) ** 2 * space.norms[i] / 2
            rec(i + 1, rem - w, acc + [m])

    rec(0, Fraction(budget), [])
    return sorted(out)


def _colored_partitions(total, rank, min_key=None):
    """Colored partitions of `total`: tuples of (coordinate, level) in
    canonical order (largest level first)."""
    if total == 0:
        yield ()
        return
    for n in range(total, 0, -1):
        for i in range(rank):
            key = (-n, i)
            if min_key is not None and key < min_key:
                continue
            for rest in _colored_partitions(total - n, rank, key):
                yield ((i, n),) + rest


@lru_cache(maxsize=None)
def stratum_basis(space, weight):
    """All basis monomials of exactly this weight, canonically sorted."""
    weight = Fraction(weight)
    if weight < 0:
        return ()
    if space.heisenberg_only:
        points = [(0,) * space.rank] if weight >= 0 else []
    else:
        points = _points_within(space, weight)
    out = []
    for pt in points:
        rem = weight - space.point_weight(pt)
        if rem < 0 or rem.denominator != 1:
            continue
        for parts in _colored_partitions(int(rem), space.rank):
            out.append(FockBasis(parts, pt))
    return tuple(sorted(out, key=space.sort_key))


def strata(space, max_weight=None):
    """The weights <= max_weight that carry basis vectors.

    Weights form bottom + {0, 1, 2, ...}: partitions supply every integer
    gap, and all point weights are congruent mod 1 (the pairing of any two
    coset points is an integer here).
    """
    if max_weight is None:
        max_weight = space.cutoff
    if max_weight is None:
        raise ValueError("unbounded space: pass max_weight explicitly")
    max_weight = Fraction(max_weight)
    w = space.bottom_weight()
    out = []
    while w <= max_weight:
        out.append(w)
        w += 1
    return out


def enumerate_basis(space, max_weight=None):
    """All basis monomials of weight <= max_weight (default: the cutoff)."""
    out = []
    for w in strata(space, max_weight):
        out.extend(stratum_basis(space, w))
    return out


# -- operators ---------------------------------------------------------------

def heisenberg_mode(i, n, elem):
    """Apply the coordinate-i Heisenberg mode a_i(n).

    n < 0 appends a creation part; n = 0 scales by the pairing with the
    lattice point; n > 0 contracts one matching part with coefficient
    n * d_i * multiplicity.
    """
    space = elem.space
    if not 0 <= i < space.rank:
        raise ValueError("coordinate %d out of range" % i)
    d = space.norms[i]
    out = {}
    for b, c in elem.items():
        if n < 0:
            space.check_weight(space.weight_of(b) - n)
            nb = FockBasis(_canon_parts(b.parts + ((i, -n),)), b.point)
            out[nb] = out.get(nb, 0) + c
        elif n == 0:
            eig = d * (b.point[i] + space.coset[i])
            if eig:
                out[b] = out.get(b, 0) + c * eig
        else:
            mult = b.parts.count((i, n))
            if mult:
                parts = list(b.parts)
                parts.remove((i, n))
                nb = FockBasis(tuple(parts), b.point)
                out[nb] = out.get(nb, 0) + c * n * d * mult
    return Element(space, out)


def _pairing_apply(space, beta, vec, level, create):
    """Apply beta(-level) (create=True) or beta(level) to a sparse dict."""
    out = {}
    for b, c in vec.items():
        for i, bi in enumerate(beta):
            if not bi:
                continue
            if create:
                nb = FockBasis(_canon_parts(b.parts + ((i, level),)), b.point)
                out[nb] = out.get(nb, 0) + c * bi
            else:
                mult = b.parts.count((i, level))
                if mult:
                    parts = list(b.parts)
                    parts.remove((i, level))
                    nb = FockBasis(tuple(parts), b.point)
                    out[nb] = out.get(nb, 0) + c * bi * level * space.norms[i] * mult
    return {k: v for k, v in out.items() if v}


def _merge(acc, vec, scale):
    for k, v in vec.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def lattice_mode(beta, n, elem):
    """Apply the n-th mode of the lattice operator attached to e^beta.

    beta is an integer coordinate tuple.  The vertex operator is the normally
    ordered product E^- E^+ e_beta z^{beta(0)}; expanding both exponential
    halves by the standard derivative recurrences keeps everything exact:

        b * T_b = - sum_{l=1..b} beta(l) T_{b-l}      (annihilation half)
        a * S_a = + sum_{l=1..a} beta(-l) S_{a-l}     (creation half)

    and the mode picks the single a = b - n - 1 - <beta, mu> per depth b.
    """
    space = elem.space
    beta = tuple(int(x) for x in beta)
    if len(beta) != space.rank:
        raise ValueError("beta has wrong rank")
    if not any(beta):
        return elem if n == -1 else Element.zero(space)
    if space.heisenberg_only:
        raise ValueError("lattice operators need lattice sectors")
    wb = sum((bi * bi * d for bi, d in zip(beta, space.norms)), Fraction(0)) / 2
    out = {}
    for b, c in elem.items():
        rw = wb + space.weight_of(b) - n - 1
        space.check_weight(rw)
        ip = sum((bi * d * (m + off) for bi, d, m, off
                  in zip(beta, space.norms, b.point, space.coset)), Fraction(0))
        if ip.denominator != 1:
            raise ValueError("non-integral pairing; point outside the dual lattice")
        ip = int(ip)
        shifted = FockBasis(b.parts, tuple(m + bi for m, bi in zip(b.point, beta)))
        depth_max = sum(lv for _, lv in b.parts)
        T = [{shifted: c}]
        for depth in range(1, depth_max + 1):
            acc = {}
            for l in range(1, depth + 1):
                _merge(acc, _pairing_apply(space, beta, T[depth - l], l, create=False),
                       Fraction(-1, depth))
            T.append(acc)
        for depth, vec in enumerate(T):
            if not vec:
                continue
            a = depth - n - 1 - ip
            if a < 0:
                continue
            S = [vec]
            for k in range(1, a + 1):
                acc = {}
                for l in range(1, k + 1):
                    _merge(acc, _pairing_apply(space, beta, S[k - l], l, create=True),
                           Fraction(1, k))
                S.append(acc)
            _merge(out, S[a], 1)
    return Element(space, out)


def theta(elem):
    """The lift of the lattice (-1)-involution: point negation times
    (-1)^(number of creation parts)."""
    space = elem.space
    if space.is_module:
        raise ValueError("the involution is only defined on the algebra itself")
    out = {}
    for b, c in elem.items():
        nb = FockBasis(b.parts, tuple(-m for m in b.point))
        sign = -1 if len(b.parts) % 2 else 1
        out[nb] = out.get(nb, 0) + sign * c
    return Element(space, out)


def fixed_subspace(space, sign, weight):
    """RowBasis of the (+1 or -1)-eigenspace of the involution in one stratum."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    vecs = []
    for b in stratum_basis(space, Fraction(weight)):
        neg = tuple(-m for m in b.point)
        v = Element.monomial(space, b)
        if neg == b.point:
            parity = -1 if len(b.parts) % 2 else 1
            if parity == sign:
                vecs.append(v)
        elif b.point > neg:
            vecs.append(v + sign * theta(v))
    return row_reduce(space, vecs, weight=Fraction(weight))


def conformal_vector(space):
    """The standard quadratic conformal vector, sum_i a_i(-1)^2/(2 d_i) |0>.

    Its central charge equals the rank; `modes.virasoro_check` tests the
    bracket relations directly.
    """
    alg = space.algebra()
    alg.check_weight(Fraction(2))
    terms = {}
    for i, d in enumerate(alg.norms):
        b = FockBasis(((i, 1), (i, 1)), (0,) * alg.rank)
        terms[b] = Fraction(1, 2 * d)
    return Element(alg, terms)
