"""Mode actions of composite algebra vectors on module vectors.

`mode_action(u, n, w)` evaluates u_n w for any algebra element u, reducing to
the primitive Heisenberg/lattice operators by peeling one creation part at a
time with the iterate expansion

    (a(-m) x)_n = sum_t (-1)^t  C(-m,t) a(-m-t) (x_{n+t} w)
                - sum_t (-1)^(t-m) C(-m,t) x_{n-m-t} (a(t) w)

whose sums are finite here: the first is cut off by the weight law (a module
vector below the bottom stratum is zero), the second because a(t) w vanishes
for all but finitely many t >= 0.  Every intermediate term lives at or below
the weight of the final result, so a single upfront cutoff check suffices and
results can be cached independently of the cutoff.

The memo is a plain module-level dict keyed by (space core, u-monomial, n,
w-monomial); `set_memoization(False)` disables it (results are identical,
just slower), and `clear_memo()` empties it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .linalg import Element, SpaceMismatchError
from .fock import (FockBasis, conformal_vector, heisenberg_mode, lattice_mode,
                   stratum_basis, strata, _merge)

__all__ = [
    "mode_action", "set_memoization", "clear_memo", "integer_binomial",
    "virasoro_mode", "virasoro_check", "verify_commutator", "verify_iterate",
    "IdentityCheck", "VirasoroReport",
]

_MEMO = {}
_memo_on = True


def set_memoization(flag):
    """Enable/disable the mode-action cache; returns the previous setting."""
    global _memo_on
    prev = _memo_on
    _memo_on = bool(flag)
    return prev


def clear_memo():
    _MEMO.clear()


def integer_binomial(a, k):
    """C(a, k) for arbitrary integer a and k >= 0 (exact integer)."""
    if k < 0:
        raise ValueError("lower index must be >= 0")
    num = 1
    for j in range(k):
        num *= a - j
    return num // factorial(k)


def _basis_mode(ws, bu, n, bw):
    """u_n applied to one module monomial, both given as FockBasis keys.

    `ws` must be an unbounded module space; returns a plain terms dict that
    callers must not mutate.
    """
    key = (ws.core_key(), bu, n, bw)
    if _memo_on:
        hit = _MEMO.get(key)
        if hit is not None:
            return hit
    alg = ws.algebra()
    if not bu.parts:
        res = dict(lattice_mode(bu.point, n, Element.monomial(ws, bw)).items())
    else:
        i, m = bu.parts[0]
        rest = FockBasis(bu.parts[1:], bu.point)
        wt_rest = alg.weight_of(rest)
        bottom = ws.bottom_weight()
        acc = {}
        tmax = wt_rest + ws.weight_of(bw) - n - 1 - bottom
        t = 0
        while t <= tmax:
            inner = _basis_mode(ws, rest, n + t, bw)
            if inner:
                c = (1 if t % 2 == 0 else -1) * integer_binomial(-m, t)
                _merge(acc, dict(heisenberg_mode(i, -(m + t), Element(ws, inner)).items()), c)
            t += 1
        for t in sorted({0} | {lv for j, lv in bw.parts if j == i}):
            hv = heisenberg_mode(i, t, Element.monomial(ws, bw))
            if not hv:
                continue
            c = -(1 if (t - m) % 2 == 0 else -1) * integer_binomial(-m, t)
            for bb, cb in hv.items():
                inner = _basis_mode(ws, rest, n - m - t, bb)
                _merge(acc, inner, c * cb)
        res = acc
    if _memo_on:
        _MEMO[key] = res
    return res


def mode_action(u, n, w):
    """u_n w, for u in the algebra (or its free-boson part) acting on w.

    Raises TruncationOverflow if any result component would exceed the
    cutoff of w's space; intermediate terms never exceed the result weight,
    so there are no spurious overflows.
    """
    ws = w.space
    alg = ws.algebra()
    if u.space.core_key() != alg.core_key():
        raise SpaceMismatchError("u must live in the algebra acting on w's space")
    n = int(n)
    wsu = ws.unbounded()
    algu = wsu.algebra()
    bottom = ws.bottom_weight()
    acc = {}
    for bu, cu in u.items():
        wu = algu.weight_of(bu)
        for bw, cw in w.items():
            rw = wu + ws.weight_of(bw) - n - 1
            if rw < bottom:
                continue
            ws.check_weight(rw)
            res = _basis_mode(wsu, bu, n, bw)
            if res:
                _merge(acc, res, cu * cw)
    return Element(ws, acc)


def virasoro_mode(k, v):
    """L(k) v via the conformal vector of v's space."""
    return mode_action(conformal_vector(v.space.unbounded()), k + 1, v)


@dataclass
class IdentityCheck:
    ok: bool
    lhs: Element
    rhs: Element
    terms_used: int

    def __bool__(self):
        return self.ok


def verify_commutator(u, v, k, q, w):
    """Check [u_k, v_q] w == sum_i C(k,i) (u_i v)_{k+q-i} w, exactly.

    The sum stops at i = wt(u) + wt(v) - 1 since u_i v vanishes above that
    (its weight would be negative).
    """
    alg = u.space.unbounded()
    lhs = mode_action(u, k, mode_action(v, q, w)) - mode_action(v, q, mode_action(u, k, w))
    rhs = Element.zero(w.space)
    used = 0
    imax = int(u.weight() + v.weight() - 1)
    for i in range(0, imax + 1):
        c = integer_binomial(k, i)
        if not c:
            continue
        uv = mode_action(u, i, _in_space(v, alg))
        if not uv:
            continue
        rhs = rhs + c * mode_action(_in_space(uv, u.space), k + q - i, w)
        used += 1
    return IdentityCheck(lhs == rhs, lhs, rhs, used)


def verify_iterate(u, v, r, q, w):
    """Check (u_{-r} v)_q w against its expansion into compositions of modes.

        (u_{-r}v)_q = sum_t (-1)^t C(-r,t) u_{-r-t} v_{q+t}
                    - sum_t (-1)^(t-r) C(-r,t) v_{q-r-t} u_t

    Both sums are finite on a fixed w by the weight law.
    """
    alg = u.space.unbounded()
    bottom = w.space.bottom_weight()
    uv = mode_action(u, -r, _in_space(v, alg))
    lhs = mode_action(_in_space(uv, u.space), q, w)
    rhs = Element.zero(w.space)
    used = 0
    wtu, wtv, wtw = u.weight(), v.weight(), w.max_weight()
    t = 0
    while t <= wtv + wtw - q - 1 - bottom:
        c = (1 if t % 2 == 0 else -1) * integer_binomial(-r, t)
        inner = mode_action(v, q + t, w)
        if c and inner:
            rhs = rhs + c * mode_action(u, -r - t, inner)
            used += 1
        t += 1
    t = 0
    while t <= wtu + wtw - 1 - bottom:
        c = -(1 if (t - r) % 2 == 0 else -1) * integer_binomial(-r, t)
        inner = mode_action(u, t, w)
        if c and inner:
            rhs = rhs + c * mode_action(v, q - r - t, inner)
            used += 1
        t += 1
    return IdentityCheck(lhs == rhs, lhs, rhs, used)


def _in_space(elem, space):
    if elem.space == space:
        return elem
    return Element(space, dict(elem.items()))


@dataclass
class VirasoroReport:
    central_charge: Fraction
    mode_bound: int
    max_stratum: Fraction
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok


def virasoro_check(space, mode_bound=3, max_stratum=3):
    """Verify [L(m), L(n)] = (m-n) L(m+n) + (m^3-m)/12 delta c on basis vectors.

    Runs over all |m|, |n| <= mode_bound and every basis monomial of weight
    <= max_stratum, with central charge c = rank.  Exact equality; collects
    any failing (m, n, monomial) triples.
    """
    ws = space.unbounded()
    c = Fraction(ws.rank)
    failures = []
    checked = 0
    for wgt in strata(space, max_stratum):
        for b in stratum_basis(ws, wgt):
            v = Element.monomial(ws, b)
            for m in range(-mode_bound, mode_bound + 1):
                for n in range(m, mode_bound + 1):
                    lhs = (virasoro_mode(m, virasoro_mode(n, v))
                           - virasoro_mode(n, virasoro_mode(m, v)))
                    rhs = (m - n) * virasoro_mode(m + n, v)
                    if m + n == 0:
                        rhs = rhs + (Fraction(m ** 3 - m, 12) * c) * v
                    checked += 1
                    if lhs != rhs:
                        failures.append((m, n, b))
    return VirasoroReport(c, mode_bound, Fraction(max_stratum), checked, failures)
