"""Rewrite operator words over a finite generator set into spanning normal form.

A word is a tuple of letters (i, m): generator x_i applied at mode m, acting
on a fixed cyclic target w right-to-left.  The rewriter turns an arbitrary
word into a combination of *normal* words:

  * modes weakly increase left to right and stay below L, the annihilation
    threshold of the target;
  * creation modes are pairwise distinct;
  * no mode value v >= 0 occurs Q times or more.

Three identities drive it, each replacing a local pattern by words that are
strictly smaller in the measure (sum of generator weights, length, -sum of
squared modes, inversion count), so termination is a theorem and the code
asserts the decrease at every emitted word:

  swap        x_m y_{m'} -> y_{m'} x_m + sum_i C(m,i) (x_i y)_{m+m'-i}
  spread      x_{-b} y_{-b} -> (x_{-1}y)_{-2b+1} - (other diagonal terms)
  repetition  a length-Q run at one mode v >= 0 equals a residue term minus
              every other term of the iterate expansion of its mode -1 lift

Products like (x_i y)_t re-enter as words via two steps: the algebra element
x_i y is expanded over normal creation words on the vacuum (v_normal_form),
and each such word sigma is unfolded back into operator words on the target
by the iterate expansion (unfold_iterate).  Everything is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .linalg import Element, NotInSpanError
from .fock import Space, stratum_basis, strata, transport
from .modes import mode_action, integer_binomial
from .cofinite import RewriteParams, v_normal_form, apply_word_to_vacuum

__all__ = ["NormalFormCertificate", "NormalizeResult", "LWVReport",
           "apply_word", "word_operator_weight", "word_measure", "compute_L",
           "unfold_iterate", "normalize", "repetition_break",
           "lowest_weight_bound_B", "annihilator_monomials", "find_omega"]


def word_operator_weight(params, word):
    """Sum of wt(x_i) - m - 1 over the letters: how far the word shifts weights."""
    return sum(params.weights[i] - m - 1 for i, m in word)


def word_measure(params, word):
    """The termination measure; every rewrite step strictly decreases it."""
    gw = sum(params.weights[i] for i, _ in word)
    sq = sum(m * m for _, m in word)
    inv = 0
    for p in range(len(word)):
        for q in range(p + 1, len(word)):
            if word[p][1] > word[q][1]:
                inv += 1
    return (gw, len(word), -sq, inv)


def _xu(params):
    cache = params._caches
    if "xu" not in cache:
        u = params.space.unbounded()
        cache["xu"] = [transport(v, u) for v in params.x]
    return cache["xu"]


def apply_word(params, word, target):
    """Evaluate the word on the target, rightmost letter first."""
    xu = _xu(params)
    acc = target
    for i, m in reversed(word):
        if not acc:
            break
        acc = mode_action(xu[i], m, acc)
    return acc


def compute_L(params, target):
    """Smallest L >= 0 with x_m target = 0 for every generator and m >= L."""
    if not target:
        raise ValueError("L is defined for nonzero targets")
    xu = _xu(params)
    bottom = target.space.bottom_weight()
    top = target.max_weight()
    L = 0
    for x in xu:
        bound = x.weight() + top - 1 - bottom
        if bound.denominator != 1:
            bound = Fraction(int(bound))  # only integer modes matter
        L = max(L, int(bound) + 1)
    while L > 0 and all(not mode_action(x, L - 1, target) for x in xu):
        L -= 1
    return L


# -- the iterate expansion ----------------------------------------------------

def unfold_iterate(params, sigma, t, target):
    """Expand (sigma(vacuum))_t acting on target into operator words.

    sigma is a creation word over the generators (all modes negative).  The
    return value is [(coeff, word)] with word still to be applied to target;
    the recursion prunes branches whose evaluation is forced to vanish, so
    both infinite sums of the iterate identity truncate correctly.
    """
    if not target:
        return []
    if not sigma:
        return [(Fraction(1), ())] if t == -1 else []
    (xi, mode) = sigma[0]
    if mode >= 0:
        raise ValueError("sigma must be a creation word")
    n = -mode
    rest = sigma[1:]
    wt_rest = word_operator_weight(params, rest)
    bottom = target.space.bottom_weight()
    top = target.max_weight()
    wx = params.weights[xi]
    out = []
    # creation branch: x_{-n-i} stays on the left, the rest acts at t+i
    bound1 = wt_rest - t - 1 + top - bottom
    i = 0
    while i <= bound1:
        c = (-1) ** i * integer_binomial(-n, i)
        if c:
            for cc, w in unfold_iterate(params, rest, t + i, target):
                out.append((c * cc, ((xi, -n - i),) + w))
        i += 1
    # annihilation branch: x_i moves to the right, onto the target
    xu = _xu(params)
    bound2 = wx - 1 + top - bottom
    i = 0
    while i <= bound2:
        c = -(1 if (i - n) % 2 == 0 else -1) * integer_binomial(-n, i)
        if c:
            hit = mode_action(xu[xi], i, target)
            if hit:
                for cc, w in unfold_iterate(params, rest, t - n - i, hit):
                    out.append((c * cc, w + ((xi, i),)))
        i += 1
    return out


def _sigma_terms(params, elem, t, target):
    """Words for (elem)_t target, elem expanded over normal creation words."""
    out = []
    if not elem:
        return out
    for c_sigma, sigma in v_normal_form(elem, params):
        for c, w in unfold_iterate(params, sigma, t, target):
            out.append((c_sigma * c, w))
    return out


# -- the three local rules ----------------------------------------------------

def _swap_terms(params, x, m, y, mp, sv):
    """x_m y_{m'} = y_{m'} x_m + sum_i C(m,i) (x_i y)_{m+m'-i}, i >= 0."""
    xu = _xu(params)
    out = [(Fraction(1), ((y, mp), (x, m)))]
    top = params.weights[x] + params.weights[y] - 1
    for i in range(0, top + 1):
        c = integer_binomial(m, i)
        if not c:
            continue
        prod = mode_action(xu[x], i, xu[y])
        if prod:
            for cc, w in _sigma_terms(params, prod, m + mp - i, sv):
                out.append((c * cc, w))
    return out


def _spread_terms(params, x, y, b, sv):
    """Split x_{-b} y_{-b} via the mode -2b+1 iterate of x_{-1}y.

    The identity (x_{-1}y)_{-2b+1} = sum_i x_{-1-i} y_{-2b+1+i} + y_{-2b-i} x_i
    contains the pair at i = b-1; solve for it.  Every correction keeps the
    mode sum -2b but strictly raises the squared-mode sum.
    """
    xu = _xu(params)
    out = []
    prod = mode_action(xu[x], -1, xu[y])
    for c, w in _sigma_terms(params, prod, -2 * b + 1, sv):
        out.append((c, w))
    bottom = sv.space.bottom_weight()
    top = sv.max_weight()
    bound1 = floor(params.weights[y] + 2 * b - 2 + top - bottom)
    for i in range(0, bound1 + 1):
        if i == b - 1:
            continue
        out.append((Fraction(-1), ((x, -1 - i), (y, -2 * b + 1 + i))))
    bound2 = floor(params.weights[x] - 1 + top - bottom)
    for i in range(0, bound2 + 1):
        out.append((Fraction(-1), ((y, -2 * b - i), (x, i))))
    return out


def repetition_break(params, letters, v, sv):
    """Replace the run x^{letters[0]}_v ... x^{letters[Q-1]}_v (all at one
    nonnegative mode v, acting on a vector that evaluates to sv) by strictly
    smaller words.

    Lift every letter to mode -1 on the vacuum, producing y; the iterate
    expansion of y_t at t = Q(v+1) - 1 consists of the run itself (with
    coefficient one) plus words whose squared-mode sum is strictly larger,
    since their modes sum to Qv without being all equal.  Re-expanding y
    over normal creation words and subtracting gives the replacement.
    """
    Q = params.Q
    if len(letters) != Q:
        raise ValueError("a repetition run has exactly Q = %d letters" % Q)
    if v < 0:
        raise ValueError("repetition runs live at nonnegative modes")
    if not sv:
        return []
    t = Q * (v + 1) - 1
    block_word = tuple((i, v) for i in letters)
    sigma_block = tuple((i, -1) for i in reversed(letters))
    y = apply_word_to_vacuum(params, sigma_block)
    merged = {}
    for c, w in _sigma_terms(params, y, t, sv):
        merged[w] = merged.get(w, 0) + c
    block_seen = Fraction(0)
    for c, w in unfold_iterate(params, sigma_block, t, sv):
        if w == block_word:
            block_seen += c
            continue
        merged[w] = merged.get(w, 0) - c
    if block_seen != 1:
        raise AssertionError("iterate expansion lost the run (coefficient %s)" % block_seen)
    return [(c, w) for w, c in merged.items() if c]


# -- certificates and the main loop -------------------------------------------

@dataclass
class NormalFormCertificate:
    """A normal word together with the data needed to check it is one."""

    word: tuple
    L: int
    params: RewriteParams = field(repr=False, compare=False)

    def validate(self):
        q_count = Counter()
        prev = None
        for i, m in self.word:
            if not 0 <= i < len(self.params.x):
                raise ValueError("letter index %d out of range" % i)
            if m >= self.L:
                raise ValueError("mode %d not below L = %d" % (m, self.L))
            if prev is not None:
                if m < prev:
                    raise ValueError("modes not weakly increasing")
                if m == prev and m < 0:
                    raise ValueError("repeated creation mode %d" % m)
            if m >= 0:
                q_count[m] += 1
                if q_count[m] >= self.params.Q:
                    raise ValueError("mode %d occurs %d >= Q times" % (m, q_count[m]))
            prev = m
        return True


@dataclass
class NormalizeResult:
    terms: list          # (coeff, NormalFormCertificate)
    value: Element       # the input word evaluated on the target
    L: int
    steps: int

    def lines(self):
        out = ["normal form (%d terms, %d rewrite steps, L=%d):"
               % (len(self.terms), self.steps, self.L)]
        for c, cert in self.terms:
            out.append("  %s * %s" % (c, _word_str(cert.word)))
        return out


def _word_str(word):
    if not word:
        return "(empty)"
    return " ".join("x%d[%d]" % (i, m) for i, m in word)


def _find_violation(params, word):
    """(kind, position) of the leftmost violation, or None for normal words."""
    for p in range(len(word) - 1):
        m, mp = word[p][1], word[p + 1][1]
        if m > mp:
            return ("swap", p)
        if m == mp and m < 0:
            return ("spread", p)
    Q = params.Q
    run = 0
    for p in range(len(word)):
        if p and word[p][1] == word[p - 1][1]:
            run += 1
        else:
            run = 1
        if word[p][1] >= 0 and run == Q:
            return ("repetition", p - Q + 1)
    return None


def normalize(params, word, target, max_steps=100000):
    """Rewrite `word` acting on `target` into certified normal words.

    Returns a NormalizeResult whose terms satisfy
        word(target) = sum coeff * cert.word(target)
    exactly (the right side re-evaluated is returned as .value).  Words that
    annihilate the target are dropped along the way.  Operator weight is
    conserved and the measure strictly decreases at every emitted word; both
    are asserted.  max_steps is an engineering backstop — the measure proof
    guarantees termination long before any sensible budget.
    """
    target = transport(target, target.space.unbounded())
    if not target:
        raise ValueError("normal forms are relative to a nonzero target")
    L = compute_L(params, target)
    evals = {(): target}

    def value_of(w):
        hit = evals.get(w)
        if hit is None:
            sub = value_of(w[1:])
            i, m = w[0]
            hit = mode_action(_xu(params)[i], m, sub) if sub else sub
            evals[w] = hit
        return hit

    pending = {tuple(word): Fraction(1)}
    done = {}
    steps = 0
    while pending:
        w = next(iter(pending))
        coeff = pending.pop(w)
        if not coeff or not value_of(w):
            continue
        hit = _find_violation(params, w)
        if hit is None:
            done[w] = done.get(w, 0) + coeff
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewrite exceeded %d steps; measure bug?" % max_steps)
        kind, p = hit
        if kind == "swap":
            (x, m), (y, mp) = w[p], w[p + 1]
            sv = value_of(w[p + 2:])
            repl = _swap_terms(params, x, m, y, mp, sv)
            pre, suf = w[:p], w[p + 2:]
        elif kind == "spread":
            (x, m), (y, _) = w[p], w[p + 1]
            sv = value_of(w[p + 2:])
            repl = _spread_terms(params, x, y, -m, sv)
            pre, suf = w[:p], w[p + 2:]
        else:
            run = w[p:p + params.Q]
            sv = value_of(w[p + params.Q:])
            repl = repetition_break(params, tuple(i for i, _ in run), run[0][1], sv)
            pre, suf = w[:p], w[p + params.Q:]
        old_weight = word_operator_weight(params, w)
        old_measure = word_measure(params, w)
        for c, mid in repl:
            nw = pre + mid + suf
            if word_operator_weight(params, nw) != old_weight:
                raise AssertionError("operator weight drifted: %s -> %s" % (w, nw))
            if not word_measure(params, nw) < old_measure:
                raise AssertionError("measure failed to decrease: %s -> %s" % (w, nw))
            s = pending.get(nw, 0) + coeff * c
            if s:
                pending[nw] = s
            else:
                pending.pop(nw, None)
    terms = []
    value = Element._raw(target.space, {})
    for w in sorted(done, key=lambda w: (word_measure(params, w), w)):
        c = done[w]
        if not c:
            continue
        cert = NormalFormCertificate(w, L, params)
        cert.validate()
        terms.append((c, cert))
        value = value + c * value_of(w)
    return NormalizeResult(terms, value, L, steps)


# -- lowest-weight machinery ---------------------------------------------------

def lowest_weight_bound_B(params, target):
    """The minimum operator weight of a normal word not annihilating target.

    Creation letters carry positive operator weight and stripping them off a
    nonzero word leaves a nonzero normal word, so the minimum is attained on
    annihilation-only words: modes weakly increasing within [0, L-1], fewer
    than Q letters per mode value.  Depth-first search with exact evaluation
    prunes dead branches.  Returns (B, witness_word); the empty word makes
    B <= 0 always.
    """
    target = transport(target, target.space.unbounded())
    if not target:
        raise ValueError("B is defined for nonzero targets")
    L = compute_L(params, target)
    xu = _xu(params)
    bottom = target.space.bottom_weight()
    best = [Fraction(0), ()]

    def dfs(value, max_mode, counts, opw, word):
        if opw < best[0]:
            best[0] = opw
            best[1] = word
        top = value.max_weight()
        for m in range(min(max_mode, L - 1), -1, -1):
            if counts[m] >= params.Q - 1:
                continue
            for i, wx in enumerate(params.weights):
                if wx - 1 + top - bottom < m:
                    continue
                nxt = mode_action(xu[i], m, value)
                if not nxt:
                    continue
                counts[m] += 1
                dfs(nxt, m, counts, opw + wx - m - 1, ((i, m),) + word)
                counts[m] -= 1

    dfs(target, L - 1, Counter(), Fraction(0), ())
    return best[0], best[1]


def annihilator_monomials(space, max_weight):
    """Every basis monomial of the algebra with weight in [1, max_weight]."""
    alg = space.algebra().unbounded()
    out = []
    for d in range(1, int(max_weight) + 1):
        for b in stratum_basis(alg, Fraction(d)):
            out.append(Element.monomial(alg, b))
    return out


@dataclass
class LWVReport:
    """Stratum-by-stratum lowest-weight vectors of a module."""

    space: Space
    max_stratum: Fraction
    reduced: bool
    rows: list           # (stratum, ambient dim, dim of the kernel)
    omega_basis: list    # Elements spanning the kernel, all strata
    constraints: int
    B: Fraction = None
    B_witness: tuple = None

    def omega_dims(self):
        return [k for (_, _, k) in self.rows]

    def lines(self):
        out = ["lowest-weight vectors up to stratum %s (%s annihilators, %d constraint rows)"
               % (self.max_stratum, "reduced" if self.reduced else "full", self.constraints)]
        out.append("stratum | ambient | kernel")
        for d, a, k in self.rows:
            out.append("%7s | %7d | %d" % (d, a, k))
        if self.B is not None:
            out.append("operator-weight floor B = %s (witness %s)"
                       % (self.B, _word_str(self.B_witness)))
        return out


def find_omega(space, annihilators, max_stratum, *, reduced=True, params=None):
    """Vectors killed by every negative-operator-weight mode of the annihilators.

    For each stratum d <= max_stratum, solves y_m w = 0 over all y in
    `annihilators` and all m >= wt(y) that can land at or above the bottom
    stratum.  By the generating-set lemma it suffices to run y over
    representatives of V/C_1 (reduced=True); passing every monomial up to the
    working weight instead gives the brute-force cross-check.  With `params`,
    the report also carries the operator-weight floor B of the module's first
    bottom monomial, certifying how far below the cyclic vector a lowest
    weight could possibly appear.
    """
    from .linalg import nullspace
    max_stratum = Fraction(max_stratum)
    uspace = space.unbounded()
    bottom = space.bottom_weight()
    ys = [transport(y, y.space.unbounded()) for y in annihilators
          if y and y.weight() >= 1]
    rows_out = []
    omega = []
    constraints = 0
    for d in strata(uspace, max_stratum):
        basis = stratum_basis(uspace, d)
        n = len(basis)
        # constraint rows keyed by (annihilator, mode, output basis key)
        rowmap = {}
        for y in ys:
            wy = y.weight()
            m = int(wy)
            while wy - m - 1 + d >= bottom:
                for j, b in enumerate(basis):
                    hit = mode_action(y, m, Element.monomial(uspace, b))
                    for k, c in hit.items():
                        rowmap.setdefault((id(y), m, k), {})[j] = c
                m += 1
        constraints += len(rowmap)
        sols = nullspace(list(rowmap.values()), n)
        rows_out.append((d, n, len(sols)))
        for sol in sols:
            vec = Element._raw(uspace, {})
            for j, c in sol.items():
                vec = vec + c * Element.monomial(uspace, basis[j])
            omega.append(vec)
    report = LWVReport(space, max_stratum, reduced, rows_out, omega, constraints)
    if params is not None:
        w0 = Element.monomial(uspace, stratum_basis(uspace, bottom)[0])
        report.B, report.B_witness = lowest_weight_bound_B(params, w0)
    return report
