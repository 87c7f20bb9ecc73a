"""Independent oracles for expected values used in the tests.

Everything here is deliberately primitive: generating-function recurrences
and integer enumeration, no imports from the package under test (except in
type-free helpers operating on plain lists).  Where a test freezes a derived
value, the oracle is the thing that derived it.
"""

from fractions import Fraction


def partition_counts(max_n):
    """p(0..max_n) via Euler's pentagonal-number recurrence."""
    p = [1] + [0] * max_n
    for n in range(1, max_n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def convolve(a, b, max_n):
    return [sum(a[i] * b[n - i] for i in range(n + 1) if i < len(a) and n - i < len(b))
            for n in range(max_n + 1)]


def colored_partition_counts(max_n, colors):
    """Partitions with parts in `colors` independent copies of each size."""
    out = [1] + [0] * max_n
    p = partition_counts(max_n)
    for _ in range(colors):
        out = convolve(out, p, max_n)
    return out


def sector_dims(norms, offsets, max_weight):
    """Stratum dimensions of a lattice Fock space by direct integer walk.

    For each coordinate the points are (k + offset) with k an integer and the
    point weight norm*(k+offset)^2/2; the Heisenberg factor contributes
    colored partitions.  Weights are measured from zero (absolute), returned
    as a dict weight -> dimension for every weight <= max_weight.
    """
    max_weight = Fraction(max_weight)
    rank = len(norms)
    pts = [Fraction(0)]
    for d, off in zip(norms, offsets):
        nxt = []
        for base in pts:
            k = 0
            while True:
                stepped = False
                for val in ({k + off, -k + off} if k else {off}):
                    w = base + Fraction(d) * val * val / 2
                    if w <= max_weight:
                        nxt.append(w)
                        stepped = True
                if not stepped:
                    break
                k += 1
        pts = nxt
    p = colored_partition_counts(int(max_weight) + 1, rank)
    dims = {}
    for base in pts:
        n = 0
        while base + n <= max_weight:
            dims[base + n] = dims.get(base + n, 0) + p[n]
            n += 1
    return dims


def involution_trace(max_n):
    """Coefficients of prod_{n>=1} 1/(1+q^n): the sign-weighted partition
    count sum (-1)^{number of parts}, the trace of the lift of -1 on the
    rank-one Heisenberg Fock space."""
    t = [1] + [0] * max_n
    for part in range(1, max_n + 1):
        # multiply by 1/(1+q^part) = sum_j (-1)^j q^{j*part}
        nxt = [0] * (max_n + 1)
        for n in range(max_n + 1):
            acc = 0
            j = 0
            while j * part <= n:
                acc += (-1 if j % 2 else 1) * t[n - j * part]
                j += 1
            nxt[n] = acc
        t = nxt
    return t


def plus_fixed_dims(norm, max_n):
    """Stratum dims of the +1 eigenspace for the rank-one lattice algebra.

    Paired points +-k contribute half their total; the point-zero sector
    contributes (p(n) + trace(n))/2.
    """
    full = sector_dims((norm,), (Fraction(0),), max_n)
    p = partition_counts(max_n)
    tr = involution_trace(max_n)
    out = []
    for n in range(max_n + 1):
        paired = full[Fraction(n)] - p[n]
        assert paired % 2 == 0
        assert (p[n] + tr[n]) % 2 == 0
        out.append(paired // 2 + (p[n] + tr[n]) // 2)
    return out


def bareiss_rank(rows, ncols):
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    m = [list(map(int, r)) for r in rows]
    rank = 0
    prev = 1
    col = 0
    nrows = len(m)
    while rank < nrows and col < ncols:
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[rank][col] * m[r][c] - m[rank][c] * m[r][col]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        col += 1
    return rank
