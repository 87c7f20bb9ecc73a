"""Stratum-wise decomposition of a tensor square.

Checks, weight by weight, that the tensor square of the norm-2 lattice
algebra splits as its C_2 span plus embedded products of the factors'
quotient representatives — and that the quotient dimension is exactly the
convolution of the factors' quotient dimensions.
"""

import sys

from voalab import Space, quotient_table, tensor_c2_check

if __name__ == "__main__":
    depth = int(sys.argv[1]) if len(sys.argv) > 1 else 4

    a = Space(norms=(2,), cutoff=6)
    factor = quotient_table(a, 2, 6)
    print("factor quotient dims:", factor.quotient_dims())

    rep = tensor_c2_check(a, a, max_stratum=depth, factor_depth=6)
    for line in rep.lines():
        print(line)

    dims = factor.quotient_dims()
    conv = [sum(dims[i] * dims[d - i] for i in range(d + 1) if d - i < len(dims))
            for d in range(depth + 1)]
    print("convolution of the factor dims:", conv)
    print("tensor quotient dims:          ",
          [amb - c2 for (_, amb, c2, _, _) in rep.rows])
