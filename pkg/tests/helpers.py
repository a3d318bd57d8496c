"""Independent brute-force oracles shared by the unit and acceptance tests.

Everything here is deliberately written against the abstract relations
rather than the package implementation, so products, spans and ranks can
be cross-checked against a second code path.
"""

from itertools import product

import numpy as np


def oracle_clifford_mul(gram, a: dict, b: dict) -> dict:
    """Multiply two elements given as {index-tuple: coeff} by reducing raw
    letter sequences one adjacent swap at a time (bubble reduction)."""

    def reduce_word(word, coeff, out):
        word = list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(word) - 1):
                if word[i] > word[i + 1]:
                    k, j = word[i], word[i + 1]
                    # e_k e_j = 2 B(k,j) - e_j e_k
                    shorter = word[:i] + word[i + 2:]
                    reduce_word(shorter, coeff * 2 * gram[k][j], out)
                    word[i], word[i + 1] = j, k
                    coeff = -coeff
                    changed = True
                    break
                if word[i] == word[i + 1]:
                    j = word[i]
                    word = word[:i] + word[i + 2:]
                    coeff = coeff * gram[j][j]
                    changed = True
                    break
        key = tuple(word)
        out[key] = out.get(key, 0j) + coeff

    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            reduce_word(tuple(wa) + tuple(wb), ca * cb, out)
    return {w: c for w, c in out.items() if abs(c) > 1e-9}


def oracle_commutator_span_rank(gram) -> int:
    """Rank of the span of graded commutators over all basis pairs,
    via numpy SVD on the stacked coefficient vectors."""
    n = len(gram)
    words = [()]
    for i in range(n):
        words += [w + (i,) for w in words]
    index = {w: k for k, w in enumerate(sorted(words, key=lambda w: (len(w), w)))}
    rows = []
    for wa, wb in product(words, repeat=2):
        sign = -1 if (len(wa) % 2) and (len(wb) % 2) else 1
        left = oracle_clifford_mul(gram, {wa: 1.0}, {wb: 1.0})
        right = oracle_clifford_mul(gram, {wb: 1.0}, {wa: 1.0})
        vec = np.zeros(len(index), dtype=complex)
        for w, c in left.items():
            vec[index[w]] += c
        for w, c in right.items():
            vec[index[w]] -= sign * c
        if np.max(np.abs(vec)) > 1e-9:
            rows.append(vec)
    if not rows:
        return 0
    return int(np.linalg.matrix_rank(np.array(rows), tol=1e-7))


def poly_expand_cut_elimination(n: int):
    """Coefficient table of (z+b)^n (nz+b)^(n-2) by integer convolution:
    maps z-degree l to the integer coefficient of b^(2n-2-l)."""
    from math import comb

    # (z+b)^n has z^i coefficient C(n,i) b^(n-i); similarly for (nz+b)^(n-2)
    a = [comb(n, i) for i in range(n + 1)]
    b2 = [comb(n - 2, j) * n**j for j in range(n - 1)]
    out = [0] * (len(a) + len(b2) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b2):
            out[i + j] += ai * bj
    return out
