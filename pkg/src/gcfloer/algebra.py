"""Z/2-graded Clifford algebras and the small ring computations behind the
generation checks.

An algebra is determined by a symmetric gram matrix B over complex scalars
(eps comparisons): generators satisfy e_i e_j + e_j e_i = 2 B(i,j) and
e_i^2 = B(i,i).  Elements are stored on the product-monomial basis
e_I = e_{i_1} ... e_{i_k} (I an increasing index tuple) with grading |I|
mod 2.

The zeroth Hochschild homology is the quotient by the span of graded
commutators of basis monomials, which is enough by bilinearity; for a
non-degenerate gram this quotient is one-dimensional.  Higher Hochschild
groups vanish for non-degenerate gram by separability and are reported,
not computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .critsolve import CriticalPoint
from .novikov import NotUnitaryError, NovikovSeries
from .potential import PotentialFunction, evaluate_novikov, hessian_terms
from .ratlin import EPS, qmatrix, rank


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class GradedCliffordAlgebra:
    n: int
    gram: tuple  # n x n symmetric, complex entries

    @property
    def nondegenerate(self) -> bool:
        return rank(self.gram) == self.n


def clifford(gram) -> GradedCliffordAlgebra:
    g = tuple(tuple(complex(x) for x in row) for row in gram)
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("gram matrix must be square")
    for i in range(n):
        for j in range(n):
            if abs(g[i][j] - g[j][i]) > EPS:
                raise ValueError("gram matrix must be symmetric")
    return GradedCliffordAlgebra(n, g)


def diagonal_clifford(entries) -> GradedCliffordAlgebra:
    n = len(entries)
    return clifford(
        [[complex(entries[i]) if i == j else 0j for j in range(n)] for i in range(n)]
    )


class CliffordElement(dict):
    """Sparse map from increasing index tuples to coefficients; () is the unit."""

    def __missing__(self, key):
        return 0j


def unit() -> CliffordElement:
    return CliffordElement({(): 1.0 + 0j})


def generator(i: int) -> CliffordElement:
    return CliffordElement({(i,): 1.0 + 0j})


def basis_word(indices) -> CliffordElement:
    return CliffordElement({tuple(indices): 1.0 + 0j})


def _word_times_generator(a: GradedCliffordAlgebra, word: tuple, j: int) -> dict:
    """Reduce e_word * e_j to the monomial basis, using
    e_k e_j = 2 B(k,j) - e_j e_k (k != j) and e_j^2 = B(j,j)."""
    if not word:
        return {(j,): 1.0 + 0j}
    k = word[-1]
    rest = word[:-1]
    if k < j:
        return {word + (j,): 1.0 + 0j}
    if k == j:
        return {rest: complex(a.gram[j][j])}
    out = {}
    b = 2 * complex(a.gram[k][j])
    if abs(b) > EPS:
        out[rest] = b
    for w, c in _word_times_generator(a, rest, j).items():
        # letters of w are all below k, so appending keeps the word reduced
        out[w + (k,)] = out.get(w + (k,), 0j) - c
    return out


def clifford_mul(
    a: GradedCliffordAlgebra, x: CliffordElement, y: CliffordElement
) -> CliffordElement:
    out = CliffordElement()
    for wx, cx in x.items():
        partial = {wx: cx}
        for wy, cy in y.items():
            scaled = {w: c * cy for w, c in partial.items()}
            for j in wy:
                nxt = {}
                for w, c in scaled.items():
                    for w2, c2 in _word_times_generator(a, w, j).items():
                        nxt[w2] = nxt.get(w2, 0j) + c * c2
                scaled = nxt
            for w, c in scaled.items():
                if abs(c) > EPS:
                    out[w] = out.get(w, 0j) + c
    return CliffordElement({w: c for w, c in out.items() if abs(c) > EPS})


def graded_commutator(
    a: GradedCliffordAlgebra, x: CliffordElement, y: CliffordElement, deg_x: int, deg_y: int
) -> CliffordElement:
    sign = -1.0 if (deg_x % 2) and (deg_y % 2) else 1.0
    left = clifford_mul(a, x, y)
    right = clifford_mul(a, y, x)
    out = CliffordElement()
    for w, c in left.items():
        out[w] = out.get(w, 0j) + c
    for w, c in right.items():
        out[w] = out.get(w, 0j) - sign * c
    return CliffordElement({w: c for w, c in out.items() if abs(c) > EPS})


def _all_words(n: int):
    out = [()]
    for i in range(n):
        out += [w + (i,) for w in out]
    return sorted(out, key=lambda w: (len(w), w))


def graded_commutator_span_rank(a: GradedCliffordAlgebra, eps: float = EPS) -> int:
    """Dimension of span{ xy - (-1)^{|x||y|} yx } over basis monomial pairs.

    Incremental row reduction against a growing pivot basis; exact enough at
    eps because all coefficients are O(1) products of gram entries.
    """
    words = _all_words(a.n)
    index = {w: i for i, w in enumerate(words)}
    dim = len(words)
    basis_rows: list = []  # (pivot index, normalized dense row)

    def insert(vec) -> bool:
        for piv, row in basis_rows:
            c = vec[piv]
            if abs(c) > eps:
                vec = [v - c * r for v, r in zip(vec, row)]
        for i, v in enumerate(vec):
            if abs(v) > eps:
                vec = [x / v for x in vec]
                basis_rows.append((i, vec))
                return True
        return False

    count = 0
    for wx, wy in product(words, repeat=2):
        c = graded_commutator(a, basis_word(wx), basis_word(wy), len(wx), len(wy))
        if not c:
            continue
        vec = [0j] * dim
        for w, coeff in c.items():
            vec[index[w]] = coeff
        if insert(vec):
            count += 1
            if count == dim:
                break
    return len(basis_rows)


def hh0(a: GradedCliffordAlgebra) -> int:
    """dim of the algebra modulo graded commutators (2^n - span rank)."""
    return 2**a.n - graded_commutator_span_rank(a)


def top_class_square(a: GradedCliffordAlgebra) -> complex:
    """Square of the top class expressed in an orthogonal basis: the product
    -d1 d2 d3 of the congruence-diagonalized gram (n = 3 sign).

    Canonical for diagonal gram (then it is the brute-force coefficient of
    the unit in (e1 e2 e3)^2); nonzero iff the gram is non-degenerate.
    """
    if a.n != 3:
        raise ValueError("top class square implemented for three generators")
    d = congruence_diagonal(a.gram)
    return -(d[0] * d[1] * d[2])


def congruence_diagonal(gram, eps: float = EPS) -> list:
    """Diagonal of Q^T B Q for a basis change Q (symmetric elimination)."""
    n = len(gram)
    b = [[complex(x) for x in row] for row in gram]
    scale = max(1.0, max(abs(x) for row in b for x in row))
    tol = eps * scale
    for k in range(n):
        if abs(b[k][k]) <= tol:
            swap = next(
                (j for j in range(k + 1, n) if abs(b[j][j]) > tol), None
            )
            if swap is not None:
                for i in range(n):
                    b[i][k], b[i][swap] = b[i][swap], b[i][k]
                b[k], b[swap] = b[swap], b[k]
            else:
                # no usable diagonal entry: mix in a column with b[k][j] != 0
                j = next(
                    (j for j in range(k + 1, n) if abs(b[k][j]) > tol), None
                )
                if j is None:
                    continue  # row is zero beyond tolerance: degenerate
                for i in range(n):
                    b[i][k] += b[i][j]
                b[k] = [b[k][c] + b[j][c] for c in range(n)]
        pivot = b[k][k]
        if abs(pivot) <= tol:
            continue
        for j in range(k + 1, n):
            factor = b[k][j] / pivot
            for i in range(n):
                b[i][j] -= factor * b[i][k]
            b[j] = [b[j][c] - factor * b[k][c] for c in range(n)]
    return [b[i][i] for i in range(n)]


# -- quadratic form from the potential ----------------------------------------

def quadratic_form_from_potential(
    p: PotentialFunction, cp: CriticalPoint, order=None
) -> GradedCliffordAlgebra:
    """Gram matrix of leading coefficients of the logarithmic Hessian of the
    potential at the critical point (lifted coordinates when available)."""
    from . import novikov as nv

    if cp.lifted is not None:
        point = cp.lifted
    else:
        point = tuple(
            nv.monomial(c, u) for c, u in zip(cp.leading, cp.valuation)
        )
    if order is None:
        # beyond every entry's leading level: S3 sits at u1 - lam2 <= max shift span
        order = max(v for v, _ in cp.critical_value_leading) + Fraction(1, 2)
    h = hessian_terms(p)
    gram = [[0j] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            value = evaluate_novikov(h[i][j], point, order)
            coeff = 0j if value.is_zero() else value.leading_coefficient()
            gram[i][j] = coeff
            gram[j][i] = coeff
    algebra = clifford(gram)
    if rank(algebra.gram) < 3:
        raise DegenerateFormError("leading Hessian form has rank < 3")
    return algebra


# -- quantum cohomology rank ----------------------------------------------------

_RELATION_DEG2 = {(2, 0): 1, (1, 1): 3, (0, 2): 1}   # X1^2 + 3 X1 X2 + X2^2
_RELATION_DEG3 = {(2, 1): 1, (1, 2): 1}              # X1^2 X2 + X1 X2^2


def _graded_quotient_dim(degree: int) -> int:
    monomials = [(degree - j, j) for j in range(degree + 1)]
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for rel, rel_deg in ((_RELATION_DEG2, 2), (_RELATION_DEG3, 3)):
        extra = degree - rel_deg
        if extra < 0:
            continue
        for i in range(extra + 1):
            mult = (extra - i, i)
            row = [Fraction(0)] * len(monomials)
            for (a, b), c in rel.items():
                row[index[(a + mult[0], b + mult[1])]] = Fraction(c)
            rows.append(tuple(row))
    if not rows:
        return len(monomials)
    return len(monomials) - rank(qmatrix(rows))


def qh_betti() -> tuple:
    """(b0, b2, b4, b6) of the degree-2-generated ring with the two fixed
    relations; comes out (1, 2, 2, 1), total six."""
    return tuple(_graded_quotient_dim(d) for d in range(4))


def qh_vanishes_above() -> bool:
    """Every graded piece beyond degree 3 is zero."""
    return all(_graded_quotient_dim(d) == 0 for d in (4, 5, 6))


# -- twisted torus cohomology ----------------------------------------------------

def twisted_torus_cohomology_is_zero(tau1, tau2, tau3) -> bool:
    """True iff some holonomy component differs from 1, killing both
    cohomology groups of its circle factor and hence the whole product."""
    taus = []
    for t in (tau1, tau2, tau3):
        if not isinstance(t, NovikovSeries):
            from . import novikov as nv

            t = nv.coerce(t)
        if t.valuation() != 0:
            raise NotUnitaryError("holonomy components must have valuation 0")
        taus.append(t)
    from . import novikov as nv

    return any(not (t - nv.one()).is_zero() for t in taus)


def pairwise_holonomy_ratios(solutions) -> dict:
    """For each pair i < j of leading solutions, the componentwise ratio of
    their coordinate triples (the relative holonomy at leading order)."""
    out = {}
    for i in range(len(solutions)):
        for j in range(i + 1, len(solutions)):
            out[(i, j)] = tuple(
                b / a for a, b in zip(solutions[i], solutions[j])
            )
    return out
