"""Independent reference computations built on sympy."""

import itertools

import sympy

from charvar.exactcore import GaussianRational, Matrix, Polynomial


def scalar_to_sympy(c):
    c = GaussianRational.coerce(c)
    return sympy.Rational(c.real.numerator, c.real.denominator) + sympy.I * sympy.Rational(
        c.imag.numerator, c.imag.denominator)


def to_sympy(p):
    if not isinstance(p, Polynomial):
        return scalar_to_sympy(p)
    acc = sympy.Integer(0)
    for mono, coef in p.items():
        term = scalar_to_sympy(coef)
        for name, e in mono.as_dict().items():
            term *= sympy.Symbol(name) ** e
        acc += term
    return sympy.expand(acc)


def matrix_to_sympy(m):
    return sympy.Matrix([[to_sympy(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


def same(p, q):
    return sympy.expand(to_sympy(p) - to_sympy(q)) == 0


def brute_force_minimal_zero_sum(vectors, m):
    n = len(vectors)
    dim = len(vectors[0])

    def zero(idx):
        return all(sum(vectors[i][c] for i in idx) % m == 0 for c in range(dim))

    if not zero(range(n)):
        return False
    return not any(zero(idx) for r in range(1, n) for idx in itertools.combinations(range(n), r))


def all_minimal_zero_sum(m, dim, max_len):
    """Every minimal zero-sum multiset up to ``max_len``, by exhaustive search."""
    vecs = list(itertools.product(range(m), repeat=dim))
    out = set()
    for k in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(vecs, k):
            if brute_force_minimal_zero_sum(combo, m):
                out.add(tuple(sorted(combo)))
    return out


def pfaffian_oracle(rows):
    """Pfaffian by the recursive expansion along the first row."""
    n = len(rows)
    if n == 0:
        return sympy.Integer(1)
    total = sympy.Integer(0)
    for j in range(1, n):
        keep = [k for k in range(n) if k not in (0, j)]
        minor = [[rows[a][b] for b in keep] for a in keep]
        total += (-1) ** (j + 1) * rows[0][j] * pfaffian_oracle(minor)
    return sympy.expand(total)


def sympy_matrix(m):
    return matrix_to_sympy(m) if isinstance(m, Matrix) else sympy.Matrix(m)
