"""The spin map SL(2) x SL(2) -> SO(4) and the outer involution sigma.

SL(2) x SL(2) acts on C^2 (x) C^2 preserving the form
det(u1, v1) det(u2, v2). In the orthonormal basis

    w1 = (e1e1 + e2e2)/sqrt2,   w2 = i(e1e1 - e2e2)/sqrt2,
    w3 = i(e1e2 + e2e1)/sqrt2,  w4 = (e1e2 - e2e1)/sqrt2

the image of (A, B) is half of the bilinear table below. The table is the
single source of truth; the basis is only documentation.
"""

import re

from .exactcore import HALF, I, ONE, Matrix, Polynomial, register_variables
from .exactcore.gaussian import GaussianRational

A_VARS = ["a11", "a12", "a21", "a22"]
B_VARS = ["b11", "b12", "b21", "b22"]
register_variables(A_VARS + B_VARS)

# Entry (r, c) of 2*phi(A, B): signed, optionally imaginary, products a_xy * b_zw.
_PHI_TABLE = (
    ("a11b11+a12b12+a21b21+a22b22",
     "ia11b11-ia12b12+ia21b21-ia22b22",
     "ia12b11+ia11b12+ia22b21+ia21b22",
     "-a12b11+a11b12-a22b21+a21b22"),
    ("-ia11b11-ia12b12+ia21b21+ia22b22",
     "a11b11-a12b12-a21b21+a22b22",
     "a12b11+a11b12-a22b21-a21b22",
     "ia12b11-ia11b12-ia22b21+ia21b22"),
    ("-ia21b11-ia22b12-ia11b21-ia12b22",
     "a21b11-a22b12+a11b21-a12b22",
     "a22b11+a21b12+a12b21+a11b22",
     "ia22b11-ia21b12+ia12b21-ia11b22"),
    ("-a21b11-a22b12+a11b21+a12b22",
     "-ia21b11+ia22b12+ia11b21-ia12b22",
     "-ia22b11-ia21b12+ia12b21+ia11b22",
     "a22b11-a21b12-a12b21+a11b22"),
)

_TERM = re.compile(r"([+-]?)(i?)a([12])([12])b([12])([12])")


def _decode(entry):
    terms = []
    pos = 0
    for m in _TERM.finditer(entry):
        if m.start() != pos:
            raise ValueError(f"bad table entry {entry!r}")
        pos = m.end()
        coef = -ONE if m.group(1) == "-" else ONE
        if m.group(2):
            coef = coef * I
        a = (int(m.group(3)) - 1, int(m.group(4)) - 1)
        b = (int(m.group(5)) - 1, int(m.group(6)) - 1)
        terms.append((coef, a, b))
    if pos != len(entry):
        raise ValueError(f"bad table entry {entry!r}")
    return tuple(terms)


PHI_COEFFICIENTS = tuple(tuple(_decode(e) for e in row) for row in _PHI_TABLE)

C1 = Matrix([[1, 1], [0, 1]])
C2 = Matrix([[0, -1], [1, 0]])
SIGMA_MATRIX = Matrix.diag([1, 1, 1, -1])


def _as_2x2(x, label):
    if not isinstance(x, Matrix):
        x = Matrix(x)
    if x.shape != (2, 2):
        raise ValueError(f"{label} must be 2x2, got {x.shape[0]}x{x.shape[1]}")
    return x


def phi(a, b):
    """The 4x4 matrix of (A, B) in SO(4); entries may be scalars or polynomials."""
    a = _as_2x2(a, "A")
    b = _as_2x2(b, "B")
    rows = []
    for row in PHI_COEFFICIENTS:
        out = []
        for terms in row:
            acc = GaussianRational(0)
            for coef, (i, j), (k, l) in terms:
                x, y = a[i, j], b[k, l]
                if x and y:
                    acc = acc + coef * x * y
            acc = acc * HALF
            if isinstance(acc, Polynomial) and acc.is_constant():
                acc = acc.constant_value()
            out.append(acc)
        rows.append(out)
    return Matrix(rows)


def symbolic_a():
    return Matrix([[Polynomial.var("a11"), Polynomial.var("a12")],
                   [Polynomial.var("a21"), Polynomial.var("a22")]])


def symbolic_b():
    return Matrix([[Polynomial.var("b11"), Polynomial.var("b12")],
                   [Polynomial.var("b21"), Polynomial.var("b22")]])


def symbolic_phi():
    """phi over the indeterminates a11..a22, b11..b22; every entry is bilinear."""
    return phi(symbolic_a(), symbolic_b())


def swap_ab():
    """Renaming a_xy <-> b_xy."""
    return {**dict(zip(A_VARS, B_VARS)), **dict(zip(B_VARS, A_VARS))}


def sigma_conjugate(x):
    """M X M^-1 for M = diag(1, 1, 1, -1): negate the off-diagonal part of row 4 and column 4."""
    if not isinstance(x, Matrix):
        x = Matrix(x)
    if x.shape != (4, 4):
        raise ValueError("sigma acts on 4x4 matrices")
    rows = []
    for i in range(4):
        rows.append(tuple(-x[i, j] if (i == 3) != (j == 3) else x[i, j] for j in range(4)))
    return Matrix._raw(tuple(rows))
