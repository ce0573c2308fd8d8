"""Pfaffians and the polarized SO(2n) invariants Q_2n.

Q_2n(X1, ..., Xn) is defined here as ``kappa`` times the coefficient of
t1*...*tn in Pf(sum_i t_i (X_i - X_i^T)). It is symmetric and multilinear,
and Q(X, ..., X) = n! * kappa * Pf(X - X^T).

For n = 2 the constant kappa is calibrated against the trace formula

    Q4(g1, g2) = 4 (tau_{g1,2} tau_{g2,2} tau_{g1g2,1} - tau_{g1,1} tau_{g2,1} tau_{g1g2,2})

on exact samples (see :func:`calibrate_kappa`). For other n it defaults to
2^n, the value for which (2i)^-n (n!)^-1 Q(g, ..., g) on the standard torus
is prod_j (x_j - 1/x_j), i.e. the half-spin character difference with a
positive leading term.
"""

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactcore import HALF, I, ONE, ZERO, GaussianRational, Matrix, Polynomial, register_variables
from .sl2trace import evaluate_word, fricke_bindings, reduce_trace, sample_sl2_pair
from .spin4 import phi
from .words import parse_word

MAX_PFAFFIAN_DIM = 12

TORUS_VARS = [f"x{j}" for j in range(1, 7)]
register_variables(TORUS_VARS, laurent=True)


@lru_cache(maxsize=None)
def perfect_matchings(size):
    """All perfect matchings of range(size) as ``(sign, ((i, j), ...))`` with i < j.

    The sign is that of the permutation (i1 j1 i2 j2 ...).
    """
    if size % 2:
        return ()
    if size == 0:
        return ((1, ()),)
    out = []

    def rec(remaining, pairs, sign):
        if not remaining:
            out.append((sign, tuple(pairs)))
            return
        first = remaining[0]
        for k in range(1, len(remaining)):
            # moving remaining[k] next to `first` crosses k-1 elements
            s = sign if (k - 1) % 2 == 0 else -sign
            rec(remaining[1:k] + remaining[k + 1:], pairs + [(first, remaining[k])], s)

    rec(tuple(range(size)), [], 1)
    return tuple(out)


def _as_matrix(x):
    return x if isinstance(x, Matrix) else Matrix(x)


def _check_skew(s):
    if not s.is_square():
        raise ValueError("Pfaffian of a non-square matrix")
    if s.rows % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix")
    if s.rows > MAX_PFAFFIAN_DIM:
        raise ValueError(f"Pfaffian limited to dimension {MAX_PFAFFIAN_DIM}")
    n = s.rows
    for i in range(n):
        for j in range(i, n):
            if s[i, j] + s[j, i]:
                raise ValueError("matrix is not skew-symmetric")


def pfaffian(s):
    """Signed sum over perfect matchings of the products of matched entries."""
    s = _as_matrix(s)
    _check_skew(s)
    acc = ZERO
    for sign, pairs in perfect_matchings(s.rows):
        term = ONE
        for i, j in pairs:
            term = term * s[i, j]
            if not term:
                break
        if term:
            acc = acc + term if sign > 0 else acc - term
    return acc


def skew_part(x):
    """X - X^T."""
    x = _as_matrix(x)
    return x - x.T


def polarized_pfaffian(skews):
    """Coefficient of t1...tn in Pf(sum t_i S_i) for n skew 2n x 2n matrices."""
    skews = [_as_matrix(s) for s in skews]
    n = len(skews)
    for s in skews:
        if s.shape != (2 * n, 2 * n):
            raise ValueError(f"expected {2 * n}x{2 * n} matrices for {n} arguments")
        _check_skew(s)
    perms = list(itertools.permutations(range(n)))
    acc = ZERO
    for sign, pairs in perfect_matchings(2 * n):
        inner = ZERO
        for perm in perms:
            term = ONE
            for (i, j), k in zip(pairs, perm):
                term = term * skews[k][i, j]
                if not term:
                    break
            if term:
                inner = inner + term
        if inner:
            acc = acc + inner if sign > 0 else acc - inner
    return acc


@dataclass(frozen=True)
class QNormalization:
    """The constant relating Q_2n to the polarized Pfaffian, with its derivation log."""

    n: int
    kappa: GaussianRational
    log: tuple = field(default=(), compare=False)


CALIBRATION_WORDS = ("g1", "g2", "g1 g2", "g1 g2^-1")


def q4_tau(w1, w2):
    """Q4(w1, w2) as a polynomial in the copy-indexed Fricke coordinates."""
    w12 = w1 * w2
    return 4 * (reduce_trace(w1, 2) * reduce_trace(w2, 2) * reduce_trace(w12, 1)
                - reduce_trace(w1, 1) * reduce_trace(w2, 1) * reduce_trace(w12, 2))


def calibrate_kappa(samples=8, seed=20240601):
    """Find the unique kappa with kappa * polarized Pf = Q4 trace formula.

    Each sample is two SL(2) pairs (A1, A2), (B1, B2); the representation
    g_k -> phi(A_k, B_k) is evaluated on every pair of calibration words.
    Raises if the ratios disagree or are never defined.
    """
    words = [parse_word(w) for w in CALIBRATION_WORDS]
    pairs = [(u, v) for u in words for v in words]
    ratios = set()
    log = []
    rng = random.Random(seed)
    for s in range(samples):
        (a1, a2), (b1, b2) = sample_sl2_pair(rng.getrandbits(64)), sample_sl2_pair(rng.getrandbits(64))
        for u, v in pairs:
            raw = raw_q_on_words(u, v, (a1, a2), (b1, b2))
            target = q4_tau_value(u, v, (a1, a2), (b1, b2))
            if raw:
                ratios.add(target / raw)
            elif target:
                raise ArithmeticError(f"Q4 formula nonzero where the Pfaffian vanishes ({u}, {v})")
        log.append(f"sample {s}: ratios so far {sorted(str(r) for r in ratios)}")
    if len(ratios) != 1:
        raise ArithmeticError(f"no single calibration constant: {sorted(map(str, ratios))}")
    (kappa,) = ratios
    log.append(f"kappa = {kappa} from {samples} samples x {len(pairs)} word pairs")
    return QNormalization(2, kappa, tuple(log))


def raw_q_on_words(u, v, a_pair, b_pair):
    """Polarized Pfaffian (kappa = 1) of phi(rho u), phi(rho v)."""
    xu = phi(evaluate_word(u, list(a_pair)), evaluate_word(u, list(b_pair)))
    xv = phi(evaluate_word(v, list(a_pair)), evaluate_word(v, list(b_pair)))
    return polarized_pfaffian([skew_part(xu), skew_part(xv)])


def q4_tau_value(u, v, a_pair, b_pair):
    """The trace formula for Q4(u, v) evaluated at the representation (a_pair, b_pair)."""
    bindings = {**fricke_bindings(*a_pair, copy=1), **fricke_bindings(*b_pair, copy=2)}
    return q4_tau(u, v).substitute(bindings).constant_value()


@lru_cache(maxsize=None)
def default_normalization(n):
    if n == 2:
        return calibrate_kappa()
    return QNormalization(n, GaussianRational(2 ** n), (f"kappa = 2^{n} (torus convention)",))


def q_form(matrices, normalization=None):
    """Q_2n(X1, ..., Xn) for n matrices of size 2n x 2n."""
    matrices = [_as_matrix(x) for x in matrices]
    n = len(matrices)
    if n == 0:
        raise ValueError("need at least one matrix")
    for x in matrices:
        if x.shape != (2 * n, 2 * n):
            raise ValueError(f"expected {2 * n}x{2 * n} matrices for {n} arguments")
    norm = normalization or default_normalization(n)
    if norm.n != n:
        raise ValueError("normalization is for a different n")
    return polarized_pfaffian([skew_part(x) for x in matrices]) * norm.kappa


# torus -----------------------------------------------------------------------

def torus_block(var, k):
    """2x2 complex-orthogonal block with eigenvalues var^k and var^-k."""
    x = Polynomial.var(var) ** k
    xi = Polynomial.var(var) ** (-k)
    c = (x + xi) * HALF
    s = (x - xi) * HALF
    return ((c, I * s), (-(I * s), c))


def torus_element(n, k):
    """Block-diagonal element of the maximal torus of SO(2n) raised to the k-th power."""
    if n > len(TORUS_VARS):
        raise ValueError(f"torus limited to rank {len(TORUS_VARS)}")
    rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        blk = torus_block(TORUS_VARS[j], k)
        for a in range(2):
            for b in range(2):
                rows[2 * j + a][2 * j + b] = blk[a][b]
    return Matrix(rows)


def q_torus(n, k, normalization=None):
    """Q_2n(D^k, ..., D^k) on the standard torus, a Laurent polynomial in x1..xn."""
    if n < 1:
        raise ValueError("n must be positive")
    norm = normalization or default_normalization(n)
    d = torus_element(n, k)
    pf = pfaffian(skew_part(d))
    value = pf * norm.kappa * math.factorial(n)
    return value if isinstance(value, Polynomial) else Polynomial.const(value)


def torus_closed_form(n, k, normalization=None):
    """n! * kappa * i^n * prod_j (x_j^k - x_j^-k)."""
    norm = normalization or default_normalization(n)
    acc = Polynomial.const(norm.kappa * math.factorial(n) * I ** n)
    for j in range(n):
        x = Polynomial.var(TORUS_VARS[j])
        acc = acc * (x ** k - x ** (-k))
    return acc


def torus_antisymmetrized(n, ks):
    """i^n * sum over S_n of sign(mu) * prod_i (x_mu(i)^k_i - x_mu(i)^-k_i).

    With all k_i equal this vanishes for n >= 2; it is a diagnostic for the
    mixed-exponent reading of that sum.
    """
    if len(ks) != n:
        raise ValueError("need one exponent per coordinate")
    acc = Polynomial.const(0)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = Polynomial.const(1)
        for i, p in enumerate(perm):
            x = Polynomial.var(TORUS_VARS[p])
            term = term * (x ** ks[i] - x ** (-ks[i]))
        acc = acc + term * sign
    return acc * (I ** n)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def weyl_action(poly, n, perm, flips):
    """Apply x_j -> x_perm(j)^(+-1) with inversion on the indices in ``flips``."""
    bindings = {}
    for j in range(n):
        target = Polynomial.var(TORUS_VARS[perm[j]])
        bindings[TORUS_VARS[j]] = target ** -1 if j in flips else target
    return poly.substitute(bindings, strict=False)


def weyl_symmetry_check(poly, n):
    """Check invariance under signed permutations with an even number of sign
    changes, and negation under a single sign change."""
    ok = True
    for perm in itertools.permutations(range(n)):
        for r in range(n + 1):
            for flips in itertools.combinations(range(n), r):
                image = weyl_action(poly, n, perm, set(flips))
                expected = poly if r % 2 == 0 else -poly
                if image != expected:
                    ok = False
    return ok


# random orthogonal matrices --------------------------------------------------

def cayley_orthogonal(size, rng, bound=3):
    """Exact rational orthogonal matrix (I - K)(I + K)^-1 from a random skew K."""
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = rng.randint(-bound, bound)
            rows[i][j] = v
            rows[j][i] = -v
    k = Matrix(rows)
    ident = Matrix.identity(size)
    return (ident - k) @ (ident + k).inverse()


def reflection_orthogonal(size, rng, bound=3):
    """Exact orthogonal matrix of determinant -1."""
    flip = Matrix.diag([1] * (size - 1) + [-1])
    return cayley_orthogonal(size, rng, bound) @ flip


def random_integer_matrix(size, rng, bound=4):
    return Matrix([[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)])


def half_spin_difference_scale(n):
    """(2i)^-n (n!)^-1, the factor turning Q(g, ..., g) into D+ - D-."""
    return (GaussianRational(0, 2) ** n).inverse() * GaussianRational(Fraction(1, math.factorial(n)))
