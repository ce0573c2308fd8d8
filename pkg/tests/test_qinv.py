import math
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from charvar.exactcore import GaussianRational, Matrix, Polynomial
from charvar.qinv import (
    MAX_PFAFFIAN_DIM,
    QNormalization,
    calibrate_kappa,
    cayley_orthogonal,
    default_normalization,
    half_spin_difference_scale,
    perfect_matchings,
    pfaffian,
    polarized_pfaffian,
    q4_tau,
    q_form,
    q_torus,
    random_integer_matrix,
    reflection_orthogonal,
    skew_part,
    torus_antisymmetrized,
    torus_closed_form,
    weyl_symmetry_check,
)
from charvar.sl2trace import reduce_trace
from charvar.spin4 import SIGMA_MATRIX
from charvar.words import parse_word

from oracle import matrix_to_sympy, pfaffian_oracle

seeds = st.integers(0, 2 ** 40)


def _random_skew(rng, size, bound=5):
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = v, -v
    return Matrix(rows)


@pytest.mark.parametrize("size,count", [(0, 1), (2, 1), (4, 3), (6, 15), (8, 105)])
def test_matching_counts(size, count):
    # (size - 1)!! perfect matchings
    assert len(perfect_matchings(size)) == count


@given(seeds, st.sampled_from([2, 4, 6]))
def test_pfaffian_matches_expansion(seed, size):
    s = _random_skew(random.Random(seed), size)
    oracle = pfaffian_oracle(matrix_to_sympy(s).tolist())
    assert pfaffian(s) == int(oracle)


@given(seeds, st.sampled_from([2, 4, 6, 8]))
def test_pfaffian_squared_is_det(seed, size):
    s = _random_skew(random.Random(seed), size)
    assert pfaffian(s) ** 2 == s.det()


def test_pfaffian_small():
    assert pfaffian(Matrix([[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]])) == 8


def test_pfaffian_input_validation():
    with pytest.raises(ValueError):
        pfaffian(Matrix([[0, 1], [1, 0]]))
    with pytest.raises(ValueError):
        pfaffian(Matrix.zeros(3, 3))
    with pytest.raises(ValueError):
        pfaffian(Matrix.zeros(MAX_PFAFFIAN_DIM + 2, MAX_PFAFFIAN_DIM + 2))


@given(seeds)
def test_polarization_on_the_diagonal(seed):
    # Pf((t1 + t2) S) = (t1 + t2)^2 Pf(S): the t1 t2 coefficient is 2 Pf(S)
    s = _random_skew(random.Random(seed), 4)
    assert polarized_pfaffian([s, s]) == 2 * pfaffian(s)


@given(seeds)
def test_polarization_is_symmetric_and_bilinear(seed):
    rng = random.Random(seed)
    s1, s2, s3 = (_random_skew(rng, 4) for _ in range(3))
    assert polarized_pfaffian([s1, s2]) == polarized_pfaffian([s2, s1])
    assert polarized_pfaffian([s1 + s3, s2]) == polarized_pfaffian([s1, s2]) + polarized_pfaffian([s3, s2])


def test_calibration_constant():
    norm = calibrate_kappa(samples=4)
    assert norm.kappa == 4
    assert default_normalization(2).kappa == 4
    assert default_normalization(3).kappa == 8


def test_q4_tau_formula():
    expected = Polynomial.parse("-4*t1_1*t2_1*t12_2 + 4*t12_1*t1_2*t2_2")
    assert q4_tau(parse_word("g1"), parse_word("g2")) == expected


@pytest.mark.parametrize("w", ["g1", "g2", "g1 g2", "g1 g2^-1"])
def test_q4_on_the_diagonal(w):
    word = parse_word(w)
    assert q4_tau(word, word) == 8 * (reduce_trace(word, 1) ** 2 - reduce_trace(word, 2) ** 2)


@given(seeds)
def test_sign_law(seed):
    rng = random.Random(seed)
    x1, x2 = random_integer_matrix(4, rng), random_integer_matrix(4, rng)
    q = q_form([x1, x2])
    assert q_form([SIGMA_MATRIX @ x @ SIGMA_MATRIX for x in (x1, x2)]) == -q


@given(seeds)
def test_orthogonal_conjugation_scales_by_det(seed):
    rng = random.Random(seed)
    x1, x2 = random_integer_matrix(4, rng), random_integer_matrix(4, rng)
    g = cayley_orthogonal(4, rng)
    r = reflection_orthogonal(4, rng)
    assert g @ g.T == Matrix.identity(4) and r.det() == -1
    q = q_form([x1, x2])
    assert q_form([g @ x1 @ g.T, g @ x2 @ g.T]) == q
    assert q_form([r @ x1 @ r.T, r @ x2 @ r.T]) == -q


def test_q_form_on_symmetric_input_vanishes():
    x = Matrix([[1, 2, 3, 4], [2, 5, 6, 7], [3, 6, 8, 9], [4, 7, 9, 10]])
    assert q_form([x, x]) == 0


def test_q_form_shape_checks():
    with pytest.raises(ValueError):
        q_form([Matrix.identity(4)])
    with pytest.raises(ValueError):
        q_form([Matrix.identity(4), Matrix.identity(4)], QNormalization(3, GaussianRational(8)))


def test_torus_values():
    assert str(q_torus(2, 1)) == "-8*x1*x2 + 8*x1*x2^-1 + 8*x1^-1*x2 - 8*x1^-1*x2^-1"
    assert q_torus(1, 1) == Polynomial.parse("(2 i)*x1 - (2 i)*x1^-1")
    assert q_torus(2, 0).is_zero()
    for k in (1, 2, 3):
        q = q_torus(2, k)
        assert not q.is_zero()
        assert q == torus_closed_form(2, k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_torus_closed_form_all_ranks(n):
    assert q_torus(n, 2) == torus_closed_form(n, 2)


def test_weyl_symmetry():
    assert weyl_symmetry_check(q_torus(2, 1), 2)
    assert weyl_symmetry_check(q_torus(3, 1), 3)
    assert not weyl_symmetry_check(Polynomial.var("x1"), 2)


def test_torus_antisymmetrized():
    assert torus_antisymmetrized(2, [1, 1]).is_zero()
    assert not torus_antisymmetrized(2, [1, 2]).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_half_spin_scale(n):
    # turns n! kappa i^n prod(x - 1/x) with kappa = 2^n into prod(x - 1/x)
    scale = half_spin_difference_scale(n)
    assert scale * math.factorial(n) * GaussianRational(0, 2) ** n == 1
