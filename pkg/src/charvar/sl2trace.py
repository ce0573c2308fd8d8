"""SL(2) trace calculus on F_2.

Every trace function of a pair of SL(2) matrices is a polynomial in the
Fricke coordinates ``t1 = tr A``, ``t2 = tr B`` and ``t12 = tr AB``.
:func:`reduce_trace` computes that polynomial using only

    tr(g^-1) = tr(g)          and          tr(g) tr(h) = tr(gh) + tr(gh^-1).

Exact integer SL(2) samples and word evaluation serve as an oracle.
"""

import random
from functools import lru_cache

from .exactcore import ONE, ZERO, Matrix, Polynomial, register_variables
from .words import FreeWord

#: Fricke coordinate names, indexed by the F_2 element they trace.
TAU_NAMES = {"1": "t1", "2": "t2", "12": "t12"}

register_variables(["t1", "t2", "t12"])
register_variables(["t1_1", "t2_1", "t12_1", "t1_2", "t2_2", "t12_2"])


def tau_var(label, copy=None):
    """Variable name for tau_label, optionally in copy 1 or 2 (``t12_2``)."""
    base = TAU_NAMES[str(label)]
    if copy is None:
        return base
    if copy not in (1, 2):
        raise ValueError("copy index must be 1 or 2")
    return f"{base}_{copy}"


def copy_renaming(copy):
    return {tau_var(k): tau_var(k, copy) for k in TAU_NAMES}


T1 = Polynomial.var("t1")
T2 = Polynomial.var("t2")
T12 = Polynomial.var("t12")
_BASE = {(1,): T1, (2,): T2, (1, 2): T12}


# canonical cyclic words ------------------------------------------------------

def _free_reduce(seq):
    out = []
    for s in seq:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return out


def _cyclic_reduce(seq):
    seq = _free_reduce(seq)
    lo, hi = 0, len(seq)
    while hi - lo >= 2 and seq[lo] == -seq[hi - 1]:
        lo += 1
        hi -= 1
    return tuple(seq[lo:hi])


def canonical_cyclic(seq):
    """Representative of the conjugacy class of ``seq`` and its inverse.

    Among all rotations of the cyclically reduced word and of its inverse,
    pick the one with fewest inverse letters, then the lexicographically
    smallest. Trace is constant on this class.
    """
    w = _cyclic_reduce(seq)
    if not w:
        return w
    inv = tuple(-s for s in reversed(w))
    n = len(w)
    best = None
    for cand in (w, inv):
        neg = sum(1 for s in cand if s < 0)
        for r in range(n):
            rot = cand[r:] + cand[:r]
            key = (neg, rot)
            if best is None or key < best:
                best = key
    return best[1]


@lru_cache(maxsize=None)
def _trace(w):
    # w is canonical: cyclically reduced, with at most half its letters inverted
    n = len(w)
    if n == 0:
        return Polynomial.const(2)
    if w in _BASE:
        return _BASE[w]
    negs = [k for k, s in enumerate(w) if s < 0]
    if negs:
        # w = U x^-1  =>  tr w = tr x tr U - tr(U x)
        k = negs[-1]
        rot = w[k + 1:] + w[:k + 1]
        x = -rot[-1]
        u = rot[:-1]
        return _BASE[(x,)] * _trace(canonical_cyclic(u)) - _trace(canonical_cyclic(u + (x,)))
    # positive word: w = x U x V  =>  tr w = tr(xU) tr(xV) - tr(U V^-1)
    first = {}
    for k, s in enumerate(w):
        if s in first:
            i, j = first[s], k
            rot = w[i:] + w[:i]
            j -= i
            xu, xv = rot[:j], rot[j:]
            u, v = xu[1:], xv[1:]
            v_inv = tuple(-s2 for s2 in reversed(v))
            return (_trace(canonical_cyclic(xu)) * _trace(canonical_cyclic(xv))
                    - _trace(canonical_cyclic(u + v_inv)))
        first[s] = k
    raise AssertionError(f"unreachable trace word {w}")


def reduce_trace(w, copy=None):
    """Fricke polynomial P with P(tr A, tr B, tr AB) = tr(w(A, B)).

    With ``copy`` in {1, 2} the result is written in ``t1_copy``, ``t2_copy``,
    ``t12_copy`` instead of ``t1``, ``t2``, ``t12``.
    """
    if isinstance(w, FreeWord):
        if w.n > 2 and any(g > 2 for g, _ in w.letters):
            raise ValueError("trace reduction is only available for F_2")
        seq = w.sequence()
    else:
        seq = tuple(w)
        if any(abs(s) > 2 or s == 0 for s in seq):
            raise ValueError("trace reduction is only available for F_2")
    p = _trace(canonical_cyclic(seq))
    if copy is not None:
        p = p.rename(copy_renaming(copy))
    return p


def fricke_bindings(a, b, copy=None):
    """Bindings ``{t1: tr A, t2: tr B, t12: tr AB}`` for evaluating Fricke polynomials."""
    return {tau_var("1", copy): a.trace(), tau_var("2", copy): b.trace(),
            tau_var("12", copy): (a @ b).trace()}


# exact samples ---------------------------------------------------------------

def elementary(kind, k):
    """E12(k) = [[1, k], [0, 1]] or E21(k) = [[1, 0], [k, 1]]."""
    if kind == "E12":
        return Matrix([[1, k], [0, 1]])
    if kind == "E21":
        return Matrix([[1, 0], [k, 1]])
    raise ValueError(f"unknown elementary matrix {kind!r}")


def elementary_product(factors):
    result = Matrix.identity(2)
    for kind, k in factors:
        result = result @ elementary(kind, k)
    return result


def sample_sl2(seed, size_bound=3, length=None):
    """Seeded exact integer matrix of determinant 1.

    Built as a product of ``length`` elementary matrices (default 2 to 5)
    with nonzero parameters of absolute value at most ``size_bound``.
    """
    rng = random.Random(seed)
    if length is None:
        length = rng.randint(2, 5)
    factors = []
    for t in range(length):
        k = rng.randint(1, size_bound) * rng.choice((1, -1))
        factors.append(("E12" if (t + rng.randint(0, 1)) % 2 == 0 else "E21", k))
    return elementary_product(factors)


def sample_sl2_pair(seed, size_bound=3):
    rng = random.Random(seed)
    return (sample_sl2(rng.getrandbits(64), size_bound),
            sample_sl2(rng.getrandbits(64), size_bound))


def sl2_inverse(m):
    """Inverse through the adjugate; exact for any invertible 2x2 matrix."""
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    det = a * d - b * c
    if det == 1:
        return Matrix([[d, -b], [-c, a]])
    return m.inverse()


def evaluate_word(w, assignment):
    """The matrix product spelled by ``w`` with g_i -> assignment[i-1]."""
    if len(assignment) != w.n:
        raise ValueError(f"need {w.n} matrices, got {len(assignment)}")
    size = assignment[0].rows
    inverses = {}
    result = Matrix.identity(size)
    for g, e in w.letters:
        if e > 0:
            m = assignment[g - 1]
        else:
            if g not in inverses:
                base = assignment[g - 1]
                inverses[g] = sl2_inverse(base) if size == 2 else base.inverse()
            m = inverses[g]
        result = result @ (m ** abs(e))
    return result


def random_word(rng, max_length, n=2):
    """A random reduced word of length at most ``max_length``."""
    length = rng.randint(0, max_length)
    seq = []
    while len(seq) < length:
        s = rng.choice([g for g in range(1, n + 1)] + [-g for g in range(1, n + 1)])
        if seq and seq[-1] == -s:
            continue
        seq.append(s)
    return FreeWord.from_sequence(seq, n)


# Newton identities -----------------------------------------------------------

def exterior_trace(power_traces, k):
    """tr of the k-th exterior power, from power sums p_d = tr(M^d).

    Uses Newton's identities  j e_j = sum_{i=1..j} (-1)^(i-1) e_{j-i} p_i.
    ``power_traces`` is ``[p_1, p_2, ...]``; values may be scalars or
    polynomials.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > len(power_traces):
        raise ValueError(f"need {k} power traces, got {len(power_traces)}")
    e = [ONE]
    for j in range(1, k + 1):
        acc = ZERO
        for i in range(1, j + 1):
            term = e[j - i] * power_traces[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / j)
    return e[k]


def power_traces(m, k):
    """``[tr M, tr M^2, ..., tr M^k]``."""
    out = []
    p = m
    for _ in range(k):
        out.append(p.trace())
        p = p @ m
    return out
