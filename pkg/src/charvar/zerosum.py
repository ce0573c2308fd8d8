"""Minimal zero-sum multisets over (Z/m)^N, Davenport constants, and
synthesis of generating sets for quotient-group character rings.

A multiset of vectors is *minimal zero-sum* when it sums to zero and no
proper nonempty submultiset does. If ``g_1..g_k`` are generators of weight
``v(g_i)`` and their weight multiset is minimal zero-sum, the product
``g_1 * ... * g_k`` is invariant under the central quotient; together these
products generate the invariant ring.
"""

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceeded

DEFAULT_BUDGET = 4096


def budget_from_env(default=DEFAULT_BUDGET):
    value = os.environ.get("CHARVAR_BUDGET")
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"CHARVAR_BUDGET must be an integer, got {value!r}") from None


class _Group:
    """(Z/m)^N with elements encoded as integers 0 .. m^N - 1."""

    def __init__(self, m, n):
        self.m = m
        self.n = n
        self.order = m ** n
        self.vectors = list(itertools.product(range(m), repeat=n))
        self.code = {v: k for k, v in enumerate(self.vectors)}
        self.add = [[self.code[tuple((a + b) % m for a, b in zip(u, v))] for v in self.vectors]
                    for u in self.vectors]
        self.neg = [self.code[tuple((-a) % m for a in u)] for u in self.vectors]


def _check_budget(m, n, budget):
    if m < 1 or n < 1:
        raise ValueError("m and N must be positive")
    budget = budget_from_env() if budget is None else budget
    if m ** n > budget:
        raise BudgetExceeded(f"m^N = {m ** n} exceeds budget {budget}")


def _enumerate(group, allowed):
    """Yield minimal zero-sum multisets as nondecreasing code tuples.

    Depth-first over nondecreasing sequences. A node is a zero-sum-free
    multiset T together with the set of its nonempty subset sums. Extending
    by v = -sum(T) always closes a minimal zero-sum multiset; otherwise v is
    admissible only if -v is not already a subset sum.
    """
    allowed = sorted(allowed)
    add, neg = group.add, group.neg
    stack = [((), frozenset(), 0, 0)]  # multiset, subset sums, total, start index
    while stack:
        seq, sums, total, start = stack.pop()
        need = neg[total]
        for idx in range(len(allowed) - 1, start - 1, -1):
            v = allowed[idx]
            if v == need:
                yield seq + (v,)
                continue
            if v == 0 or neg[v] in sums:
                continue
            new_sums = sums | {v} | {add[s][v] for s in sums}
            stack.append((seq + (v,), frozenset(new_sums), add[total][v], idx))


@dataclass(frozen=True)
class ZeroSumMultiset:
    """A minimal zero-sum multiset of vectors in (Z/m)^N, stored sorted."""

    vectors: tuple
    m: int

    def __post_init__(self):
        vecs = tuple(sorted(tuple(x % self.m for x in v) for v in self.vectors))
        object.__setattr__(self, "vectors", vecs)
        if not vecs:
            raise ValueError("empty multiset")
        if not is_minimal_zero_sum(vecs, self.m):
            raise ValueError(f"not a minimal zero-sum multiset: {vecs}")

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def is_minimal_zero_sum(vectors, m):
    """Sum is zero and no proper nonempty submultiset sums to zero (subset-sum DP)."""
    if not vectors:
        return False
    n = len(vectors[0])
    zero = (0,) * n
    total = tuple(sum(c) % m for c in zip(*vectors))
    if total != zero:
        return False
    sums = set()
    for v in vectors[:-1]:
        v = tuple(x % m for x in v)
        sums = sums | {v} | {tuple((a + b) % m for a, b in zip(s, v)) for s in sums}
        if zero in sums:
            return False
    return True


def minimal_zero_sum_multisets(m, n, budget=None, support=None):
    """All minimal zero-sum multisets of (Z/m)^N, sorted canonically.

    ``support`` optionally restricts the vectors that may appear.
    """
    _check_budget(m, n, budget)
    group = _Group(m, n)
    if support is None:
        allowed = range(group.order)
    else:
        allowed = {group.code[tuple(x % m for x in v)] for v in support}
    found = []
    for codes in _enumerate(group, allowed):
        found.append(tuple(group.vectors[c] for c in codes))
    found.sort(key=lambda vs: (len(vs), vs))
    return [ZeroSumMultiset(vs, m) for vs in found]


def davenport(m, n, budget=None):
    """Length of the longest minimal zero-sum multiset over (Z/m)^N."""
    _check_budget(m, n, budget)
    return _davenport(m, n)


@lru_cache(maxsize=None)
def _davenport(m, n):
    group = _Group(m, n)
    best = 0
    for codes in _enumerate(group, range(group.order)):
        if len(codes) > best:
            best = len(codes)
    return best


def davenport_bounds(m, n):
    """``(lower, upper)`` with lower = N(m-1)+1 and upper the logarithmic bound.

    The upper bound is rounded outward (up) so it is safe to compare against.
    """
    lower = n * (m - 1) + 1
    ln = math.nextafter(math.log(m), math.inf) if m > 1 else 0.0
    upper = math.nextafter((m - 1) * (1 + (n - 1) * m * ln) + 1, math.inf)
    return lower, upper


@dataclass(frozen=True)
class WeightedGenerator:
    """A generator with a weight in (Z/m)^N; ``kind`` is 'trace' or 'q-invariant'."""

    name: str
    weight: tuple
    kind: str = "trace"

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(self.weight))
        if self.kind not in ("trace", "q-invariant"):
            raise ValueError(f"unknown generator kind {self.kind!r}")


def synthesize_generators(generators, m, n=None, budget=None):
    """All products g_1...g_k of named generators whose weight multiset is minimal zero-sum.

    Returns sorted tuples of names (a product is a multiset of names).
    """
    gens = list(generators)
    if not gens:
        return []
    n = len(gens[0].weight) if n is None else n
    by_weight = {}
    for g in gens:
        if len(g.weight) != n:
            raise ValueError(f"generator {g.name!r} has weight of wrong length")
        w = tuple(x % m for x in g.weight)
        by_weight.setdefault(w, []).append(g.name)
    for names in by_weight.values():
        names.sort()
    products = set()
    for ms in minimal_zero_sum_multisets(m, n, budget, support=by_weight.keys()):
        counts = {}
        for v in ms:
            counts[v] = counts.get(v, 0) + 1
        choices = [itertools.combinations_with_replacement(by_weight[v], c) for v, c in counts.items()]
        for combo in itertools.product(*choices):
            products.add(tuple(sorted(itertools.chain.from_iterable(combo))))
    return sorted(products, key=lambda p: (len(p), p))


def character_phase(product, weights, character, m):
    """Exponent of the m-th root of unity by which ``character`` scales ``product``.

    ``character`` is a vector chi in (Z/m)^N acting on a generator of weight v
    by zeta^(chi . v). A product is invariant iff this is 0 for every chi.
    """
    total = 0
    for name in product:
        total += sum(c * w for c, w in zip(character, weights[name]))
    return total % m


def is_invariant(product, weights, m):
    n = len(next(iter(weights.values())))
    return all(character_phase(product, weights, chi, m) == 0
               for chi in itertools.product(range(m), repeat=n))
