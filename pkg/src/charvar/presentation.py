"""Generators and relations for the SO(4) character ring of F_2.

The ring sits inside C[tau_{1,i}, tau_{2,i}, tau_{12,i} : i = 1, 2] (two
copies of the SL(2) Fricke coordinates) as the invariants of (Z/2)^2. It is
generated by 17 monomials

    a_{i,j,k} = tau_{i,j} tau_{i,k},   b_{j,k} = tau_{12,j} tau_{12,k}   (j <= k),
    c_{i,j,k} = tau_{1,i} tau_{2,j} tau_{12,k}.

Because the target variables are algebraically independent, the kernel of
the induced map from the polynomial ring on the generators splits into
fibers over target monomials. That makes degree-truncated linear algebra a
complete check of any proposed relation set up to a degree bound.
"""

import itertools
from dataclasses import dataclass, field

from .exactcore import (
    ONE,
    Matrix,
    Monomial,
    Polynomial,
    RowSpace,
    kernel_basis,
    register_variables,
)
from .errors import BudgetExceeded
from .qinv import q4_tau
from .sl2trace import reduce_trace, tau_var
from .words import parse_word

HAT = {1: 2, 2: 1}


def a_name(i, j, k):
    j, k = min(j, k), max(j, k)
    return f"a_{i}_{j}_{k}"


def b_name(j, k):
    j, k = min(j, k), max(j, k)
    return f"b_{j}_{k}"


def c_name(i, j, k):
    return f"c_{i}_{j}_{k}"


A_NAMES = [a_name(i, j, k) for i in (1, 2) for j, k in ((1, 1), (1, 2), (2, 2))]
B_NAMES = [b_name(j, k) for j, k in ((1, 1), (1, 2), (2, 2))]
C_NAMES = [c_name(i, j, k) for i in (1, 2) for j in (1, 2) for k in (1, 2)]
SO4_GENERATORS = A_NAMES + B_NAMES + C_NAMES
PSL_GENERATORS = ["g1", "g2", "g3", "g4"]
register_variables(SO4_GENERATORS + PSL_GENERATORS)


def _tau(label, copy):
    return tau_var(label, copy)


# monomial maps ---------------------------------------------------------------

@dataclass
class MonomialMap:
    """Generators sent to monomials (coefficient 1) in a target polynomial ring."""

    images: dict
    order: list = field(default_factory=list)

    def __post_init__(self):
        if not self.order:
            self.order = list(self.images)
        for name, img in self.images.items():
            if not isinstance(img, Polynomial):
                raise TypeError(f"image of {name} must be a Polynomial")
            if len(img) != 1 or next(iter(img.items()))[1] != ONE:
                raise ValueError(f"image of {name} is not a monomial: {img}")
        self._mono = {name: next(iter(img.terms)) for name, img in self.images.items()}

    @property
    def generators(self):
        return list(self.order)

    def monomial(self, name):
        return self._mono[name]

    def degree(self, name):
        return self._mono[name].degree

    def target_variables(self):
        out = set()
        for img in self.images.values():
            out.update(img.variables())
        return sorted(out)

    def image_of_monomial(self, gen_mono):
        """Target monomial for a Monomial in the generator variables."""
        result = Monomial()
        for name, e in gen_mono.as_dict().items():
            result = result * self._mono[name] ** e
        return result

    def apply(self, p):
        """Image of a polynomial in the generators."""
        unknown = set(p.variables()) - set(self.images)
        if unknown:
            raise KeyError(f"unknown generator(s): {', '.join(sorted(unknown))}")
        acc = {}
        for mono, coef in p.items():
            img = self.image_of_monomial(mono)
            s = acc.get(img, 0) + coef
            if s:
                acc[img] = s
            else:
                acc.pop(img, None)
        return Polynomial(acc)


def so4_generator_map():
    """The 17 generators a, b, c over the six copy-indexed Fricke coordinates."""
    t = {(lab, cp): Polynomial.var(_tau(lab, cp)) for lab in ("1", "2", "12") for cp in (1, 2)}
    images = {}
    for i in (1, 2):
        for j, k in ((1, 1), (1, 2), (2, 2)):
            images[a_name(i, j, k)] = t[(str(i), j)] * t[(str(i), k)]
    for j, k in ((1, 1), (1, 2), (2, 2)):
        images[b_name(j, k)] = t[("12", j)] * t[("12", k)]
    for i, j, k in itertools.product((1, 2), repeat=3):
        images[c_name(i, j, k)] = t[("1", i)] * t[("2", j)] * t[("12", k)]
    return MonomialMap(images, list(SO4_GENERATORS))


def psl2_generator_map():
    """g1 = t1^2, g2 = t2^2, g3 = t12^2, g4 = t1 t2 t12."""
    t1, t2, t12 = (Polynomial.var(n) for n in ("t1", "t2", "t12"))
    return MonomialMap({"g1": t1 ** 2, "g2": t2 ** 2, "g3": t12 ** 2, "g4": t1 * t2 * t12},
                       list(PSL_GENERATORS))


# relations -------------------------------------------------------------------

@dataclass
class RelationSet:
    """Named polynomials in the generator variables."""

    relations: list  # of (name, Polynomial)

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    def without(self, family):
        return RelationSet([(n, p) for n, p in self.relations if not n.startswith(family + "[")])


def _v(name):
    return Polynomial.var(name)


FAMILIES = ("aa", "bb", "cc", "a1c", "a2c", "bc")


def _family_instances(family, printed_bc=False):
    idx = (1, 2)
    if family == "aa":
        for i, j, k, j2, k2 in itertools.product(idx, repeat=5):
            yield (i, j, k, j2, k2), (_v(a_name(i, j, k)) * _v(a_name(i, j2, k2))
                                      - _v(a_name(i, j, j2)) * _v(a_name(i, k, k2)))
    elif family == "bb":
        for j, k, j2, k2 in itertools.product(idx, repeat=4):
            yield (j, k, j2, k2), (_v(b_name(j, k)) * _v(b_name(j2, k2))
                                   - _v(b_name(j, j2)) * _v(b_name(k, k2)))
    elif family == "cc":
        for i, j, k, i2, j2, k2 in itertools.product(idx, repeat=6):
            yield (i, j, k, i2, j2, k2), (_v(c_name(i, j, k)) * _v(c_name(i2, j2, k2))
                                          - _v(a_name(1, i, i2)) * _v(a_name(2, j, j2)) * _v(b_name(k, k2)))
    elif family == "a1c":
        for i, j, k, j2, k2 in itertools.product(idx, repeat=5):
            yield (i, j, k, j2, k2), (_v(a_name(1, j, k)) * _v(c_name(i, j2, k2))
                                      - _v(a_name(1, i, k)) * _v(c_name(j, j2, k2)))
    elif family == "a2c":
        for i, j, k, j2, k2 in itertools.product(idx, repeat=5):
            yield (i, j, k, j2, k2), (_v(a_name(2, j, k)) * _v(c_name(i, j2, k2))
                                      - _v(a_name(2, j2, k)) * _v(c_name(i, j, k2)))
    elif family == "bc":
        for i, j, k, j2, k2 in itertools.product(idx, repeat=5):
            last = j if printed_bc else k
            yield (i, j, k, j2, k2), (_v(b_name(j, k)) * _v(c_name(i, j2, k2))
                                      - _v(b_name(j, k2)) * _v(c_name(i, j2, last)))
    else:
        raise ValueError(f"unknown relation family {family!r}")


def so4_relations(families=FAMILIES, printed_bc=False):
    """All nonzero instantiations of the listed families, deduplicated up to sign.

    ``printed_bc=True`` uses ``b_{j,k} c_{i,j',k'} - b_{j,k'} c_{i,j',j}``
    instead of the homogeneous form ``... c_{i,j',k}``; only the latter lies
    in the kernel.
    """
    seen = set()
    out = []
    for fam in families:
        for idx, p in _family_instances(fam, printed_bc):
            if p.is_zero() or p in seen or -p in seen:
                continue
            seen.add(p)
            out.append((f"{fam}[{','.join(map(str, idx))}]", p))
    return RelationSet(out)


def psl2_relations():
    g1, g2, g3, g4 = (_v(n) for n in PSL_GENERATORS)
    return RelationSet([("g1g2g3-g4^2", g1 * g2 * g3 - g4 ** 2)])


@dataclass(frozen=True)
class RelationVerdict:
    name: str
    ok: bool
    residual: Polynomial


def verify_relations(mmap, rels):
    """Image of each relation; ``ok`` iff it is the zero polynomial."""
    out = []
    for name, p in rels:
        img = mmap.apply(p)
        out.append(RelationVerdict(name, img.is_zero(), img))
    return out


# completeness ----------------------------------------------------------------

def generator_monomials(mmap, d):
    """All monomials in the generators whose image has degree ``d``."""
    gens = sorted(mmap.generators, key=lambda n: (mmap.degree(n), n))
    out = []

    def rec(pos, remaining, acc):
        if remaining == 0:
            out.append(Monomial(dict(acc)))
            return
        for idx in range(pos, len(gens)):
            g = gens[idx]
            dg = mmap.degree(g)
            if dg > remaining:
                continue
            acc[g] = acc.get(g, 0) + 1
            rec(idx, remaining - dg, acc)
            acc[g] -= 1
            if not acc[g]:
                del acc[g]

    rec(0, d, {})
    return out


@dataclass
class DegreeCheck:
    degree: int
    monomials: int
    kernel_dim: int
    span_dim: int
    contained: bool

    @property
    def complete(self):
        return self.contained and self.kernel_dim == self.span_dim


@dataclass
class CompletenessCertificate:
    bound: int
    checks: list

    @property
    def complete(self):
        return all(c.complete for c in self.checks)

    def first_failure(self):
        for c in self.checks:
            if not c.complete:
                return c.degree
        return None

    def label(self):
        if self.complete:
            return f"verified through degree {self.bound}"
        return f"incomplete at degree {self.first_failure()}"


def _relation_degree(mmap, p):
    degs = {sum(mmap.degree(n) * e for n, e in m.as_dict().items()) for m in p.terms}
    if len(degs) != 1:
        raise ValueError(f"relation is not homogeneous: {p}")
    return degs.pop()


def completeness_certificate(mmap, rels, bound, max_monomials=20000):
    """Degree-by-degree check that the relations span the kernel of ``mmap``.

    In each degree d the kernel of the linear map on generator monomials is
    computed fiber by fiber with :func:`kernel_basis`; the relation multiples
    (relation times generator monomial of complementary degree) are reduced in
    a :class:`RowSpace`. The degree is complete when every kernel vector lies
    in that span and the dimensions agree.
    """
    rel_list = [(name, p, _relation_degree(mmap, p)) for name, p in rels]
    for name, p, _ in rel_list:
        if not mmap.apply(p).is_zero():
            raise ValueError(f"relation {name} does not map to zero")
    checks = []
    for d in range(bound + 1):
        monos = generator_monomials(mmap, d)
        if len(monos) > max_monomials:
            raise BudgetExceeded(f"{len(monos)} generator monomials in degree {d}")
        index = {m: k for k, m in enumerate(monos)}
        fibers = {}
        for m in monos:
            fibers.setdefault(mmap.image_of_monomial(m), []).append(index[m])
        kernel = []
        for cols in fibers.values():
            if len(cols) < 2:
                continue
            ones = Matrix([[1] * len(cols)])
            for vec in kernel_basis(ones):
                kernel.append({c: v for c, v in zip(cols, vec) if v})
        span = RowSpace()
        for _, p, rd in rel_list:
            if rd > d:
                continue
            for m in generator_monomials(mmap, d - rd):
                vec = {}
                for mono, coef in p.items():
                    vec[index[mono * m]] = coef
                span.add(vec)
        contained = all(span.contains(v) for v in kernel)
        checks.append(DegreeCheck(d, len(monos), len(kernel), span.rank, contained))
    return CompletenessCertificate(bound, checks)


# the involution sigma --------------------------------------------------------

def _hat_name(name):
    kind, *idx = name.split("_")
    idx = [int(x) for x in idx]
    if kind == "a":
        return a_name(idx[0], HAT[idx[1]], HAT[idx[2]])
    if kind == "b":
        return b_name(HAT[idx[0]], HAT[idx[1]])
    if kind == "c":
        return c_name(*(HAT[x] for x in idx))
    raise ValueError(f"not an SO(4) generator: {name}")


SIGMA_RENAMING = {name: _hat_name(name) for name in SO4_GENERATORS}


def sigma_action(p):
    """Apply the hat swap 1 <-> 2 to every index of every generator."""
    return p.rename(SIGMA_RENAMING)


def copy_swap(p):
    """Swap copy indices 1 <-> 2 on the Fricke coordinates."""
    mapping = {}
    for lab in ("1", "2", "12"):
        mapping[_tau(lab, 1)] = _tau(lab, 2)
        mapping[_tau(lab, 2)] = _tau(lab, 1)
    return p.rename(mapping)


# The q's leading the t-list, in order t1..t7.
T_LEADS = ["c_1_1_2", "c_1_2_1", "c_1_2_2", "a_1_1_1", "a_2_1_1", "b_1_1", "c_1_1_1"]


@dataclass
class PQSplit:
    p: list
    q: list
    t: list


def pq_split(generators=None, involution=sigma_action, leads=T_LEADS):
    """p = r + sigma(r), q = r - sigma(r) for each generator r.

    The t-list is 1 followed by the nonzero q's up to sign, ordered by
    ``leads`` (each lead r contributes r - sigma(r)); with ``leads=None`` they
    follow the generator order.
    """
    generators = SO4_GENERATORS if generators is None else generators
    ps, qs = [], []
    for name in generators:
        r = _v(name)
        s = involution(r)
        p, q = r + s, r - s
        if p not in ps and not p.is_zero():
            ps.append(p)
        if not q.is_zero() and q not in qs and -q not in qs:
            qs.append(q)
    if leads is None:
        ordered = list(qs)
    else:
        ordered = []
        for name in leads:
            q = _v(name) - involution(_v(name))
            if q not in qs and -q not in qs:
                raise ValueError(f"{name} does not give one of the q's")
            ordered.append(q)
        if len(ordered) != len(qs):
            raise ValueError("leads do not cover every q")
    return PQSplit(ps, qs, [Polynomial.const(1)] + ordered)


def t_list():
    return pq_split().t


# identities in the Fricke coordinates ---------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: Polynomial

    @property
    def ok(self):
        return self.residual.is_zero()


def _q4(u, v):
    return q4_tau(parse_word(u), parse_word(v))


def verify_t_identities():
    """Express t1..t7 through Q4 and the generators; residuals must vanish."""
    mmap = so4_generator_map()
    t = [mmap.apply(x) for x in t_list()]
    a = {n: mmap.apply(_v(n)) for n in A_NAMES}
    quarter = Polynomial.const(1) / 4
    checks = [
        ("t1 = -Q4(g1,g2)/4", t[1] + _q4("g1", "g2") * quarter),
        ("t4 = Q4(g1,g1)/8", t[4] - _q4("g1", "g1") / 8),
        ("t5 = Q4(g2,g2)/8", t[5] - _q4("g2", "g2") / 8),
        ("t6 = Q4(g1g2,g1g2)/8", t[6] - _q4("g1 g2", "g1 g2") / 8),
        ("t2 = Q4(g2g1^-1,g1)/4 + a212 t4",
         t[2] - (_q4("g2 g1^-1", "g1") * quarter + a["a_2_1_2"] * t[4])),
        ("t3 = -Q4(g1g2^-1,g2)/4 - a112 t5",
         t[3] - (-_q4("g1 g2^-1", "g2") * quarter - a["a_1_1_2"] * t[5])),
        ("t7 formula",
         t[7] - ((t[4] * (a["a_2_1_1"] + a["a_2_2_2"]) + t[5] * (a["a_1_1_1"] + a["a_1_2_2"])) * quarter
                 + t[6] / 2 - _q4("g1 g2^-1", "g1 g2^-1") / 16)),
    ]
    for w in ("g1", "g2", "g1 g2", "g1 g2^-1"):
        word = parse_word(w)
        target = 8 * (reduce_trace(word, 1) ** 2 - reduce_trace(word, 2) ** 2)
        checks.append((f"Q4(w,w) = 8(tau_w1^2 - tau_w2^2) for w = {w}", _q4(w, w) - target))
    return [IdentityCheck(n, r) for n, r in checks]


def defining_character(w):
    """Trace of the 4-dim defining representation: tau_{w,1} tau_{w,2}."""
    word = parse_word(w)
    return reduce_trace(word, 1) * reduce_trace(word, 2)


def half_spin_character(w, copy):
    """Trace of the 3-dim representation through copy ``copy``: tau_{w,copy}^2 - 1."""
    return reduce_trace(parse_word(w), copy) ** 2 - 1


def verify_ft_generators():
    """Each listed full-trace generator written through characters, residual zero.

    The characters are the defining one and the two 3-dimensional ones; the
    right-hand sides use nothing else.
    """
    t = {(lab, cp): Polynomial.var(_tau(lab, cp)) for lab in ("1", "2", "12") for cp in (1, 2)}
    chi = defining_character
    checks = []
    for cp in (1, 2):
        def sq(w, cp=cp):  # tau_{w,cp}^2 through the 3-dim character
            return half_spin_character(w, cp) + 1

        for lab, w in (("1", "g1"), ("2", "g2"), ("12", "g1 g2")):
            checks.append((f"tau_{lab},{cp}^2", t[(lab, cp)] ** 2 - sq(w)))
        lhs = t[("1", cp)] * t[("2", cp)] * t[("12", cp)]
        rhs = -(sq("g1^2 g2") - sq("g1") * sq("g1 g2") - sq("g2")) / 2
        checks.append((f"tau_1,{cp} tau_2,{cp} tau_12,{cp}", lhs - rhs))
    for lab, w in (("1", "g1"), ("2", "g2"), ("12", "g1 g2")):
        checks.append((f"tau_{lab},1 tau_{lab},2", t[(lab, 1)] * t[(lab, 2)] - chi(w)))
    c = {(i, j, k): t[("1", i)] * t[("2", j)] * t[("12", k)]
         for i, j, k in itertools.product((1, 2), repeat=3)}
    checks.append(("c121 + c212 via g1^2 g2",
                   c[1, 2, 1] + c[2, 1, 2] - (chi("g1") * chi("g1 g2") + chi("g2") - chi("g1^2 g2"))))
    checks.append(("c122 + c211 via g1 g2^2",
                   c[1, 2, 2] + c[2, 1, 1] - (chi("g2") * chi("g1 g2") + chi("g1") - chi("g1 g2^2"))))
    checks.append(("c112 + c221 via g1^-1 g2",
                   c[1, 1, 2] + c[2, 2, 1] - (chi("g1") * chi("g2") + chi("g1 g2") - chi("g1^-1 g2"))))
    return [IdentityCheck(n, r) for n, r in checks]


# module decompositions -------------------------------------------------------

def _monomials_of_degree(variables, d):
    out = []
    for combo in itertools.combinations_with_replacement(variables, d):
        exps = {}
        for v in combo:
            exps[v] = exps.get(v, 0) + 1
        out.append(Monomial(exps))
    return out


def _weight(mono, weights, m=2):
    w = [0] * len(next(iter(weights.values())))
    for name, e in mono.as_dict().items():
        for k, x in enumerate(weights[name]):
            w[k] += x * e
    return tuple(x % m for x in w)


def _poly_vec(p):
    return dict(p.items())


def _spans(generators, targets):
    """RowSpace of ``generators`` (polynomials); True iff every target lies in it."""
    span = RowSpace()
    for g in generators:
        span.add(_poly_vec(g))
    return all(span.contains(_poly_vec(x)) for x in targets), span.rank


FRICKE_WEIGHTS = {"t1": (1, 0), "t2": (0, 1), "t12": (1, 1)}
WEIGHT_MODULE_GENERATORS = {
    (0, 0): ["1"],
    (1, 0): ["t1", "t2*t12"],
    (0, 1): ["t2", "t1*t12"],
    (1, 1): ["t12", "t1*t2"],
}


def verify_weight_modules(bound=6):
    """Each weight component of C[t1, t2, t12] is generated over the weight-zero
    subalgebra C[t1^2, t2^2, t12^2, t1 t2 t12] by the listed elements.

    Checked by exact spans in every degree up to ``bound``.
    """
    pmap = psl2_generator_map()
    variables = ["t1", "t2", "t12"]
    results = []
    invariant_by_degree = {}
    for d in range(bound + 1):
        invariant_by_degree[d] = [pmap.apply(Polynomial({m: 1})) for m in generator_monomials(pmap, d)]
    for weight, gens in WEIGHT_MODULE_GENERATORS.items():
        gens = [Polynomial.parse(g) for g in gens]
        for d in range(bound + 1):
            targets = [Polynomial({m: 1}) for m in _monomials_of_degree(variables, d)
                       if _weight(m, FRICKE_WEIGHTS) == weight]
            products = []
            for g in gens:
                gd = g.degree()
                if gd <= d:
                    products.extend(f * g for f in invariant_by_degree[d - gd])
            ok, _ = _spans(products, targets)
            results.append((weight, d, len(targets), ok))
    return results


def _image_space(mmap, d):
    """Distinct target monomials of degree d hit by generator monomials."""
    return sorted({mmap.image_of_monomial(m) for m in generator_monomials(mmap, d)},
                  key=lambda m: m.sort_key())


def verify_t_module(bound=6):
    """Every degree-d element of the ring is sum f_i t_i with sigma-invariant f_i.

    sigma acts on Fricke coordinates by swapping copy indices; the invariant
    part in degree e is spanned by m + sigma(m) over ring monomials m.
    """
    mmap = so4_generator_map()
    ts = [mmap.apply(x) for x in t_list()]
    results = []
    inv = {}
    for e in range(bound + 1):
        basis = []
        seen = set()
        for m in _image_space(mmap, e):
            p = Polynomial({m: 1})
            s = p + copy_swap(p)
            if s not in seen:
                seen.add(s)
                basis.append(s)
        inv[e] = basis
    for d in range(bound + 1):
        targets = [Polynomial({m: 1}) for m in _image_space(mmap, d)]
        products = []
        for t in ts:
            td = t.degree()
            if td <= d:
                products.extend(f * t for f in inv[d - td])
        ok, _ = _spans(products, targets)
        results.append((d, len(targets), ok))
    return results


def t_products_sigma_fixed():
    """Residuals sigma(t_i t_j) - t_i t_j for 1 <= i <= j <= 7."""
    ts = t_list()
    out = []
    for i in range(1, 8):
        for j in range(i, 8):
            prod = ts[i] * ts[j]
            out.append(IdentityCheck(f"t{i} t{j}", sigma_action(prod) - prod))
    return out


# independence in degree 3 ----------------------------------------------------

FT_DEGREE3 = ["c_1_1_1", "c_2_2_2", "c_1_2_1 + c_2_1_2", "c_1_2_2 + c_2_1_1", "c_1_1_2 + c_2_2_1"]


@dataclass
class IndependenceReport:
    ft_rank: int
    with_one: dict
    with_all: int
    sanity_contained: bool
    note: str = ("the full trace algebra has no degree-1 elements, so its degree-3 part "
                 "is the span of its degree-3 generators")

    @property
    def ok(self):
        return (self.ft_rank == 5 and all(r == 6 for r in self.with_one.values())
                and self.with_all == 8 and self.sanity_contained)


def independence_certificate():
    """Ranks over the 8 degree-3 c-monomials: FT span, plus each of t1..t3, plus all."""
    mmap = so4_generator_map()
    ft = [mmap.apply(Polynomial.parse(s)) for s in FT_DEGREE3]
    ts = [mmap.apply(x) for x in t_list()[1:4]]

    def rank_of(polys):
        span = RowSpace()
        for p in polys:
            span.add(_poly_vec(p))
        return span.rank

    with_one = {f"t{k + 1}": rank_of(ft + [ts[k]]) for k in range(3)}
    sanity = mmap.apply(Polynomial.parse("c_1_1_2 + c_2_2_1"))
    contained, _ = _spans(ft, [sanity])
    return IndependenceReport(rank_of(ft), with_one, rank_of(ft + ts), contained)
