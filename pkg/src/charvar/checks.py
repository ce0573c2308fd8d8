"""Named verification suites. Each returns a list of :class:`Item` verdicts."""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import presentation as pres
from .exactcore import ONE, GaussianRational, Matrix, Polynomial
from .qinv import (
    calibrate_kappa,
    cayley_orthogonal,
    q4_tau,
    q_form,
    q_torus,
    random_integer_matrix,
    reflection_orthogonal,
    torus_closed_form,
    weyl_symmetry_check,
)
from .sl2trace import (
    evaluate_word,
    exterior_trace,
    fricke_bindings,
    power_traces,
    random_word,
    reduce_trace,
    sample_sl2_pair,
)
from .spin4 import C1, C2, SIGMA_MATRIX, phi, sigma_conjugate, swap_ab, symbolic_a, symbolic_b, symbolic_phi
from .words import parse_word
from .zerosum import (
    WeightedGenerator,
    davenport,
    davenport_bounds,
    is_invariant,
    minimal_zero_sum_multisets,
    synthesize_generators,
)

DEFAULT_SEED = 20240601
DEFAULT_DEGREE = 8


@dataclass
class Item:
    name: str
    ok: bool
    residual: str = None
    dims: dict = field(default=None)

    def to_json(self):
        out = {"name": self.name, "verdict": "ok" if self.ok else "fail"}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.dims is not None:
            out["dims"] = self.dims
        return out


def _rng(seed, suite):
    return random.Random(f"{seed}:{suite}")


def _residual_item(name, residual):
    """ok iff ``residual`` is zero (polynomial, scalar or matrix)."""
    if isinstance(residual, Matrix):
        zero = all(not residual[i, j] for i in range(residual.rows) for j in range(residual.cols))
        return Item(name, zero, None if zero else str(residual))
    zero = not residual
    return Item(name, zero, None if zero else str(residual))


# fixture matrices, with the common factor 1/2 where it appears
_PHI_FIXTURES = {
    ("C1", "C1"): ("1/2", [["3", "-i", "2i", "0"], ["-i", "1", "2", "0"],
                           ["-2i", "-2", "2", "0"], ["0", "0", "0", "2"]]),
    ("C1", "C2"): ("1/2", [["-1", "i", "0", "-2"], ["i", "1", "-2", "0"],
                           ["0", "2", "1", "i"], ["2", "0", "i", "-1"]]),
    ("C2", "C1"): ("1/2", [["-1", "i", "0", "2"], ["i", "1", "-2", "0"],
                           ["0", "2", "1", "-i"], ["-2", "0", "-i", "-1"]]),
    ("C2", "C2"): ("1", [["1", "0", "0", "0"], ["0", "-1", "0", "0"],
                         ["0", "0", "-1", "0"], ["0", "0", "0", "1"]]),
}


def _gaussian(text):
    if text.endswith("i"):
        coef = text[:-1]
        coef = {"": 1, "-": -1}.get(coef, coef)
        return GaussianRational(0, int(coef))
    return GaussianRational(int(text))


def phi_fixture(a, b):
    scale, rows = _PHI_FIXTURES[(a, b)]
    half = GaussianRational(Fraction(scale))
    return Matrix([[_gaussian(x) * half for x in row] for row in rows])


def suite_spin(seed, degree):
    named = {"C1": C1, "C2": C2}
    out = []
    for (a, b) in _PHI_FIXTURES:
        out.append(_residual_item(f"phi({a},{b}) fixture", phi(named[a], named[b]) - phi_fixture(a, b)))
    return out


def suite_sigma(seed, degree):
    rng = _rng(seed, "sigma")
    out = []
    sym = symbolic_phi()
    swapped = sym.map(lambda p: p.rename(swap_ab()))
    out.append(_residual_item("sigma(phi(a,b)) - phi(b,a) symbolic", sigma_conjugate(sym) - swapped))
    out.append(_residual_item("sigma is conjugation by diag(1,1,1,-1)",
                              sigma_conjugate(sym) - SIGMA_MATRIX @ sym @ SIGMA_MATRIX))
    bad = 0
    for _ in range(100):
        a, b = sample_sl2_pair(rng.getrandbits(64))
        if sigma_conjugate(phi(a, b)) != phi(b, a):
            bad += 1
    out.append(Item("sigma(phi(A,B)) = phi(B,A) on 100 samples", bad == 0, None if not bad else f"{bad} mismatches"))
    mmap = pres.so4_generator_map()
    inv_bad = [g for g in pres.SO4_GENERATORS
               if pres.sigma_action(pres.sigma_action(Polynomial.var(g))) != Polynomial.var(g)]
    out.append(Item("hat swap is an involution on the 17 generators", not inv_bad,
                    ", ".join(inv_bad) or None))
    comm_bad = [g for g in pres.SO4_GENERATORS
                if mmap.apply(pres.sigma_action(Polynomial.var(g))) != pres.copy_swap(mmap.apply(Polynomial.var(g)))]
    out.append(Item("hat swap matches copy swap on images", not comm_bad, ", ".join(comm_bad) or None))
    return out


def suite_orthogonality(seed, degree):
    sym = symbolic_phi()
    a, b = symbolic_a(), symbolic_b()
    detab = a.det() * b.det()
    out = [
        _residual_item("phi phi^T = det A det B I", sym @ sym.T - Matrix.identity(4) * detab),
        _residual_item("tr phi(A,B) = tr A tr B", sym.trace() - a.trace() * b.trace()),
    ]
    return out


def suite_trace_oracle(seed, degree, words=1000, max_length=20):
    rng = _rng(seed, "trace-oracle")
    mismatches = []
    for _ in range(words):
        w = random_word(rng, max_length)
        a, b = sample_sl2_pair(rng.getrandbits(64))
        direct = evaluate_word(w, [a, b]).trace()
        via = reduce_trace(w).substitute(fricke_bindings(a, b)).constant_value()
        if direct != via:
            mismatches.append(str(w))
    return [Item(f"reduce_trace vs exact evaluation on {words} words", not mismatches,
                 "; ".join(mismatches[:5]) or None, {"words": words, "mismatches": len(mismatches)})]


def suite_q_calibration(seed, degree, samples=100):
    out = []
    try:
        norm = calibrate_kappa(samples=samples, seed=seed)
        out.append(Item(f"unique kappa on {samples} samples", True, None, {"kappa": str(norm.kappa)}))
    except ArithmeticError as exc:
        out.append(Item(f"unique kappa on {samples} samples", False, str(exc)))
    for w in ("g1", "g2", "g1 g2", "g1 g2^-1"):
        word = parse_word(w)
        target = 8 * (reduce_trace(word, 1) ** 2 - reduce_trace(word, 2) ** 2)
        out.append(_residual_item(f"Q4({w},{w}) = 8(tau_w1^2 - tau_w2^2)", q4_tau(word, word) - target))
    return out


def suite_sign_law(seed, degree, samples=100):
    rng = _rng(seed, "sign-law")
    neg_bad = prod_bad = det_bad = 0
    for _ in range(samples):
        x1 = random_integer_matrix(4, rng)
        x2 = random_integer_matrix(4, rng)
        y1 = random_integer_matrix(4, rng)
        y2 = random_integer_matrix(4, rng)
        q = q_form([x1, x2])
        conj = [SIGMA_MATRIX @ x @ SIGMA_MATRIX for x in (x1, x2)]
        if q_form(conj) != -q:
            neg_bad += 1
        q2 = q_form([y1, y2])
        conj2 = [SIGMA_MATRIX @ y @ SIGMA_MATRIX for y in (y1, y2)]
        if q_form(conj) * q_form(conj2) != q * q2:
            prod_bad += 1
    for _ in range(10):
        x1 = random_integer_matrix(4, rng)
        x2 = random_integer_matrix(4, rng)
        q = q_form([x1, x2])
        g = cayley_orthogonal(4, rng)
        r = reflection_orthogonal(4, rng)
        if q_form([g @ x1 @ g.T, g @ x2 @ g.T]) != q or q_form([r @ x1 @ r.T, r @ x2 @ r.T]) != -q:
            det_bad += 1
    return [
        Item(f"Q negates under sigma on {samples} samples", not neg_bad, f"{neg_bad} failures" if neg_bad else None),
        Item(f"Q Q' is sigma-invariant on {samples} samples", not prod_bad, f"{prod_bad} failures" if prod_bad else None),
        Item("Q scales by det under orthogonal conjugation", not det_bad, f"{det_bad} failures" if det_bad else None),
    ]


def suite_torus(seed, degree):
    out = []
    for k in (1, 2, 3):
        q = q_torus(2, k)
        out.append(Item(f"q_torus(2,{k}) nonzero", not q.is_zero(), None, {"terms": len(q)}))
        out.append(_residual_item(f"q_torus(2,{k}) closed form", q - torus_closed_form(2, k)))
    out.append(_residual_item("q_torus(2,0) = 0", q_torus(2, 0)))
    out.append(Item("q_torus(2,1) Weyl symmetry", weyl_symmetry_check(q_torus(2, 1), 2)))
    return out


def brute_force_minimal(vectors, m):
    """Sum zero and no proper nonempty sub-multiset sums to zero, by enumeration."""
    n = len(vectors)
    dim = len(vectors[0])

    def zero(idx):
        return all(sum(vectors[i][c] for i in idx) % m == 0 for c in range(dim))

    if not zero(range(n)):
        return False
    for r in range(1, n):
        for idx in itertools.combinations(range(n), r):
            if zero(idx):
                return False
    return True


V22 = [((0, 0),), ((1, 0), (1, 0)), ((0, 1), (0, 1)), ((1, 1), (1, 1)), ((0, 1), (1, 0), (1, 1))]


def suite_zerosum(seed, degree):
    out = []
    got = sorted(ms.vectors for ms in minimal_zero_sum_multisets(2, 2))
    out.append(Item("V(2,2) is the five listed multisets", got == sorted(V22), None if got == sorted(V22) else str(got)))
    rows = []
    cases = [(m, 2) for m in range(2, 7)] + [(2, 3), (3, 3)]
    for m, n in cases:
        d = davenport(m, n)
        lo, hi = davenport_bounds(m, n)
        rows.append({"m": m, "N": n, "d": d, "lower": lo, "upper": hi})
    for r in rows:
        if r["N"] == 2:
            out.append(Item(f"d({r['m']},2) = 2m-1", r["d"] == 2 * r["m"] - 1, None, {"d": r["d"]}))
    for p in (2, 3):
        for n in (1, 2, 3):
            d = davenport(p, n)
            out.append(Item(f"d({p},{n}) = N(p-1)+1", d == n * (p - 1) + 1, None, {"d": d}))
    over = [r for r in rows if not r["lower"] <= r["d"] <= r["upper"]]
    out.append(Item("Davenport bounds hold", not over, str(over) if over else None))
    bad = 0
    total = 0
    for m, n in ((1, 2), (2, 1), (2, 2), (3, 2), (2, 3), (4, 2)):
        for ms in minimal_zero_sum_multisets(m, n):
            total += 1
            if not brute_force_minimal(ms.vectors, m):
                bad += 1
    out.append(Item("every enumerated multiset passes the brute-force checker", not bad,
                    f"{bad} failures" if bad else None, {"checked": total}))
    return out


def suite_synthesis(seed, degree):
    gens = [WeightedGenerator("t1", (1, 0)), WeightedGenerator("t2", (0, 1)), WeightedGenerator("t12", (1, 1))]
    got = synthesize_generators(gens, 2)
    want = sorted([("t1", "t1"), ("t2", "t2"), ("t12", "t12"), ("t1", "t12", "t2")], key=lambda p: (len(p), p))
    weights = {g.name: g.weight for g in gens}
    out = [
        Item("PSL(2) generators from F_2 traces", got == want, None if got == want else str(got)),
        Item("synthesized products are invariant", all(is_invariant(p, weights, 2) for p in got)),
    ]
    mixed = [WeightedGenerator("t1", (1,)), WeightedGenerator("Q", (1,), "q-invariant")]
    got = synthesize_generators(mixed, 2)
    want = [("Q", "Q"), ("Q", "t1"), ("t1", "t1")]
    out.append(Item("mixed kinds pair within a weight class", got == want, None if got == want else str(got)))
    return out


def suite_relations(seed, degree):
    mmap = pres.so4_generator_map()
    rels = pres.so4_relations()
    out = []
    for fam in pres.FAMILIES:
        verdicts = [v for v in pres.verify_relations(mmap, rels) if v.name.startswith(fam + "[")]
        bad = [v for v in verdicts if not v.ok]
        out.append(Item(f"family {fam} maps to zero", bool(verdicts) and not bad,
                        str(bad[0].residual) if bad else None, {"instances": len(verdicts)}))
    (psl,) = pres.verify_relations(pres.psl2_generator_map(), pres.psl2_relations())
    out.append(Item("g1 g2 g3 - g4^2 maps to zero", psl.ok, None if psl.ok else str(psl.residual)))
    return out


def _cert_item(name, cert, expect_complete=True, expect_first=None):
    dims = {str(c.degree): {"monomials": c.monomials, "kernel": c.kernel_dim, "span": c.span_dim}
            for c in cert.checks}
    if expect_complete:
        ok = cert.complete
    else:
        ok = cert.first_failure() == expect_first
    return Item(name, ok, None if ok else cert.label(), dims)


def suite_completeness(seed, degree):
    so4 = pres.so4_generator_map()
    rels = pres.so4_relations()
    return [
        _cert_item(f"SO(4) presentation through degree {degree}", pres.completeness_certificate(so4, rels, degree)),
        _cert_item("PSL(2) presentation through degree 12",
                   pres.completeness_certificate(pres.psl2_generator_map(), pres.psl2_relations(), 12)),
        _cert_item("without the c c' - a a b family: first gap at degree 6",
                   pres.completeness_certificate(so4, rels.without("cc"), max(degree, 6)), False, 6),
    ]


EXPECTED_T_LIST = ["1", "c_1_1_2 - c_2_2_1", "c_1_2_1 - c_2_1_2", "c_1_2_2 - c_2_1_1",
                   "a_1_1_1 - a_1_2_2", "a_2_1_1 - a_2_2_2", "b_1_1 - b_2_2", "c_1_1_1 - c_2_2_2"]


def suite_t_identities(seed, degree):
    out = [_residual_item(c.name, c.residual) for c in pres.verify_t_identities()]
    got = [str(t) for t in pres.t_list()]
    out.append(Item("pq_split t-list order", got == EXPECTED_T_LIST, None if got == EXPECTED_T_LIST else str(got)))
    bad = [c.name for c in pres.t_products_sigma_fixed() if not c.ok]
    out.append(Item("t_i t_j are sigma-fixed", not bad, ", ".join(bad) or None))
    return out


def suite_ft_generators(seed, degree, bound=6):
    out = [_residual_item(c.name, c.residual) for c in pres.verify_ft_generators()]
    for weight in pres.WEIGHT_MODULE_GENERATORS:
        rows = [r for r in pres.verify_weight_modules(bound) if r[0] == weight]
        ok = all(r[3] for r in rows)
        out.append(Item(f"weight {weight} module generators through degree {bound}", ok, None,
                        {str(r[1]): r[2] for r in rows}))
    rows = pres.verify_t_module(bound)
    out.append(Item(f"ring = sum of sigma-invariant multiples of t0..t7 through degree {bound}",
                    all(r[2] for r in rows), None, {str(r[0]): r[1] for r in rows}))
    return out


def suite_independence(seed, degree):
    rep = pres.independence_certificate()
    dims = {"ft": rep.ft_rank, **{f"ft+{k}": v for k, v in rep.with_one.items()}, "ft+t1,t2,t3": rep.with_all}
    return [
        Item("degree-3 ranks 5 / 6 / 8", rep.ok, None, dims),
        Item("c112 + c221 lies in the degree-3 span", rep.sanity_contained),
    ]


def _elementary_symmetric(values, k):
    acc = 0
    for combo in itertools.combinations(values, k):
        p = ONE
        for v in combo:
            p = p * v
        acc = acc + p
    return acc


def suite_newton(seed, degree, samples=50):
    rng = _rng(seed, "newton")
    bad = 0
    for _ in range(samples):
        size = rng.randint(1, 8)
        diag = [rng.randint(-5, 5) for _ in range(size)]
        m = Matrix.diag(diag)
        pt = power_traces(m, size)
        for k in range(size + 1):
            if exterior_trace(pt, k) != _elementary_symmetric(diag, k):
                bad += 1
    ident = exterior_trace(power_traces(Matrix.identity(4), 2), 2)
    return [
        Item(f"exterior traces vs eigenvalue products on {samples} diagonal matrices", not bad,
             f"{bad} mismatches" if bad else None),
        Item("tr of second exterior power of I4 is 6", ident == 6, None if ident == 6 else str(ident)),
    ]


SUITES = {
    "spin": suite_spin,
    "sigma": suite_sigma,
    "orthogonality": suite_orthogonality,
    "trace-oracle": suite_trace_oracle,
    "q-calibration": suite_q_calibration,
    "sign-law": suite_sign_law,
    "torus": suite_torus,
    "zerosum": suite_zerosum,
    "synthesis": suite_synthesis,
    "relations": suite_relations,
    "completeness": suite_completeness,
    "t-identities": suite_t_identities,
    "ft-generators": suite_ft_generators,
    "independence": suite_independence,
    "newton": suite_newton,
}


def run_suite(name, seed=DEFAULT_SEED, degree=DEFAULT_DEGREE):
    """Items of one suite, or of every suite (prefixed ``suite/``) for ``all``."""
    if name == "all":
        items = []
        for suite, fn in SUITES.items():
            for item in fn(seed, degree):
                item.name = f"{suite}/{item.name}"
                items.append(item)
        return items
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](seed, degree)
