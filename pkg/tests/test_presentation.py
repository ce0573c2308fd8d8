import itertools

import pytest
import sympy

from charvar.exactcore import Polynomial
from charvar.presentation import (
    A_NAMES,
    B_NAMES,
    C_NAMES,
    FAMILIES,
    SO4_GENERATORS,
    completeness_certificate,
    copy_swap,
    generator_monomials,
    independence_certificate,
    pq_split,
    psl2_generator_map,
    psl2_relations,
    sigma_action,
    so4_generator_map,
    so4_relations,
    t_list,
    t_products_sigma_fixed,
    verify_ft_generators,
    verify_relations,
    verify_t_identities,
    verify_t_module,
    verify_weight_modules,
)

from oracle import to_sympy

P = Polynomial.parse


@pytest.fixture(scope="module")
def so4():
    return so4_generator_map()


def test_generator_names():
    assert len(SO4_GENERATORS) == 17
    assert len(A_NAMES) == 6 and len(B_NAMES) == 3 and len(C_NAMES) == 8
    assert SO4_GENERATORS[:3] == ["a_1_1_1", "a_1_1_2", "a_1_2_2"]


def test_generator_images(so4):
    assert so4.apply(P("c_1_2_1")) == P("t1_1*t2_2*t12_1")
    assert so4.apply(P("a_2_1_2")) == P("t2_1*t2_2")
    assert so4.apply(P("b_2_2")) == P("t12_2^2")
    assert [so4.degree(n) for n in SO4_GENERATORS] == [2] * 9 + [3] * 8
    assert len(so4.target_variables()) == 6


def test_unknown_generator(so4):
    with pytest.raises(KeyError):
        so4.apply(P("g1"))


def test_images_agree_with_sympy(so4):
    x = P("a_1_1_2*c_2_1_2 - 3*b_1_2^2")
    t11, t12_, t21, t22, s1, s2 = sympy.symbols("t1_1 t1_2 t2_1 t2_2 t12_1 t12_2")
    want = t11 * t12_ * (t12_ * t21 * s2) - 3 * s1 ** 2 * s2 ** 2
    assert sympy.expand(to_sympy(so4.apply(x)) - want) == 0


def test_all_relations_vanish(so4):
    rels = so4_relations()
    verdicts = verify_relations(so4, rels)
    assert verdicts and all(v.ok for v in verdicts)
    assert {name.split("[")[0] for name, _ in rels} == set(FAMILIES)
    assert all(v.ok for v in verify_relations(psl2_generator_map(), psl2_relations()))


def test_printed_bc_form_is_not_in_kernel(so4):
    bad = [v for v in verify_relations(so4, so4_relations(("bc",), printed_bc=True)) if not v.ok]
    assert bad


def test_non_relation_residual(so4):
    assert so4.apply(P("a_1_1_1 - b_1_1")) == P("t1_1^2 - t12_1^2")


@pytest.mark.parametrize("d", range(0, 7))
def test_kernel_dims_by_counting(d):
    # for a monomial map the kernel dimension is (#monomials) - (#distinct images)
    pmap = psl2_generator_map()
    cert = completeness_certificate(pmap, psl2_relations(), d)
    monos = generator_monomials(pmap, d)
    images = {pmap.image_of_monomial(m) for m in monos}
    check = cert.checks[-1]
    assert check.degree == d
    assert check.monomials == len(monos)
    assert check.kernel_dim == len(monos) - len(images)


def test_psl_certificate():
    cert = completeness_certificate(psl2_generator_map(), psl2_relations(), 12)
    assert cert.complete
    assert cert.label() == "verified through degree 12"


def test_so4_certificate_small_degree(so4):
    cert = completeness_certificate(so4, so4_relations(), 6)
    assert cert.complete
    assert [c.kernel_dim for c in cert.checks if c.degree >= 4] == [3, 24, 63]


def test_removing_a_family_breaks_completeness(so4):
    cert = completeness_certificate(so4, so4_relations().without("cc"), 6)
    assert not cert.complete
    assert cert.first_failure() == 6
    assert cert.label() == "incomplete at degree 6"


def test_psl_empty_relations_fail_at_six():
    cert = completeness_certificate(psl2_generator_map(), [], 8)
    assert cert.first_failure() == 6


def test_sigma_examples():
    assert sigma_action(P("c_1_1_2")) == P("c_2_2_1")
    assert sigma_action(P("a_1_1_2")) == P("a_1_1_2")
    assert sigma_action(P("a_1_1_1")) == P("a_1_2_2")
    assert sigma_action(P("b_1_1 + c_1_2_1")) == P("b_2_2 + c_2_1_2")


def test_sigma_is_an_involution():
    for name in SO4_GENERATORS:
        v = Polynomial.var(name)
        assert sigma_action(sigma_action(v)) == v


def test_sigma_commutes_with_copy_swap(so4):
    for name in SO4_GENERATORS:
        v = Polynomial.var(name)
        assert so4.apply(sigma_action(v)) == copy_swap(so4.apply(v))


def test_relations_map_to_relations_under_sigma(so4):
    for _, p in so4_relations():
        assert so4.apply(sigma_action(p)).is_zero()


def test_pq_split():
    split = pq_split()
    assert len(split.p) == 10
    assert len(split.q) == 7
    assert P("a_1_1_2 + a_1_1_2") in split.p
    assert [str(t) for t in t_list()] == [
        "1", "c_1_1_2 - c_2_2_1", "c_1_2_1 - c_2_1_2", "c_1_2_2 - c_2_1_1",
        "a_1_1_1 - a_1_2_2", "a_2_1_1 - a_2_2_2", "b_1_1 - b_2_2", "c_1_1_1 - c_2_2_2",
    ]


def test_pq_split_rejects_bad_leads():
    with pytest.raises(ValueError):
        pq_split(leads=["a_1_1_2"])
    with pytest.raises(ValueError):
        pq_split(leads=["c_1_1_2"])


def test_t_products_are_sigma_fixed():
    checks = t_products_sigma_fixed()
    assert len(checks) == 28
    assert all(c.ok for c in checks)


def test_t_identities():
    checks = verify_t_identities()
    assert checks and all(c.ok for c in checks)


def test_ft_generator_identities():
    checks = verify_ft_generators()
    assert checks and all(c.ok for c in checks)


def test_weight_modules():
    rows = verify_weight_modules(6)
    assert len(rows) == 4 * 7
    assert all(ok for *_, ok in rows)


def test_t_module():
    assert all(ok for *_, ok in verify_t_module(5))


def test_independence():
    rep = independence_certificate()
    assert rep.ft_rank == 5
    assert rep.with_one == {"t1": 6, "t2": 6, "t3": 6}
    assert rep.with_all == 8
    assert rep.sanity_contained and rep.ok


def test_independence_ranks_with_sympy(so4):
    # same ranks from a dense sympy matrix over the 8 degree-3 target monomials
    names = ["c_1_1_1", "c_2_2_2", "c_1_2_1 + c_2_1_2", "c_1_2_2 + c_2_1_1", "c_1_1_2 + c_2_2_1"]
    ft = [so4.apply(P(s)) for s in names]
    ts = [so4.apply(t) for t in t_list()[1:4]]
    monos = sorted({m for p in ft + ts for m in p.terms}, key=str)

    def rk(polys):
        return sympy.Matrix([[int(str(p.coefficient(m)) if p.coefficient(m) else 0) for m in monos]
                             for p in polys]).rank()

    assert rk(ft) == 5
    assert [rk(ft + [t]) for t in ts] == [6, 6, 6]
    assert rk(ft + ts) == 8
