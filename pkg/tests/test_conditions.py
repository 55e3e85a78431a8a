"""Compatibility checks A/B/C, gauge axioms, and the gauge equation solver."""

import random

import pytest

from loopyang.cartan import cartan_load
from loopyang.conditions import (
    VarpiAlgebra,
    check_A,
    check_B,
    check_C,
    check_all,
    check_gauge_axioms,
    exp_quotient,
    gauge_apply,
    gauge_solve,
)
from loopyang.phi import GFamily
from loopyang.series import rat
from loopyang.y0 import Y0Algebra


def family(label, order):
    return GFamily(Y0Algebra(cartan_load(label), order))


def test_exp_quotient_clears_denominator():
    y = Y0Algebra(cartan_load("A1"), 6)
    ctx = y.ctx
    c = ctx.var("h") * rat(3, 2)
    q = exp_quotient(ctx, "u", "v", c)
    u, v = ctx.var("u"), ctx.var("v")
    assert q * (u - v - c) == u.exp() - (v + c).exp()


def test_condition_A_rank1():
    gf = family("A1", 6)
    rep = check_A(gf, 0, 0)
    assert rep.passed, rep.first_failing_monomial


def test_condition_A_nonsimply_laced():
    gf = family("B2", 4)
    for i in (0, 1):
        for j in (0, 1):
            rep = check_A(gf, i, j)
            assert rep.passed, (i, j, rep.first_failing_monomial)


def test_condition_B_window():
    gf = family("A1", 5)
    for k in (-3, -1, 0, 1, 2, 6):
        rep = check_B(gf, 0, k)
        assert rep.passed, (k, rep.first_failing_monomial)


def test_condition_C_both_signs():
    gf = family("B2", 4)
    for sign in (+1, -1):
        for i in (0, 1):
            for j in (0, 1):
                rep = check_C(gf, sign, i, j)
                assert rep.passed, (sign, i, j, rep.first_failing_monomial)


def test_check_all_aggregates():
    gf = family("A1", 4)
    reports = check_all(gf)
    assert reports and all(r.passed for r in reports)
    ids = {r.check_id.split("[")[0] for r in reports}
    assert ids == {"A", "B", "C"}


def test_perturbed_family_fails_some_check():
    gf = family("A1", 4)
    y = gf.y
    delta = y.hbar() ** 2 * y.ctx.var("v") * y.gen(0, 0)
    bad = gf.perturbed(+1, 0, "v", delta)
    reports = check_all(bad)
    assert any(not r.passed for r in reports)
    failing = [r for r in reports if not r.passed]
    assert all(r.first_failing_monomial for r in failing)


def test_gauge_axioms_for_exponential_gauge():
    y = Y0Algebra(cartan_load("A2"), 4)
    rng = random.Random(7)
    eta = {}
    for i in y.datum.nodes:
        x = y.ctx.zero()
        for r in range(3):
            x = x + y.hbar() * y.gen(i, r) * rat(rng.randint(-3, 3))
        eta[i] = x
    r = {
        (sign, i): (y.lambda_apply(sign, i, (eta[i]).exp(), "u").inverse() * (eta[i]).exp())
        for sign in (+1, -1)
        for i in y.datum.nodes
    }
    # reorder: r_i^{±} = xi lam^{±}_i(xi)^{-1}
    r = {
        (sign, i): (eta[i]).exp() * y.lambda_apply(sign, i, (eta[i]).exp(), "u").inverse()
        for sign in (+1, -1)
        for i in y.datum.nodes
    }
    reports = check_gauge_axioms(y, r)
    assert reports and all(rep.passed for rep in reports)


def test_gauged_family_still_satisfies_conditions():
    gf = family("A1", 4)
    y = gf.y
    eta = y.hbar() * y.gen(0, 1) * rat(2)
    r = {
        (sign, 0): eta.exp() * y.lambda_apply(sign, 0, eta.exp(), "u").inverse()
        for sign in (+1, -1)
    }
    gf2 = gauge_apply(y, r, gf)
    reports = check_all(gf2)
    assert all(rep.passed for rep in reports)


def test_gauge_solve_roundtrip_random():
    va = VarpiAlgebra(cartan_load("A2"), 5)
    rng = random.Random(11)
    gens = [g for _, g in va.gen_items()]
    for trial in range(5):
        eta = va.ctx.zero()
        for _ in range(4):
            g = va.gen(*gens[rng.randrange(len(gens))])
            eta = eta + g * va.ctx.var("h") * rat(rng.randint(-2, 2))
            eta = eta + g * g * va.ctx.var("h") * rat(rng.randint(-1, 1))
        xi = (-eta).exp()
        rbar = {
            i: (xi * va.lambda_apply(+1, i, xi, "u").inverse()).log()
            for i in va.datum.nodes
        }
        got = gauge_solve(va, rbar, "u")
        assert got == eta, trial


def test_gauge_solve_monomial_example():
    # xi = exp(-h w_{0,2}); rbar_0 = log(xi lam^+_0(xi)^{-1}) = h u^2
    va = VarpiAlgebra(cartan_load("A1"), 5)
    eta = va.ctx.var("h") * va.gen(0, 2)
    xi = (-eta).exp()
    rbar = {0: (xi * va.lambda_apply(+1, 0, xi, "u").inverse()).log()}
    assert rbar[0] == va.ctx.var("h") * va.ctx.var("u") ** 2
    assert gauge_solve(va, rbar, "u") == eta


def test_gauge_solve_rejects_inconsistent_input():
    # a residue involving the wrong node's generator is not integrable
    va = VarpiAlgebra(cartan_load("A2"), 4)
    bad = {
        0: va.ctx.var("h") * va.gen(1, 0),
        1: va.ctx.zero(),
        2: va.ctx.zero(),
    }
    with pytest.raises(ValueError):
        gauge_solve(va, bad, "u")
