"""Abstract n-block calculus: λ-operators, central series, solution family,
and the closed-form evaluation bridge."""

import pytest

from loopyang.conditions import exp_quotient
from loopyang.gln import (
    HBAR,
    GlnAlgebra,
    gln_check_A,
    gln_check_B,
    gln_check_C1,
    gln_check_all,
)
from loopyang.glnbridge import (
    GlnBridge,
    check_by_closed,
    check_center_closed,
    check_qdet_closed,
    check_td_closed,
    check_theta_values,
    dj_value,
)
from loopyang.glnflag import YangFlagRep, flag_partitions
from loopyang.poly import Poly
from loopyang.series import g_log_series, rat


@pytest.fixture(scope="module")
def ga2():
    return GlnAlgebra(2, 5)


@pytest.fixture(scope="module")
def ga3():
    return GlnAlgebra(3, 3)


def test_xi_homogeneous(ga3):
    for i in ga3.nodes:
        for m in range(ga3.order + 1):
            x = ga3.xi(i, m)
            assert not x or x.min_weight() == x.max_weight() == m


def test_lambda_moves_only_adjacent_blocks(ga3):
    # lambda at node i changes d_{j,r} only for j in {i, i+1}
    for i in ga3.nodes:
        for j in ga3.blocks:
            img = ga3.lambda_gen_image(+1, i, j, 1, "u")
            if j in (i, i + 1):
                assert img != ga3.gen(j, 1)
            else:
                assert img == ga3.gen(j, 1)


def test_lambda_on_block_series_kernel(ga2):
    # (lambda_i^+(u) - 1) B(y_j)(v) = (d_ij - d_{j,i+1}) (e^{hv}-1)/v e^{uv}
    ctx = ga2.ctx
    hi = ctx.with_order(ctx.order + 1)
    kern = (
        ((hi.var(HBAR) * hi.var("v")).exp() - hi.one())
        .divexact_var("v")
        .in_ctx(ctx)
    )
    euv = (ctx.var("u") * ctx.var("v")).exp()
    for i in ga2.nodes:
        for j in ga2.blocks:
            by = ga2.by_series(j, "v")
            img = ga2.lambda_apply(+1, i, by, "u") - by
            coef = (1 if j == i else 0) - (1 if j == i + 1 else 0)
            assert img == kern * euv * rat(coef)


def test_lambda_fixes_central_modes(ga3):
    for r, zr in ga3.z_modes().items():
        z = zr.in_ctx(ga3.ctx)
        for i in ga3.nodes:
            for sign in (+1, -1):
                assert ga3.lambda_apply(sign, i, z, "u") == z


def test_todd_pair_matches_log_derivative_combination(ga2):
    # td_i^+ + td_i^- + h(d_{i+1,0}-d_{i,0})/2
    #   = h sum_r (-1)^{r+1} (d_{i+1,r}-d_{i,r})/r! G^{(r+1)}(v)
    ctx = ga2.ctx
    i = 1
    lhs = (
        ga2.td(+1, i, "v")
        + ga2.td(-1, i, "v")
        + ctx.var(HBAR) * (ga2.gen(i + 1, 0) - ga2.gen(i, 0)) * rat(1, 2)
    )
    big = ctx.with_order(2 * ctx.order + 4)
    deriv = g_log_series(big, "v").derivative("v")
    rhs = ctx.zero()
    fact = 1
    for r in range(ctx.order + 2):
        if r:
            fact *= r
            deriv = deriv.derivative("v")
        coeff = ctx.var(HBAR) * (ga2.gen(i + 1, r) - ga2.gen(i, r))
        sign = rat(-1 if r % 2 == 0 else 1)
        rhs = rhs + deriv.in_ctx(ctx) * coeff * (sign / fact)
    assert lhs == rhs


def test_lambda_image_of_g_closed_forms(ga2):
    ctx = ga2.ctx
    h = ctx.var(HBAR)
    i = 1
    gp = ga2.g(+1, i, "v")
    lhs = (
        ga2.lambda_apply(+1, i, gp, "u")
        * (h * rat(1, 2)).exp()
        * exp_quotient(ctx, "v", "u", -h)
    )
    assert lhs == gp * exp_quotient(ctx, "v", "u", ctx.zero())
    gm = ga2.g(-1, i, "v")
    lhs2 = (
        ga2.lambda_apply(-1, i, gm, "u")
        * (-(h * rat(1, 2))).exp()
        * exp_quotient(ctx, "v", "u", h)
    )
    assert lhs2 == gm * exp_quotient(ctx, "v", "u", ctx.zero())


def test_conditions_pass_n2_n3(ga2, ga3):
    for ga in (ga2, ga3):
        reports = gln_check_all(ga)
        assert reports and all(r.passed for r in reports)


def test_condition_checks_detect_perturbation(ga2):
    ga = GlnAlgebra(2, 4)
    key = (+1, 1, "u")
    ga._g_cache[key] = ga.g(+1, 1, "u") * (
        ga.ctx.one() + ga.ctx.var(HBAR) ** 2 * ga.gen(1, 0)
    )
    failed = [
        r
        for r in (
            gln_check_A(ga, 1, 1),
            gln_check_B(ga, 1, 0),
            gln_check_B(ga, 1, 1),
            gln_check_C1(ga, +1, 1),
        )
        if not r.passed
    ]
    assert failed
    assert all(r.first_failing_monomial for r in failed)


# -- evaluation bridge -------------------------------------------------------


@pytest.fixture(scope="module")
def br22():
    return GlnBridge(GlnAlgebra(2, 4), 2)


@pytest.fixture(scope="module")
def br32():
    return GlnBridge(GlnAlgebra(3, 3), 2)


def test_generator_values_match_multiplication_action(br22, br32):
    for br in (br22, br32):
        for dd in flag_partitions(br.ga.n, br.d):
            for j in br.ga.blocks:
                assert check_theta_values(br, dd, j).passed


def test_qdet_and_center_closed_forms(br22, br32):
    for br in (br22, br32):
        for dd in flag_partitions(br.ga.n, br.d):
            assert check_qdet_closed(br, dd).passed
            assert check_center_closed(br, dd).passed


def test_block_series_closed_form(br22, br32):
    for br in (br22, br32):
        for dd in flag_partitions(br.ga.n, br.d):
            for j in br.ga.blocks:
                assert check_by_closed(br, dd, j).passed


def test_todd_closed_form(br22, br32):
    for br in (br22, br32):
        for dd in flag_partitions(br.ga.n, br.d):
            for i in br.ga.nodes:
                for sign in (+1, -1):
                    assert check_td_closed(br, dd, sign, i).passed


def test_central_values_fully_symmetric(br22):
    br = br22
    ctx = br.ctx
    full = [
        {f"x{a}": f"x{b}", f"x{b}": f"x{a}"}
        for a in range(1, br.d + 1)
        for b in range(a + 1, br.d + 1)
    ]
    for dd in flag_partitions(br.ga.n, br.d):
        for r, zr in br.ga.z_modes().items():
            val = br.evaluate(zr.in_ctx(br.ga.ctx), dd)
            p = Poly(ctx.names, val.terms)
            for mapping in full:
                assert p.permute(mapping) == p


def test_delta0_acts_as_minus_d(br22):
    br = br22
    for dd in flag_partitions(br.ga.n, br.d):
        val = br.evaluate(br.ga.delta0(), dd)
        assert val == br.ctx.const(-br.d)


def test_degenerate_single_block_value():
    # n=1-style degeneration surrogate: with one block and no coordinates on
    # either side, every d_{j,r} value with j covering everything is zero.
    ctx = GlnBridge(GlnAlgebra(2, 3), 2).ctx
    assert dj_value(ctx, (0, 2, 2), 1, 1) == ctx.zero()
