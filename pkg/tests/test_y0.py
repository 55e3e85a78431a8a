"""Y^0 calculus: xi coordinates, lambda operators, Cartan images, adapted generators."""

from fractions import Fraction

from loopyang.cartan import cartan_load, hbar_over_q_minus_qinv
from loopyang.series import rat
from loopyang.y0 import (
    HBAR,
    Y0Algebra,
    tprime_rank1,
    varpi_generators,
)


def y_a1(order=6):
    return Y0Algebra(cartan_load("A1"), order)


def y_rank2(label, order=5):
    return Y0Algebra(cartan_load(label), order)


def test_xi_low_modes_oracle():
    # xi_0 = t_0; xi_1 = t_1 + h t_0^2/2; xi_2 = t_2 + h t_0 t_1 + h^2 t_0^3/6
    y = y_a1()
    h = y.hbar()
    t0, t1, t2 = y.gen(0, 0), y.gen(0, 1), y.gen(0, 2)
    assert y.xi(0, 0) == t0
    assert y.xi(0, 1) == t1 + h * t0 * t0 * rat(1, 2)
    assert y.xi(0, 2) == t2 + h * t0 * t1 + h * h * t0 ** 3 * rat(1, 6)


def test_xi_homogeneous_weight():
    y = y_a1(6)
    for m in range(6):
        x = y.xi(0, m)
        assert x.min_weight() == x.max_weight() == m


def test_xi_substitute_includes_constant():
    # F = 1 maps to xi_{i,0}
    y = y_a1()
    assert y.xi_substitute(y.ctx.one(), "u", 0) == y.gen(0, 0)
    # F = u^2 + 3 maps to xi_2 + 3 xi_0
    f = y.ctx.var("u", 2) + 3
    assert y.xi_substitute(f, "u", 0) == y.xi(0, 2) + 3 * y.gen(0, 0)


def test_lambda_is_degree_zero():
    y = y_rank2("B2", 5)
    for i in y.datum.nodes:
        for j in y.datum.nodes:
            for r in range(5):
                img = y.lambda_gen_image(+1, i, j, r, "u")
                assert img.min_weight() == img.max_weight() == r


def test_lambda_mod_hbar():
    # mod hbar: t_{j,r} -> t_{j,r} ∓ d_i a_ij u^r
    y = y_rank2("B2", 5)
    for sign in (+1, -1):
        for i in y.datum.nodes:
            for j in y.datum.nodes:
                for r in range(4):
                    img = y.lambda_gen_image(sign, i, j, r, "u")
                    classical = img.subs_num(HBAR, 0)
                    want = (y.gen(j, r) - sign * y.datum.d[i] * y.datum.a[i][j] * y.ctx.var("u", r)).subs_num(HBAR, 0)
                    assert classical == want


def test_lambda_plus_minus_inverse():
    y = y_rank2("A2", 5)
    for i in y.datum.nodes:
        for j in y.datum.nodes:
            for r in range(5):
                x = y.lambda_apply(-1, i, y.lambda_gen_image(+1, i, j, r, "u"), "u")
                assert x == y.gen(j, r)


def test_lambda_commute():
    y = y_rank2("A2", 5)
    t = y.gen(0, 2) * y.gen(1, 1) + y.gen(0, 3)
    a = y.lambda_apply(+1, 0, y.lambda_apply(-1, 1, t, "v"), "u")
    b = y.lambda_apply(-1, 1, y.lambda_apply(+1, 0, t, "u"), "v")
    assert a == b


def test_lambda_algebra_hom():
    y = y_a1(6)
    a = y.gen(0, 1) * y.gen(0, 2) + y.hbar() * y.gen(0, 0)
    b = y.gen(0, 3) + y.gen(0, 1) ** 2
    assert y.lambda_apply(+1, 0, a * b, "u") == y.lambda_apply(+1, 0, a, "u") * y.lambda_apply(+1, 0, b, "u")


def test_levendorskii_closed_form():
    # t_{j,r} - lambda^{+}_i(u)(t_{j,r}) =
    #   d_i a_ij sum_{l<=r/2} C(r,2l) (h d_i a_ij / 2)^{2l} u^{r-2l} / (2l+1)
    from math import comb

    for label in ("A1", "B2"):
        y = y_rank2(label, 6)
        for i in y.datum.nodes:
            for j in y.datum.nodes:
                for r in range(6):
                    img = y.lambda_gen_image(+1, i, j, r, "u")
                    diff = y.gen(j, r) - img
                    daij = y.datum.d[i] * y.datum.a[i][j]
                    want = y.ctx.zero()
                    for l in range(r // 2 + 1):
                        term = (
                            y.ctx.var("u", r - 2 * l)
                            * (y.hbar() ** (2 * l))
                            * (rat(daij, 2) ** (2 * l) * comb(r, 2 * l) * rat(1, 2 * l + 1))
                        )
                        want = want + term
                    assert diff == want * daij, (label, i, j, r)


def test_phi0_h_zero_and_positive():
    y = y_a1(6)
    assert y.phi0_h(0, 0) == y.gen(0, 0)
    # (q - q^{-1}) * phi0_h(0, r) == B(r) exactly
    from loopyang.cartan import q_minus_qinv

    for r in (1, 2, -1):
        lhs = y.phi0_h(0, r) * q_minus_qinv(y.ctx, 1, HBAR)
        assert lhs == y.b_eval(0, r)


def test_psi_phi_symmetry_and_k1():
    y = y_a1(6)
    # psi_{i,1}/(q-q^{-1}) image: e^{h t0 / 2} B(1)/(q - q^{-1})
    unit = hbar_over_q_minus_qinv(y.ctx, 1, HBAR)
    want = (y.hbar() * y.gen(0, 0) * rat(1, 2)).exp() * y.b_eval_core(0, 1) * unit
    assert y.psi_phi_diff(0, 1) == want
    # k = 0 case: (e^{h t0/2} - e^{-h t0/2})/(q - q^{-1})
    hictx = y.ctx.with_order(y.order + 1)
    half = hictx.var(HBAR) * hictx.var("t0_0") * rat(1, 2)
    want0 = (half.exp() - (-half).exp()).divexact_var(HBAR).in_ctx(y.ctx) * unit
    assert y.psi_phi_diff(0, 0) == want0


def test_tprime_rank1_lambda_action():
    y = y_a1(6)
    tp = tprime_rank1(y, 0, 6)
    for k in range(7):
        for sign in (1, -1):
            img = y.lambda_apply(sign, 0, tp[k], "u")
            assert img == tp[k] + sign * y.ctx.var("u", k), (k, sign)


def test_tprime_leading_coefficient():
    # t'_k = -t_k/2 + lower t's; mod hbar exactly -t_k/2
    y = y_a1(6)
    tp = tprime_rank1(y, 0, 5)
    for k in range(6):
        assert tp[k].subs_num(HBAR, 0) == (y.gen(0, k) * Fraction(-1, 2)).subs_num(HBAR, 0)


def test_varpi_lambda_action():
    for label in ("A2", "B2"):
        y = y_rank2(label, 5)
        w = varpi_generators(y, 4)
        for i in y.datum.nodes:
            for j in y.datum.nodes:
                for r in range(5):
                    for sign in (1, -1):
                        img = y.lambda_apply(sign, i, w[(j, r)], "u")
                        want = w[(j, r)]
                        if i == j:
                            want = want + sign * y.ctx.var("u", r)
                        assert img == want, (label, i, j, r, sign)
