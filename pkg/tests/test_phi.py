"""Solution family: gamma, g^{±}, mode coefficients, classical degeneration."""

from fractions import Fraction

from loopyang.cartan import cartan_load, hbar_over_q_minus_qinv
from loopyang.phi import GFamily, degeneration_report, gamma_series, phi_mode
from loopyang.series import g_log_series, rat
from loopyang.y0 import HBAR, Y0Algebra


def y_algebra(label="A1", order=6):
    return Y0Algebra(cartan_load(label), order)


def test_gamma_lowest_terms():
    # gamma = h[-t_0 G'(v) + ...]; G'(v) = -v/12 + v^3/720 + ...
    # so gamma's (h t_0 v)-coefficient is +1/12
    y = y_algebra()
    gm = gamma_series(y, 0, "v")
    got = gm.coeff_in(HBAR, 1).coeff_in("t0_0", 1).coeff_in("v", 1).constant_term()
    assert got == Fraction(1, 12)
    # the (h t_1) term: +G''(v) -> constant -1/12
    got1 = gm.coeff_in(HBAR, 1).coeff_in("t0_1", 1).coeff_in("v", 0).constant_term()
    assert got1 == Fraction(-1, 12)


def test_gamma_matches_borel_oracle():
    # gamma is -B(-d/dv) applied to G'(v): regenerate it term by term from
    # an independently computed G and factorial sums
    y = y_algebra("A1", 5)
    ctx = y.ctx
    gm = gamma_series(y, 0, "v")
    big = ctx.with_order(2 * ctx.order + 2)
    g = g_log_series(big, "v")
    want = ctx.zero()
    fact = 1
    deriv = g
    for r in range(y.order + 2):
        fact = fact * r if r else 1
        # compute G^{(r+1)} afresh
        d = g
        for _ in range(r + 1):
            d = d.derivative("v")
        want = want + y.hbar() * y.gen(0, r) * d.in_ctx(ctx) * (rat(-1) ** (r + 1) / fact)
    assert gm == want


def test_g_family_gauge_scalars():
    y = y_algebra("B2", 5)
    gf = GFamily(y)
    for i in y.datum.nodes:
        gp = gf.g(+1, i, "v")
        gm = gf.g(-1, i, "v")
        assert gp.constant_term() == 1
        assert gm.constant_term() == Fraction(1, y.datum.d[i])
        # g^- = (hbar/(q_i - q_i^{-1})) g^+
        unit = hbar_over_q_minus_qinv(y.ctx, y.datum.d[i], HBAR)
        assert gm == unit * gp


def test_lambda_image_of_g_closed_form():
    # lam^{±}_i(u)(g_j(v)) = g_j(v) exp(±(G(v-u+a h) - G(v-u-a h))/2),
    # a = d_i a_ij / 2 — the closed form behind condition (A)
    y = y_algebra("B2", 5)
    gf = GFamily(y)
    ctx = y.ctx
    big = ctx.with_order(2 * ctx.order + 2)
    for i in y.datum.nodes:
        for j in y.datum.nodes:
            a2 = y.datum.d[i] * y.datum.a[i][j]
            g = g_log_series(big, "v")
            w = ctx.var("v") - ctx.var("u")
            gplus = g.in_ctx(ctx).compose_var("v", w + ctx.var(HBAR) * rat(a2, 2))
            gminus = g.in_ctx(ctx).compose_var("v", w - ctx.var(HBAR) * rat(a2, 2))
            factor_arg = (gplus - gminus) * rat(1, 2)
            for sign in (+1, -1):
                lhs = y.lambda_apply(sign, i, gf.g(+1, j, "v"), "u")
                rhs = gf.g(+1, j, "v") * (factor_arg * sign).exp()
                assert lhs == rhs, (i, j, sign)


def test_phi_mode_exponential_additivity():
    y = y_algebra()
    gf = GFamily(y)
    m1 = phi_mode(gf, +1, 0, 1, "v")
    m2 = phi_mode(gf, +1, 0, 2, "v")
    m3 = phi_mode(gf, +1, 0, 3, "v")
    g = gf.g(+1, 0, "v")
    # e^{v} e^{2v} g^2 = e^{3v} g * g
    assert m1.coeff * m2.coeff == m3.coeff * g


def test_degeneration_report_all_pass():
    for label in ("A1", "A2", "B2"):
        y = y_algebra(label, 4)
        gf = GFamily(y)
        rep = degeneration_report(gf)
        assert all(rep.values()), rep


def test_perturbed_family_changes_g():
    y = y_algebra()
    gf = GFamily(y)
    delta = y.hbar() ** 2 * y.ctx.var("v")
    pf = gf.perturbed(+1, 0, "v", delta)
    assert pf.g(+1, 0, "v") == gf.g(+1, 0, "v") + delta
    assert pf.g(-1, 0, "v") == gf.g(-1, 0, "v")
