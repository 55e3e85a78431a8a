"""The explicit solution g and the mode coefficients of the homomorphism.

With G(v) = log( v / (e^{v/2} - e^{-v/2}) ), the solution family is built
from
    gamma_i(v) = -B_i(-d/dv) G'(v)
               = hbar * sum_r (-1)^{r+1} (t_{i,r}/r!) G^{(r+1)}(v).

Rational gauge: the scalar prefactor (hbar/(q_i - q_i^{-1}))^{1/2} of the
source solution is irrational for d_i > 1; the scaling freedom of the
solution set is used to place the whole scalar on the minus family:
    g_i^+(v) = exp(gamma_i(v)/2)
    g_i^-(v) = (hbar / (q_i - q_i^{-1})) * exp(gamma_i(v)/2).

The mode coefficient of the raising/lowering images is
    phi_mode(±, i, k, v) = e^{kv} g_i^{±}(v)
(the coefficient of x^{±}_{i,0} in the image of the k-th loop generator).
"""

from __future__ import annotations

from .cartan import hbar_over_q_minus_qinv
from .series import g_log_series, rat
from .y0 import HBAR, Y0Algebra


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


def gamma_series(y, i, vname):
    """gamma_i(v) = hbar sum_r (-1)^{r+1} (t_{i,r}/r!) G^{(r+1)}(v)."""
    ctx = y.ctx
    # G is needed to order 2N+2 so that all derivatives are complete at
    # order N after multiplication by weight-(r+1) prefactors.
    gctx = ctx.with_order(2 * ctx.order + 2)
    g = g_log_series(gctx, vname)
    h = y.hbar()
    result = ctx.zero()
    deriv = g.derivative(vname)  # G'
    for r in range(y.order + 2):
        deriv = deriv.derivative(vname) if r > 0 else deriv
        # here deriv = G^{(r+1)}
        term = h * y.gen(i, r) * deriv.in_ctx(ctx) * (rat(-1) ** (r + 1) / _factorial(r))
        result = result + term
    return result


class GFamily:
    """A candidate solution family g_i^{±}(v), cached per (sign, node, var)."""

    def __init__(self, y, overrides=None, label="rational-gauge"):
        self.y = y
        self.label = label
        self._cache = {}
        self._overrides = overrides or {}
        self._gamma_cache = {}

    def gamma(self, i, vname):
        key = (i, vname)
        if key not in self._gamma_cache:
            self._gamma_cache[key] = gamma_series(self.y, i, vname)
        return self._gamma_cache[key]

    def g(self, sign, i, vname):
        """g_i^{sign}(v) as a Y^0-valued series in ``vname``."""
        key = (sign, i, vname)
        if key not in self._cache:
            if key in self._overrides:
                self._cache[key] = self._overrides[key]
            else:
                base = (self.gamma(i, vname) * rat(1, 2)).exp()
                if sign < 0:
                    base = base * hbar_over_q_minus_qinv(
                        self.y.ctx, self.y.datum.d[i], HBAR
                    )
                self._cache[key] = base
        return self._cache[key]

    def perturbed(self, sign, i, vname, delta):
        """A copy with g_i^{sign}(v) replaced by g_i^{sign}(v) + delta."""
        overrides = dict(self._overrides)
        overrides[(sign, i, vname)] = self.g(sign, i, vname) + delta
        fam = GFamily(self.y, overrides, label=self.label + "+perturbation")
        fam._gamma_cache = self._gamma_cache
        return fam


class PhiModeVector:
    """Mode coefficient e^{kv} g_i^{±}(v) of a raising/lowering image."""

    __slots__ = ("sign", "i", "k", "vname", "coeff")

    def __init__(self, sign, i, k, vname, coeff):
        self.sign = sign
        self.i = i
        self.k = k
        self.vname = vname
        self.coeff = coeff


def phi_mode(gf, sign, i, k, vname):
    """Image coefficient e^{kv} g_i^{sign}(v)."""
    ctx = gf.y.ctx
    ekv = (ctx.var(vname) * rat(k)).exp() if k else ctx.one()
    return PhiModeVector(sign, i, k, vname, ekv * gf.g(sign, i, vname))


def degeneration_report(gf, vname="v", kset=(-3, -2, -1, 0, 1, 2, 3)):
    """Classical-limit checks of the solution family.

    Returns a dict of named booleans:
      * constant-term: g_i^+ has constant term 1, g_i^- has 1/d_i;
      * classical-modes: mod hbar, e^{kv} g_i^{±}(v) = e^{kv} / d_i^{±}
        (so the k-th loop generator degenerates to the group-like
        exponential e^{k s} of the classical loop parameter);
      * cartan-zero: the image of the 0-th Cartan generator is t_{i,0}/d_i;
      * leading-v: (e^v - 1) g_i^+(v) has v-coefficient 1 at weight 1.
    """
    y = gf.y
    ctx = y.ctx
    out = {}
    for i in y.datum.nodes:
        di = y.datum.d[i]
        gp = gf.g(+1, i, vname)
        gm = gf.g(-1, i, vname)
        out[f"constant-term[{i}]"] = (
            gp.constant_term() == 1 and gm.constant_term() == rat(1, di)
        )
        ok = True
        for k in kset:
            ekv = (ctx.var(vname) * rat(k)).exp() if k else ctx.one()
            classical_p = (ekv * gp).subs_num(HBAR, 0)
            classical_m = (ekv * gm).subs_num(HBAR, 0)
            want = ekv.subs_num(HBAR, 0)
            if classical_p != want or classical_m != want * rat(1, di):
                ok = False
        out[f"classical-modes[{i}]"] = ok
        out[f"cartan-zero[{i}]"] = y.phi0_h(i, 0) == y.gen(i, 0) / di
        lead = (ctx.var(vname).exp() - 1) * gp
        out[f"leading-v[{i}]"] = lead.coeff_in(vname, 1).constant_term() == 1
    return out
