"""Commutative coefficient calculus for the n-block (matrix) case.

The commutative subalgebra is generated by d_{j,r} for block labels
j = 1..n and modes r >= 0, with generating series

    theta_j(u) = exp( hbar sum_r d_{j,r} u^{-r-1} )
    B_j(v)     = hbar sum_r d_{j,r} v^r / r!

The raising/lowering substitutions act on nodes i = 1..n-1 by

    (lambda^{±}_i(u) - 1) B_j(v) = ± (e^{-c_{ji} hbar v} - 1)/v * e^{u v},
    c_{ji} = -delta_{j,i} + delta_{j,i+1}.

On top of this the module builds the central series (the determinant-like
product of shifted theta's, its additive logarithm, and the block series
y_j), the Todd-type series whose exponentials assemble the solution family

    g_i^+(u) = q^{-(z_0 + d_{i,0})} * (hbar/(q - q^{-1})) * exp(td_i^+(u)),
    g_i^-(u) = q^{+(z_0 + d_{i+1,0})} * (hbar/(q - q^{-1})) * exp(td_i^-(u)),

and the compatibility checks (A), (B), (C0), (C1), (C2) they satisfy.
"""

from __future__ import annotations

from .cartan import hbar_over_q_minus_qinv
from .report import Timer, compare_report
from .series import (
    GradedSeries,
    ModeSeries,
    VarContext,
    borel_transform,
    j_log_series,
    rat,
    shift_mode_variable,
)

INTERNAL = "_w"
HBAR = "h"


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


def _binomial(n, k):
    r = 1
    for s in range(k):
        r = r * (n - s) // (s + 1)
    return r


def c_matrix_entry(j, i):
    """c_{ji} = -delta_{j,i} + delta_{j,i+1}  (j block label, i node)."""
    return -(j == i) + (j == i + 1)


class GlnAlgebra:
    """Context bundle for the commutative calculus with n block labels."""

    def __init__(self, n, order, aux=("u", "v")):
        if n < 2:
            raise ValueError("need at least two blocks")
        self.n = n
        self.order = order
        self.aux = tuple(aux)
        self.blocks = tuple(range(1, n + 1))  # j
        self.nodes = tuple(range(1, n))  # i
        self.label = f"gl{n}"
        symbols = [(HBAR, 1)]
        symbols += [(a, 1) for a in self.aux]
        symbols.append((INTERNAL, 0))
        for j in self.blocks:
            for r in range(order + 2):
                symbols.append((self._gname(j, r), r))
        self.ctx = VarContext(symbols, order)
        self._lambda_cache = {}
        self._xi_cache = {}
        self._theta_cache = {}
        self._z_cache = None
        self._y_cache = {}
        self._td_cache = {}
        self._g_cache = {}

    def _gname(self, j, r):
        return f"d{j}_{r}"

    def gen(self, j, r):
        return self.ctx.var(self._gname(j, r))

    def hbar(self):
        return self.ctx.var(HBAR)

    def gen_names(self):
        for j in self.blocks:
            for r in range(self.order + 2):
                yield j, r, self._gname(j, r)

    # -- generating series ---------------------------------------------------

    def b_core(self, j, vname, ctx=None):
        """B_j(v)/hbar."""
        ctx = ctx if ctx is not None else self.ctx
        s = ctx.zero()
        for r in range(self.order + 2):
            s = s + ctx.monomial(
                rat(1, _factorial(r)), **{self._gname(j, r): 1, vname: r}
            )
        return s

    def b_series(self, j, vname, ctx=None):
        ctx = ctx if ctx is not None else self.ctx
        return ctx.var(HBAR) * self.b_core(j, vname, ctx)

    def b_eval(self, j, value, ctx=None):
        """B_j at a rational point."""
        ctx = ctx if ctx is not None else self.ctx
        value = rat(value)
        s = ctx.zero()
        for r in range(self.order + 2):
            s = s + ctx.var(self._gname(j, r)) * (value ** r / _factorial(r))
        return ctx.var(HBAR) * s

    def d_mode_series(self, j, lo, ctx=None):
        """d_j(u) = hbar sum_r d_{j,r} u^{-r-1} as a ModeSeries."""
        ctx = ctx if ctx is not None else self.ctx
        h = ctx.var(HBAR)
        modes = {}
        for r in range(self.order + 2):
            c = h * ctx.var(self._gname(j, r))
            if c:
                modes[-r - 1] = c
        return ModeSeries(ctx, lo, 0, modes)

    def theta_modes(self, j, ctx=None, lo=None):
        """theta_j(u) = exp(d_j(u)) as a ModeSeries (mode 0 term equals 1)."""
        ctx = ctx if ctx is not None else self.ctx
        lo = lo if lo is not None else -(self.order + 2)
        key = (j, id(ctx), lo)
        if key not in self._theta_cache:
            self._theta_cache[key] = self.d_mode_series(j, lo, ctx).exp()
        return self._theta_cache[key]

    # -- xi coordinates --------------------------------------------------------

    def xi(self, i, m):
        """xi_{i,m}: modes of theta_{i+1}(u) theta_i(u)^{-1}, exact."""
        key = (i, m)
        if key not in self._xi_cache:
            lo = -(self.order + 2)
            hictx = self.ctx.with_order(self.order + 1)
            diff = self.d_mode_series(i + 1, lo, hictx) - self.d_mode_series(
                i, lo, hictx
            )
            e = diff.exp()
            for mm in range(self.order + 1):
                c = e[-mm - 1]
                if c:
                    c = c.divexact_var(HBAR).in_ctx(self.ctx)
                else:
                    c = self.ctx.zero()
                self._xi_cache[(i, mm)] = c
        return self._xi_cache[key]

    def xi_substitute(self, x, uname, i):
        result = self.ctx.zero()
        for m in range(x.degree_in(uname) + 1):
            c = x.coeff_in(uname, m)
            if c:
                result = result + c * self.xi(i, m)
        return result

    # -- lambda operators ------------------------------------------------------

    def lambda_gen_image(self, sign, i, j, r, auxname):
        """Image of d_{j,r} under lambda^{sign}_i(aux)."""
        key = (sign, i, j, r, auxname)
        cache = self._lambda_cache
        if key not in cache:
            c = c_matrix_entry(j, i)
            if c == 0:
                cache[key] = self.gen(j, r)
            else:
                hictx = self.ctx.with_order(self.order + 1)
                arg = hictx.var(HBAR) * hictx.var(INTERNAL) * rat(-c)
                kern = (arg.exp() - hictx.one()).divexact_var(INTERNAL)
                ee = (hictx.var(auxname) * hictx.var(INTERNAL)).exp()
                coeff = (kern * ee).coeff_in(INTERNAL, r).divexact_var(HBAR)
                corr = coeff.in_ctx(self.ctx) * _factorial(r)
                cache[key] = self.gen(j, r) + corr * sign
        return cache[key]

    def lambda_apply(self, sign, i, x, auxname):
        mapping = {}
        for j, r, name in self.gen_names():
            if c_matrix_entry(j, i) != 0:
                mapping[name] = self.lambda_gen_image(sign, i, j, r, auxname)
        return x.subs_series(mapping)

    # -- Cartan loop generator images ------------------------------------------

    def psi_phi_modes(self, i, kmax, ctx=None):
        """Images of the modes of Theta_{i+1}^{±}(z) Theta_i^{±}(z)^{-1}.

        Returns (plus, minus): the plus family as a ModeSeries in z^{-1}
        (mode -k holding the image of the k-th mode) and the minus family in
        z (mode +k holding the image of the (-k)-th mode).
        """
        ctx = ctx if ctx is not None else self.ctx
        i2 = i + 1
        h2 = ctx.var(HBAR) * rat(1, 2)
        t0 = ctx.var(self._gname(i2, 0)) - ctx.var(self._gname(i, 0))
        plus_arg = {}
        for s in range(1, kmax + 1):
            plus_arg[-s] = self.b_eval(i2, s, ctx) - self.b_eval(i, s, ctx)
        plus = ModeSeries(ctx, -kmax, 0, plus_arg).exp() * (h2 * t0).exp()
        minus_arg = {}
        for s in range(1, kmax + 1):
            minus_arg[s] = -(self.b_eval(i2, -s, ctx) - self.b_eval(i, -s, ctx))
        minus = ModeSeries(ctx, 0, kmax, minus_arg).exp() * (-(h2 * t0)).exp()
        return plus, minus

    def psi_phi_diff(self, i, k):
        """Image of (P^+_{i,k} - P^-_{i,k}) / (q - q^{-1})  (k in Z)."""
        kk = abs(k)
        hictx = self.ctx.with_order(self.order + 1)
        plus, minus = self.psi_phi_modes(i, kk, hictx)
        if k > 0:
            diff = plus[-k]
        elif k < 0:
            diff = -minus[-k]
        else:
            diff = plus[0] - minus[0]
        unit = hbar_over_q_minus_qinv(self.ctx, 1, HBAR)
        return diff.divexact_var(HBAR).in_ctx(self.ctx) * unit

    # -- central series ----------------------------------------------------------

    def qdet_log_modes(self, ctx):
        """log of theta_1(u) theta_2(u-h) ... theta_n(u-(n-1)h)."""
        lo = -(self.order + 2)
        total = ModeSeries(ctx, lo, 0, {})
        for j in self.blocks:
            d = self.d_mode_series(j, lo, ctx)
            if j > 1:
                d = shift_mode_variable(d, ctx.var(HBAR) * rat(-(j - 1)))
            total = total + d
        return total

    def z_modes(self):
        """hbar z_r: central modes with log qdet(u) = -sum_{s=0}^{n-2} z(u - s h).

        Triangular in r: the u^{-r-1} coefficient of the right side is
        -(n-1) hbar z_r plus shift contributions of lower modes.
        """
        if self._z_cache is None:
            hictx = self.ctx.with_order(self.order + 1)
            lhs = self.qdet_log_modes(hictx)
            h = hictx.var(HBAR)
            zh = {}
            for r in range(self.order + 1):
                acc = lhs[-r - 1]
                for k in range(r):
                    shift_sum = hictx.zero()
                    for s in range(self.n - 1):
                        shift_sum = shift_sum + (h * rat(s)) ** (r - k) * rat(
                            _binomial(r, k)
                        )
                    acc = acc + shift_sum * zh[k]
                zh[r] = -(acc / rat(self.n - 1))
            self._z_cache = zh
        return self._z_cache

    def z_mode_series(self, ctx, lo):
        zh = self.z_modes()
        modes = {}
        for r, c in zh.items():
            cc = c.in_ctx(ctx) if c.ctx is not ctx else c
            if cc:
                modes[-r - 1] = cc
        return ModeSeries(ctx, lo, 0, modes)

    def delta0(self):
        """z_0, the degree-zero central mode (exact division by hbar)."""
        return self.z_modes()[0].divexact_var(HBAR).in_ctx(self.ctx)

    def y_mode_series(self, j, ctx=None):
        """y_j(u) = z(u+(j-1)h) + d_j(u) + telescoping lower-block shifts."""
        key = (j, None if ctx is None else id(ctx))
        if key not in self._y_cache:
            base = ctx if ctx is not None else self.ctx.with_order(self.order + 1)
            lo = -(self.order + 2)
            h = base.var(HBAR)
            total = shift_mode_variable(
                self.z_mode_series(base, lo), h * rat(j - 1)
            ) + self.d_mode_series(j, lo, base)
            for s in range(1, j):
                d = self.d_mode_series(j - s, lo, base)
                total = total + shift_mode_variable(d, h * rat(s))
                total = total - shift_mode_variable(d, h * rat(s - 1))
            self._y_cache[key] = total
        return self._y_cache[key]

    def by_series(self, j, vname, ctx=None):
        """B(y_j)(v) = hbar sum_r y_{j,r} v^r / r!."""
        ctx = ctx if ctx is not None else self.ctx
        hictx = ctx.with_order(ctx.order + 1) if ctx is self.ctx else ctx
        ms = self.y_mode_series(j, hictx)
        out = borel_transform(ms, vname)
        return out if out.ctx is ctx else out.in_ctx(ctx)

    # -- Todd-type series ----------------------------------------------------------

    def td(self, sign, i, vname):
        """td^{±}_i(v); the plus case is evaluated at v + hbar."""
        key = (sign, i, vname)
        if key not in self._td_cache:
            ctx = self.ctx
            hictx = ctx.with_order(ctx.order + 1)
            big = ctx.with_order(2 * ctx.order + 4)
            jser = j_log_series(big, vname)
            j_block = i if sign > 0 else i + 1
            yms = self.y_mode_series(j_block, hictx)
            out = ctx.zero()
            deriv = jser.derivative(vname)
            fact = 1
            for r in range(self.order + 2):
                if r:
                    fact *= r
                deriv = deriv.derivative(vname) if r else deriv
                # deriv is now J^{(r+1)}
                coeff = yms[-r - 1]  # hbar y_{j,r}
                if coeff:
                    term = deriv.in_ctx(hictx) * coeff.in_ctx(hictx)
                    out = out + (term * (rat(-1) ** r / fact)).in_ctx(ctx)
            if sign > 0:
                out = out.taylor_shift(vname, ctx.var(HBAR))
            else:
                out = -out
            self._td_cache[key] = out
        return self._td_cache[key]

    def big_td(self, sign, i, vname):
        return self.td(sign, i, vname).exp()

    # -- the solution family ----------------------------------------------------------

    def g(self, sign, i, vname):
        key = (sign, i, vname)
        if key not in self._g_cache:
            ctx = self.ctx
            unit = hbar_over_q_minus_qinv(ctx, 1, HBAR)
            if sign > 0:
                pref = ctx.var(HBAR) * (self.delta0() + self.gen(i, 0)) * rat(-1, 2)
            else:
                pref = ctx.var(HBAR) * (self.delta0() + self.gen(i + 1, 0)) * rat(1, 2)
            self._g_cache[key] = pref.exp() * unit * self.big_td(sign, i, vname)
        return self._g_cache[key]


# ---------------------------------------------------------------------------
# Condition checks.
# ---------------------------------------------------------------------------


def _exp_quotient(ctx, uname, vname, c):
    from .conditions import exp_quotient

    return exp_quotient(ctx, uname, vname, c)


def gln_check_A(ga, i, ip, uname="u", vname="v"):
    with Timer() as t:
        lhs = ga.g(+1, i, uname) * ga.lambda_apply(+1, i, ga.g(-1, ip, vname), uname)
        rhs = ga.g(-1, ip, vname) * ga.lambda_apply(-1, ip, ga.g(+1, i, uname), vname)
    return compare_report(
        f"A[{ga.label};i={i},i'={ip}]",
        {"i": i, "ip": ip, "N": ga.order},
        lhs,
        rhs,
        t,
    )


def gln_check_B(ga, i, k, uname="u"):
    with Timer() as t:
        core = ga.g(+1, i, uname) * ga.lambda_apply(+1, i, ga.g(-1, i, uname), uname)
        eku = (ga.ctx.var(uname) * rat(k)).exp() if k else ga.ctx.one()
        lhs = ga.xi_substitute(eku * core, uname, i)
        rhs = ga.psi_phi_diff(i, k)
    return compare_report(
        f"B[{ga.label};i={i},k={k}]",
        {"i": i, "k": k, "N": ga.order},
        lhs,
        rhs,
        t,
        notes="window of N+1 integer k values decides all k",
    )


def gln_check_C0(ga, sign, i, ip, uname="u", vname="v"):
    with Timer() as t:
        lhs = ga.g(sign, i, uname) * ga.lambda_apply(
            sign, i, ga.g(sign, ip, vname), uname
        )
        rhs = ga.g(sign, ip, vname) * ga.lambda_apply(
            sign, ip, ga.g(sign, i, uname), vname
        )
    return compare_report(
        f"C0[{ga.label};sign={'+' if sign > 0 else '-'},i={i},i'={ip}]",
        {"i": i, "ip": ip, "sign": sign, "N": ga.order},
        lhs,
        rhs,
        t,
    )


def gln_check_C1(ga, sign, i, uname="u", vname="v"):
    ctx = ga.ctx
    with Timer() as t:
        c = ctx.var(HBAR) * rat(sign)
        lhs = ga.g(sign, i, uname) * ga.lambda_apply(
            sign, i, ga.g(sign, i, vname), uname
        ) * _exp_quotient(ctx, uname, vname, c)
        rhs = ga.g(sign, i, vname) * ga.lambda_apply(
            sign, i, ga.g(sign, i, uname), vname
        ) * _exp_quotient(ctx, vname, uname, c)
    return compare_report(
        f"C1[{ga.label};sign={'+' if sign > 0 else '-'},i={i}]",
        {"i": i, "sign": sign, "N": ga.order},
        lhs,
        rhs,
        t,
    )


def gln_check_C2(ga, sign, i, uname="u", vname="v"):
    """Adjacent-node condition; for the minus sign the quotient factors swap
    sides (they enter the identity with exponent -1)."""
    ctx = ga.ctx
    with Timer() as t:
        p_plain = _exp_quotient(ctx, uname, vname, ctx.zero())
        p_shift = (
            _exp_quotient(ctx, uname, vname, ctx.var(HBAR))
            * (-(ctx.var(HBAR) * rat(1, 2))).exp()
        )
        left = ga.g(sign, i, uname) * ga.lambda_apply(
            sign, i, ga.g(sign, i + 1, vname), uname
        )
        right = ga.g(sign, i + 1, vname) * ga.lambda_apply(
            sign, i + 1, ga.g(sign, i, uname), vname
        )
        if sign > 0:
            lhs, rhs = left * p_plain, right * p_shift
        else:
            lhs, rhs = left * p_shift, right * p_plain
    return compare_report(
        f"C2[{ga.label};sign={'+' if sign > 0 else '-'},i={i}]",
        {"i": i, "sign": sign, "N": ga.order},
        lhs,
        rhs,
        t,
    )


def gln_check_all(ga, kwindow=None):
    if kwindow is None:
        half = (ga.order + 1) // 2
        kwindow = list(range(-half, ga.order + 2 - half))
    reports = []
    for i in ga.nodes:
        for ip in ga.nodes:
            reports.append(gln_check_A(ga, i, ip))
            if abs(i - ip) > 1:
                for sign in (+1, -1):
                    reports.append(gln_check_C0(ga, sign, i, ip))
        for k in kwindow:
            reports.append(gln_check_B(ga, i, k))
        for sign in (+1, -1):
            reports.append(gln_check_C1(ga, sign, i))
            if i + 1 in ga.nodes:
                reports.append(gln_check_C2(ga, sign, i))
    return reports
