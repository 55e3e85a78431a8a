"""Calculus in the commutative coefficient algebra Y^0.

Y^0 is generated by t_{i,r} (node i, mode r >= 0), with t_{i,r} of grading
weight r.  Its elements are GradedSeries in the symbols ``t<i>_<r>`` plus
hbar ``h`` and auxiliary weight-1 variables (u, v, ...).

The generating series are
    B_i(v)  = hbar * sum_r t_{i,r} v^r / r!
    xi_i(u) = exp( hbar * sum_r t_{i,r} u^{-r-1} )  = 1 + hbar * sum_r xi_{i,r} u^{-r-1}

The lambda-operators are the degree-0 algebra automorphisms acting by
    lambda^{±}_i(x)(B_j(v)) = B_j(v) ∓ K_{ij}(v) e^{x v},
    K_{ij}(v) = (e^{a v} - e^{-a v}) / v,   a = hbar d_i a_ij / 2.

An internal expansion symbol ``_w`` (weight 1) is reserved in every context
built here; callers must not use it.
"""

from __future__ import annotations

from .cartan import hbar_over_q_minus_qinv
from .series import (
    GradedSeries,
    ModeSeries,
    VarContext,
    rat,
    sinh2_over_var,
)

INTERNAL = "_w"
HBAR = "h"


def tname(i, r):
    return f"t{i}_{r}"


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


class Y0Algebra:
    """Context bundle for Y^0 computations over a Cartan datum."""

    def __init__(self, datum, order, aux=("u", "v"), gen_prefix="t"):
        self.datum = datum
        self.order = order
        self.aux = tuple(aux)
        self.gen_prefix = gen_prefix
        symbols = [(HBAR, 1)]
        symbols += [(a, 1) for a in self.aux]
        # weight-0 expansion symbol: every power of it is paired with hbar
        # or an aux variable in all internal uses, so truncation still works
        symbols.append((INTERNAL, 0))
        # one generator beyond the truncation order: intermediate results are
        # sometimes computed with one extra order of headroom before an exact
        # division by hbar brings them back within the truncation
        for i in datum.nodes:
            for r in range(order + 2):
                symbols.append((self._gname(i, r), r))
        self.ctx = VarContext(symbols, order)
        self._lambda_cache = {}
        self._xi_cache = {}

    def _gname(self, i, r):
        return f"{self.gen_prefix}{i}_{r}"

    def gen(self, i, r):
        """The generator t_{i,r} as a series."""
        return self.ctx.var(self._gname(i, r))

    def hbar(self):
        return self.ctx.var(HBAR)

    def gen_names(self):
        for i in self.datum.nodes:
            for r in range(self.order + 2):
                yield i, r, self._gname(i, r)

    # -- generating series -------------------------------------------------

    def b_core(self, i, vname, ctx=None):
        """B_i(v)/hbar = sum_r t_{i,r} v^r / r!."""
        ctx = ctx if ctx is not None else self.ctx
        s = ctx.zero()
        for r in range(self.order + 2):
            s = s + ctx.monomial(
                rat(1, _factorial(r)), **{self._gname(i, r): 1, vname: r}
            )
        return s

    def b_series(self, i, vname, ctx=None):
        """B_i(v) = hbar sum_r t_{i,r} v^r / r!."""
        ctx = ctx if ctx is not None else self.ctx
        return ctx.var(HBAR) * self.b_core(i, vname, ctx)

    def b_eval_core(self, i, value, ctx=None):
        """B_i(value)/hbar = sum_r t_{i,r} value^r / r! at a rational point."""
        ctx = ctx if ctx is not None else self.ctx
        value = rat(value)
        s = ctx.zero()
        for r in range(self.order + 2):
            s = s + ctx.var(self._gname(i, r)) * (value ** r / _factorial(r))
        return s

    def b_eval(self, i, value, ctx=None):
        """B_i evaluated at a rational point."""
        ctx = ctx if ctx is not None else self.ctx
        return ctx.var(HBAR) * self.b_eval_core(i, value, ctx)

    def t_mode_series(self, i, lo, ctx=None):
        """t_i(u) = hbar sum_r t_{i,r} u^{-r-1} as a ModeSeries."""
        ctx = ctx if ctx is not None else self.ctx
        h = ctx.var(HBAR)
        modes = {}
        for r in range(self.order + 2):
            c = h * ctx.var(self._gname(i, r))
            if c:
                modes[-r - 1] = c
        return ModeSeries(ctx, lo, 0, modes)

    # -- xi coordinates ----------------------------------------------------

    def xi(self, i, m):
        """xi_{i,m} expressed in t-generators (exact, weight m)."""
        key = (i, m)
        if key not in self._xi_cache:
            lo = -(self.order + 2)
            hictx = self.ctx.with_order(self.order + 1)
            e = self.t_mode_series(i, lo, hictx).exp()
            for mm in range(self.order + 1):
                c = e[-mm - 1]
                if c:
                    c = c.divexact_var(HBAR).in_ctx(self.ctx)
                else:
                    c = self.ctx.zero()
                self._xi_cache[(i, mm)] = c
        return self._xi_cache[key]

    def xi_substitute(self, x, uname, i):
        """Substitute u^m -> xi_{i,m} for every power m >= 0 (m=0 included)."""
        result = self.ctx.zero()
        for m in range(x.degree_in(uname) + 1):
            c = x.coeff_in(uname, m)
            if c:
                result = result + c * self.xi(i, m)
        return result

    # -- lambda operators ----------------------------------------------------

    def kernel(self, i, j, vname, ctx=None):
        """K_{ij}(v) = (e^{av} - e^{-av})/v, a = hbar d_i a_ij / 2."""
        ctx = ctx if ctx is not None else self.ctx
        aij = self.datum.a[i][j]
        if aij == 0:
            return ctx.zero()
        a = ctx.var(HBAR) * rat(self.datum.d[i] * aij, 2)
        return sinh2_over_var(ctx, a, vname)

    def lambda_gen_image(self, sign, i, j, r, auxname):
        """Image of t_{j,r} under lambda^{sign}_i(aux)."""
        key = (sign, i, j, r, auxname)
        cache = self._lambda_cache
        if key not in cache:
            hictx = self.ctx.with_order(self.order + 1)
            kern = self.kernel(i, j, INTERNAL, hictx)
            if not kern:
                cache[key] = self.gen(j, r)
            else:
                ee = (hictx.var(auxname) * hictx.var(INTERNAL)).exp()
                prod = kern * ee
                coeff = prod.coeff_in(INTERNAL, r).divexact_var(HBAR)
                corr = coeff.in_ctx(self.ctx) * _factorial(r)
                cache[key] = self.gen(j, r) - corr * sign
        return cache[key]

    def lambda_apply(self, sign, i, x, auxname):
        """Apply lambda^{sign}_i(aux) to a Y^0 element (algebra hom)."""
        mapping = {}
        for j, r, name in self.gen_names():
            if self.datum.a[i][j] != 0:
                mapping[name] = self.lambda_gen_image(sign, i, j, r, auxname)
        return x.subs_series(mapping)

    # -- image of the Cartan loop generators ---------------------------------

    def phi0_h(self, i, r):
        """Image of H_{i,r}: t_{i,0}/d_i for r = 0, B_i(r)/(q_i - q_i^{-1}) else."""
        if r == 0:
            return self.gen(i, 0) / self.datum.d[i]
        unit = hbar_over_q_minus_qinv(self.ctx, self.datum.d[i], HBAR)
        return self.b_eval(i, r).divexact_var(HBAR) * unit

    def psi_phi_modes(self, i, kmax, ctx=None):
        """Images of the Cartan series modes.

        Returns (psi, phi): psi as a ModeSeries in z^{-1} (modes -kmax..0,
        mode -k holding the image of psi_{i,k}) and phi in z (mode +k holding
        the image of phi_{i,-k}).
        """
        ctx = ctx if ctx is not None else self.ctx
        # the d_i in the zero-mode prefactor cancels against the 1/d_i in
        # the image of the degree-zero Cartan generator
        h2 = ctx.var(HBAR) * rat(1, 2)
        t0 = ctx.var(self._gname(i, 0))
        psi_arg = {}
        for s in range(1, kmax + 1):
            psi_arg[-s] = self.b_eval(i, s, ctx)
        psi = ModeSeries(ctx, -kmax, 0, psi_arg).exp() * (h2 * t0).exp()
        phi_arg = {}
        for s in range(1, kmax + 1):
            phi_arg[s] = -self.b_eval(i, -s, ctx)
        phi = ModeSeries(ctx, 0, kmax, phi_arg).exp() * (-(h2 * t0)).exp()
        return psi, phi

    def psi_phi_diff(self, i, k):
        """Image of (psi_{i,k} - phi_{i,k}) / (q_i - q_i^{-1})  (k in Z).

        Computed with one extra order of headroom: the difference carries an
        overall factor of hbar that is divided out exactly.
        """
        kk = abs(k)
        hictx = self.ctx.with_order(self.order + 1)
        psi, phi = self.psi_phi_modes(i, kk, hictx)
        if k > 0:
            diff = psi[-k]
        elif k < 0:
            diff = -phi[-k]
        else:
            diff = psi[0] - phi[0]
        unit = hbar_over_q_minus_qinv(self.ctx, self.datum.d[i], HBAR)
        return diff.divexact_var(HBAR).in_ctx(self.ctx) * unit


# ---------------------------------------------------------------------------
# Adapted generators.
# ---------------------------------------------------------------------------


def tprime_rank1(y, i, kmax, vname=None):
    """Rank-1 adapted generators t'_k with lambda^{±}(u) t'_k = t'_k ± u^k.

    B'(v) = -(v / (e^{hbar v} - e^{-hbar v})) B_i(v);  t'_k = k! [v^k] B'.
    """
    vname = vname if vname is not None else INTERNAL
    ctx = y.ctx
    denom = _sinh2_over_hbar_var(ctx, 2, vname)
    bprime = -y.b_core(i, vname) * denom.inverse()
    return [bprime.coeff_in(vname, k) * _factorial(k) for k in range(kmax + 1)]


def _sinh2_over_hbar_var(ctx, c, vname):
    """(e^{c hbar v / 2} - e^{-c hbar v / 2}) / (hbar v), exactly.

    Computed with one extra order of headroom before the hbar division.
    """
    hictx = ctx.with_order(ctx.order + 1)
    a = hictx.var(HBAR) * rat(c, 2)
    return sinh2_over_var(hictx, a, vname).divexact_var(HBAR).in_ctx(ctx)


def matrix_inverse(rows, one):
    """Invert a square matrix of GradedSeries by Gauss-Jordan elimination.

    Pivots are inverted with ``GradedSeries.inverse``; leading pivots must be
    units (true for symmetrized Cartan matrices of finite type).
    """
    n = len(rows)
    aug = [list(row) + [one * 0] * n for row in rows]
    for i in range(n):
        aug[i][n + i] = one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col] and aug[r][col].constant_term():
                piv = r
                break
        if piv is None:
            raise ValueError("matrix not invertible over the series ring")
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = aug[col][col].inverse()
        aug[col] = [e * pinv for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def varpi_generators(y, rmax, vname=None):
    """Adapted generators varpi with lambda^{±}_i(u) varpi_{j,r} = varpi_{j,r} ± δ_ij u^r.

    B'_i(v) = -hbar^{-1} sum_j (Q^{-1})_{ij} B_j(v),
    Q_ij(v) = 2 sinh(hbar d_i a_ij v / 2) / (hbar v).

    Returns a dict (i, r) -> Y^0 element, r = 0..rmax.
    """
    vname = vname if vname is not None else INTERNAL
    ctx = y.ctx
    nodes = y.datum.nodes
    q = []
    for i in nodes:
        row = []
        for j in nodes:
            aij = y.datum.a[i][j]
            if aij == 0:
                row.append(ctx.zero())
            else:
                row.append(_sinh2_over_hbar_var(ctx, y.datum.d[i] * aij, vname))
        q.append(row)
    qinv = matrix_inverse(q, ctx.one())
    out = {}
    for ii, i in enumerate(nodes):
        bp = ctx.zero()
        for jj, j in enumerate(nodes):
            if qinv[ii][jj]:
                bp = bp + qinv[ii][jj] * y.b_core(j, vname)
        bp = -bp
        for r in range(rmax + 1):
            out[(i, r)] = bp.coeff_in(vname, r) * _factorial(r)
    return out
