"""Deciders for conditions (A), (B), (C) and the gauge calculus.

Conditions (for a candidate family g):
  (A)  g_i^+(u) lam^+_i(u)(g_j^-(v)) = g_j^-(v) lam^-_j(v)(g_i^+(u))
  (B)  e^{ku} g_i^+(u) lam^+_i(u)(g_i^-(u)) |_{u^m = xi_{i,m}}
         = image of (psi_{i,k} - phi_{i,k}) / (q_i - q_i^{-1})
  (C)  g_i^±(u) lam^±_i(u)(g_j^±(v)) (e^u - e^{v±a hbar})/(u - v ∓ a hbar)
         = same with (i,u) and (j,v) interchanged,   a = d_i a_ij / 2.

The displayed quotients are formed exactly: with c = ±a*hbar,
(e^u - e^{v+c})/(u - v - c) = e^{v+c} * sum_k (u-v-c)^k/(k+1)!, which is the
result of substituting w := u-v-c and dividing the numerator by w.

Gauge calculus: a family r_i^{±} of units acts by g_i^{±} -> r_i^{±} g_i^{±};
it preserves the conditions iff
  (A0)  r_i^+(u) lam^+_i(u)(r_j^-(v)) = r_j^-(v) lam^-_j(v)(r_i^+(u))
  (B0)  r_i^+(u) lam^+_i(u)(r_i^-(u)) = 1
  (C0±) r_i^±(u) lam^±_i(u)(r_j^±(v)) = r_j^±(v) lam^±_j(v)(r_i^±(u)).
``gauge_solve`` inverts the construction r_i^+ = xi * lam^+_i(u)(xi)^{-1}.
"""

from __future__ import annotations

from .report import CheckReport, Timer, compare_report
from .series import VarContext, rat
from .y0 import HBAR


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


def rename_var(x, old, new):
    """Substitute one weight-1 symbol for another."""
    return x.subs_series({old: x.ctx.var(new)})


def exp_quotient(ctx, uname, vname, c):
    """(e^u - e^{v+c})/(u - v - c) for a scalar series c of weight >= 1.

    Equals e^{v+c} * sum_k (u - v - c)^k / (k+1)!  (exact division).
    """
    w = ctx.var(uname) - ctx.var(vname) - c
    s = ctx.zero()
    power = ctx.one()
    for k in range(ctx.order + 1):
        s = s + power / _factorial(k + 1)
        power = power * w
        if not power:
            break
    return (ctx.var(vname) + c).exp() * s


def check_A(gf, i, j, uname="u", vname="v"):
    """Condition (A) for nodes (i, j)."""
    y = gf.y
    with Timer() as t:
        lhs = gf.g(+1, i, uname) * y.lambda_apply(+1, i, gf.g(-1, j, vname), uname)
        rhs = gf.g(-1, j, vname) * y.lambda_apply(-1, j, gf.g(+1, i, uname), vname)
    return compare_report(
        f"A[{y.datum.label};i={i},j={j}]",
        {"i": i, "j": j, "N": y.order, "gauge": gf.label},
        lhs,
        rhs,
        t,
    )


def check_B(gf, i, k, uname="u"):
    """Condition (B) for node i and integer mode k."""
    y = gf.y
    ctx = y.ctx
    with Timer() as t:
        core = gf.g(+1, i, uname) * y.lambda_apply(+1, i, gf.g(-1, i, uname), uname)
        eku = (ctx.var(uname) * rat(k)).exp() if k else ctx.one()
        lhs = y.xi_substitute(eku * core, uname, i)
        rhs = y.psi_phi_diff(i, k)
    return compare_report(
        f"B[{y.datum.label};i={i},k={k}]",
        {"i": i, "k": k, "N": y.order, "gauge": gf.label},
        lhs,
        rhs,
        t,
        notes="window of N+1 integer k values decides all k: "
        "the left side is polynomial in k of degree <= N",
    )


def check_C(gf, sign, i, j, uname="u", vname="v"):
    """Condition (C) for sign ± and nodes (i, j)."""
    y = gf.y
    ctx = y.ctx
    with Timer() as t:
        a2 = y.datum.d[i] * y.datum.a[i][j]  # 2a = d_i a_ij
        c = ctx.var(HBAR) * rat(sign * a2, 2)
        lhs = (
            gf.g(sign, i, uname)
            * y.lambda_apply(sign, i, gf.g(sign, j, vname), uname)
            * exp_quotient(ctx, uname, vname, c)
        )
        rhs = (
            gf.g(sign, j, vname)
            * y.lambda_apply(sign, j, gf.g(sign, i, uname), vname)
            * exp_quotient(ctx, vname, uname, c)
        )
    return compare_report(
        f"C[{y.datum.label};sign={'+' if sign > 0 else '-'},i={i},j={j}]",
        {"i": i, "j": j, "sign": sign, "N": y.order, "gauge": gf.label},
        lhs,
        rhs,
        t,
    )


def check_all(gf, kwindow=None):
    """All conditions for a family: (A), (B) over the k-window, (C) both signs."""
    y = gf.y
    if kwindow is None:
        half = (y.order + 1) // 2
        kwindow = range(-half, y.order + 1 - half)
    reports = []
    for i in y.datum.nodes:
        for j in y.datum.nodes:
            reports.append(check_A(gf, i, j))
            for sign in (+1, -1):
                reports.append(check_C(gf, sign, i, j))
        for k in kwindow:
            reports.append(check_B(gf, i, k))
    return reports


# ---------------------------------------------------------------------------
# Gauge calculus.
# ---------------------------------------------------------------------------


def gauge_apply(alg, r, gf):
    """Apply a gauge family: g_i^{±}(v) -> r_i^{±}(v) g_i^{±}(v).

    ``r`` maps (sign, i) to a unit element expressed in the variable
    ``alg.aux[0]``; it is renamed into each variable on use.
    """
    from .phi import GFamily

    base = alg.aux[0]
    overrides = {}
    for (sign, i), ru in r.items():
        for vname in alg.aux:
            overrides[(sign, i, vname)] = rename_var(ru, base, vname) * gf.g(
                sign, i, vname
            )
    return GFamily(gf.y, overrides, label=gf.label + "*gauge")


def check_gauge_axioms(alg, r, uname="u", vname="v"):
    """Check (A0), (B0), (C0+), (C0-) for a gauge family.

    ``alg`` is any algebra with ``lambda_apply``; ``r`` maps (sign, i) to a
    unit element in the variable ``uname``.
    """

    def ru(sign, i, var):
        return rename_var(r[(sign, i)], uname, var)

    nodes = alg.datum.nodes
    one = alg.ctx.one()
    reports = []
    for i in nodes:
        with Timer() as t:
            lhs = r[(+1, i)] * alg.lambda_apply(+1, i, ru(-1, i, uname), uname)
        reports.append(
            compare_report(
                f"B0[{alg.datum.label};i={i}]",
                {"i": i, "N": alg.order},
                lhs,
                one,
                t,
            )
        )
        for j in nodes:
            with Timer() as t:
                lhs = r[(+1, i)] * alg.lambda_apply(+1, i, ru(-1, j, vname), uname)
                rhs = ru(-1, j, vname) * alg.lambda_apply(-1, j, r[(+1, i)], vname)
            reports.append(
                compare_report(
                    f"A0[{alg.datum.label};i={i},j={j}]",
                    {"i": i, "j": j, "N": alg.order},
                    lhs,
                    rhs,
                    t,
                )
            )
            for sign in (+1, -1):
                with Timer() as t:
                    lhs = ru(sign, i, uname) * alg.lambda_apply(
                        sign, i, ru(sign, j, vname), uname
                    )
                    rhs = ru(sign, j, vname) * alg.lambda_apply(
                        sign, j, ru(sign, i, uname), vname
                    )
                reports.append(
                    compare_report(
                        f"C0[{alg.datum.label};sign={'+' if sign > 0 else '-'},i={i},j={j}]",
                        {"i": i, "j": j, "sign": sign, "N": alg.order},
                        lhs,
                        rhs,
                        t,
                    )
                )
    return reports


class VarpiAlgebra:
    """Y^0 in adapted coordinates: lam^{±}_i(u) w_{j,r} = w_{j,r} ± δ_ij u^r.

    Symbols ``w<i>_<r>`` of weight r; the lambda action is exact here, which
    makes the gauge-solving algorithm purely combinatorial.
    """

    def __init__(self, datum, order, aux=("u", "v")):
        self.datum = datum
        self.order = order
        self.aux = tuple(aux)
        symbols = [(HBAR, 1)] + [(a, 1) for a in aux]
        self._windex = {}
        for i in datum.nodes:
            for r in range(order + 1):
                self._windex[len(symbols)] = (i, r)
                symbols.append((f"w{i}_{r}", r))
        self.ctx = VarContext(symbols, order)

    def gen(self, i, r):
        return self.ctx.var(f"w{i}_{r}")

    def gen_items(self):
        return list(self._windex.items())

    def lambda_apply(self, sign, i, x, auxname):
        mapping = {}
        for r in range(self.order + 1):
            mapping[f"w{i}_{r}"] = self.gen(i, r) + sign * self.ctx.var(auxname, r)
        return x.subs_series(mapping)

    def w_degree(self, expo):
        """Total degree in the adapted generators."""
        return sum(expo[idx] for idx in self._windex)

    def split_top_degree(self, x):
        """(top, rest, D): the ϖ-degree-D part of x and the remainder."""
        if not x.terms:
            return x, x, 0
        degs = {e: self.w_degree(e) for e in x.terms}
        dmax = max(degs.values())
        top = {e: c for e, c in x.terms.items() if degs[e] == dmax}
        rest = {e: c for e, c in x.terms.items() if degs[e] != dmax}
        from .series import GradedSeries

        return GradedSeries(x.ctx, top), GradedSeries(x.ctx, rest), dmax


def gauge_solve(va, rbar, uname="u"):
    """Solve (lam^+_i(u) - 1) eta = rbar_i for all nodes simultaneously.

    ``rbar`` maps node -> element of the adapted-coordinate algebra with
    zero generator-free part.  Returns eta with zero generator-free part.
    Raises ValueError when the family is not integrable (i.e. (C0+) fails).

    The solution of r_i^+ = xi lam^+_i(u)(xi)^{-1} with rbar_i = log r_i^+
    is xi = exp(-eta).
    """
    from .series import GradedSeries

    ctx = va.ctx
    eta = ctx.zero()
    work = {i: rbar[i] for i in va.datum.nodes}
    guard = 0
    while any(work[i] for i in va.datum.nodes):
        guard += 1
        if guard > 10 * (va.order + 2):
            raise ValueError("gauge_solve failed to converge")
        dmax = max(
            (va.split_top_degree(work[i])[2] for i in va.datum.nodes if work[i]),
            default=0,
        )
        part = ctx.zero()
        if dmax == 0:
            # generator-free residue must be the image of a linear element
            for i in va.datum.nodes:
                x = work[i]
                for m in range(x.degree_in(uname) + 1):
                    c = x.coeff_in(uname, m)
                    if c:
                        part = part + c * va.gen(i, m)
        else:
            # homotopy primitive of the top-degree cross-derivatives
            for i in va.datum.nodes:
                top, _, d = va.split_top_degree(work[i])
                if not top or d != dmax:
                    continue
                for m in range(top.degree_in(uname) + 1):
                    rho = top.coeff_in(uname, m)
                    if rho:
                        part = part + rho * va.gen(i, m)
            scaled = {}
            for e, c in part.terms.items():
                wd = va.w_degree(e)
                scaled[e] = c / wd
            part = GradedSeries(ctx, scaled)
        eta = eta + part
        newmax = -1
        for i in va.datum.nodes:
            work[i] = work[i] - (va.lambda_apply(+1, i, part, uname) - part)
            if work[i]:
                newmax = max(newmax, va.split_top_degree(work[i])[2])
        if dmax == 0:
            if newmax >= 0:
                raise ValueError("gauge_solve: inconsistent linear part (C0+ violated)")
        elif newmax >= dmax:
            raise ValueError("gauge_solve: integrability failure (C0+ violated)")
    return eta
