"""Bridge between the abstract n-block calculus and its flag realizations.

Two families of checks live here:

* closed-form evaluation: the determinant-like central series, its additive
  logarithm, the block series B(y_j) and the Todd-type series td_i^{±} are
  built abstractly (in the generators d_{j,r}) by :mod:`loopyang.gln`; here
  they are evaluated in the polynomial realization, where each has an exact
  closed form in the coordinates x_1..x_d;

* intertwining: the exponential change of variables

      q |-> e^{hbar/2},   X_k |-> e^{x_k}

  carries the Laurent-side operators to the constructed images of the loop
  generators acting through the polynomial-side operators.  This is checked
  generator by generator, exactly, at finite truncation order.
"""

from __future__ import annotations

from .gln import HBAR, INTERNAL, GlnAlgebra
from .glnflag import (
    LoopFlagRep,
    YangFlagRep,
    block,
    flag_partitions,
    lower_at,
    mode_mul,
    raise_at,
)
from .poly import Poly
from .report import Timer, compare_report
from .series import GradedSeries, ModeSeries, VarContext, j_log_series, rat


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


def rep_context(d, order):
    """Graded context for the polynomial realization: h, x_1..x_d, v."""
    symbols = [(HBAR, 1)]
    symbols += [(f"x{k}", 1) for k in range(1, d + 1)]
    symbols.append(("v", 1))
    return VarContext(symbols, order)


def dj_value(ctx, dd, j, r):
    """Realized value of the generator d_{j,r} (degree-r homogeneous)."""
    if r > ctx.order:
        return ctx.zero()
    hictx = ctx.with_order(r + 1)
    h = hictx.var(HBAR)
    d = dd[-1]
    acc = hictx.zero()
    for k in range(1, dd[j - 1] + 1):
        x = hictx.var(f"x{k}")
        acc = acc + (x ** (r + 1) - (x - h) ** (r + 1)) / rat(r + 1)
    for k in range(dd[j] + 1, d + 1):
        x = hictx.var(f"x{k}")
        acc = acc + ((x + h) ** (r + 1) - x ** (r + 1)) / rat(r + 1)
    return acc.divexact_var(HBAR).in_ctx(ctx)


class GlnBridge:
    """Evaluation of abstract series in the polynomial realization."""

    def __init__(self, ga: GlnAlgebra, d, ctx=None):
        self.ga = ga
        self.d = d
        self.ctx = ctx if ctx is not None else rep_context(d, ga.order)
        self._maps = {}

    def gen_map(self, dd):
        if dd not in self._maps:
            mapping = {INTERNAL: self.ctx.zero()}
            for a in self.ga.aux:
                if a != "v":
                    mapping[a] = self.ctx.zero()
            for j, r, name in self.ga.gen_names():
                mapping[name] = dj_value(self.ctx, dd, j, r)
            self._maps[dd] = mapping
        return self._maps[dd]

    def evaluate(self, x, dd):
        """Evaluate an abstract series (u-free) on component dd."""
        return x.subs_series(self.gen_map(dd), self.ctx)

    def evaluate_modes(self, ms, dd, window):
        return {m: self.evaluate(ms[m], dd) for m in range(-window, 1) if ms[m]}


def _linfrac_graded_modes(ctx, b1, b2, window):
    """Modes of (u - b1)/(u - b2) in u^{-1}: {0: 1, m: b2^{m-1}(b2 - b1)}."""
    out = {0: ctx.one()}
    diff = b2 - b1
    power = ctx.one()
    for m in range(1, window + 1):
        c = power * diff
        if c:
            out[m] = c
        power = power * b2
    return out


def _graded_mode_mul(x, y, window):
    out = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            m = mx + my
            if m > window:
                continue
            t = cx * cy
            if m in out:
                out[m] = out[m] + t
            else:
                out[m] = t
    return {m: c for m, c in out.items() if c}


def _product_modes(ctx, factors, window):
    total = {0: ctx.one()}
    for b1, b2 in factors:
        total = _graded_mode_mul(
            total, _linfrac_graded_modes(ctx, b1, b2, window), window
        )
    return total


def _j_shifted(ctx, shift):
    """J(v + shift) for a weight>=1 shift, exactly truncated."""
    big = ctx.with_order(2 * ctx.order + 2)
    jser = j_log_series(big, "v")
    arg = big.var("v") + (shift.in_ctx(big) if shift.ctx is not big else shift)
    return jser.compose_var("v", arg).in_ctx(ctx)


# ---------------------------------------------------------------------------
# Closed-form evaluation checks.
# ---------------------------------------------------------------------------


def check_qdet_closed(br, dd):
    """The central product of shifted diagonal series realizes as
    prod_k (u - x_k)/(u - x_k - (n-1) hbar)."""
    ga, ctx = br.ga, br.ctx
    window = ga.order + 1
    with Timer() as t:
        logms = ga.qdet_log_modes(ga.ctx.with_order(ga.order + 1))
        coeffs = br.evaluate_modes(logms, dd, window)
        got = ModeSeries(ctx, -window, 0, coeffs).exp()
        h = ctx.var(HBAR)
        shift = h * rat(ga.n - 1)
        factors = [
            (ctx.var(f"x{k}"), ctx.var(f"x{k}") + shift)
            for k in range(1, br.d + 1)
        ]
        want = _product_modes(ctx, factors, window)
        bad = None
        for m in range(window + 1):
            if got[-m] != want.get(m, ctx.zero()):
                bad = m
                break
    return compare_report(
        f"QDET[{dd}]",
        {"dd": dd, "N": ga.order},
        None,
        None,
        t,
        passed=bad is None,
        failure=None if bad is None else f"mode {bad}",
    )


def check_center_closed(br, dd):
    """The solved central modes realize as prod_k (u - x_k - hbar)/(u - x_k)."""
    ga, ctx = br.ga, br.ctx
    window = ga.order + 1
    with Timer() as t:
        zvals = {}
        for r, c in ga.z_modes().items():
            v = br.evaluate(c, dd)
            if v:
                zvals[-r - 1] = v
        got = ModeSeries(ctx, -window, 0, zvals).exp()
        h = ctx.var(HBAR)
        factors = [
            (ctx.var(f"x{k}") + h, ctx.var(f"x{k}")) for k in range(1, br.d + 1)
        ]
        want = _product_modes(ctx, factors, window)
        bad = None
        for m in range(window + 1):
            if got[-m] != want.get(m, ctx.zero()):
                bad = m
                break
    return compare_report(
        f"CENTER[{dd}]",
        {"dd": dd, "N": ga.order},
        None,
        None,
        t,
        passed=bad is None,
        failure=None if bad is None else f"mode {bad}",
    )


def check_by_closed(br, dd, j):
    """B(y_j) realizes as sum_{k in I_j} (e^{x_k v} - e^{(x_k+hbar)v})/v."""
    ga, ctx = br.ga, br.ctx
    with Timer() as t:
        lhs = br.evaluate(ga.by_series(j, "v"), dd)
        hictx = ctx.with_order(ctx.order + 1)
        h, v = hictx.var(HBAR), hictx.var("v")
        acc = hictx.zero()
        for k in block(dd, j):
            x = hictx.var(f"x{k}")
            acc = acc + (x * v).exp() - ((x + h) * v).exp()
        rhs = acc.divexact_var("v").in_ctx(ctx)
    return compare_report(
        f"BY[{dd};j={j}]", {"dd": dd, "j": j, "N": ga.order}, lhs, rhs, t
    )


def td_closed(br, dd, sign, i):
    """Closed form of td_i^{±} on component dd."""
    ctx = br.ctx
    h = ctx.var(HBAR)
    blk = block(dd, i if sign > 0 else i + 1)
    acc = ctx.zero()
    for k in blk:
        x = ctx.var(f"x{k}")
        acc = acc + _j_shifted(ctx, -x) - _j_shifted(ctx, -x + h * rat(sign))
    return acc


def check_td_closed(br, dd, sign, i):
    ga = br.ga
    with Timer() as t:
        lhs = br.evaluate(ga.td(sign, i, "v"), dd)
        rhs = td_closed(br, dd, sign, i)
    return compare_report(
        f"TD[{dd};sign={'+' if sign > 0 else '-'},i={i}]",
        {"dd": dd, "i": i, "sign": sign, "N": ga.order},
        lhs,
        rhs,
        t,
    )


def check_theta_values(br, dd, j):
    """The realized generator values reproduce the multiplication action of
    the diagonal series (modes of its logarithm)."""
    ctx = br.ctx
    window = br.ga.order + 1
    with Timer() as t:
        h = ctx.var(HBAR)
        factors = []
        for k in range(1, dd[j - 1] + 1):
            x = ctx.var(f"x{k}")
            factors.append((x - h, x))
        for k in range(dd[j] + 1, br.d + 1):
            x = ctx.var(f"x{k}")
            factors.append((x, x + h))
        want = _product_modes(ctx, factors, window)
        dvals = {}
        for r in range(br.ga.order + 2):
            v = dj_value(ctx, dd, j, r) * h
            if v:
                dvals[-r - 1] = v
        got = ModeSeries(ctx, -window, 0, dvals).exp()
        bad = None
        for m in range(window + 1):
            if got[-m] != want.get(m, ctx.zero()):
                bad = m
                break
    return compare_report(
        f"THETAVAL[{dd};j={j}]",
        {"dd": dd, "j": j},
        None,
        None,
        t,
        passed=bad is None,
        failure=None if bad is None else f"mode {bad}",
    )


# ---------------------------------------------------------------------------
# Intertwining under the exponential change of variables.
# ---------------------------------------------------------------------------


def eexp(p, ctx):
    """q |-> e^{hbar/2}, X_k |-> e^{x_k} on a Laurent polynomial."""
    images = {}
    for name in p.vars:
        if name == "q":
            images[name] = (ctx.var(HBAR) * rat(1, 2)).exp()
        else:
            images[name] = ctx.var("x" + name[1:]).exp()
    return p.graded_image(ctx, images)


def _to_rep_poly(gs, yr):
    """Drop the (zero-degree) v symbol and reread as a sparse polynomial."""
    vi = gs.ctx.index("v")
    terms = {}
    for e, c in gs.terms.items():
        if e[vi]:
            raise ValueError("series still involves the auxiliary variable")
        terms[e[:vi] + e[vi + 1:]] = c
    return Poly(yr.vars, terms)


def _from_rep_poly(p, ctx):
    out = {}
    wf = ctx.weight_of
    for e, c in p.terms.items():
        ee = e + (0,)
        if wf(ee) <= ctx.order:
            out[ee] = c
    return GradedSeries(ctx, out)


class PhiFlagAction:
    """Action of the constructed loop-generator images on the polynomial
    realization, using the closed forms of the Todd-type series."""

    def __init__(self, br: GlnBridge, yr: YangFlagRep):
        self.br = br
        self.yr = yr
        self.ctx = br.ctx
        self._td_cache = {}

    def _td(self, dd, sign, i):
        key = (dd, sign, i)
        if key not in self._td_cache:
            self._td_cache[key] = td_closed(self.br, dd, sign, i).exp()
        return self._td_cache[key]

    def cartan_value(self, dd, j, r):
        """Realized value of B_j at the integer point r (r != 0 or not)."""
        ctx = self.ctx
        acc = ctx.zero()
        h = ctx.var(HBAR)
        for s in range(ctx.order + 1):
            v = dj_value(ctx, dd, j, s)
            if v:
                acc = acc + (h * v) * (rat(r) ** s / _factorial(s))
        return acc

    def raising(self, dd, i, r, g):
        """Apply the image of the degree-r raising generator to a truncated
        series g on component dd; returns (target, series) or None."""
        dd2 = raise_at(dd, i)
        if dd2 is None:
            return None
        ctx = self.ctx
        scalar = (ctx.var(HBAR) * rat(dd[i] - dd[i - 1], 2)).exp()
        ser = (ctx.var("v") * rat(r)).exp() * self._td(dd, +1, i)
        base = g * scalar
        total = ctx.zero()
        for s in range(ctx.order + 1):
            cs = ser.coeff_in("v", s)
            if not cs:
                continue
            res = self.yr.e(dd, i, s, _to_rep_poly(cs * base, self.yr))
            total = total + _from_rep_poly(res[1], ctx)
        return dd2, total

    def lowering(self, dd, i, r, g):
        dd2 = lower_at(dd, i)
        if dd2 is None:
            return None
        ctx = self.ctx
        scalar = (-(ctx.var(HBAR) * rat(dd[i + 1] - dd[i], 2))).exp()
        ser = (ctx.var("v") * rat(r)).exp() * self._td(dd, -1, i)
        base = g * scalar
        total = ctx.zero()
        for s in range(ctx.order + 1):
            cs = ser.coeff_in("v", s)
            if not cs:
                continue
            res = self.yr.f(dd, i, s, _to_rep_poly(cs * base, self.yr))
            total = total + _from_rep_poly(res[1], ctx)
        return dd2, total


def check_intertwine_cartan(pa: PhiFlagAction, lr: LoopFlagRep, dd, j, r):
    """The realized diagonal loop modes match the degree-r point values of
    the block series under the exponential change of variables.

    The loop-side value of the (cleared) degree-r diagonal generator is read
    off the logarithm of the multiplication action, with no reference to any
    closed formula.
    """
    ctx = pa.ctx
    with Timer() as t:
        if r == 0:
            scalar = dd[j - 1] + (lr.d - dd[j])
            got = lr.theta_modes(dd, j, +1, 0)[0]
            want = lr.base(scalar)
            ok1 = got == want
            lhs = pa.cartan_value(dd, j, 0)
            rhs = ctx.const(scalar) * ctx.var(HBAR)
            return compare_report(
                f"IW-D0[{dd};j={j}]",
                {"dd": dd, "j": j},
                lhs,
                rhs,
                t,
                passed=(lhs == rhs) and ok1,
            )
        sign = 1 if r > 0 else -1
        m = abs(r)
        from .drinfeld import _mode_log

        th = lr.theta_modes(dd, j, sign, m)
        inv0 = th[0].inverse_monomial()
        norm = {s: inv0 * c for s, c in th.items()}
        logm = _mode_log(norm, m, lr.one())
        val = logm.get(m, lr.zero()) * sign
        lhs = eexp(val, ctx)
        rhs = pa.cartan_value(dd, j, r)
    return compare_report(
        f"IW-D[{dd};j={j},r={r}]", {"dd": dd, "j": j, "r": r}, lhs, rhs, t
    )


def check_intertwine_raising(pa, lr, dd, i, r, p, kind="e"):
    """eexp(E_{i,r} p) equals the constructed raising image applied to
    eexp(p); same for the lowering family."""
    ctx = pa.ctx
    with Timer() as t:
        res = lr.e(dd, i, r, p) if kind == "e" else lr.f(dd, i, r, p)
        lhs = ctx.zero() if res is None else eexp(res[1], ctx)
        g = eexp(p, ctx)
        out = (
            pa.raising(dd, i, r, g) if kind == "e" else pa.lowering(dd, i, r, g)
        )
        rhs = ctx.zero() if out is None else out[1]
    return compare_report(
        f"IW-{kind.upper()}[{dd};i={i},r={r}]",
        {"dd": dd, "i": i, "r": r, "N": ctx.order},
        lhs,
        rhs,
        t,
    )


# ---------------------------------------------------------------------------
# Sweeps used by the command-line driver and the acceptance suite.
# ---------------------------------------------------------------------------


def bridge_closed_form_suite(br):
    """Every closed-form identity of the realized series, all components."""
    n = br.ga.n
    reports = []
    for dd in flag_partitions(n, br.d):
        reports.append(check_qdet_closed(br, dd))
        reports.append(check_center_closed(br, dd))
        for j in range(1, n + 1):
            reports.append(check_by_closed(br, dd, j))
            reports.append(check_theta_values(br, dd, j))
        for i in range(1, n):
            reports.append(check_td_closed(br, dd, +1, i))
            reports.append(check_td_closed(br, dd, -1, i))
    return reports


def intertwine_suite(br, rwindow=2, degree=2, probe_count=2):
    """The transported action of every constructed generator image against
    the loop-side polynomial operators, on all components."""
    from .glnflag import loop_probe_polys

    n = br.ga.n
    yr = YangFlagRep(n, br.d)
    lr = LoopFlagRep(n, br.d)
    pa = PhiFlagAction(br, yr)
    rset = range(-rwindow, rwindow + 1)
    reports = []
    for dd in lr.components:
        for j in range(1, n + 1):
            for r in rset:
                reports.append(check_intertwine_cartan(pa, lr, dd, j, r))
        probes = loop_probe_polys(lr, dd, degree, probe_count)
        for p in probes:
            for i in range(1, n):
                for r in rset:
                    reports.append(
                        check_intertwine_raising(pa, lr, dd, i, r, p, "e")
                    )
                    reports.append(
                        check_intertwine_raising(pa, lr, dd, i, r, p, "f")
                    )
    return reports
