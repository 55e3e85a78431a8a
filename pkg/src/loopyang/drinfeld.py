"""Evaluation homomorphisms onto symmetric-function rings.

Both sides of the construction admit evaluations onto rings of symmetric
Laurent polynomials: the loop side lands in ``Q[q^{±1}, A_1^{±1}..A_m^{±1}]``
and the degreewise-completed side in ``Q[h, a_1..a_m]``.  Composing the loop
evaluation with ``q -> e^{h/2}, A_i -> e^{a_i}`` must agree with evaluating
the image of the main homomorphism; this module computes all four maps
independently and checks the square, which cross-validates the diagonal
compatibility identity by evaluation.
"""

from .report import Timer, compare_report
from .series import VarContext, rat
from .y0 import HBAR


def s_vars(m):
    return ("q",) + tuple(f"A{i}" for i in range(1, m + 1))


def r_vars(m):
    return ("h",) + tuple(f"a{i}" for i in range(1, m + 1))


# ---------------------------------------------------------------------------
# Mode-dict helpers: truncated expansions with Poly coefficients.
# ---------------------------------------------------------------------------


def _mode_mul(x, y, rmax):
    out = {}
    for rx, cx in x.items():
        for ry, cy in y.items():
            r = rx + ry
            if r > rmax:
                continue
            if r in out:
                out[r] = out[r] + cx * cy
            else:
                out[r] = cx * cy
    return {r: c for r, c in out.items() if c}


def _mode_log(x, rmax, one):
    """log of a mode dict with x[0] == one; modes indexed by r >= 0."""
    rest = {r: c for r, c in x.items() if r != 0}
    out = {}
    power = {0: one}
    sign = 1
    for k in range(1, rmax + 1):
        power = _mode_mul(power, rest, rmax)
        if not power:
            break
        for r, c in power.items():
            t = c * rat(sign, k)
            out[r] = out.get(r, c * 0) + t
        sign = -sign
    return {r: c for r, c in out.items() if c}


# ---------------------------------------------------------------------------
# Loop-side evaluation into Q[q^{±1}, A_i^{±1}].
# ---------------------------------------------------------------------------


def du_psi_modes(m, rmax):
    """Modes psi_r (r >= 0) of prod_i (q z - q^{-1} A_i)/(z - A_i) in z^{-1}."""
    from .poly import Poly

    vs = s_vars(m)
    q = Poly.var(vs, "q")
    qinv = q.inverse_monomial()
    prod = {0: Poly.const(vs, 1)}
    for i in range(1, m + 1):
        A = Poly.var(vs, f"A{i}")
        factor = {0: q}
        for s in range(1, rmax + 1):
            factor[s] = (q - qinv) * A ** s
        prod = _mode_mul(prod, factor, rmax)
    return prod


def du_phi_modes(m, rmax):
    """Modes phi_{-r} (r >= 0) of the same product expanded in z."""
    from .poly import Poly

    vs = s_vars(m)
    q = Poly.var(vs, "q")
    qinv = q.inverse_monomial()
    prod = {0: Poly.const(vs, 1)}
    for i in range(1, m + 1):
        Ainv = Poly.var(vs, f"A{i}", -1)
        factor = {0: qinv}
        for s in range(1, rmax + 1):
            factor[s] = -(q - qinv) * Ainv ** s
        prod = _mode_mul(prod, factor, rmax)
    return prod


def du_psi_phi_closed(m, k):
    """Closed form of (psi_k - phi_k)/(q - q^{-1}) for any integer k.

    Equals sum_i A_i^k prod_{j != i} (q A_i - q^{-1} A_j)/(A_i - A_j); for
    k > 0 this is psi_k/(q - q^{-1}), for k < 0 it is -phi_k/(q - q^{-1}),
    and for k = 0 it is the balanced integer [m]_q.
    """
    from .poly import Poly, RationalFunction

    vs = s_vars(m)
    q = Poly.var(vs, "q")
    qinv = q.inverse_monomial()
    total = RationalFunction(Poly.const(vs, 0))
    for i in range(1, m + 1):
        Ai = Poly.var(vs, f"A{i}", k) if k else Poly.const(vs, 1)
        term = RationalFunction(Ai)
        for j in range(1, m + 1):
            if j == i:
                continue
            Aip = Poly.var(vs, f"A{i}")
            Aj = Poly.var(vs, f"A{j}")
            term = term * RationalFunction(q * Aip - qinv * Aj, Aip - Aj)
        total = total + term
    return total.to_poly()


def du_h(m, r):
    """Image of (q - q^{-1}) H_r for r != 0: (1 - q^{-2r})/r * sum_i A_i^r."""
    from .poly import Poly

    if r == 0:
        raise ValueError("r = 0 has no series mode; the image of H_0 is m")
    vs = s_vars(m)
    q2r = Poly.var(vs, "q", -2 * r)
    s = Poly.const(vs, 0)
    for i in range(1, m + 1):
        s = s + Poly.var(vs, f"A{i}", r)
    return (Poly.const(vs, 1) - q2r) * s * rat(1, r)


def du_h_modes(m, rmax, negative=False):
    """Images of (q - q^{-1}) H_r from log-expanding the defining product.

    Returns {r: image} for 1 <= r <= rmax (or the modes of H_{-r} for the
    ``negative`` expansion in powers of z).
    """
    from .poly import Poly

    vs = s_vars(m)
    modes = du_phi_modes(m, rmax) if negative else du_psi_modes(m, rmax)
    unit = modes[0].inverse_monomial()
    normalized = {r: unit * c for r, c in modes.items()}
    out = _mode_log(normalized, rmax, Poly.const(vs, 1))
    if negative:
        # phi(z) = phi_0 exp(-(q-q^{-1}) sum_{s>=1} H_{-s} z^s)
        out = {r: -c for r, c in out.items()}
    return out


def symmetrizer_poly(m):
    """sum_i prod_{j != i} (q A_i - q^{-1} A_j)/(A_i - A_j), cleared exactly."""
    return du_psi_phi_closed(m, 0)


def q_integer_poly(m):
    from .poly import Poly

    vs = s_vars(m)
    out = Poly.const(vs, 0)
    for k in range(m):
        out = out + Poly.var(vs, "q", m - 1 - 2 * k)
    return out


# ---------------------------------------------------------------------------
# Completed-side evaluation into Q[h, a_i].
# ---------------------------------------------------------------------------


def dy_xi_modes(m, rmax):
    """Modes xi_r of prod_i (u + h - a_i)/(u - a_i) = 1 + h sum xi_r u^{-r-1}."""
    from .poly import Poly

    vs = r_vars(m)
    h = Poly.var(vs, "h")
    prod = {0: Poly.const(vs, 1)}
    for i in range(1, m + 1):
        a = Poly.var(vs, f"a{i}")
        factor = {0: Poly.const(vs, 1)}
        for s in range(rmax + 2):
            # 1 + h/(u - a_i); u^{-s-1} mode is h a_i^s
            factor[s + 1] = h * a ** s
        prod = _mode_mul(prod, factor, rmax + 1)
    return {r: prod[r + 1].divexact(h) for r in range(rmax + 1) if r + 1 in prod}


def dy_xi_closed(m, r):
    """sum_i a_i^r prod_{j != i} (a_i - a_j + h)/(a_i - a_j), cleared exactly."""
    from .poly import Poly, RationalFunction

    vs = r_vars(m)
    h = Poly.var(vs, "h")
    total = RationalFunction(Poly.const(vs, 0))
    for i in range(1, m + 1):
        ai = Poly.var(vs, f"a{i}")
        term = RationalFunction(ai ** r if r else Poly.const(vs, 1))
        for j in range(1, m + 1):
            if j != i:
                aj = Poly.var(vs, f"a{j}")
                term = term * RationalFunction(ai - aj + h, ai - aj)
        total = total + term
    return total.to_poly()


def dy_t(m, r):
    """Image of t_r: sum_i (a_i^{r+1} - (a_i - h)^{r+1}) / ((r+1) h)."""
    from .poly import Poly

    vs = r_vars(m)
    h = Poly.var(vs, "h")
    out = Poly.const(vs, 0)
    for i in range(1, m + 1):
        a = Poly.var(vs, f"a{i}")
        out = out + (a ** (r + 1) - (a - h) ** (r + 1)).divexact(h)
    return out * rat(1, r + 1)


def dy_t_modes(m, rmax):
    """Images of t_r from log-expanding the xi product; xi(u)=exp(h t(u))."""
    from .poly import Poly

    vs = r_vars(m)
    h = Poly.var(vs, "h")
    prod = {0: Poly.const(vs, 1)}
    for i in range(1, m + 1):
        a = Poly.var(vs, f"a{i}")
        factor = {0: Poly.const(vs, 1)}
        for s in range(rmax + 2):
            factor[s + 1] = h * a ** s
        prod = _mode_mul(prod, factor, rmax + 1)
    lg = _mode_log(prod, rmax + 1, Poly.const(vs, 1))
    return {r: lg[r + 1].divexact(h) for r in range(rmax + 1) if r + 1 in lg}


# ---------------------------------------------------------------------------
# Graded images and the commuting square.
# ---------------------------------------------------------------------------


def r_context(m, order):
    """Truncation context for Q[h, a_1..a_m] with every symbol of weight 1."""
    return VarContext([("h", 1)] + [(f"a{i}", 1) for i in range(1, m + 1)], order)


def eexp_image(p, ctx):
    """q -> e^{h/2}, A_i -> e^{a_i}, truncated in ``ctx``."""
    images = {"q": (ctx.var("h") * rat(1, 2)).exp()}
    for name in p.vars:
        if name.startswith("A"):
            images[name] = ctx.var("a" + name[1:]).exp()
    return p.graded_image(ctx, images)


def poly_to_graded(p, ctx):
    images = {name: ctx.var(name) for name in p.vars}
    return p.graded_image(ctx, images)


def dy_apply(y, x, m, ctx):
    """Evaluate a rank-one completed-algebra element into ``r_context``.

    Substitutes every generator t_r by its evaluation image; ``x`` must not
    involve the auxiliary expansion variables.
    """
    for name in y.aux:
        if x.degree_in(name) > 0:
            raise ValueError("element still involves an expansion variable")
    mapping = {}
    for r in range(y.order + 2):
        name = f"t0_{r}"
        if name in y.ctx.names:
            mapping[name] = poly_to_graded(dy_t(m, r), ctx)
    for name in y.aux + ("_w",):
        mapping[name] = ctx.zero()
    return x.subs_series(mapping, target_ctx=ctx)


def check_evaluation_tables(m, rmax):
    """Closed forms vs direct series expansions on both evaluation rings."""
    reports = []
    with Timer() as t:
        psi = du_psi_modes(m, rmax)
        phi = du_phi_modes(m, rmax)
        ok = True
        from .poly import Poly

        vs = s_vars(m)
        q = Poly.var(vs, "q")
        qd = q - q.inverse_monomial()
        for r in range(1, rmax + 1):
            ok = ok and psi.get(r, Poly.const(vs, 0)) == qd * du_psi_phi_closed(m, r)
            ok = ok and phi.get(r, Poly.const(vs, 0)) == -(
                qd * du_psi_phi_closed(m, -r)
            )
        ok = ok and psi[0] == Poly.var(vs, "q", m)
        ok = ok and phi[0] == Poly.var(vs, "q", -m)
    reports.append(
        compare_report(
            f"EV-psiphi[m={m}]", {"m": m, "rmax": rmax}, ok, True, t,
            notes="partial-fraction closed forms vs product expansion",
        )
    )
    with Timer() as t:
        hs = du_h_modes(m, rmax)
        hneg = du_h_modes(m, rmax, negative=True)
        ok = all(hs[r] == du_h(m, r) for r in range(1, rmax + 1))
        ok = ok and all(hneg[r] == du_h(m, -r) for r in range(1, rmax + 1))
    reports.append(
        compare_report(
            f"EV-H[m={m}]", {"m": m, "rmax": rmax}, ok, True, t,
            notes="log-derived H_r images vs closed form, both expansions",
        )
    )
    with Timer() as t:
        xi = dy_xi_modes(m, rmax)
        ok = all(xi[r] == dy_xi_closed(m, r) for r in range(rmax + 1))
        ts = dy_t_modes(m, rmax)
        ok = ok and all(ts[r] == dy_t(m, r) for r in range(rmax + 1))
    reports.append(
        compare_report(
            f"EV-xit[m={m}]", {"m": m, "rmax": rmax}, ok, True, t,
            notes="xi_r and t_r images vs product/log expansion",
        )
    )
    with Timer() as t:
        ok = symmetrizer_poly(m) == q_integer_poly(m)
    reports.append(
        compare_report(
            f"EV-qint[m={m}]", {"m": m}, ok, True, t,
            notes="symmetrized kernel sums to the balanced q-integer",
        )
    )
    return reports


def check_square(m, r, order):
    """The commuting square on the Cartan mode H_r (r != 0) at truncation."""
    ctx = r_context(m, order)
    with Timer() as t:
        lhs = eexp_image(du_h(m, r), ctx)
        # other path: image of (q - q^{-1}) H_r is B(v) at v = r,
        # i.e. h * sum_s t_s r^s / s!, evaluated termwise
        rhs = ctx.zero()
        fact = 1
        for s in range(order + 1):
            if s:
                fact *= s
            rhs = rhs + poly_to_graded(dy_t(m, s), ctx) * rat(r ** s, fact)
        rhs = rhs * ctx.var("h")
    return compare_report(
        f"SQ-H[m={m},r={r}]",
        {"m": m, "r": r, "N": order},
        lhs,
        rhs,
        t,
        notes="exp-evaluation of the loop image vs evaluation of the series image",
    )


def check_condition_b_by_evaluation(m, k, order):
    """Condition (B) cross-validated through both evaluation rings.

    The left side takes the rank-one solution family, forms the mode
    expression, substitutes u^s -> xi_s, and evaluates the resulting
    completed-algebra element.  The right side evaluates the loop-side
    closed form and applies q -> e^{h/2}, A_i -> e^{a_i}.  Agreement for all
    m certifies the identity independently of the direct generator check.
    """
    from .cartan import cartan_load
    from .phi import GFamily
    from .y0 import Y0Algebra

    y = Y0Algebra(cartan_load("A1"), order)
    gf = GFamily(y)
    ctx = r_context(m, order)
    with Timer() as t:
        core = gf.g(+1, 0, "u") * y.lambda_apply(+1, 0, gf.g(-1, 0, "u"), "u")
        eku = (y.ctx.var("u") * rat(k)).exp() if k else y.ctx.one()
        lhs = dy_apply(y, y.xi_substitute(eku * core, "u", 0), m, ctx)
        rhs = eexp_image(du_psi_phi_closed(m, k), ctx)
    return compare_report(
        f"SQ-B[m={m},k={k}]",
        {"m": m, "k": k, "N": order},
        lhs,
        rhs,
        t,
        notes="mode expression evaluated two independent ways",
    )
