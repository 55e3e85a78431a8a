"""Exact polynomial-operator representations attached to n-step flags.

Components are indexed by weakly increasing tuples dd = (0 = d_0 <= d_1 <=
... <= d_n = d).  The component for dd is the ring of polynomials invariant
under the Young subgroup S_dd (block-wise permutations of the variables):

* loop side:    Laurent polynomials in q, X_1..X_d,
* degenerate side: polynomials in hbar, x_1..x_d.

Raising/lowering operators move between adjacent components via exact
rational-function symmetrization; diagonal series act by multiplication,
with modes expanded from products of linear fractions.  All relation checks
compare cleared (denominator-free) two-variable mode windows, computed one
mode deeper than the comparison window so multiplication by (z - w) is
exact.
"""

from __future__ import annotations

from itertools import permutations, product

from .gln import c_matrix_entry
from .poly import Poly, RationalFunction
from .report import Timer, compare_report
from .series import rat


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


def flag_partitions(n, d):
    """All tuples (0 = d_0 <= d_1 <= ... <= d_n = d)."""
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix) + (d,))
            return
        for nxt in range(prefix[-1], d + 1):
            rec(prefix + [nxt])

    rec([0])
    return out


def block(dd, j):
    """Positions in the j-th block (1-based block labels and positions)."""
    return tuple(range(dd[j - 1] + 1, dd[j] + 1))


def raise_at(dd, i):
    if dd[i] + 1 > dd[i + 1]:
        return None
    return dd[:i] + (dd[i] + 1,) + dd[i + 1:]


def lower_at(dd, i):
    if dd[i] - 1 < dd[i - 1]:
        return None
    return dd[:i] + (dd[i] - 1,) + dd[i + 1:]


def _cuts(dd):
    return set(dd)


def common_stab_order(dd, dd2):
    """|S_dd intersect S_dd2| (product of refinement block factorials)."""
    cuts = sorted(_cuts(dd) | _cuts(dd2))
    out = 1
    for a, b in zip(cuts, cuts[1:]):
        out *= _factorial(b - a)
    return out


def young_permutations(dd):
    """All permutations preserving the blocks of dd, as 1-based dicts."""
    per_block = []
    for j in range(1, len(dd)):
        blk = block(dd, j)
        per_block.append([dict(zip(blk, img)) for img in permutations(blk)])
    out = []
    for combo in product(*per_block):
        w = {}
        for piece in combo:
            w.update(piece)
        out.append(w)
    return out


class FlagRep:
    """Shared machinery for both polynomial-operator representations."""

    #: subclass hooks
    base_name = None  # "q" or "h"
    coord_prefix = None  # "X" or "x"

    def __init__(self, n, d):
        self.n = n
        self.d = d
        self.components = flag_partitions(n, d)
        self.vars = (self.base_name,) + tuple(
            f"{self.coord_prefix}{k}" for k in range(1, d + 1)
        )
        self._theta_cache = {}
        self._perm_cache = {}

    # -- basic constructors --------------------------------------------------

    def coord(self, k, power=1):
        return Poly.var(self.vars, f"{self.coord_prefix}{k}", power)

    def base(self, power=1):
        return Poly.var(self.vars, self.base_name, power)

    def const(self, c):
        return Poly.const(self.vars, c)

    def zero(self):
        return Poly(self.vars)

    def one(self):
        return self.const(1)

    # -- symmetrization ------------------------------------------------------

    def _perms(self, dd):
        if dd not in self._perm_cache:
            self._perm_cache[dd] = young_permutations(dd)
        return self._perm_cache[dd]

    def symmetrize(self, rf, dd, dd2):
        """Coset sum over S_dd2 / (S_dd intersect S_dd2), exactly.

        Computed as the full S_dd2 orbit sum divided by the order of the
        stabilizer intersection; the result is an exact polynomial.
        """
        total = None
        for w in self._perms(dd2):
            mapping = {
                f"{self.coord_prefix}{k}": f"{self.coord_prefix}{w[k]}"
                for k in w
                if w[k] != k
            }
            num = rf.num.permute(mapping) if mapping else rf.num
            den = rf.den.permute(mapping) if mapping else rf.den
            term = RationalFunction(num, den)
            total = term if total is None else total + term
        out = total.to_poly()
        return out * rat(1, common_stab_order(dd, dd2))

    def is_invariant(self, p, dd):
        for w in self._perms(dd):
            mapping = {
                f"{self.coord_prefix}{k}": f"{self.coord_prefix}{w[k]}"
                for k in w
                if w[k] != k
            }
            if mapping and p.permute(mapping) != p:
                return False
        return True

    def invariant_monomials(self, dd, exponents):
        """Orbit sums of the given exponent tuples: a spanning test set."""
        out = []
        seen = set()
        for expo in exponents:
            total = self.zero()
            for w in self._perms(dd):
                term = self.one()
                for k, e in enumerate(expo, start=1):
                    if e:
                        term = term * self.coord(w[k], e)
                total = total + term
            key = tuple(sorted(total.terms.items()))
            if key and key not in seen:
                seen.add(key)
                out.append(total)
        return out

    # -- diagonal series -------------------------------------------------------

    def theta_factors(self, dd, j, direction):
        """Linear-fraction factors (a1, b1, a2, b2) of the diagonal series,
        meaning (a1*t - b1)/(a2*t - b2) in the expansion variable t."""
        raise NotImplementedError

    def theta_modes(self, dd, j, direction, kmax):
        """Multiplication polynomials for modes 0..kmax of the diagonal
        series on component dd, expanded in t^{-1} (direction=+1) or t
        (direction=-1)."""
        key = (dd, j, direction, kmax)
        if key not in self._theta_cache:
            total = {0: self.one()}
            for a1, b1, a2, b2 in self.theta_factors(dd, j, direction):
                fac = self._linfrac_modes(a1, b1, a2, b2, direction, kmax)
                total = mode_mul(total, fac, kmax)
            self._theta_cache[key] = total
        return self._theta_cache[key]

    def _linfrac_modes(self, a1, b1, a2, b2, direction, kmax):
        """Modes of (a1*t - b1)/(a2*t - b2), expanded in t^{-1} or t.

        a2 is always an invertible monomial; b2 must be one as well in the
        t-direction (which only occurs on the Laurent side).
        """
        out = {}
        a2i = a2.inverse_monomial()
        if direction > 0:
            out[0] = a1 * a2i
            for m in range(1, kmax + 1):
                out[m] = (a2i ** (m + 1)) * (b2 ** (m - 1)) * (a1 * b2 - b1 * a2)
        else:
            b2i = b2.inverse_monomial()
            out[0] = b1 * b2i
            for m in range(1, kmax + 1):
                out[m] = (a2 ** (m - 1)) * (b2i ** (m + 1)) * (b1 * a2 - a1 * b2)
        return {m: c for m, c in out.items() if c}


def mode_mul(x, y, kmax):
    out = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            m = mx + my
            if m > kmax:
                continue
            s = out.get(m)
            out[m] = cx * cy if s is None else s + cx * cy
    return {m: c for m, c in out.items() if c}


def mode_inv(x, kmax):
    """Inverse of a mode family whose mode 0 is an invertible monomial."""
    inv0 = x[0].inverse_monomial()
    out = {0: inv0}
    for m in range(1, kmax + 1):
        acc = None
        for s in range(1, m + 1):
            if s in x and (m - s) in out:
                t = x[s] * out[m - s]
                acc = t if acc is None else acc + t
        if acc is not None and acc:
            out[m] = -(inv0 * acc)
    return {m: c for m, c in out.items() if c}


class YangFlagRep(FlagRep):
    """Polynomial operators over Q[hbar, x_1..x_d]."""

    base_name = "h"
    coord_prefix = "x"

    def theta_factors(self, dd, j, direction):
        if direction < 0:
            raise ValueError("only t^{-1} expansions on the polynomial side")
        h = self.base()
        one = self.one()
        out = []
        for k in range(1, dd[j - 1] + 1):
            x = self.coord(k)
            out.append((one, x - h, one, x))  # (u - x + h)/(u - x)
        for k in range(dd[j] + 1, self.d + 1):
            x = self.coord(k)
            out.append((one, x, one, x + h))  # (u - x)/(u - x - h)
        return out

    def e(self, dd, i, s, p):
        """Raising mode operator (no hbar prefactor); None when it acts by 0."""
        dd2 = raise_at(dd, i)
        if dd2 is None:
            return None
        new = dd[i] + 1
        xn = self.coord(new)
        h = self.base()
        num = (xn ** s) * p if s else p
        den = self.one()
        for k in block(dd, i):
            num = num * (xn - self.coord(k) + h)
            den = den * (xn - self.coord(k))
        return dd2, self.symmetrize(RationalFunction(num, den), dd, dd2)

    def f(self, dd, i, s, p):
        dd2 = lower_at(dd, i)
        if dd2 is None:
            return None
        mov = dd[i]
        xm = self.coord(mov)
        h = self.base()
        num = (xm ** s) * p if s else p
        den = self.one()
        for k in block(dd, i + 1):
            num = num * (xm - self.coord(k) - h)
            den = den * (xm - self.coord(k))
        return dd2, self.symmetrize(RationalFunction(num, den), dd, dd2)


class LoopFlagRep(FlagRep):
    """Laurent polynomial operators over Q[q^{±1}, X_1^{±1}..X_d^{±1}]."""

    base_name = "q"
    coord_prefix = "X"

    def theta_factors(self, dd, j, direction):
        q = self.base()
        qi = self.base(-1)
        one = self.one()
        out = []
        for k in range(1, dd[j - 1] + 1):
            X = self.coord(k)
            out.append((q, qi * X, one, X))  # (qz - q^{-1}X)/(z - X)
        for k in range(dd[j] + 1, self.d + 1):
            X = self.coord(k)
            out.append((one, X, qi, q * X))  # (z - X)/(q^{-1}z - qX)
        return out

    def e(self, dd, i, r, p):
        """Raising mode operator for any integer mode r."""
        dd2 = raise_at(dd, i)
        if dd2 is None:
            return None
        new = dd[i] + 1
        Xn = self.coord(new)
        q, qi = self.base(), self.base(-1)
        num = (Xn ** r) * p
        den = self.one()
        for k in block(dd, i):
            num = num * (q * Xn - qi * self.coord(k))
            den = den * (Xn - self.coord(k))
        return dd2, self.symmetrize(RationalFunction(num, den), dd, dd2)

    def f(self, dd, i, r, p):
        dd2 = lower_at(dd, i)
        if dd2 is None:
            return None
        mov = dd[i]
        Xm = self.coord(mov)
        q, qi = self.base(), self.base(-1)
        num = (Xm ** r) * p
        den = self.one()
        for k in block(dd, i + 1):
            num = num * (qi * Xm - q * self.coord(k))
            den = den * (Xm - self.coord(k))
        return dd2, self.symmetrize(RationalFunction(num, den), dd, dd2)


# ---------------------------------------------------------------------------
# Mode-word application helpers.
# ---------------------------------------------------------------------------


def apply_word(rep, kind, dd, word, p):
    """Apply mode operators right-to-left; ``word`` lists (node, mode) with
    the rightmost entry applied first.  ``kind`` is "e" or "f".  Returns the
    resulting polynomial (on the component determined by the word), or a
    zero polynomial when any step acts by zero."""
    cur_dd, cur = dd, p
    op = rep.e if kind == "e" else rep.f
    for node, mode in reversed(word):
        res = op(cur_dd, node, mode, cur)
        if res is None:
            return rep.zero()
        cur_dd, cur = res
    return cur


def word_target(rep, kind, dd, word):
    cur = dd
    step = raise_at if kind == "e" else lower_at
    for node, _ in reversed(word):
        cur = step(cur, node)
        if cur is None:
            return None
    return cur


def _grid_equal(lhs, rhs):
    """First key where two {key: Poly} grids differ, or None."""
    for key in sorted(set(lhs) | set(rhs)):
        a = lhs.get(key)
        b = rhs.get(key)
        if a is None and b is None:
            continue
        if a is None or b is None or a != b:
            return key
    return None


def _report(check_id, params, grids, timer, notes=""):
    bad = _grid_equal(*grids)
    return compare_report(
        check_id,
        params,
        None,
        None,
        timer,
        notes=notes,
        passed=bad is None,
        failure=None if bad is None else f"window entry {bad}",
    )


# ---------------------------------------------------------------------------
# Relation checks, polynomial (degenerate) side.
# ---------------------------------------------------------------------------


def check_y_theta_pair(yr, dd, p, kmax):
    """Diagonal modes commute (they are multiplication operators)."""
    with Timer() as t:
        ok = True
        for j in range(1, yr.n + 1):
            for j2 in range(j, yr.n + 1):
                a = yr.theta_modes(dd, j, +1, kmax)
                b = yr.theta_modes(dd, j2, +1, kmax)
                for ma, ca in a.items():
                    for mb, cb in b.items():
                        if ca * (cb * p) != cb * (ca * p):
                            ok = False
    return compare_report(
        f"Y1[{dd}]", {"dd": dd, "kmax": kmax}, None, None, t, passed=ok
    )


def check_y_theta_e(yr, dd, i, j, p, kmax, kind="e"):
    """(u-v)[theta_j(u), e_i(v)] = hbar c (e_i(u)-e_i(v)) theta_j(u)  and the
    lowering counterpart (u-v)[theta_j(u), f_i(v)] = hbar c theta_j(u)(f_i(v)-f_i(u)),
    with c = delta_{ji} - delta_{j,i+1}."""
    h = yr.base()
    c = (1 if j == i else 0) - (1 if j == i + 1 else 0)
    dd2 = raise_at(dd, i) if kind == "e" else lower_at(dd, i)
    op = yr.e if kind == "e" else yr.f
    with Timer() as t:
        if dd2 is None:
            return compare_report(
                f"Y2{kind}[{dd};i={i},j={j}]",
                {"dd": dd, "i": i, "j": j},
                None,
                None,
                t,
                passed=True,
                notes="operator acts by zero",
            )
        deep = kmax + 1
        th_src = yr.theta_modes(dd, j, +1, deep)
        th_dst = yr.theta_modes(dd2, j, +1, deep)
        ep = {}  # hbar * (mode b-1 image of p)
        for b in range(1, deep + 1):
            ep[b] = h * op(dd, i, b - 1, p)[1]
        eth = {}  # hbar * (mode image of theta_a p)
        for a in range(0, deep + 1):
            for b in range(1, deep + 1):
                eth[(a, b)] = h * op(dd, i, b - 1, th_src.get(a, yr.zero()) * p)[1]

        def w(a, b):
            if b < 1:
                return yr.zero()
            return th_dst.get(a, yr.zero()) * ep[b] - eth[(a, b)]

        lhs = {}
        rhs = {}
        for a in range(kmax + 1):
            for b in range(kmax + 1):
                lhs[(a, b)] = w(a + 1, b) - w(a, b + 1)
                if kind == "e":
                    if b == 0:
                        acc = yr.zero()
                        for s in range(1, a + 1):
                            acc = acc + h * op(
                                dd, i, s - 1, th_src.get(a - s, yr.zero()) * p
                            )[1]
                        rhs[(a, b)] = (h * c) * acc
                    else:
                        rhs[(a, b)] = (h * (-c)) * eth[(a, b)]
                else:
                    if b == 0:
                        acc = yr.zero()
                        for s in range(1, a + 1):
                            acc = acc + th_dst.get(a - s, yr.zero()) * ep[s]
                        rhs[(a, b)] = (h * (-c)) * acc
                    else:
                        rhs[(a, b)] = (h * c) * (th_dst.get(a, yr.zero()) * ep[b])
    return _report(
        f"Y2{kind}[{dd};i={i},j={j}]",
        {"dd": dd, "i": i, "j": j, "kmax": kmax},
        (lhs, rhs),
        t,
    )


def check_y_ee_same(yr, dd, i, p, kmax, kind="e"):
    """(u-v)[e_i(u), e_i(v)] = -hbar (e_i(u)-e_i(v))^2; + sign for lowering."""
    h = yr.base()
    sgn = -1 if kind == "e" else 1
    op = yr.e if kind == "e" else yr.f
    with Timer() as t:
        deep = kmax + 1
        first = {}
        for b in range(1, deep + 1):
            res = op(dd, i, b - 1, p)
            first[b] = res  # None or (dd2, poly)
        pair = {}
        h2 = h * h
        for a in range(1, deep + 1):
            for b in range(1, deep + 1):
                if first[b] is None:
                    pair[(a, b)] = None
                    continue
                dd2, q1 = first[b]
                res = op(dd2, i, a - 1, q1)
                pair[(a, b)] = None if res is None else (res[0], h2 * res[1])
        target = None
        for v in pair.values():
            if v is not None:
                target = v[0]
        if target is None:
            return compare_report(
                f"Y3{kind}[{dd};i={i}]",
                {"dd": dd, "i": i},
                None,
                None,
                t,
                passed=True,
                notes="operator acts by zero",
            )
        zero = yr.zero()

        def pp(a, b):
            v = pair.get((a, b))
            return zero if v is None else v[1]

        def w(a, b):
            if a < 1 or b < 1:
                return zero
            return pp(a, b) - pp(b, a)

        lhs = {}
        rhs = {}
        for a in range(kmax + 1):
            for b in range(kmax + 1):
                lhs[(a, b)] = w(a + 1, b) - w(a, b + 1)
                if a >= 1 and b >= 1:
                    val = (pp(a, b) + pp(b, a)) * (-sgn)
                elif b == 0 and a >= 2:
                    acc = zero
                    for s in range(1, a):
                        acc = acc + pp(s, a - s)
                    val = acc * sgn
                elif a == 0 and b >= 2:
                    acc = zero
                    for s in range(1, b):
                        acc = acc + pp(s, b - s)
                    val = acc * sgn
                else:
                    val = zero
                rhs[(a, b)] = h * val
    return _report(
        f"Y3{kind}[{dd};i={i}]", {"dd": dd, "i": i, "kmax": kmax}, (lhs, rhs), t
    )


def check_y_ee_adjacent(yr, dd, i, r, s, p, kind="e"):
    """[e_{i,r+1}, e_{i+1,s}] - [e_{i,r}, e_{i+1,s+1}] = -hbar e_{i+1,s} e_{i,r}
    (rightmost factor applied first); lowering analogue with +hbar f_{i,r} f_{i+1,s}."""
    h = yr.base()
    i2 = i + 1
    with Timer() as t:
        def comm(ra, sb):
            one_way = apply_word(yr, kind, dd, [(i, ra), (i2, sb)], p)
            other = apply_word(yr, kind, dd, [(i2, sb), (i, ra)], p)
            return one_way - other

        lhs = comm(r + 1, s) - comm(r, s + 1)
        if kind == "e":
            rhs = -(h * apply_word(yr, "e", dd, [(i2, s), (i, r)], p))
        else:
            rhs = h * apply_word(yr, "f", dd, [(i, r), (i2, s)], p)
    return compare_report(
        f"Y3adj{kind}[{dd};i={i},r={r},s={s}]",
        {"dd": dd, "i": i, "r": r, "s": s},
        lhs,
        rhs,
        t,
    )


def check_y_ef(yr, dd, i, i2, p, kmax):
    """(u-v)[e_i(u), f_{i'}(v)] = delta hbar (ratio(v) - ratio(u)) with
    ratio = theta_{i+1} theta_i^{-1}; plain commutation for i != i'."""
    h = yr.base()
    zero = yr.zero()
    with Timer() as t:
        if i != i2:
            ok = True
            for a in range(kmax + 1):
                for b in range(kmax + 1):
                    fe = yr.f(dd, i2, b, p)
                    ef = zero
                    if fe is not None:
                        r1 = yr.e(fe[0], i, a, fe[1])
                        ef = r1[1] if r1 is not None else zero
                    ee = yr.e(dd, i, a, p)
                    fe2 = zero
                    if ee is not None:
                        r2 = yr.f(ee[0], i2, b, ee[1])
                        fe2 = r2[1] if r2 is not None else zero
                    if ef != fe2:
                        ok = False
            return compare_report(
                f"Y4[{dd};i={i},i'={i2}]",
                {"dd": dd, "i": i, "ip": i2, "kmax": kmax},
                None,
                None,
                t,
                passed=ok,
            )
        deep = kmax + 1
        h2 = h * h

        def bracket(a, b):
            if a < 1 or b < 1:
                return zero
            fe = yr.f(dd, i, b - 1, p)
            term1 = zero
            if fe is not None:
                r1 = yr.e(fe[0], i, a - 1, fe[1])
                if r1 is not None:
                    term1 = r1[1]
            ee = yr.e(dd, i, a - 1, p)
            term2 = zero
            if ee is not None:
                r2 = yr.f(ee[0], i, b - 1, ee[1])
                if r2 is not None:
                    term2 = r2[1]
            return h2 * (term1 - term2)

        ratio = mode_mul(
            yr.theta_modes(dd, i + 1, +1, deep),
            mode_inv(yr.theta_modes(dd, i, +1, deep), deep),
            deep,
        )
        lhs = {}
        rhs = {}
        for a in range(kmax + 1):
            for b in range(kmax + 1):
                lhs[(a, b)] = bracket(a + 1, b) - bracket(a, b + 1)
                val = zero
                if a == 0 and b >= 1:
                    val = val + ratio.get(b, zero) * p
                if b == 0 and a >= 1:
                    val = val - ratio.get(a, zero) * p
                rhs[(a, b)] = h * val
    return _report(
        f"Y4[{dd};i={i},i'={i2}]",
        {"dd": dd, "i": i, "ip": i2, "kmax": kmax},
        (lhs, rhs),
        t,
    )


def check_y_serre(yr, dd, i, i2, r1, r2, s, p, kind="e"):
    """[e_{i,r1},[e_{i,r2},e_{i',s}]] + (r1 <-> r2) = 0 for |i-i'| = 1."""
    with Timer() as t:
        def nested(ra, rb):
            def w(word):
                return apply_word(yr, kind, dd, word, p)

            return (
                w([(i, ra), (i, rb), (i2, s)])
                - w([(i, ra), (i2, s), (i, rb)])
                - w([(i, rb), (i2, s), (i, ra)])
                + w([(i2, s), (i, rb), (i, ra)])
            )

        lhs = nested(r1, r2) + nested(r2, r1)
        rhs = yr.zero()
    return compare_report(
        f"Y5{kind}[{dd};i={i},i'={i2},r=({r1},{r2}),s={s}]",
        {"dd": dd, "i": i, "ip": i2, "r1": r1, "r2": r2, "s": s},
        lhs,
        rhs,
        t,
    )


def check_y_distant(yr, dd, i, i2, r, s, p, kind="e"):
    """[e_{i,r}, e_{i',s}] = 0 for |i-i'| > 1."""
    with Timer() as t:
        lhs = apply_word(yr, kind, dd, [(i, r), (i2, s)], p)
        rhs = apply_word(yr, kind, dd, [(i2, s), (i, r)], p)
    return compare_report(
        f"Y5far{kind}[{dd};i={i},i'={i2},r={r},s={s}]",
        {"dd": dd, "i": i, "ip": i2, "r": r, "s": s},
        lhs,
        rhs,
        t,
    )


# ---------------------------------------------------------------------------
# Relation checks, Laurent (loop) side.
# ---------------------------------------------------------------------------


def check_u_theta_pair(lr, dd, p, kmax):
    with Timer() as t:
        ok = True
        for j in range(1, lr.n + 1):
            for j2 in range(j, lr.n + 1):
                for s1 in (+1, -1):
                    for s2 in (+1, -1):
                        a = lr.theta_modes(dd, j, s1, kmax)
                        b = lr.theta_modes(dd, j2, s2, kmax)
                        for ma, ca in a.items():
                            for mb, cb in b.items():
                                if ca * (cb * p) != cb * (ca * p):
                                    ok = False
    return compare_report(
        f"QL1[{dd}]", {"dd": dd, "kmax": kmax}, None, None, t, passed=ok
    )


def check_u_theta_e(lr, dd, i, j, sign, p, kmax, kwin, kind="e"):
    """Cleared form of the diagonal/raising exchange, c = c_{ji}:

        q^c (z-w) Theta_j^{sign}(z) E_i(w) = (q^{2c} z - w) E_i(w) Theta_j^{sign}(z)

    and for the lowering family

        q^c (z-w) F_i(w) Theta_j^{sign}(z) = (q^{2c} z - w) Theta_j^{sign}(z) F_i(w).
    """
    c = c_matrix_entry(j, i)
    dd2 = raise_at(dd, i) if kind == "e" else lower_at(dd, i)
    op = lr.e if kind == "e" else lr.f
    qc = lr.base(c)
    q2c = lr.base(2 * c)
    zero = lr.zero()
    with Timer() as t:
        if dd2 is None:
            return compare_report(
                f"QL2{kind}[{dd};i={i},j={j},sign={'+' if sign > 0 else '-'}]",
                {"dd": dd, "i": i, "j": j, "sign": sign},
                None,
                None,
                t,
                passed=True,
                notes="operator acts by zero",
            )
        deep_a = kmax + 1
        th_src = lr.theta_modes(dd, j, sign, deep_a)
        th_dst = lr.theta_modes(dd2, j, sign, deep_a)
        # theta-then-op and op-then-theta grids
        x_to = {}
        x_ot = {}
        for a in range(deep_a + 1):
            for k in range(-kwin - 1, kwin + 2):
                x_to[(a, k)] = op(dd, i, k, th_src.get(a, zero) * p)[1]
                x_ot[(a, k)] = th_dst.get(a, zero) * op(dd, i, k, p)[1]

        def sz(grid, a, k):
            aa = a + 1 if sign > 0 else a - 1
            return grid.get((aa, k), zero)

        def sw(grid, a, k):
            return grid.get((a, k + 1), zero)

        lhs = {}
        rhs = {}
        for a in range(kmax + 1):
            for k in range(-kwin, kwin + 1):
                if kind == "e":
                    first, second = x_ot, x_to  # Theta(z)E(w) vs E(w)Theta(z)
                else:
                    first, second = x_to, x_ot  # F(w)Theta(z) vs Theta(z)F(w)
                lhs[(a, k)] = qc * (sz(first, a, k) - sw(first, a, k))
                rhs[(a, k)] = q2c * sz(second, a, k) - sw(second, a, k)
    return _report(
        f"QL2{kind}[{dd};i={i},j={j},sign={'+' if sign > 0 else '-'}]",
        {"dd": dd, "i": i, "j": j, "sign": sign, "kmax": kmax, "kwin": kwin},
        (lhs, rhs),
        t,
    )


def check_u_ee(lr, dd, i, i2, p, kwin, kind="e"):
    """Cleared quadratic exchange, a = Cartan entry:

        (q^{i-i'} z - q^a w) E_i(z) E_{i'}(w) = (q^{a+i-i'} z - w) E_{i'}(w) E_i(z)
        (q^{a+i-i'} z - w) F_i(z) F_{i'}(w) = (q^{i-i'} z - q^a w) F_{i'}(w) F_i(z)
    """
    a_c = 2 if i == i2 else (-1 if abs(i - i2) == 1 else 0)
    with Timer() as t:
        if abs(i - i2) > 1:
            ok = True
            for k in range(-kwin, kwin + 1):
                for l in range(-kwin, kwin + 1):
                    lhs = apply_word(lr, kind, dd, [(i, k), (i2, l)], p)
                    rhs = apply_word(lr, kind, dd, [(i2, l), (i, k)], p)
                    if lhs != rhs:
                        ok = False
            return compare_report(
                f"QL3far{kind}[{dd};i={i},i'={i2}]",
                {"dd": dd, "i": i, "ip": i2, "kwin": kwin},
                None,
                None,
                t,
                passed=ok,
            )
        x1 = {}
        x2 = {}
        for k in range(-kwin - 1, kwin + 2):
            for l in range(-kwin - 1, kwin + 2):
                x1[(k, l)] = apply_word(lr, kind, dd, [(i, k), (i2, l)], p)
                x2[(k, l)] = apply_word(lr, kind, dd, [(i2, l), (i, k)], p)
        qd = lr.base(i - i2)
        qa = lr.base(a_c)
        qad = lr.base(a_c + i - i2)
        lhs = {}
        rhs = {}
        for k in range(-kwin, kwin + 1):
            for l in range(-kwin, kwin + 1):
                if kind == "e":
                    lhs[(k, l)] = qd * x1[(k + 1, l)] - qa * x1[(k, l + 1)]
                    rhs[(k, l)] = qad * x2[(k + 1, l)] - x2[(k, l + 1)]
                else:
                    lhs[(k, l)] = qad * x1[(k + 1, l)] - x1[(k, l + 1)]
                    rhs[(k, l)] = qd * x2[(k + 1, l)] - qa * x2[(k, l + 1)]
    return _report(
        f"QL3{kind}[{dd};i={i},i'={i2}]",
        {"dd": dd, "i": i, "ip": i2, "kwin": kwin},
        (lhs, rhs),
        t,
    )


def check_u_ef(lr, dd, i, i2, p, kwin, kmax):
    """(q - q^{-1})[E_{i,k}, F_{i',l}] = delta_{ii'} (psi^+_{k+l} - psi^-_{k+l})
    with psi^{±} = Theta^{±}_{i+1} (Theta^{±}_i)^{-1}, the + modes supported in
    degrees >= 0 and the - modes in degrees <= 0."""
    zero = lr.zero()
    qmq = lr.base() - lr.base(-1)
    with Timer() as t:
        psi_p = mode_mul(
            lr.theta_modes(dd, i2 + 1, +1, kmax),
            mode_inv(lr.theta_modes(dd, i2, +1, kmax), kmax),
            kmax,
        ) if i == i2 else {}
        psi_m = mode_mul(
            lr.theta_modes(dd, i2 + 1, -1, kmax),
            mode_inv(lr.theta_modes(dd, i2, -1, kmax), kmax),
            kmax,
        ) if i == i2 else {}
        lhs = {}
        rhs = {}
        for k in range(-kwin, kwin + 1):
            for l in range(-kwin, kwin + 1):
                ef = zero
                fl = lr.f(dd, i2, l, p)
                if fl is not None:
                    r1 = lr.e(fl[0], i, k, fl[1])
                    if r1 is not None:
                        ef = r1[1]
                fe = zero
                ek = lr.e(dd, i, k, p)
                if ek is not None:
                    r2 = lr.f(ek[0], i2, l, ek[1])
                    if r2 is not None:
                        fe = r2[1]
                lhs[(k, l)] = qmq * (ef - fe)
                m = k + l
                val = zero
                if i == i2 and abs(m) <= kmax:
                    if m >= 0 and m in psi_p:
                        val = val + psi_p[m] * p
                    if m <= 0 and -m in psi_m:
                        val = val - psi_m[-m] * p
                rhs[(k, l)] = val
    return _report(
        f"QL4[{dd};i={i},i'={i2}]",
        {"dd": dd, "i": i, "ip": i2, "kwin": kwin},
        (lhs, rhs),
        t,
    )


def check_u_serre(lr, dd, i, i2, k1, k2, l, p, kind="e"):
    """Cubic relation for |i-i'| = 1, symmetrized in the two like modes."""
    qq = lr.base() + lr.base(-1)
    with Timer() as t:
        def tri(ka, kb):
            def w(word):
                return apply_word(lr, kind, dd, word, p)

            return (
                w([(i, ka), (i, kb), (i2, l)])
                - qq * w([(i, ka), (i2, l), (i, kb)])
                + w([(i2, l), (i, ka), (i, kb)])
            )

        lhs = tri(k1, k2) + tri(k2, k1)
        rhs = lr.zero()
    return compare_report(
        f"QL5{kind}[{dd};i={i},i'={i2},k=({k1},{k2}),l={l}]",
        {"dd": dd, "i": i, "ip": i2, "k1": k1, "k2": k2, "l": l},
        lhs,
        rhs,
        t,
    )


# ---------------------------------------------------------------------------
# Relation sweeps used by the command-line driver and the acceptance suite.
# ---------------------------------------------------------------------------


def yang_probe_polys(yr, dd, degree, count=2):
    """Deterministic list of symmetric probe polynomials on a component."""
    exps = [
        e
        for e in product(range(degree + 1), repeat=yr.d)
        if sum(e) <= degree
    ]
    return yr.invariant_monomials(dd, exps)[:count] or [yr.one()]


def loop_probe_polys(lr, dd, degree, count=2):
    """Loop-side probes include negative exponents of the coordinates."""
    exps = list(product(range(-degree, degree + 1), repeat=lr.d))
    return lr.invariant_monomials(dd, exps)[:count] or [lr.one()]


def yang_relation_suite(yr, dd, probes, kmax, serre_triples=((0, 1, 1),)):
    """Every degenerate-side defining relation on one component."""
    n = yr.n
    reports = []
    for p in probes:
        reports.append(check_y_theta_pair(yr, dd, p, kmax))
        for i in range(1, n):
            for j in range(1, n + 1):
                for kind in ("e", "f"):
                    reports.append(check_y_theta_e(yr, dd, i, j, p, kmax, kind))
            for kind in ("e", "f"):
                reports.append(check_y_ee_same(yr, dd, i, p, kmax, kind))
            for i2 in range(1, n):
                reports.append(check_y_ef(yr, dd, i, i2, p, kmax))
                if abs(i - i2) == 1:
                    for (r1, r2, s) in serre_triples:
                        for kind in ("e", "f"):
                            reports.append(
                                check_y_serre(yr, dd, i, i2, r1, r2, s, p, kind)
                            )
                elif abs(i - i2) >= 2:
                    for kind in ("e", "f"):
                        reports.append(
                            check_y_distant(yr, dd, i, i2, 0, 1, p, kind)
                        )
            if i + 1 < n:
                for kind in ("e", "f"):
                    reports.append(
                        check_y_ee_adjacent(yr, dd, i, 1, 2, p, kind)
                    )
    return reports


def loop_relation_suite(lr, dd, probes, kmax, kwin, serre_triples=((-1, 1, 0),)):
    """Every loop-side defining relation, in cleared form, on one component."""
    n = lr.n
    reports = []
    for p in probes:
        reports.append(check_u_theta_pair(lr, dd, p, kmax))
        for i in range(1, n):
            for j in range(1, n + 1):
                for sign in (+1, -1):
                    for kind in ("e", "f"):
                        reports.append(
                            check_u_theta_e(lr, dd, i, j, sign, p, kmax, kwin, kind)
                        )
            for i2 in range(1, n):
                for kind in ("e", "f"):
                    reports.append(check_u_ee(lr, dd, i, i2, p, kwin, kind))
                reports.append(check_u_ef(lr, dd, i, i2, p, kwin, 2 * kwin))
                if abs(i - i2) == 1:
                    for (k1, k2, l) in serre_triples:
                        for kind in ("e", "f"):
                            reports.append(
                                check_u_serre(lr, dd, i, i2, k1, k2, l, p, kind)
                            )
    return reports
