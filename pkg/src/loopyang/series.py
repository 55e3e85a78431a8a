"""Truncated graded power series over exact rationals.

A :class:`VarContext` fixes an ordered list of named symbols, a nonnegative
integer weight for each, and a truncation order N.  A :class:`GradedSeries`
is a sparse dict mapping exponent tuples to rational coefficients; every
stored monomial has total weight (dot product of exponents with weights)
at most N.  All arithmetic is exact; products are truncated above weight N.

Series in a mode variable (u^{-1} or z^{±1}) are represented by
:class:`ModeSeries`: a window of integer modes, each with a GradedSeries
coefficient that does not involve the mode variable.  The mode variable
carries no grading weight.
"""

from __future__ import annotations

import os as _os

from ._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from ._kernel import mul_terms

if _os.environ.get("LOOPYANG_FRACTION") == "1":
    from fractions import Fraction as Q
else:
    try:
        from gmpy2 import mpq as Q
    except ImportError:
        from fractions import Fraction as Q

_ZERO = Q(0)
_ONE = Q(1)


def rat(x, y=None):
    """Coerce to the exact rational coefficient type."""
    if y is not None:
        return Q(x, y)
    if isinstance(x, str):
        return Q(x)
    return Q(x)


def _factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


class VarContext:
    """Ordered symbols with grading weights and a truncation order."""

    __slots__ = ("names", "weights", "order", "_index")

    def __init__(self, symbols, order):
        names = tuple(name for name, _ in symbols)
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        weights = tuple(int(w) for _, w in symbols)
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.names = names
        self.weights = weights
        self.order = int(order)
        self._index = {n: i for i, n in enumerate(names)}

    def index(self, name):
        return self._index[name]

    def weight_of(self, expo):
        w = 0
        for e, wt in zip(expo, self.weights):
            if e:
                w += e * wt
        return w

    def with_order(self, order):
        ctx = VarContext.__new__(VarContext)
        ctx.names = self.names
        ctx.weights = self.weights
        ctx.order = int(order)
        ctx._index = self._index
        return ctx

    def same_symbols(self, other):
        return self.names == other.names and self.weights == other.weights

    def zero(self):
        return GradedSeries(self, {})

    def const(self, c):
        c = rat(c)
        if not c:
            return self.zero()
        return GradedSeries(self, {(0,) * len(self.names): c})

    def one(self):
        return self.const(1)

    def var(self, name, power=1):
        i = self.index(name)
        expo = [0] * len(self.names)
        expo[i] = power
        w = power * self.weights[i]
        if w > self.order:
            return self.zero()
        return GradedSeries(self, {tuple(expo): _ONE})

    def monomial(self, coeff, **powers):
        expo = [0] * len(self.names)
        for name, p in powers.items():
            expo[self.index(name)] = p
        expo = tuple(expo)
        if self.weight_of(expo) > self.order:
            return self.zero()
        c = rat(coeff)
        return GradedSeries(self, {expo: c}) if c else self.zero()

    def __repr__(self):
        return f"VarContext({list(zip(self.names, self.weights))}, order={self.order})"


def _grlex_key(item):
    weight, expo = item
    return (weight, expo)


class GradedSeries:
    """Sparse truncated series: dict of exponent tuple -> rational."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        zero = (0,) * len(self.ctx.names)
        return self.terms.get(zero, _ZERO)

    def min_weight(self):
        """Smallest monomial weight present; None for the zero series."""
        if not self.terms:
            return None
        wf = self.ctx.weight_of
        return min(wf(e) for e in self.terms)

    def max_weight(self):
        if not self.terms:
            return None
        wf = self.ctx.weight_of
        return max(wf(e) for e in self.terms)

    def sorted_terms(self):
        wf = self.ctx.weight_of
        return sorted(((wf(e), e) for e in self.terms), key=_grlex_key)

    def __eq__(self, other):
        if isinstance(other, GradedSeries):
            return self.ctx.same_symbols(other.ctx) and self.terms == other.terms
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        raise TypeError("GradedSeries is not hashable")

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            other = self.ctx.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                cur = cur + c
                if cur:
                    out[e] = cur
                else:
                    del out[e]
        return GradedSeries(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedSeries):
            other = self.ctx.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ctx.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            c = rat(other)
            if not c:
                return self.ctx.zero()
            return GradedSeries(self.ctx, {e: v * c for e, v in self.terms.items()})
        return GradedSeries(
            self.ctx,
            mul_terms(self.terms, other.terms, self.ctx.weights, self.ctx.order),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = rat(other)
        return GradedSeries(self.ctx, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- termination guard ------------------------------------------------

    def _positive_part_check(self, what):
        """Assert every non-constant monomial has weight >= 1."""
        wf = self.ctx.weight_of
        zero = (0,) * len(self.ctx.names)
        for e in self.terms:
            if e != zero and wf(e) == 0:
                raise ValueError(
                    f"{what} requires positive-weight terms; "
                    f"found weight-0 monomial {e}"
                )

    # -- analytic-style operations (all exact, terminating) ---------------

    def inverse(self):
        """Multiplicative inverse; constant term must be a nonzero rational."""
        c = self.constant_term()
        if not c:
            raise ValueError("inverse: constant term is zero")
        self._positive_part_check("inverse")
        x = self - c  # min weight >= 1
        cinv = _ONE / c
        # 1/(c+x) = (1/c) * sum_k (-x/c)^k
        y = x * (-cinv)
        result = self.ctx.one()
        power = self.ctx.one()
        for _ in range(self.ctx.order):
            power = power * y
            if not power:
                break
            result = result + power
        return result * cinv

    def exp(self):
        """exp of a series with zero constant term and positive weights."""
        if self.constant_term():
            raise ValueError("exp: nonzero constant term")
        self._positive_part_check("exp")
        result = self.ctx.one()
        power = self.ctx.one()
        for k in range(1, self.ctx.order + 1):
            power = power * self
            if not power:
                break
            result = result + power / _factorial(k)
        return result

    def log(self):
        """log of a series with constant term 1 and positive-weight rest."""
        if self.constant_term() != _ONE:
            raise ValueError("log: constant term must be 1")
        y = self - _ONE
        y._positive_part_check("log")
        result = self.ctx.zero()
        power = self.ctx.one()
        sign = _ONE
        for k in range(1, self.ctx.order + 1):
            power = power * y
            if not power:
                break
            result = result + power * (sign / k)
            sign = -sign
        return result

    # -- coefficient surgery ----------------------------------------------

    def coeff_in(self, name, k):
        """Coefficient of name**k, as a series not involving ``name``."""
        i = self.ctx.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return GradedSeries(self.ctx, out)

    def degree_in(self, name):
        i = self.ctx.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def derivative(self, name):
        i = self.ctx.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return GradedSeries(self.ctx, out)

    def divexact_var(self, name, k=1):
        """Exact division by name**k; raises if any term is not divisible."""
        i = self.ctx.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError(f"not divisible by {name}**{k}: term {e}")
            e2 = list(e)
            e2[i] -= k
            out[tuple(e2)] = c
        return GradedSeries(self.ctx, out)

    def subs_num(self, name, value):
        """Substitute a rational value for a symbol."""
        i = self.ctx.index(name)
        value = rat(value)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                c = c * value ** e[i]
                if not c:
                    continue
                e2 = list(e)
                e2[i] = 0
                e = tuple(e2)
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                cur = cur + c
                if cur:
                    out[e] = cur
                else:
                    del out[e]
        return GradedSeries(self.ctx, out)

    def subs_series(self, mapping, target_ctx=None):
        """Ring-homomorphic substitution.

        ``mapping`` sends symbol names to GradedSeries in ``target_ctx``
        (default: this context).  Unmapped symbols go to their same-named
        symbol in the target context.  Power images are cached.
        """
        tctx = target_ctx if target_ctx is not None else self.ctx
        images = {}
        for idx, name in enumerate(self.ctx.names):
            if name in mapping:
                img = mapping[name]
                if img.ctx is not tctx and not img.ctx.same_symbols(tctx):
                    raise ValueError("substitution image in wrong context")
                images[idx] = img
        plain = {}  # unmapped: target index and weight
        for idx, name in enumerate(self.ctx.names):
            if idx not in images:
                plain[idx] = tctx.index(name)
        powers = {idx: {0: tctx.one()} for idx in images}
        nt = len(tctx.names)
        result = tctx.zero()
        for e, c in self.terms.items():
            mono = [0] * nt
            factor = None
            ok = True
            for idx, p in enumerate(e):
                if not p:
                    continue
                if idx in plain:
                    mono[plain[idx]] += p
                else:
                    cache = powers[idx]
                    if p not in cache:
                        top = max(cache)
                        img = cache[top]
                        base = images[idx]
                        for q in range(top + 1, p + 1):
                            img = img * base
                            cache[q] = img
                    f = cache[p]
                    factor = f if factor is None else factor * f
                    if not factor:
                        ok = False
                        break
            if not ok:
                continue
            mono = tuple(mono)
            if tctx.weight_of(mono) > tctx.order:
                continue
            piece = GradedSeries(tctx, {mono: c})
            if factor is not None:
                piece = piece * factor
            result = result + piece
        return result

    def compose_var(self, name, value):
        """Substitute a series for one symbol (min weight of value >= 1)."""
        if value and value.min_weight() == 0:
            raise ValueError("compose_var: substituted series has weight-0 terms")
        return self.subs_series({name: value}, value.ctx)

    def taylor_shift(self, name, delta):
        """Substitute name -> name + delta."""
        return self.compose_var(name, delta.ctx.var(name) + delta)

    def in_ctx(self, ctx):
        """Reinterpret in a context with the same symbols (re-truncating)."""
        if not self.ctx.same_symbols(ctx):
            raise ValueError("in_ctx: symbol mismatch")
        wf = ctx.weight_of
        return GradedSeries(
            ctx, {e: c for e, c in self.terms.items() if wf(e) <= ctx.order}
        )

    # -- serialization ----------------------------------------------------

    def to_text(self):
        lines = []
        for _, e in self.sorted_terms():
            c = self.terms[e]
            lines.append(",".join(str(x) for x in e) + ":" + str(c))
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def from_text(ctx, text):
        terms = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            epart, cpart = line.split(":")
            e = tuple(int(x) for x in epart.split(","))
            if len(e) != len(ctx.names):
                raise ValueError("exponent arity mismatch")
            terms[e] = rat(cpart)
        return GradedSeries(ctx, terms)

    def __repr__(self):
        parts = []
        for _, e in self.sorted_terms()[:12]:
            c = self.terms[e]
            mono = "*".join(
                f"{n}^{p}" if p != 1 else n
                for n, p in zip(self.ctx.names, e)
                if p
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        more = "" if len(self.terms) <= 12 else f" + ({len(self.terms) - 12} more)"
        return "GradedSeries(" + (" + ".join(parts) or "0") + more + ")"


def first_difference(a, b):
    """Graded-lex-first monomial where two series differ, or None."""
    d = a - b
    if not d:
        return None
    w, e = min(d.sorted_terms(), key=_grlex_key)
    names = a.ctx.names
    mono = "*".join(f"{n}^{p}" if p != 1 else n for n, p in zip(names, e) if p)
    return (w, e, mono or "1", d.terms[e])


# ---------------------------------------------------------------------------
# Mode series: finite window of integer modes with GradedSeries coefficients.
# ---------------------------------------------------------------------------


class ModeSeries:
    """Series in one mode variable: dict mode -> GradedSeries coefficient.

    Mode m stands for the m-th power of the mode variable (m may be
    negative, e.g. u^{-r-1} is mode -r-1).  Coefficients must not involve
    the mode variable.  Products drop modes outside [lo, hi]; callers must
    keep same-variable products one-sided so no in-window mass is lost.
    """

    __slots__ = ("ctx", "lo", "hi", "modes")

    def __init__(self, ctx, lo, hi, modes=None):
        self.ctx = ctx
        self.lo = lo
        self.hi = hi
        self.modes = {}
        if modes:
            for m, c in modes.items():
                if lo <= m <= hi and c:
                    self.modes[m] = c

    def copy_window(self, lo, hi):
        return ModeSeries(self.ctx, lo, hi, self.modes)

    def __getitem__(self, m):
        return self.modes.get(m, self.ctx.zero())

    def is_zero(self):
        return not self.modes

    def __bool__(self):
        return bool(self.modes)

    def __eq__(self, other):
        if not isinstance(other, ModeSeries):
            return NotImplemented
        return (self.lo, self.hi) == (other.lo, other.hi) and self.modes == other.modes

    def __hash__(self):
        raise TypeError("ModeSeries is not hashable")

    def __add__(self, other):
        if not isinstance(other, ModeSeries):
            other = ModeSeries(self.ctx, self.lo, self.hi, {0: self.ctx.const(other)})
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("mode window mismatch")
        out = dict(self.modes)
        for m, c in other.modes.items():
            cur = out.get(m)
            s = c if cur is None else cur + c
            if s:
                out[m] = s
            elif cur is not None:
                del out[m]
        return ModeSeries(self.ctx, self.lo, self.hi, out)

    __radd__ = __add__

    def __neg__(self):
        return ModeSeries(
            self.ctx, self.lo, self.hi, {m: -c for m, c in self.modes.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, ModeSeries):
            other = ModeSeries(self.ctx, self.lo, self.hi, {0: self.ctx.const(other)})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return ModeSeries(
                self.ctx,
                self.lo,
                self.hi,
                {m: c * other for m, c in self.modes.items()},
            )
        if not isinstance(other, ModeSeries):
            c = rat(other)
            return ModeSeries(
                self.ctx, self.lo, self.hi, {m: v * c for m, v in self.modes.items()}
            )
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("mode window mismatch")
        out = {}
        for m1, c1 in self.modes.items():
            for m2, c2 in other.modes.items():
                m = m1 + m2
                if m < self.lo or m > self.hi:
                    continue
                p = c1 * c2
                if not p:
                    continue
                cur = out.get(m)
                s = p if cur is None else cur + p
                if s:
                    out[m] = s
                elif cur is not None:
                    del out[m]
        return ModeSeries(self.ctx, self.lo, self.hi, out)

    __rmul__ = __mul__

    def map_coeffs(self, fn):
        return ModeSeries(
            self.ctx, self.lo, self.hi, {m: fn(c) for m, c in self.modes.items()}
        )

    def _iterate_bound(self):
        span = self.hi - self.lo
        return self.ctx.order + span + 2

    def exp(self):
        """exp; the mode-0 coefficient must have zero constant term."""
        if self.modes.get(0) is not None and self[0].constant_term():
            raise ValueError("ModeSeries.exp: constant term present")
        one = ModeSeries(self.ctx, self.lo, self.hi, {0: self.ctx.one()})
        result = one
        power = one
        for k in range(1, self._iterate_bound() + 1):
            power = power * self
            if not power:
                break
            result = result + power.map_coeffs(lambda c, f=_factorial(k): c / f)
        else:
            raise ValueError("ModeSeries.exp did not terminate")
        return result

    def log(self):
        """log; the series must be 1 + (terms with no rational constant)."""
        y = self - 1
        if y.modes.get(0) is not None and y[0].constant_term():
            raise ValueError("ModeSeries.log: mode-0 constant term must be 1")
        result = ModeSeries(self.ctx, self.lo, self.hi, {})
        power = ModeSeries(self.ctx, self.lo, self.hi, {0: self.ctx.one()})
        sign = _ONE
        for k in range(1, self._iterate_bound() + 1):
            power = power * y
            if not power:
                break
            result = result + power.map_coeffs(lambda c, s=sign / k: c * s)
            sign = -sign
        else:
            raise ValueError("ModeSeries.log did not terminate")
        return result

    def inverse(self):
        """1/self for self = c + higher, c a nonzero rational at mode 0."""
        c = self[0].constant_term()
        if not c:
            raise ValueError("ModeSeries.inverse: zero constant term")
        cinv = _ONE / c
        y = (self * cinv) - 1
        one = ModeSeries(self.ctx, self.lo, self.hi, {0: self.ctx.one()})
        result = one
        power = one
        sign = -_ONE
        for k in range(1, self._iterate_bound() + 1):
            power = power * y
            if not power:
                break
            result = result + power.map_coeffs(lambda cc, s=sign: cc * s)
            sign = -sign
        else:
            raise ValueError("ModeSeries.inverse did not terminate")
        return result.map_coeffs(lambda cc: cc * cinv)


def shift_mode_variable(ms, delta):
    """Compose a ModeSeries with (mode variable) -> (mode variable) + delta.

    ``delta`` is a GradedSeries of positive minimal weight.  Uses the
    generalized binomial expansion of (u + delta)^m, exact under truncation.
    """
    if delta and delta.min_weight() == 0:
        raise ValueError("shift requires a positive-weight displacement")
    ctx = ms.ctx
    acc = {}
    for m, c in ms.modes.items():
        binom = _ONE  # C(m, 0)
        dpow = ctx.one()
        k = 0
        while True:
            mm = m - k
            if ms.lo <= mm <= ms.hi and binom:
                contrib = c * dpow * binom
                if contrib:
                    cur = acc.get(mm)
                    s = contrib if cur is None else cur + contrib
                    if s:
                        acc[mm] = s
                    elif cur is not None:
                        del acc[mm]
            k += 1
            if m >= 0 and k > m:
                break
            if m - k < ms.lo:
                break
            binom = binom * rat(m - k + 1, k)
            dpow = dpow * delta
            if not dpow:
                break
    return ModeSeries(ctx, ms.lo, ms.hi, acc)


def borel_transform(ms, vname):
    """Inverse Borel transform: mode -r-1 coefficient c_r -> c_r v^r / r!.

    All modes must be <= -1 (a pure u^{-1}-series with no constant part).
    """
    ctx = ms.ctx
    result = ctx.zero()
    for m, c in sorted(ms.modes.items()):
        if m > -1:
            raise ValueError("borel_transform: nonnegative mode present")
        r = -m - 1
        if c.degree_in(vname) > 0:
            raise ValueError("borel_transform: coefficient involves the v symbol")
        result = result + c * ctx.var(vname, r) / _factorial(r)
    return result


# ---------------------------------------------------------------------------
# Named scalar series.
# ---------------------------------------------------------------------------


def exp_linear(ctx, c, vname):
    """e^{c v} for a rational constant c, truncated."""
    c = rat(c)
    if not c:
        return ctx.one()
    return (ctx.var(vname) * c).exp()


def sinh2_over_var(ctx, a, vname):
    """(e^{a v} - e^{-a v}) / v for a scalar series ``a`` of weight >= 1.

    The division by v is exact.  Computed with one extra truncation order
    so the quotient is correct to the context's order.
    """
    hictx = ctx.with_order(ctx.order + 1)
    av = a.in_ctx(hictx) * hictx.var(vname)
    s = av.exp() - (-av).exp()
    return s.divexact_var(vname).in_ctx(ctx)


def g_log_series(ctx, vname):
    """G(v) = log( v / (e^{v/2} - e^{-v/2}) ); an even series, G(0)=0."""
    hictx = ctx.with_order(ctx.order + 1)
    half = hictx.var(vname) * rat(1, 2)
    s = (half.exp() - (-half).exp()).divexact_var(vname)  # (e^{v/2}-e^{-v/2})/v
    return (-(s.log())).in_ctx(ctx)


def j_log_series(ctx, vname):
    """J(v) = log( v / (1 - e^{-v}) ) = G(v) + v/2."""
    return g_log_series(ctx, vname) + ctx.var(vname) * rat(1, 2)


def expm1_over_var(ctx, vname):
    """(e^v - 1)/v, exact."""
    hictx = ctx.with_order(ctx.order + 1)
    s = hictx.var(vname).exp() - 1
    return s.divexact_var(vname).in_ctx(ctx)
