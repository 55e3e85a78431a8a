"""Exact sparse Laurent polynomials and rational functions.

Unlike :mod:`loopyang.series`, nothing here is truncated: these are honest
polynomials over the rationals, with integer (possibly negative) exponents.
They back the evaluation homomorphisms onto symmetric-function rings and the
polynomial-operator representations, where exact division of a symmetrized
numerator by a product of root differences must come out clean.
"""

from .series import rat


class Poly:
    """Sparse Laurent polynomial in a fixed tuple of variables.

    ``terms`` maps exponent tuples (one int per variable, negatives allowed)
    to nonzero rationals.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = rat(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): rat(c)})

    @classmethod
    def var(cls, vars, name, power=1):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(vars, {tuple(e): rat(1)})

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("polynomials over different variable tuples")

    # -- ring operations ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(self.vars, other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = rat(other)
            return Poly(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            return self.inverse_monomial() ** (-n)
        out = Poly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse_monomial(self):
        """Inverse, defined only when the polynomial is a single term."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible")
        ((e, c),) = self.terms.items()
        return Poly(self.vars, {tuple(-x for x in e): 1 / c})

    # -- structure ----------------------------------------------------------

    def is_const(self):
        return not self.terms or set(self.terms) == {(0,) * len(self.vars)}

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), rat(0))

    def degree(self, name):
        idx = self.vars.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def coeff(self, name, k):
        """Coefficient of name**k, as a Poly not involving ``name``."""
        idx = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[idx] == k:
                f = list(e)
                f[idx] = 0
                out[tuple(f)] = c
        return Poly(self.vars, out)

    def permute(self, mapping):
        """Rename variables; ``mapping`` maps old name -> new name."""
        perm = [self.vars.index(mapping.get(v, v)) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(e)
            for src, dst in enumerate(perm):
                f[dst] = e[src]
            out[tuple(f)] = c
        return Poly(self.vars, out)

    def subs(self, images):
        """Substitute Polys (over the same variables) for variables.

        Variables absent from ``images`` are kept.  Negative powers require
        the image to be an invertible monomial.
        """
        out = Poly.const(self.vars, 0)
        cache = {}

        def power(name, k):
            key = (name, k)
            if key not in cache:
                base = images.get(name, Poly.var(self.vars, name))
                cache[key] = base ** k
            return cache[key]

        for e, c in self.terms.items():
            term = Poly.const(self.vars, c)
            for idx, k in enumerate(e):
                if k:
                    term = term * power(self.vars[idx], k)
            out = out + term
        return out

    # -- exact division ------------------------------------------------------

    def _shift(self, delta):
        return Poly(
            self.vars,
            {tuple(x + d for x, d in zip(e, delta)): c for e, c in self.terms.items()},
        )

    def divexact(self, other):
        """Exact quotient self/other; raises ValueError when it is not exact."""
        if not isinstance(other, Poly):
            c = rat(other)
            return Poly(self.vars, {e: v / c for e, v in self.terms.items()})
        self._check(other)
        if not other:
            raise ZeroDivisionError("poly division by zero")
        if not self:
            return self
        # clear Laurent content so ordinary term-by-term division applies
        n = len(self.vars)
        lo_s = [min(e[i] for e in self.terms) for i in range(n)]
        lo_o = [min(e[i] for e in other.terms) for i in range(n)]
        num = self._shift([-x for x in lo_s])
        den = other._shift([-x for x in lo_o])
        dlead = max(den.terms)
        dc = den.terms[dlead]
        quot = {}
        rem = dict(num.terms)
        while rem:
            rlead = max(rem)
            qe = tuple(x - y for x, y in zip(rlead, dlead))
            if any(x < 0 for x in qe):
                raise ValueError("inexact polynomial division")
            qc = rem[rlead] / dc
            quot[qe] = qc
            for e, c in den.terms.items():
                f = tuple(x + y for x, y in zip(e, qe))
                s = rem.get(f, 0) - qc * c
                if s:
                    rem[f] = s
                else:
                    rem.pop(f, None)
        q = Poly(self.vars, quot)
        return q._shift([a - b for a, b in zip(lo_s, lo_o)])

    # -- export ----------------------------------------------------------------

    def graded_image(self, ctx, images):
        """Map into a truncated graded-series context.

        ``images`` maps each variable name to a GradedSeries in ``ctx``;
        negative powers use series inversion.
        """
        out = ctx.zero()
        cache = {}

        def power(name, k):
            key = (name, k)
            if key not in cache:
                base = images[name]
                cache[key] = base.inverse() ** (-k) if k < 0 else base ** k
            return cache[key]

        for e, c in self.terms.items():
            term = ctx.const(c)
            for idx, k in enumerate(e):
                if k:
                    term = term * power(self.vars[idx], k)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


class RationalFunction:
    """Quotient of two Polys; arithmetic keeps numerator/denominator split.

    No gcd reduction is attempted; :meth:`to_poly` performs the exact
    division once at the end, which is where symmetrized sums collapse.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.const(num.vars, 1)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def of(cls, p):
        return p if isinstance(p, RationalFunction) else cls(p)

    def __add__(self, other):
        other = RationalFunction.of(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = RationalFunction.of(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = RationalFunction.of(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = RationalFunction.of(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = RationalFunction.of(other)
        if isinstance(other, RationalFunction):
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash(self.to_poly())

    def __bool__(self):
        return bool(self.num)

    def to_poly(self):
        return self.num.divexact(self.den)

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"
