"""Cartan data: symmetrizable generalized Cartan matrices and q-scalars.

A :class:`CartanDatum` bundles the node set, the Cartan matrix ``a``, the
minimal positive symmetrizing integers ``d`` (so that d_i a_ij = d_j a_ji),
and optionally the size n of the general-linear case, whose Cartan matrix is
of type A_{n-1} with the convention c_ji = -delta_ji + delta_{j,i+1} used by
the representation operators.

q-scalars are exact truncated series in hbar under q = e^{hbar/2}:
q^k = e^{k hbar / 2}, [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}.
"""

from __future__ import annotations

from math import gcd

from .series import rat


class CartanDatum:
    """Symmetrizable Cartan matrix with minimal symmetrizers."""

    __slots__ = ("label", "nodes", "a", "d", "gln_n")

    def __init__(self, label, a, gln_n=None):
        n = len(a)
        for row in a:
            if len(row) != n:
                raise ValueError("Cartan matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("diagonal entries must equal 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if i != j and (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError("zero pattern must be symmetric")
        d = _minimal_symmetrizer(a)
        for i in range(n):
            for j in range(n):
                if d[i] * a[i][j] != d[j] * a[j][i]:
                    raise ValueError("matrix is not symmetrizable")
        self.label = label
        self.nodes = tuple(range(n))
        self.a = tuple(tuple(row) for row in a)
        self.d = tuple(d)
        self.gln_n = gln_n

    @property
    def rank(self):
        return len(self.nodes)

    def __repr__(self):
        return f"CartanDatum({self.label!r})"


def _minimal_symmetrizer(a):
    """Minimal positive integers d with d_i a_ij = d_j a_ji.

    Solved per connected component by propagating ratios along edges and
    clearing denominators.
    """
    n = len(a)
    num = [0] * n  # rational d_i = num/den per component
    den = [1] * n
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        num[start], den[start] = 1, 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0 and not seen[j]:
                    # d_j = d_i * a_ij / a_ji
                    num[j] = num[i] * a[i][j]
                    den[j] = den[i] * a[j][i]
                    if num[j] * den[j] < 0:
                        raise ValueError("matrix is not symmetrizable")
                    num[j], den[j] = abs(num[j]), abs(den[j])
                    g = gcd(num[j], den[j])
                    num[j] //= g
                    den[j] //= g
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        lcm = 1
        for j in comp:
            lcm = lcm * den[j] // gcd(lcm, den[j])
        vals = [num[j] * (lcm // den[j]) for j in comp]
        g = 0
        for v in vals:
            g = gcd(g, v)
        for j, v in zip(comp, vals):
            num[j], den[j] = v // g, 1
    return [num[i] for i in range(n)]


_BUILTIN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -3], [-1, 2]],
}


def cartan_load(spec):
    """Load a Cartan datum.

    ``spec`` is one of: a built-in label ("A1", "A2", "B2", "G2"),
    "gl" followed by an integer n >= 1 (type A_{n-1} data plus the
    general-linear convention, e.g. "gl3"), or a path to a text file whose
    first line is the rank and whose remaining lines are matrix rows.
    """
    if isinstance(spec, CartanDatum):
        return spec
    if spec in _BUILTIN:
        return CartanDatum(spec, _BUILTIN[spec])
    if spec.startswith("gl"):
        n = int(spec[2:])
        if n < 1:
            raise ValueError("gl size must be >= 1")
        r = n - 1
        a = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]
        return CartanDatum(spec, a, gln_n=n)
    # otherwise: a file path
    with open(spec) as fh:
        lines = [ln for ln in (s.strip() for s in fh) if ln and not ln.startswith("#")]
    rank = int(lines[0])
    rows = [[int(x) for x in ln.split()] for ln in lines[1 : 1 + rank]]
    if len(rows) != rank:
        raise ValueError("matrix rows missing")
    return CartanDatum(spec, rows)


def gln_c_matrix(n):
    """The (j, i) coupling constants of the general-linear case.

    c[j][i] = -delta_ji + delta_{j,i+1} for j = 1..n, i = 1..n-1
    (0-indexed here: c[j][i] with j in range(n), i in range(n-1)).
    """
    return [
        [(-1 if j == i else 0) + (1 if j == i + 1 else 0) for i in range(n - 1)]
        for j in range(n)
    ]


# ---------------------------------------------------------------------------
# q-scalars as hbar-series.
# ---------------------------------------------------------------------------


def q_power(ctx, k, hname="h"):
    """q^k = e^{k hbar / 2} as a truncated series (k may be a rational)."""
    k = rat(k)
    if not k:
        return ctx.one()
    return (ctx.var(hname) * (k / 2)).exp()


def q_integer(ctx, n, di=1, hname="h"):
    """[n]_{q_i} = q_i^{n-1} + q_i^{n-3} + ... + q_i^{1-n}  (exact sum form)."""
    n = int(n)
    if n == 0:
        return ctx.zero()
    if n < 0:
        return -q_integer(ctx, -n, di, hname)
    s = ctx.zero()
    for j in range(n):
        s = s + q_power(ctx, rat(di) * (n - 1 - 2 * j), hname)
    return s


def q_binomial(ctx, n, k, di=1, hname="h"):
    """Gaussian binomial [n choose k]_{q_i} via the q-Pascal recursion."""
    if k < 0 or k > n:
        return ctx.zero()
    row = [ctx.one()]
    for m in range(1, n + 1):
        new = [ctx.one()]
        for j in range(1, m):
            # [m choose j] = q^{j} [m-1 choose j] + q^{-(m-j)} [m-1 choose j-1]
            left = q_power(ctx, rat(di) * j, hname) * row[j] if j < len(row) else ctx.zero()
            right = q_power(ctx, rat(di) * (j - m), hname) * row[j - 1]
            new.append(left + right)
        new.append(ctx.one())
        row = new
    return row[k]


def hbar_over_q_minus_qinv(ctx, di=1, hname="h"):
    """hbar / (q_i - q_i^{-1}) as a unit series (constant term 1/d_i).

    q_i - q_i^{-1} = 2 sinh(hbar d_i / 2) = hbar d_i (1 + ...), so the
    quotient is exact after dividing out one power of hbar.
    """
    hictx = ctx.with_order(ctx.order + 1)
    x = hictx.var(hname) * rat(di, 2)
    s = (x.exp() - (-x).exp()).divexact_var(hname)  # (q_i - q_i^{-1}) / hbar
    return s.in_ctx(ctx).inverse()


def q_minus_qinv(ctx, di=1, hname="h"):
    """q_i - q_i^{-1} = 2 sinh(hbar d_i / 2)."""
    x = ctx.var(hname) * rat(di, 2)
    return x.exp() - (-x).exp()
