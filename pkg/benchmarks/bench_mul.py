"""Benchmark: compiled multiplication kernel vs the pure-Python fallback.

Both kernels are imported directly (the package-level selection is
bypassed), their outputs are cross-checked for exact equality, and the
timings are reported side by side.

Usage: python benchmarks/bench_mul.py [--order N] [--gens G] [--repeat R]
"""

import argparse
import time

from loopyang._kernel import _mulcore_py

try:
    from loopyang._kernel import _mulcore
except ImportError:
    _mulcore = None

from loopyang.series import VarContext, rat


def build_operands(order, gens):
    """A dense-ish pair of truncated series: exp-like sums in several
    weighted generators, which is exactly the shape of the hot products
    in the condition checks."""
    symbols = [("h", 1), ("u", 1), ("v", 1)]
    symbols += [(f"t{i}", 1 + i % 2) for i in range(gens)]
    ctx = VarContext(symbols, order)
    x = ctx.one()
    y = ctx.one()
    for i in range(gens):
        g = ctx.var(f"t{i}")
        x = x + (g * ctx.var("h") + g * g * rat(1, i + 2)).exp() * rat(1, 3)
        y = y + (g * ctx.var("u") - g * rat(i + 1, 2)).exp() * rat(1, 5)
    return ctx, x, y


def bench(kernel, ctx, x, y, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = kernel.mul_terms(x.terms, y.terms, ctx.weights, ctx.order)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--gens", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    ctx, x, y = build_operands(args.order, args.gens)
    nx, ny = len(x.terms), len(y.terms)
    print(f"order={args.order} gens={args.gens}: {nx} x {ny} terms")

    t_py, out_py = bench(_mulcore_py, ctx, x, y, args.repeat)
    print(f"python   kernel: {t_py * 1000:9.2f} ms   ({len(out_py)} terms)")

    if _mulcore is None:
        print("compiled kernel: not built (pip install -e . rebuilds it)")
        return

    t_c, out_c = bench(_mulcore, ctx, x, y, args.repeat)
    print(f"compiled kernel: {t_c * 1000:9.2f} ms   ({len(out_c)} terms)")
    assert out_c == out_py, "kernel outputs disagree"
    print(f"speedup: {t_py / t_c:.2f}x  (outputs identical)")


if __name__ == "__main__":
    main()
