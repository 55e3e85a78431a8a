"""Pure-Python sparse multiplication kernel.

Terms are dicts mapping exponent tuples to exact rational coefficients.  The
grading weight of a monomial is the dot product of its exponent tuple with the
context's weight vector; products whose weight exceeds ``cap`` are dropped.
"""

IMPLEMENTATION = "python"


def term_weight(expo, weights):
    w = 0
    for e, wt in zip(expo, weights):
        if e:
            w += e * wt
    return w


def mul_terms(a, b, weights, cap):
    """Multiply two term dicts, truncating above total weight ``cap``."""
    if len(a) > len(b):
        a, b = b, a
    aitems = sorted(
        ((term_weight(ea, weights), ea, ca) for ea, ca in a.items()),
        key=lambda t: t[0],
    )
    bitems = sorted(
        ((term_weight(eb, weights), eb, cb) for eb, cb in b.items()),
        key=lambda t: t[0],
    )
    out = {}
    for wa, ea, ca in aitems:
        if bitems and wa + bitems[0][0] > cap:
            break
        for wb, eb, cb in bitems:
            if wa + wb > cap:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e)
            if c is None:
                out[e] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[e] = c
                else:
                    del out[e]
    return out
