# cython: language_level=3
"""Cython sparse multiplication kernel (same contract as _mulcore_py)."""

IMPLEMENTATION = "cython"


def term_weight(tuple expo, tuple weights):
    cdef Py_ssize_t i, n = len(expo)
    cdef long w = 0
    for i in range(n):
        w += <long> expo[i] * <long> weights[i]
    return w


def mul_terms(dict a, dict b, tuple weights, long cap):
    """Multiply two term dicts, truncating above total weight ``cap``."""
    cdef dict out = {}
    cdef list aitems, bitems
    cdef Py_ssize_t i, j, k, n
    cdef long wa, wb, wb0
    cdef tuple ea, eb, e
    cdef object ca, cb, c, cur

    if len(a) > len(b):
        a, b = b, a
    aitems = sorted(
        [(term_weight(ea, weights), ea, ca) for ea, ca in a.items()]
    )
    bitems = sorted(
        [(term_weight(eb, weights), eb, cb) for eb, cb in b.items()]
    )
    if not aitems or not bitems:
        return out
    wb0 = <long> (<tuple> bitems[0])[0]
    n = len(weights)
    for i in range(len(aitems)):
        wa = <long> (<tuple> aitems[i])[0]
        if wa + wb0 > cap:
            break
        ea = (<tuple> aitems[i])[1]
        ca = (<tuple> aitems[i])[2]
        for j in range(len(bitems)):
            wb = <long> (<tuple> bitems[j])[0]
            if wa + wb > cap:
                break
            eb = (<tuple> bitems[j])[1]
            cb = (<tuple> bitems[j])[2]
            e = tuple([ea[k] + eb[k] for k in range(n)])
            cur = out.get(e)
            if cur is None:
                out[e] = ca * cb
            else:
                c = cur + ca * cb
                if c:
                    out[e] = c
                else:
                    del out[e]
    return out
