"""End-to-end certification suite.

Every check here certifies an identity of the constructed homomorphism
exactly: graded identities at a fixed truncation order over the rationals,
and the polynomial-operator identities with no truncation at all.
"""

import itertools
import random
from math import comb

import pytest

from loopyang.cartan import cartan_load, hbar_over_q_minus_qinv
from loopyang.conditions import (
    VarpiAlgebra,
    check_all,
    check_gauge_axioms,
    gauge_solve,
)
from loopyang.drinfeld import (
    check_condition_b_by_evaluation,
    check_evaluation_tables,
    check_square,
    q_integer_poly,
    symmetrizer_poly,
)
from loopyang.gln import GlnAlgebra, gln_check_all
from loopyang.glnbridge import (
    GlnBridge,
    bridge_closed_form_suite,
    intertwine_suite,
)
from loopyang.glnflag import (
    LoopFlagRep,
    YangFlagRep,
    loop_relation_suite,
    yang_relation_suite,
)
from loopyang.phi import GFamily, degeneration_report, phi_mode
from loopyang.series import rat
from loopyang.y0 import HBAR, Y0Algebra, tprime_rank1, varpi_generators

_FAMILIES = {}


def family(label, order):
    key = (label, order)
    if key not in _FAMILIES:
        _FAMILIES[key] = GFamily(
            Y0Algebra(cartan_load(label), order), label=label
        )
    return _FAMILIES[key]


def assert_all_pass(reports):
    __tracebackhide__ = True
    assert reports, "empty report list"
    failing = [r for r in reports if not r.passed]
    assert not failing, "\n".join(
        f"{r.check_id}: {r.first_failing_monomial}" for r in failing
    )


# -- 1: the defining conditions of the solution family ----------------------


@pytest.mark.parametrize(
    "label,order", [("A1", 8), ("A2", 6), ("B2", 6)], ids=str
)
def test_conditions_hold_on_full_window(label, order):
    # default k-window: N+1 consecutive integers, which decides every k
    reports = check_all(family(label, order))
    assert_all_pass(reports)
    kcount = sum(1 for r in reports if r.check_id.startswith("B["))
    assert kcount == len(cartan_load(label).nodes) * (order + 1)


# -- 2: the shift-operator calculus ------------------------------------------


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_shift_operator_calculus(label, order=8, rmax=6):
    y = Y0Algebra(cartan_load(label), order)
    u, v = y.ctx.var("u"), y.ctx.var("v")
    for i in y.datum.nodes:
        for j in y.datum.nodes:
            for r in range(rmax + 1):
                img = y.lambda_gen_image(+1, i, j, r, "u")
                # degree-0 homogeneity
                assert img.min_weight() == img.max_weight() == r
                # plus/minus inverse on generators
                assert y.lambda_apply(-1, i, img, "u") == y.gen(j, r)
                # closed form: t_{j,r} - image is the odd-part polynomial
                daij = y.datum.d[i] * y.datum.a[i][j]
                want = y.ctx.zero()
                for l in range(r // 2 + 1):
                    want = want + (
                        y.ctx.var("u", r - 2 * l)
                        * (y.hbar() ** (2 * l))
                        * (
                            rat(daij, 2) ** (2 * l)
                            * comb(r, 2 * l)
                            * rat(1, 2 * l + 1)
                        )
                    )
                assert y.gen(j, r) - img == want * daij, (label, i, j, r)
    # pairwise commutation on a generic element
    probe = y.gen(0, 2) * y.gen(1, 1) + y.hbar() * y.gen(0, 3)
    for si in (+1, -1):
        for sj in (+1, -1):
            a = y.lambda_apply(si, 0, y.lambda_apply(sj, 1, probe, "v"), "u")
            b = y.lambda_apply(sj, 1, y.lambda_apply(si, 0, probe, "u"), "v")
            assert a == b, (si, sj)
    del u, v


# -- 3: adapted generators ----------------------------------------------------


def test_adapted_generators_rank_one(order=8, kmax=8):
    y = Y0Algebra(cartan_load("A1"), order)
    tp = tprime_rank1(y, 0, kmax)
    for k in range(kmax + 1):
        for sign in (+1, -1):
            img = y.lambda_apply(sign, 0, tp[k], "u")
            assert img == tp[k] + sign * y.ctx.var("u", k), (k, sign)


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_adapted_generators_rank_two(label, order=5, rmax=4):
    y = Y0Algebra(cartan_load(label), order)
    w = varpi_generators(y, rmax)
    for i in y.datum.nodes:
        for j in y.datum.nodes:
            for r in range(rmax + 1):
                for sign in (+1, -1):
                    img = y.lambda_apply(sign, i, w[(j, r)], "u")
                    want = w[(j, r)]
                    if i == j:
                        want = want + sign * y.ctx.var("u", r)
                    assert img == want, (label, i, j, r, sign)


# -- 4: rank-one evaluation oracle -------------------------------------------


def test_evaluation_symmetrizer_closed_form():
    for m in (1, 2, 3, 4):
        assert symmetrizer_poly(m) == q_integer_poly(m)


def test_evaluation_tables_match_closed_forms():
    for m in (1, 2, 3, 4):
        assert_all_pass(check_evaluation_tables(m, 4))


def test_evaluation_square_commutes(order=8):
    reports = []
    for m in (1, 2, 3):
        for r in (-3, -2, -1, 1, 2, 3):
            reports.append(check_square(m, r, order))
    assert_all_pass(reports)


def test_condition_b_through_evaluation(order=5):
    reports = []
    for m in (1, 2, 3, 4):
        for k in (-2, -1, 0, 1, 2):
            reports.append(check_condition_b_by_evaluation(m, k, order))
    assert_all_pass(reports)


# -- 5: defining relations of both polynomial realizations -------------------

GRID = ((2, 1), (2, 2), (2, 3), (3, 2))


def _yang_basis(d, degree):
    return [
        e
        for e in itertools.product(range(degree + 1), repeat=d)
        if sum(e) <= degree
    ]


def _loop_basis(d, degree):
    return [
        e
        for e in itertools.product(range(-1, degree), repeat=d)
        if sum(abs(x) for x in e) <= degree
    ]


@pytest.mark.parametrize("n,d", GRID, ids=str)
def test_degenerate_realization_relations(n, d, modes=3, degree=3):
    yr = YangFlagRep(n, d)
    reports = []
    for dd in yr.components:
        probes = yr.invariant_monomials(dd, _yang_basis(d, degree))
        reports += yang_relation_suite(yr, dd, probes, modes)
    assert_all_pass(reports)


@pytest.mark.parametrize("n,d", GRID, ids=str)
def test_loop_realization_relations(n, d, modes=3, degree=3):
    lr = LoopFlagRep(n, d)
    reports = []
    for dd in lr.components:
        probes = lr.invariant_monomials(dd, _loop_basis(d, degree))
        reports += loop_relation_suite(lr, dd, probes, modes, 1)
    assert_all_pass(reports)


@pytest.mark.parametrize("n", [2, 3])
def test_abstract_conditions_hold(n, order=5):
    assert_all_pass(gln_check_all(GlnAlgebra(n, order)))


# -- 6: realized series match their closed forms ------------------------------


@pytest.mark.parametrize("n,d", GRID, ids=str)
def test_realized_series_closed_forms(n, d, order=6):
    br = GlnBridge(GlnAlgebra(n, order), d)
    assert_all_pass(bridge_closed_form_suite(br))


# -- 7: the intertwining sweep -------------------------------------------------


@pytest.mark.parametrize("n,d", ((2, 1), (2, 2), (2, 3)), ids=str)
def test_intertwining_full_grid(n, d, order=6, rwindow=2, degree=4):
    from loopyang.glnbridge import (
        PhiFlagAction,
        check_intertwine_cartan,
        check_intertwine_raising,
    )

    br = GlnBridge(GlnAlgebra(n, order), d)
    yr, lr = YangFlagRep(n, d), LoopFlagRep(n, d)
    pa = PhiFlagAction(br, yr)
    rset = range(-rwindow, rwindow + 1)
    reports = []
    for dd in lr.components:
        for j in range(1, n + 1):
            for r in rset:
                reports.append(check_intertwine_cartan(pa, lr, dd, j, r))
        probes = lr.invariant_monomials(dd, _yang_basis(d, degree))
        for p in probes:
            for i in range(1, n):
                for r in rset:
                    reports.append(
                        check_intertwine_raising(pa, lr, dd, i, r, p, "e")
                    )
                    reports.append(
                        check_intertwine_raising(pa, lr, dd, i, r, p, "f")
                    )
    assert_all_pass(reports)


# -- 8: classical limits --------------------------------------------------------


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_classical_limit_diagnostics(label):
    order = 8 if label == "A1" else 6
    gf = family(label, order)
    diag = degeneration_report(gf)
    assert diag and all(diag.values()), diag


@pytest.mark.parametrize("label", ["A1", "B2"])
def test_mode_images_classical_values(label, order=5):
    gf = family(label, order)
    y = gf.y
    v = y.ctx.var("v")
    for i in y.datum.nodes:
        unit_minus = hbar_over_q_minus_qinv(y.ctx, y.datum.d[i], HBAR)
        for k in range(-3, 4):
            for sign in (+1, -1):
                mode = phi_mode(gf, sign, i, k, "v")
                got = mode.coeff.subs_num(HBAR, 0)
                want = (v * rat(k)).exp()
                if sign < 0:
                    want = want * unit_minus
                assert got == want.subs_num(HBAR, 0), (label, i, k, sign)


# -- 9: gauge families ------------------------------------------------------------


def test_gauge_axioms_for_torus_scalings():
    y = Y0Algebra(cartan_load("A2"), 4)
    scal = {0: rat(3), 1: rat(-5, 2)}
    r = {}
    for i in y.datum.nodes:
        r[(+1, i)] = y.ctx.one() * scal[i]
        r[(-1, i)] = y.ctx.one() * (1 / scal[i])
    assert_all_pass(check_gauge_axioms(y, r))


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_gauge_axioms_for_induced_gauges(label):
    y = Y0Algebra(cartan_load(label), 4)
    rng = random.Random(13)
    xi = {}
    for i in y.datum.nodes:
        eta = y.ctx.zero()
        for s in range(3):
            eta = eta + y.hbar() * y.gen(i, s) * rat(rng.randint(-3, 3))
        xi[i] = eta.exp()
    r = {
        (sign, i): xi[i] * y.lambda_apply(sign, i, xi[i], "u").inverse()
        for sign in (+1, -1)
        for i in y.datum.nodes
    }
    assert_all_pass(check_gauge_axioms(y, r))


def test_gauge_solver_roundtrips_twenty_seeds(order=5):
    va = VarpiAlgebra(cartan_load("A2"), order)
    gens = [g for _, g in va.gen_items()]
    for seed in range(20):
        rng = random.Random(seed)
        eta = va.ctx.zero()
        for _ in range(4):
            i, s = gens[rng.randrange(len(gens))]
            g = va.gen(i, s)
            eta = eta + g * va.ctx.var("h") * rat(rng.randint(-2, 2))
            eta = eta + g * g * va.ctx.var("h") * rat(rng.randint(-1, 1))
        xi = (-eta).exp()
        rbar = {
            i: (xi * va.lambda_apply(+1, i, xi, "u").inverse()).log()
            for i in va.datum.nodes
        }
        assert gauge_solve(va, rbar, "u") == eta, seed


# -- 10: mutation sensitivity -------------------------------------------------------


def test_single_coefficient_perturbations_are_caught(order=5):
    gf = family("A1", order)
    y = gf.y
    h, v = y.hbar(), y.ctx.var("v")
    # each delta is a single monomial: one coefficient of the series moves
    perturbations = [
        (sign, h ** a * v ** b * y.gen(0, r) * rat(c))
        for (sign, a, b, r, c) in [
            (+1, 1, 0, 0, 1),
            (+1, 1, 1, 0, -2),
            (+1, 2, 0, 0, 3),
            (+1, 1, 0, 1, 1),
            (+1, 2, 1, 1, -1),
            (-1, 1, 0, 0, 2),
            (-1, 1, 2, 0, 1),
            (-1, 2, 1, 0, -3),
            (-1, 1, 0, 2, 1),
            (-1, 1, 1, 1, 5),
        ]
    ]
    assert len(perturbations) == 10
    for sign, delta in perturbations:
        bad = gf.perturbed(sign, 0, "v", delta)
        reports = check_all(bad)
        failing = [r for r in reports if not r.passed]
        assert failing, f"undetected perturbation {delta!r} on sign {sign}"
        assert all(r.first_failing_monomial for r in failing)
