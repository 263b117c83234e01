"""Two-variable matrix over A[t, t^-1], Phi and the comparison verdict."""

import sympy

from knotselmer.representation import rep_from_assignment
from knotselmer.rings import QQ, LaurentPolynomialRing, PowerSeriesRing, associates
from knotselmer.selmer import build_partial2
from knotselmer.twovar import (FAILS, HOLDS, UNDECIDED, build_partial2_t, conjecture_check,
                               phi_polynomial, sample_table, specialize, two_var_selmer)
from knots import fig8_series, fig8_z53, fig8, k52


def test_t_equals_one_recovers_partial2():
    rep, _ = fig8_series(4)
    assert specialize(build_partial2_t(rep), 1) == build_partial2(rep)


def _alexander_oracle(P):
    """Abelianized Fox derivative of the single relator, with sympy."""
    t = sympy.Symbol("t")
    r = P.relators[0]
    total = 0
    deg = 0
    for x in r:
        if abs(x) == 1:
            total += t ** deg if x > 0 else -t ** (deg - 1)
        deg += 1 if x > 0 else -1
    return sympy.factor(sympy.expand(total)), t


def _to_laurent(L, expr, t):
    expr = sympy.expand(expr * t ** 20)
    poly = sympy.Poly(expr, t)
    acc = L.zero_elem
    for (k,), c in poly.terms():
        acc = acc + QQ(int(c)) * L.gen ** (k - 20)
    return acc


def test_trivial_representation_gives_alexander_cube():
    for P in (fig8(), k52()):
        one = [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]
        rep = rep_from_assignment(P, [one, one])
        phi = phi_polynomial(build_partial2_t(rep))
        delta, t = _alexander_oracle(P)
        L = phi.ring
        assert associates(phi, _to_laurent(L, delta ** 3, t))


def test_alexander_oracle_values():
    d, t = _alexander_oracle(fig8())
    ratio = sympy.cancel(d / (t * t - 3 * t + 1))
    assert sympy.Poly(sympy.numer(ratio), t).is_monomial and sympy.Poly(sympy.denom(ratio), t).is_monomial


def test_verdicts():
    A = PowerSeriesRing(QQ, "s", 4)
    L = LaurentPolynomialRing(A, "t")
    t, s = L.gen, A.gen
    assert conjecture_check((t - 1) * (t + 2), 3)[0] == HOLDS
    assert conjecture_check((t - 1) * (t + 2), s)[0] == FAILS
    assert conjecture_check((t - 1) * L(s) * (t + 2), s)[0] == HOLDS
    assert conjecture_check(L.zero_elem, s)[0] == UNDECIDED
    assert conjecture_check((t + 2) * (t + 3), s)[0] == FAILS


def test_figure_eight_two_variable():
    rep, q = fig8_z53(6, 6)
    res = two_var_selmer(rep, L_lambda=q["s"])
    L = res.phi.ring
    t = L.gen
    x = L(q["x"])
    assert associates(res.phi, (t - 1) * (t * t - (2 * x * x - 3) * t + 1))
    assert res.conjecture == HOLDS
    assert res.vanishing_ok


def test_sample_table_values():
    rep, q = fig8_z53(6, 6)
    phi = two_var_selmer(rep).phi
    rows = sample_table(phi)
    at_zero = [r for r in rows if r["s"] == 0]
    at_p = [r for r in rows if r["s"] == 53]
    assert [r["t"] for r in at_zero] == [-1, 2]
    assert all(r["modulus"] == "53^6" for r in at_p)
    # the s = 0 value is the constant term of Phi evaluated at t
    c0 = specialize([[phi]], -1)[0][0].raw[0]
    assert at_zero[0]["value"].raw == c0
