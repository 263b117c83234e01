"""The matrix D, assumptions, Fitting ideals and module structure."""

import pytest
import sympy

from knotselmer.errors import AssumptionError
from knotselmer.linalg import elementary_divisors, minors_gcd, smith_diagonal
from knotselmer.representation import rep_from_assignment
from knotselmer.rings import QQ, PrimeField, associates
from knotselmer.selmer import (GammaSpec, build_D, build_d1, check_a1, check_a2,
                               partial_composition_vanishes, selmer)
from knots import fig8_series, fig8_near_root, fig8_holonomy, fig8_z53, fig8


def test_v0_for_figure_eight_meridian():
    rep, q = fig8_series()
    v0, ok = check_a1(rep, (1,))
    assert ok
    assert v0[0] == q["A"](1)
    assert v0[1] == q["r"] / 2
    assert v0[2].is_zero()


def test_kernel_for_unipotent_meridian():
    rep, q = fig8_holonomy()
    v0, ok = check_a1(rep, (1,))
    assert ok
    assert associates(v0[0], q["O"](1)) and v0[1].is_zero() and v0[2].is_zero()


def test_chain_condition():
    for rep, _ in (fig8_series(), fig8_holonomy(), fig8_z53()):
        assert partial_composition_vanishes(rep)


def test_D_shape_and_zero_rows():
    rep, _ = fig8_series()
    v0, _ = check_a1(rep, (1,))
    D = build_D(rep, (1,), v0)
    assert len(D) == 6 and all(len(row) == 6 for row in D)
    assert all(x.is_zero() for x in D[4] + D[5])


def test_figure_eight_meridian_fitting():
    rep, q = fig8_series()
    res = selmer(rep, GammaSpec("meridian"), degrees=(0, 1))
    assert associates(res.L, q["s"])
    assert res.fitting[1].is_unit()
    assert res.module() == "A/(s)"
    assert res.free_rank == 0


def test_scaled_cycle_with_equal_scalars_is_meridian_cycle():
    rep, _ = fig8_near_root(6)
    A = rep.ring
    mer = selmer(rep, GammaSpec("meridian"), degrees=(0,))
    scaled = selmer(rep, GammaSpec("longitude_porti", T_mu=A(1), T_lambda=A(1)), degrees=(0,))
    assert mer.L == scaled.L


def test_longitude_word_and_scaled_cycle_agree():
    """Two routes to L_lambda: the longitude word itself, and the rescaled meridian cycle."""
    rep, q = fig8_near_root(6)
    plain = selmer(rep, GammaSpec("longitude"), degrees=(0,))
    scaled = selmer(rep, GammaSpec("longitude_porti", T_mu=q["T_mu"], T_lambda=q["T_lambda"]), degrees=(0,))
    assert associates(plain.L, scaled.L)
    assert associates(plain.L, q["s"])


def test_identity_gamma_violates_a1():
    rep, _ = fig8_series(4)
    relator = rep.presentation.relators[0]
    with pytest.raises(AssumptionError):
        selmer(rep, GammaSpec("word", word=relator))


def test_empty_gamma_rejected():
    rep, _ = fig8_series(4)
    with pytest.raises(AssumptionError):
        build_d1(rep, ())
    with pytest.raises(AssumptionError):
        build_d1(rep, (1, -1))


def test_a2_fails_for_trivial_representation():
    one = [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]
    rep = rep_from_assignment(fig8(), [one, one])
    assert check_a2(rep) is False


def test_a2_holds_for_fig8_series():
    rep, _ = fig8_series(4)
    assert check_a2(rep) is True


def test_holonomy_uses_pid_fallback():
    rep, q = fig8_holonomy()
    res = selmer(rep)
    assert check_a2(rep) is False
    assert any("partial1 is not onto" in w for w in res.warnings)
    assert associates(res.L, q["w"])
    assert res.module("𝒪") == "𝒪/(w)"


def test_porti_mode_requires_scalars():
    with pytest.raises(ValueError):
        GammaSpec("longitude_porti", T_mu=1)
    with pytest.raises(ValueError):
        GammaSpec("bogus")


def test_smith_form_over_rationals():
    M = [[QQ(2), QQ(0)], [QQ(0), QQ(4)]]
    assert [int(x.raw) for x in elementary_divisors(M)] == [1, 1]


def test_identity_minors():
    I = [[QQ(1 if i == j else 0) for j in range(4)] for i in range(4)]
    for k in range(1, 5):
        assert minors_gcd(I, k) == QQ(1)


def test_smith_form_over_prime_field_matches_rank():
    F = PrimeField(7)
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 5]]
    M = [[F(x) for x in row] for row in rows]
    divs = smith_diagonal(M)
    rank = sympy.Matrix(rows).rank(iszerofunc=lambda x: x % 7 == 0)
    assert sum(1 for d in divs if not d.is_zero()) == rank == 2
