"""SL2 representations, the adjoint action and residual data."""

import pytest
import sympy

from knotselmer.errors import CapabilityError, RepresentationError
from knotselmer.linalg import mat_mul
from knotselmer.representation import (SL2, absolutely_irreducible, adjoint_matrix,
                                        commutator_trace, commutes, eigenvalue_logderiv,
                                        rep_from_assignment, residual_rep, right_adjoint)
from knotselmer.rings import QQ, PrimeField
from knots import fig8_series, fig8_near_root, fig8_holonomy, fig8_z53, k52_z17, fig8

BASIS = [sympy.Matrix([[0, 1], [0, 0]]), sympy.Matrix([[1, 0], [0, -1]]), sympy.Matrix([[0, 0], [1, 0]])]


def coords(X):
    return [X[0, 1], X[0, 0], X[1, 0]]


def ad_oracle(M):
    """Columns are the coordinates of M v_i M^-1."""
    Mi = M.inv()
    cols = [coords(M * v * Mi) for v in BASIS]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def as_qq(M):
    return SL2(*(QQ(int(x)) if x == int(x) else QQ(sympy.Rational(x).p) / sympy.Rational(x).q
                 for x in (M[0, 0], M[0, 1], M[1, 0], M[1, 1])))


@pytest.mark.parametrize("entries", [(1, 1, 0, 1), (2, 3, 1, 2), (0, -1, 1, 0), (3, 5, 1, 2)])
def test_adjoint_matches_conjugation(entries):
    M = sympy.Matrix(2, 2, list(entries))
    assert M.det() == 1
    got = adjoint_matrix(as_qq(M))
    want = ad_oracle(M)
    assert [[int(x.raw) for x in row] for row in got] == want


def test_adjoint_of_unipotent():
    got = adjoint_matrix(SL2(QQ(1), QQ(1), QQ(0), QQ(1)))
    assert [[int(x.raw) for x in row] for row in got] == [[1, -2, -1], [0, 1, 1], [0, 0, 1]]


def test_right_adjoint_is_transpose_of_inverse_adjoint():
    M = SL2(QQ(2), QQ(3), QQ(1), QQ(2))
    A = adjoint_matrix(M.inverse())
    R = right_adjoint(M)
    assert all(R[i][j] == A[j][i] for i in range(3) for j in range(3))


def test_right_adjoint_is_multiplicative():
    M = SL2(QQ(2), QQ(3), QQ(1), QQ(2))
    N = SL2(QQ(1), QQ(0), QQ(4), QQ(1))
    assert mat_mul(right_adjoint(M), right_adjoint(N)) == right_adjoint(M * N)


def test_determinant_is_checked():
    with pytest.raises(RepresentationError, match="determinant"):
        rep_from_assignment(fig8(), [[[QQ(2), QQ(0)], [QQ(0), QQ(1)]], [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]])


def test_relators_are_checked():
    with pytest.raises(RepresentationError, match="relator"):
        rep_from_assignment(fig8(), [[[QQ(1), QQ(1)], [QQ(0), QQ(1)]], [[QQ(1), QQ(0)], [QQ(1), QQ(1)]]])


def test_fig8_series_traces():
    rep, q = fig8_series()
    assert rep.generator(1).trace() == q["x"]
    assert (rep.generator(1) * rep.generator(2)).trace() == q["y"]


def test_longitudes_commute_with_meridians():
    for rep, _ in (fig8_series(), fig8_near_root(), fig8_holonomy(), fig8_z53(), k52_z17()):
        P = rep.presentation
        assert commutes(rep, P.longitude, P.meridian)


def test_eigenvalue_logderiv_near_root():
    """M'/M = x'/sqrt(x^2 - 4) = 1/r, known modulo s^(N-1)."""
    N = 8
    rep, q = fig8_near_root(N)
    got = eigenvalue_logderiv(rep, rep.presentation.meridian)
    want = 1 / q["r"]
    assert (got - want).valuation() >= N - 1


def test_eigenvalue_logderiv_needs_series():
    rep, _ = fig8_holonomy()
    with pytest.raises(CapabilityError):
        eigenvalue_logderiv(rep, (1,))


def test_residual_fig8_z53():
    rep, _ = fig8_z53()
    F = PrimeField(53)
    red = residual_rep(rep, F)
    assert [[int(x.raw) for x in row] for row in red.generator(1).rows()] == [[19, 1], [0, 14]]
    assert [[int(x.raw) for x in row] for row in red.generator(2).rows()] == [[19, 0], [44, 14]]
    assert absolutely_irreducible(red)


def test_residual_k52_z17():
    rep, _ = k52_z17()
    F = PrimeField(17)
    red = residual_rep(rep, F)
    assert [[int(x.raw) for x in row] for row in red.generator(1).rows()] == [[1, 1], [0, 1]]
    assert [[int(x.raw) for x in row] for row in red.generator(2).rows()] == [[1, 0], [2, 1]]
    assert absolutely_irreducible(red)


def test_reducible_representation_detected():
    F = PrimeField(53)
    g = [[F(2), F(1)], [F(0), F(27)]]
    rep = rep_from_assignment(fig8(), [g, g])
    assert not absolutely_irreducible(rep)
    assert commutator_trace(rep) == F(2)


def test_common_eigenline_over_quadratic_extension():
    """t^2 + 1 has no root mod 7; equal images still share eigenlines over F_49."""
    F = PrimeField(7)
    A = [[F(0), F(-1)], [F(1), F(0)]]
    rep = rep_from_assignment(fig8(), [A, A])
    assert not absolutely_irreducible(rep)
