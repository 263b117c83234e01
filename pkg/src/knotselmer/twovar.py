"""Two-variable version: coefficients twisted by the abelianization t^(exponent sum).

The matrix partial2 is rebuilt over A[t, t^-1] with blocks
sum a_w t^deg(w) R(rho(w)). Its maximal minors generate (up to gcd) the
polynomial Phi(t), which is compared with the one-variable longitude
invariant through Phi(t)/(t - 1) at t = 1.
"""

from dataclasses import dataclass, field

from .errors import CapabilityError, InexactDivisionError
from .linalg import block_matrix, det, minors_gcd
from .representation import right_adjoint
from .rings import LaurentPolynomialRing, PAdicIntegers, PowerSeriesRing
from .rings.base import Elem, associates
from .words import abelianization, fox_derivative

HOLDS, FAILS, UNDECIDED = "holds", "fails", "undecided"


def laurent_ring(rep, var="t"):
    return LaurentPolynomialRing(rep.ring, var)


def twisted_block(rep, L, e):
    """sum a_w t^deg(w) R(rho(w)) as a 3x3 matrix over L."""
    R = rep.ring
    acc = [[{} for _ in range(3)] for _ in range(3)]
    for w, coeff in e.items():
        k = abelianization(w)
        A = right_adjoint(rep.evaluate_word(w))
        for i in range(3):
            for j in range(3):
                x = A[i][j]
                if x.is_zero():
                    continue
                cell = acc[i][j]
                v = x * coeff
                cell[k] = cell[k] + v if k in cell else v
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            cell = acc[i][j]
            if not cell:
                row.append(L.zero_elem)
                continue
            lo = min(cell)
            hi = max(cell)
            coeffs = [cell[k].raw if k in cell else R.zero for k in range(lo, hi + 1)]
            row.append(Elem(L, L.make(lo, coeffs)))
        out.append(row)
    return out


def build_partial2_t(rep, var="t"):
    """partial2 over A[t, t^-1]; specializing t = 1 recovers build_partial2."""
    L = laurent_ring(rep, var)
    P = rep.presentation
    blocks = [[twisted_block(rep, L, fox_derivative(r, j)) for j in range(1, P.n + 1)]
              for r in P.relators]
    return block_matrix(blocks)


def specialize(M, value):
    """Substitute t = value (a unit of the base ring) into a Laurent matrix."""
    L = M[0][0].ring
    B = L.base
    v = B.coerce_raw(value)
    return [[Elem(B, L.evaluate(x.raw, v)) for x in row] for row in M]


def phi_polynomial(M, d=0):
    """gcd of the (rows - d)-minors of partial2[t], normalized (lowest degree t^0)."""
    k = len(M) - d
    return minors_gcd(M, k)


def divide_by_t_minus_one(phi):
    """Phi / (t - 1), raising if t - 1 does not divide Phi."""
    L = phi.ring
    t_minus_1 = L.gen - 1
    return phi / t_minus_1


def vanishing_check(rep, gen=1, var="t"):
    """det(t R(rho(g)) - 1) != 0, i.e. multiplication by t g - 1 on V[t^+-1] is injective."""
    L = laurent_ring(rep, var)
    t = L.gen
    A = right_adjoint(rep.generator(gen))
    M = [[t * L(A[i][j]) - (1 if i == j else 0) for j in range(3)] for i in range(3)]
    d = det(M)
    return not d.is_zero(), d


def conjecture_check(phi, L_lambda):
    """Compare Phi(t)/(t - 1) at t = 1 with L_lambda up to units.

    Returns (verdict, detail). The verdict is 'undecided' when one side is
    zero at the working precision, so that equality cannot be certified.
    """
    L = phi.ring
    B = L.base
    if phi.is_zero():
        return UNDECIDED, "Phi vanishes at working precision"
    try:
        q = divide_by_t_minus_one(phi)
    except InexactDivisionError:
        return FAILS, "t - 1 does not divide Phi"
    value = Elem(B, L.evaluate(q.raw, B.one))
    lam = B(L_lambda)
    if value.is_zero() or lam.is_zero():
        if value.is_zero() and lam.is_zero():
            return UNDECIDED, "both sides vanish at working precision"
        return FAILS, f"Phi/(t-1) at t=1 is {value}, L_lambda is {lam}"
    if associates(value, lam):
        return HOLDS, f"Phi/(t-1) at t=1 = {value.normal()} = L_lambda up to a unit"
    return FAILS, f"Phi/(t-1) at t=1 normalizes to {value.normal()}, L_lambda to {lam.normal()}"


@dataclass
class TwoVarResult:
    phi: object
    quotient: object
    at_one: object
    vanishing_ok: bool
    vanishing_det: object
    conjecture: str = None
    conjecture_detail: str = None
    warnings: list = field(default_factory=list)


def two_var_selmer(rep, L_lambda=None, var="t"):
    """Phi(t), its diagnostics and (when L_lambda is given) the comparison verdict."""
    warnings = []
    ok, vdet = vanishing_check(rep, var=var)
    if not ok:
        warnings.append("det(t R(g1) - 1) vanishes; the twisted complex may have torsion in degree one")
    M = build_partial2_t(rep, var)
    try:
        phi = phi_polynomial(M)
    except CapabilityError as exc:
        raise CapabilityError(f"Phi needs gcds over {M[0][0].ring.name()}: {exc}") from None
    if phi.is_zero():
        warnings.append("all maximal minors vanish; Phi = 0")
    quotient = at_one = None
    if not phi.is_zero():
        try:
            quotient = divide_by_t_minus_one(phi)
            B = phi.ring.base
            at_one = Elem(B, phi.ring.evaluate(quotient.raw, B.one))
        except InexactDivisionError:
            warnings.append("t - 1 does not divide Phi")
    res = TwoVarResult(phi, quotient, at_one, ok, vdet, warnings=warnings)
    if L_lambda is not None:
        res.conjecture, res.conjecture_detail = conjecture_check(phi, L_lambda)
    return res


def sample_table(phi, t_values=(-1, 2)):
    """Values of Phi at a few (s, t) points, for inspection.

    s = 0 is always used. Over Z_p[[s]] the point s = p is added; the
    value there is known modulo p^min(N_s, N_p), since the dropped series
    terms contribute multiples of p^N_s.
    """
    L = phi.ring
    B = L.base
    rows = []
    for tv in t_values:
        val = Elem(B, L.evaluate(phi.raw, B(tv).raw))
        if isinstance(B, PowerSeriesRing):
            C = B.base
            rows.append({"s": 0, "t": tv, "value": Elem(C, val.raw[0])})
            if isinstance(C, PAdicIntegers):
                prec = min(B.precision, C.precision)
                mod = C.p ** prec
                acc = 0
                for c in reversed(val.raw):
                    acc = (acc * C.p + c) % mod
                rows.append({"s": C.p, "t": tv, "value": acc, "modulus": f"{C.p}^{prec}"})
        else:
            rows.append({"t": tv, "value": val})
    return rows
