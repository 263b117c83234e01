"""The presentation matrix D of the homological Selmer module and its invariants.

With V = sl2 over the coefficient ring A and rows acted on from the right,
the complex V^(n-1) -> V^n -> V has maps given by the Fox derivatives of
the relators (`partial2`) and by R(g_j) - 1 (`partial1`). For a peripheral
element gamma with ker(Ad rho(gamma) - 1) = A v0, the matrix D stacks
partial2 on top of the cycle row of v0 (x) gamma, padded to a square
3n x 3n matrix. Its cokernel is Sel (+) V, so the Fitting ideals of Sel
come from the (3n - 3 - d)-minors of D.
"""

from dataclasses import dataclass, field

from .errors import AssumptionError, CapabilityError, InexactDivisionError
from .linalg import (block_matrix, column_kernel_rank_one, identity, mat_sub,
                     minors_raw, smith_diagonal, to_raw, unit_minor_exists)
from .representation import adjoint_matrix, commutes, fox_row, right_adjoint
from .rings.base import Elem
from .words import fox_derivative, format_word, reduce_word

GAMMA_MODES = ("meridian", "longitude", "longitude_porti", "word")


@dataclass
class GammaSpec:
    """Which peripheral element to use and, for the scaled longitude, the two scalars."""

    mode: str = "meridian"
    word: tuple = None
    T_mu: object = None
    T_lambda: object = None

    def __post_init__(self):
        if self.mode not in GAMMA_MODES:
            raise ValueError(f"unknown gamma mode {self.mode!r}")
        if self.mode == "longitude_porti" and (self.T_mu is None or self.T_lambda is None):
            raise ValueError("longitude_porti needs T_mu and T_lambda")
        if self.mode == "word" and self.word is None:
            raise ValueError("word mode needs a word")

    def resolve(self, presentation):
        """The word whose centralizer data defines v0 and the cycle."""
        if self.mode == "word":
            return tuple(self.word)
        if self.mode == "longitude":
            if presentation.longitude is None:
                raise AssumptionError("the presentation has no longitude word")
            return presentation.longitude
        return presentation.meridian


def build_d1(rep, gamma):
    """Ad(rho(gamma)) - 1 on coordinate columns."""
    if not reduce_word(gamma):
        raise AssumptionError("gamma must be a nonempty reduced word")
    return mat_sub(adjoint_matrix(rep.evaluate_word(gamma)), identity(rep.ring, 3))


def build_partial1(rep):
    """3n x 3 matrix whose j-th 3 x 3 block is R(g_j) - 1."""
    I = identity(rep.ring, 3)
    rows = []
    for M in rep.images:
        rows.extend(mat_sub(right_adjoint(M), I))
    return rows


def build_partial2(rep):
    """3(n-1) x 3n matrix; block (i, j) is the right action of d r_i / d g_j."""
    P = rep.presentation
    blocks = []
    for r in P.relators:
        blocks.append([rep.right_adjoint_of_group_ring(fox_derivative(r, j)) for j in range(1, P.n + 1)])
    return block_matrix(blocks)


def check_a1(rep, gamma):
    """(v0, ok): ok when ker(Ad rho(gamma) - 1) is free of rank one, with generator v0."""
    v0 = column_kernel_rank_one(build_d1(rep, gamma))
    return v0, v0 is not None


def check_a2(rep):
    """True when partial1 is onto V, False when it is not, None if undecidable.

    Over a local ring or a PID surjectivity is equivalent to the 3-minors
    generating the unit ideal.
    """
    d1 = build_partial1(rep)
    R = rep.ring
    if unit_minor_exists(d1, 3):
        return True
    if R.is_field or R.is_dvr or getattr(R, "padic", False):
        return False
    if R.is_euclidean:
        from .linalg import minors_gcd
        return minors_gcd(d1, 3).is_unit()
    return None


def build_D(rep, gamma, v0, scale=None):
    """Stack partial2 over the cycle row of v0 (x) gamma and two zero rows."""
    R = rep.ring
    n = rep.presentation.n
    top = build_partial2(rep)
    if scale is not None:
        v0 = [scale * x for x in v0]
    row = fox_row(rep, gamma, v0)
    zero = [R.zero_elem] * (3 * n)
    return top + [row, list(zero), list(zero)]


def fitting_ideal(D, d, n):
    """Generator of Fitt_d(Sel): gcd of the (3n - 3 - d)-minors of D."""
    from .linalg import minors_gcd
    return minors_gcd(D, 3 * n - 3 - d)


def module_structure(divisors, rank_of_V=3):
    """Describe Sel from the elementary divisors of D: drop V, keep the rest."""
    free = sum(1 for x in divisors if x.is_zero())
    torsion = [x for x in divisors if not x.is_zero() and not x.is_unit()]
    return free - rank_of_V, torsion


def format_module(free, torsion, ring_symbol="A"):
    parts = []
    if free > 0:
        parts.append(ring_symbol if free == 1 else f"{ring_symbol}^{free}")
    for t in torsion:
        parts.append(f"{ring_symbol}/({t.ring.format_bare(t.raw)})")
    return " ⊕ ".join(parts) if parts else "0"


@dataclass
class SelmerResult:
    gamma_mode: str
    gamma: tuple
    v0: list
    a1: bool
    a2: object
    fitting: dict
    L: object
    divisors: list = None
    free_rank: int = None
    torsion: list = None
    warnings: list = field(default_factory=list)
    minor_lists: dict = field(default_factory=dict)

    @property
    def is_torsion(self):
        return self.L is not None and not self.L.is_zero()

    def module(self, ring_symbol="A"):
        if self.divisors is None:
            # Fitt_0 = A forces Sel = 0 even without a normal form
            if self.L is not None and self.L.is_unit():
                return "0"
            return None
        return format_module(self.free_rank, self.torsion, ring_symbol)


def _split_gcd(R, D, k, special_row):
    """gcd of k-minors through a given row, and gcd of those avoiding it."""
    g_with, g_without = R.zero, R.zero
    for (rows, _), v in minors_raw(R, to_raw(D), k):
        if v == R.zero:
            continue
        if special_row in rows:
            g_with = R.gcd(g_with, v) if g_with != R.zero else R.canonical(v)[1]
        else:
            g_without = R.gcd(g_without, v) if g_without != R.zero else R.canonical(v)[1]
    return g_with, g_without


def selmer(rep, spec=None, degrees=(0, 1)):
    """Compute Fitting ideals and (when possible) the module structure of Sel_gamma."""
    spec = spec or GammaSpec()
    P = rep.presentation
    R = rep.ring
    n = P.n
    warnings = []
    if n > 2:
        warnings.append("n > 2: Fitting ideals use (3n-3-d)-minors of the 3n x 3n matrix D")
    gamma = spec.resolve(P)
    if spec.mode == "longitude_porti":
        if P.longitude is None:
            raise AssumptionError("the scaled longitude needs a longitude word")
        if not commutes(rep, P.longitude, P.meridian):
            raise AssumptionError("rho(longitude) does not commute with rho(meridian)")
    v0, a1 = check_a1(rep, gamma)
    if not a1:
        raise AssumptionError(f"ker(Ad rho({format_word(gamma, P.generators)}) - 1) is not free of rank one")
    a2 = check_a2(rep)
    if a2 is False:
        # Over a PID the image of partial1 is free; if it has rank 3 the
        # cokernel of D still splits as Sel (+) A^3 and D stays valid.
        d1 = build_partial1(rep)
        if not (R.is_euclidean and smith_diagonal(d1)[2].is_zero() is False):
            raise AssumptionError("partial1 is not surjective onto V")
        divs = [str(x) for x in smith_diagonal(d1) if not x.is_unit()]
        warnings.append("partial1 is not onto V (cokernel " + ", ".join(f"A/({x})" for x in divs)
                        + "); its image is free of rank 3, so D still presents Sel (+) A^3")
    if a2 is None:
        warnings.append("surjectivity of partial1 could not be decided over this ring")

    scale = None
    fractional = False
    if spec.mode == "longitude_porti":
        T_mu, T_la = R(spec.T_mu), R(spec.T_lambda)
        try:
            scale = T_la / T_mu
        except InexactDivisionError:
            fractional = True

    D = build_D(rep, gamma, v0, scale)
    bottom = 3 * (n - 1)
    fitting = {}
    minor_lists = {}
    if not fractional:
        for d in degrees:
            fitting[d] = _gcd_or_none(D, 3 * n - 3 - d, warnings, minor_lists, d)
    else:
        for d in degrees:
            fitting[d] = _scaled_fitting(R, D, 3 * n - 3 - d, bottom, T_la, T_mu)
        for d in degrees:
            if fitting[d] is None:
                # Fitt_0 is contained in every Fitt_d
                if fitting.get(0) is not None and fitting[0].is_unit():
                    fitting[d] = R.one_elem
                else:
                    warnings.append(f"Fitt_{d}: the rescaled ideal is fractional (not an ideal of A)")
        warnings.append("scale T_lambda/T_mu is not integral; Fitting ideals computed by rescaling the cycle-row minors")
    L = fitting.get(0)
    result = SelmerResult(spec.mode, gamma, v0, a1, a2, fitting, L, warnings=warnings,
                          minor_lists=minor_lists)
    if not fractional and R.is_euclidean:
        divs = smith_diagonal(D)
        free, tors = module_structure(divs)
        result.divisors, result.free_rank, result.torsion = divs, free, tors
    elif not R.is_euclidean:
        warnings.append(f"{R.name()} is not Euclidean; module structure not computed")
    return result


def _scaled_fitting(R, D, k, row, T_la, T_mu):
    """Fitting generator when the cycle row is scaled by the non-integral T_la/T_mu.

    Minors through the row scale by the ratio, the others do not. Over a
    DVR the gcd is read off from valuations; elsewhere the minors avoiding
    the row must vanish.
    """
    if k <= 0:
        return R.one_elem
    g_with, g_without = _split_gcd(R, D, k, row)
    if g_with == R.zero:
        return Elem(R, g_without) if g_without != R.zero else R.zero_elem
    if R.is_dvr:
        v = R.valuation(g_with) + T_la.valuation() - T_mu.valuation()
        if g_without != R.zero:
            v = min(v, R.valuation(g_without))
        if v < 0:
            return None
        return Elem(R, R.uniformizer_power(v))
    if g_without != R.zero:
        raise CapabilityError("T_lambda/T_mu is not integral and minors avoiding the cycle row are nonzero")
    try:
        return (Elem(R, g_with) * T_la / T_mu).normal()
    except InexactDivisionError:
        return None


def _gcd_or_none(D, k, warnings, minor_lists=None, d=None):
    from .linalg import minors, minors_gcd
    try:
        return minors_gcd(D, k)
    except CapabilityError as exc:
        warnings.append(str(exc))
        if minor_lists is not None:
            # no gcd available: keep the distinct nonzero minors instead
            seen = {}
            for _, _, v in minors(D, k):
                if not v.is_zero():
                    seen.setdefault(v.raw, v)
            minor_lists[d] = list(seen.values())
        return None


def partial_composition_vanishes(rep):
    """partial2 * partial1 == 0 (a consistency check of the chain complex)."""
    from .linalg import mat_mul
    Z = mat_mul(build_partial2(rep), build_partial1(rep))
    return all(x.is_zero() for row in Z for x in row)
