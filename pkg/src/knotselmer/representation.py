"""SL2 representations of finitely presented groups and their adjoint action.

Conventions (fixed throughout the package):

* sl2 has the ordered basis v1 = [[0,1],[0,0]], v2 = [[1,0],[0,-1]],
  v3 = [[0,0],[1,0]]; X has coordinates (X[0][1], X[0][0], X[1][0]).
* `adjoint_matrix(M)` is Ad(M): X -> M X M^-1 acting on coordinate
  columns.
* Chain complexes use row vectors with the right action X.g = g^-1 X g,
  whose matrix is `right_adjoint(M)` = transpose of Ad(M^-1). It is
  multiplicative: R(MN) = R(M) R(N).
"""

from dataclasses import dataclass, field

from .errors import CapabilityError, RepresentationError
from .linalg import column_kernel_rank_one, identity, mat_sub
from .rings import Elem, PowerSeriesRing, PrimeField, reduce_mod, sqrt_hensel
from .rings.extension import finite_field_square_extension
from .words import format_word, reduce_word


class SL2:
    """A 2x2 matrix [[a, b], [c, d]] over a ring (determinant not enforced here)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls, R):
        return cls(R.one_elem, R.zero_elem, R.zero_elem, R.one_elem)

    @property
    def ring(self):
        return self.a.ring

    def __mul__(self, o):
        return SL2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                   self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        """Inverse of a determinant-one matrix."""
        return SL2(self.d, -self.b, -self.c, self.a)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def map(self, f):
        return SL2(f(self.a), f(self.b), f(self.c), f(self.d))

    def __eq__(self, o):
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def is_scalar(self):
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def adjoint_matrix(M):
    """Ad(M) in the basis (v1, v2, v3), column convention."""
    a, b, c, d = M.a, M.b, M.c, M.d
    return [[a * a, -2 * a * b, -(b * b)],
            [-(a * c), a * d + b * c, b * d],
            [-(c * c), 2 * c * d, d * d]]


def right_adjoint(M):
    """Matrix of X -> M^-1 X M on coordinate rows; equals Ad(M^-1) transposed."""
    a, b, c, d = M.a, M.b, M.c, M.d
    return [[d * d, c * d, -(c * c)],
            [2 * b * d, a * d + b * c, -2 * a * c],
            [-(b * b), -(a * b), a * a]]


@dataclass
class Representation:
    """Images of the generators of a presentation in SL2 over one ring."""

    presentation: object
    images: list
    ring: object
    _cache: dict = field(default_factory=dict, repr=False)

    def evaluate_word(self, w):
        w = reduce_word(w)
        cache = self._cache
        if w in cache:
            return cache[w]
        if not w:
            M = SL2.identity(self.ring)
        else:
            prev = self.evaluate_word(w[:-1])
            x = w[-1]
            g = self.images[abs(x) - 1]
            M = prev * (g if x > 0 else g.inverse())
        cache[w] = M
        return M

    def generator(self, i):
        return self.images[i - 1]

    def adjoint_of_group_ring(self, e):
        """Sum of a_w Ad(rho(w)) for e = sum a_w w (column convention)."""
        return _group_ring_sum(self, e, adjoint_matrix)

    def right_adjoint_of_group_ring(self, e):
        """Sum of a_w R(rho(w)) with R the right action on rows."""
        return _group_ring_sum(self, e, right_adjoint)

    def map_entries(self, f, ring):
        return Representation(self.presentation, [M.map(f) for M in self.images], ring)

    def describe(self):
        names = self.presentation.generators
        return "; ".join(f"{n} -> {M}" for n, M in zip(names, self.images))


def _group_ring_sum(rep, e, action):
    R = rep.ring
    acc = [[R.zero_elem] * 3 for _ in range(3)]
    for w, coeff in e.items():
        A = action(rep.evaluate_word(w))
        for i in range(3):
            for j in range(3):
                if not A[i][j].is_zero():
                    acc[i][j] = acc[i][j] + A[i][j] * coeff
    return acc


def rep_from_assignment(presentation, images, ring=None, check=True):
    """Build a representation, verifying determinant one and every relator.

    Entries may be ring elements or plain numbers; `ring` is inferred from
    the first ring element when not given.
    """
    if len(images) != presentation.n:
        raise RepresentationError(f"expected {presentation.n} matrices, got {len(images)}")
    mats = [M if isinstance(M, SL2) else SL2.from_rows(M) for M in images]
    R = ring
    if R is None:
        entries = [x for M in mats for x in (M.a, M.b, M.c, M.d) if isinstance(x, Elem)]
        if not entries:
            raise RepresentationError("cannot infer the coefficient ring")
        R = entries[0].ring
    mats = [M.map(lambda x: R(x)) for M in mats]
    rep = Representation(presentation, mats, R)
    if check:
        for i, M in enumerate(mats, 1):
            if M.det() != R.one_elem:
                raise RepresentationError(f"image of {presentation.generators[i - 1]} has determinant {M.det()}, not 1")
        one = SL2.identity(R)
        for k, r in enumerate(presentation.relators, 1):
            if rep.evaluate_word(r) != one:
                raise RepresentationError(f"relator {k} ({format_word(r, presentation.generators)}) is not satisfied")
    return rep


def conjugate_rep(rep, U):
    """The representation g -> U^-1 rho(g) U."""
    Ui = U.inverse()
    return Representation(rep.presentation, [Ui * M * U for M in rep.images], rep.ring)


def kernel_generator(rep, gamma):
    """Primitive generator of ker(Ad(rho(gamma)) - 1), or None if its rank is not one."""
    M = rep.evaluate_word(gamma)
    d1 = mat_sub(adjoint_matrix(M), identity(rep.ring, 3))
    return column_kernel_rank_one(d1)


def commutes(rep, u, v):
    A, B = rep.evaluate_word(u), rep.evaluate_word(v)
    return A * B == B * A


def eigenvalue(rep, word, witness=None):
    """An eigenvalue of rho(word): the diagonal entry for triangular images,
    otherwise (tr + sqrt(tr^2 - 4))/2 with the square root pinned by `witness`."""
    M = rep.evaluate_word(word)
    if M.c.is_zero() or M.b.is_zero():
        return M.a
    if witness is None:
        raise CapabilityError("non-triangular image: an eigenvalue witness is required")
    tr = M.trace()
    return (tr + sqrt_hensel(tr * tr - 4, witness)) / 2


def eigenvalue_logderiv(rep, word, witness=None):
    """M'/M for the eigenvalue M(s) of rho(word) over a power series ring.

    The derivative of a series known modulo s^N is known modulo s^(N-1).
    """
    R = rep.ring
    if not isinstance(R, PowerSeriesRing):
        raise CapabilityError("log-derivative needs a power series ring")
    m = eigenvalue(rep, word, witness)
    dm = Elem(R, R.derivative(m.raw))
    return dm / m


def trace_pairing(X, Y):
    """tr(XY) for X, Y in sl2 given by coordinates (v1, v2, v3)."""
    # [[x2, x1], [x3, -x2]] * [[y2, y1], [y3, -y2]]
    return 2 * X[1] * Y[1] + X[0] * Y[2] + X[2] * Y[0]


def residual_rep(rep, target, images=None):
    """Reduce every entry into `target` (a residue field or lower layer)."""
    def red(x):
        return reduce_mod(x, target, images)
    mats = [M.map(red) for M in rep.images]
    return Representation(rep.presentation, mats, target)


def absolutely_irreducible(rep):
    """True if the images have no common eigenvector over an algebraic closure.

    Works over a prime field F_p: 2x2 eigenvalues lie in F_{p^2}, so a
    common eigenline exists over the closure iff it exists over F_{p^2}.
    """
    R = rep.ring
    if not isinstance(R, PrimeField):
        raise CapabilityError("absolute irreducibility is implemented over prime fields")
    mats = [M for M in rep.images if not M.is_scalar()]
    if not mats:
        return False
    E = finite_field_square_extension(R.p)

    def lift(M):
        return M.map(lambda x: E(x))

    A = lift(mats[0])
    others = [lift(M) for M in mats[1:]]
    for v in _eigenvectors(A, E):
        if all(_is_eigenvector(B, v) for B in others):
            return False
    return True


def _eigenvectors(A, E):
    tr, one = A.trace(), E.one_elem
    disc = tr * tr - 4 * A.det()
    out = []
    for root in _sqrt_all(disc, E):
        lam = (tr + root) / 2 if E.base.p != 2 else None
        if lam is None:
            continue
        # (A - lam) v = 0
        a, b, c, d = A.a - lam, A.b, A.c, A.d - lam
        if not (a.is_zero() and b.is_zero()):
            out.append((b, -a))
        else:
            out.append((d, -c) if not (c.is_zero() and d.is_zero()) else (one, E.zero_elem))
    return out


def _sqrt_all(x, E):
    F = E.base
    p = F.p
    if x.is_zero():
        return [x]
    roots = []
    # candidates a + b z with (a + b z)^2 = x; search over the smaller coordinate space
    for a in range(p):
        for b in range(p):
            r = E.elem((a, b))
            if r * r == x:
                roots.append(r)
        if len(roots) == 2:
            break
    return roots


def _is_eigenvector(B, v):
    x, y = v
    bx = B.a * x + B.b * y
    by = B.c * x + B.d * y
    return (bx * y - by * x).is_zero()


def commutator_trace(rep, i=1, j=2):
    """tr rho([g_i, g_j]); equal to 2 exactly when the pair is reducible over the closure."""
    A, B = rep.generator(i), rep.generator(j)
    return (A * B * A.inverse() * B.inverse()).trace()


def fox_row(rep, gamma, v0):
    """Image of the cycle v0 (x) gamma in C_1 = V^n: blocks v0 . R(d gamma / d g_j)."""
    from .words import fox_derivative
    R = rep.ring
    row = []
    for j in range(1, rep.presentation.n + 1):
        e = fox_derivative(gamma, j)
        if e.is_zero():
            row.extend([R.zero_elem] * 3)
            continue
        A = rep.right_adjoint_of_group_ring(e)
        row.extend(sum((v0[k] * A[k][c] for k in range(3)), R.zero_elem) for c in range(3))
    return row
