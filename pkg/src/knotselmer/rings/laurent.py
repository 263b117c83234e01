"""Laurent polynomials B[t, t^-1] as the outermost ring layer."""

from dataclasses import dataclass

from ..errors import CapabilityError, InexactDivisionError, NotInvertibleError
from . import poly
from .base import Elem, Ring
from .extension import format_poly


@dataclass(frozen=True)
class LaurentDescriptor:
    base: object
    var: str

    def build(self):
        return LaurentPolynomialRing(self.base.build(), self.var)

    def __str__(self):
        return f"{self.base}[{self.var}, {self.var}^-1]"


class LaurentPolynomialRing(Ring):
    """Payloads are (k, coeffs): t^k * (c_0 + c_1 t + ...), c_0 and the top coefficient nonzero.

    gcd uses contents plus a primitive Euclidean remainder sequence, so it
    needs gcd and exact division in the base. Over a truncated base the
    result is exact whenever the sequence only divides by unit leading
    coefficients; otherwise pseudo-remainders are used and precision may
    be lost.
    """

    def __init__(self, base, var="t"):
        if isinstance(base, LaurentPolynomialRing):
            raise ValueError("a Laurent layer must be the outermost layer of the tower")
        self.base = base
        self.var = var
        self.has_gcd = base.has_gcd
        self.zero = (0, ())
        self.one = (0, (base.one,))

    @property
    def descriptor(self):
        return LaurentDescriptor(self.base.descriptor, self.var)

    def name(self):
        return f"{self.base.name()}[{self.var}^+-1]"

    @property
    def gen(self):
        return Elem(self, (1, (self.base.one,)))

    def make(self, k, coeffs):
        """Normalize a shift and a coefficient list into a payload."""
        z = self.base.zero
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == z:
            coeffs.pop()
        i = 0
        while i < len(coeffs) and coeffs[i] == z:
            i += 1
        if i == len(coeffs):
            return self.zero
        return (k + i, tuple(coeffs[i:]))

    def monomial(self, c, k):
        return self.make(k, [c])

    def terms(self, a):
        """(degree, coefficient) pairs in ascending degree, zeros skipped."""
        k, cs = a
        z = self.base.zero
        return [(k + i, c) for i, c in enumerate(cs) if c != z]

    def degree_range(self, a):
        k, cs = a
        return (k, k + len(cs) - 1) if cs else None

    def _aligned(self, a, b):
        ka, ca = a
        kb, cb = b
        k = min(ka, kb)
        z = self.base.zero
        fa = [z] * (ka - k) + list(ca)
        fb = [z] * (kb - k) + list(cb)
        return k, fa, fb

    def add(self, a, b):
        if not a[1]:
            return b
        if not b[1]:
            return a
        k, fa, fb = self._aligned(a, b)
        return self.make(k, poly.add(self.base, fa, fb))

    def sub(self, a, b):
        if not b[1]:
            return a
        if not a[1]:
            return self.neg(b)
        k, fa, fb = self._aligned(a, b)
        return self.make(k, poly.sub(self.base, fa, fb))

    def neg(self, a):
        return (a[0], tuple(self.base.neg(c) for c in a[1]))

    def mul(self, a, b):
        if not a[1] or not b[1]:
            return self.zero
        return self.make(a[0] + b[0], poly.mul(self.base, a[1], b[1]))

    def from_int(self, n):
        return self.make(0, [self.base.from_int(n)])

    def from_rational(self, q):
        return self.make(0, [self.base.from_rational(q)])

    def from_base(self, a):
        return self.make(0, [a])

    def scale_int(self, a, n):
        c = self.base.from_int(n)
        return self.make(a[0], [self.base.mul(x, c) for x in a[1]])

    def scale_base(self, a, c):
        return self.make(a[0], [self.base.mul(x, c) for x in a[1]])

    def is_unit(self, a):
        return len(a[1]) == 1 and self.base.is_unit(a[1][0])

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertibleError(f"{self.format(a)} is not a unit")
        return (-a[0], (self.base.inv(a[1][0]),))

    def exact_div(self, a, b):
        if not b[1]:
            raise NotInvertibleError("division by zero")
        if not a[1]:
            return self.zero
        q, r = poly.divmod_exact_lc(self.base, list(a[1]), list(b[1]))
        if r:
            raise InexactDivisionError("Laurent division leaves a remainder")
        return self.make(a[0] - b[0], q)

    def canonical(self, a):
        """Normal form: lowest term t^0, top coefficient canonical in the base."""
        if not a[1]:
            return self.one, self.zero
        B = self.base
        u, _ = B.canonical(a[1][-1])
        u_inv = B.inv(u)
        normal = self.make(0, [B.mul(c, u_inv) for c in a[1]])
        return (a[0], (u,)), normal

    def gcd(self, a, b):
        if not a[1]:
            return self.canonical(b)[1]
        if not b[1]:
            return self.canonical(a)[1]
        B = self.base
        f, g = list(a[1]), list(b[1])
        cf, cg = poly.content(B, f), poly.content(B, g)
        c = B.gcd(cf, cg)
        f = _divide_content(B, f, cf)
        g = _divide_content(B, g, cg)
        if len(f) < len(g):
            f, g = g, f
        while len(g) > 1:
            if B.is_unit(g[-1]):
                _, r = poly.divmod_exact_lc(B, f, g)
            else:
                r = poly.pseudo_rem(B, f, g)
            f, g = g, poly.primitive_part(B, r) if r else r
            if not g:
                break
        if g and len(g) == 1:
            f = [B.one]
        result = self.make(0, [B.mul(c, x) for x in f])
        return self.canonical(result)[1]

    def gcd_many(self, elems):
        """gcd of several elements.

        Over a local base whose maximal ideal is nilpotent at working
        precision (Z_p[[s]], K[[s]]), first try the residue gcd plus a
        Hensel lift of one coprime factorization, which avoids dividing by
        non-unit contents; the lift is checked to divide every input.
        Otherwise fold the pairwise gcd.
        """
        elems = [a for a in elems if a[1]]
        if not elems:
            return self.zero
        if not self.base.is_field:
            g = self._hensel_gcd(elems)
            if g is not None:
                return g
        g = self.zero
        for a in elems:
            g = self.gcd(g, a) if g != self.zero else self.canonical(a)[1]
            if self.is_unit(g):
                return self.one
        return g

    def _hensel_gcd(self, elems):
        B = self.base
        try:
            F = B.residue_field()
        except CapabilityError:
            return None
        fs = [list(a[1]) for a in elems]
        gb = []
        for f in fs:
            fb = poly.trim(F, [B.residue(c) for c in f])
            if fb:
                gb = poly.field_monic(F, fb) if not gb else poly.field_gcd(F, gb, fb)
        if not gb:
            return None
        cands = [f for f in fs if B.is_unit(f[-1])]
        if not cands:
            return None
        bound = 2 * (getattr(B, "precision", 0) + getattr(B.base, "precision", 0)) + 8
        for f in cands:
            fm = [B.mul(B.inv(f[-1]), c) for c in f]
            fb = poly.trim(F, [B.residue(c) for c in fm])
            hb, rb = poly.divmod_exact_lc(F, fb, gb)
            if rb or len(poly.field_xgcd(F, gb, hb)[0]) != 1:
                continue
            g0 = [B.lift_residue(c) for c in gb]
            h0 = [B.lift_residue(c) for c in hb]
            lifted = poly.hensel_factor(B, fm, g0, h0, bound)
            if lifted is None:
                continue
            g = lifted[0]
            if all(not poly.divmod_exact_lc(B, h, g)[1] for h in fs):
                return self.canonical(self.make(0, g))[1]
            return None
        return None

    def evaluate(self, a, x):
        """Substitute a base-ring unit (or any value when all degrees are >= 0) for t."""
        B = self.base
        k, cs = a
        if not cs:
            return B.zero
        v = poly.evaluate(B, list(cs), x)
        return B.mul(v, B.pow(x, k)) if k else v

    def format(self, a):
        B = self.base
        if not a[1]:
            return "0"
        terms = [(B.format_bare(c), e) for e, c in self.terms(a)]
        neg = [(c, e) for c, e in terms if e < 0]
        if not neg:
            return format_poly(terms, self.var)
        parts = []
        for c, e in terms:
            parts.append(format_poly([(c, 0)], self.var) if e == 0 else
                         format_poly([(c, 1)], f"{self.var}^{e}" if e != 1 else self.var))
        return " + ".join(parts)

    def to_data(self, a):
        return {"shift": a[0], "coefficients": [self.base.to_data(c) for c in a[1]]}

    def from_data(self, d):
        if not isinstance(d, dict):
            return self.from_base(self.base.from_data(d))
        return self.make(int(d["shift"]), [self.base.from_data(c) for c in d["coefficients"]])


def _divide_content(B, f, c):
    if c == B.one:
        return f
    if B.is_unit(c):
        ci = B.inv(c)
        return [B.mul(ci, x) for x in f]
    return [B.exact_div(x, c) for x in f]
