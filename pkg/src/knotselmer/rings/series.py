"""Truncated power series B[[s]]/(s^N) and their Weierstrass theory over Z_p."""

from dataclasses import dataclass

from ..errors import CapabilityError, InexactDivisionError, NotInvertibleError
from . import poly
from .base import Elem, Ring
from .extension import format_poly
from .numbers import PAdicIntegers


@dataclass(frozen=True)
class SeriesDescriptor:
    base: object
    var: str
    precision: int

    def build(self):
        return PowerSeriesRing(self.base.build(), self.var, self.precision)

    def __str__(self):
        return f"{self.base}[[{self.var}]]/({self.var}^{self.precision})"


class PowerSeriesRing(Ring):
    """B[[s]] truncated at s^N; payloads are N-tuples over B.

    All arithmetic is exact modulo s^N. Dividing by s^k loses the top k
    coefficients, which are filled with zeros.
    """

    def __init__(self, base, var="s", precision=8):
        if precision < 1:
            raise ValueError("precision must be positive")
        self.base = base
        self.var = var
        self.precision = int(precision)
        self.padic = isinstance(base, PAdicIntegers)
        self.is_dvr = base.is_field
        self.is_euclidean = base.is_field
        self.has_gcd = base.is_field or self.padic
        self.zero = (base.zero,) * self.precision
        self.one = (base.one,) + self.zero[1:]

    @property
    def descriptor(self):
        return SeriesDescriptor(self.base.descriptor, self.var, self.precision)

    def name(self):
        return f"{self.base.name()}[[{self.var}]]"

    def with_precision(self, n):
        return PowerSeriesRing(self.base, self.var, n)

    @property
    def gen(self):
        if self.precision == 1:
            return Elem(self, self.zero)
        B = self.base
        return Elem(self, (B.zero, B.one) + (B.zero,) * (self.precision - 2))

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        z = B.zero
        N = self.precision
        bnz = [(j, y) for j, y in enumerate(b) if y != z]
        if not bnz:
            return self.zero
        out = [z] * N
        for i, x in enumerate(a):
            if x == z:
                continue
            lim = N - i
            for j, y in bnz:
                if j >= lim:
                    break
                out[i + j] = B.add(out[i + j], B.mul(x, y))
        return tuple(out)

    def from_int(self, n):
        return (self.base.from_int(n),) + self.zero[1:]

    def from_rational(self, q):
        return (self.base.from_rational(q),) + self.zero[1:]

    def from_base(self, a):
        return (a,) + self.zero[1:]

    def scale_int(self, a, n):
        B = self.base
        c = B.from_int(n)
        return tuple(B.mul(x, c) for x in a)

    def scale_base(self, a, c):
        B = self.base
        return tuple(B.mul(x, c) for x in a)

    def shift(self, a, k):
        """Multiply by s^k; negative k divides (zero-filling the top)."""
        z = self.base.zero
        N = self.precision
        if k >= 0:
            return ((z,) * k + tuple(a))[:N]
        k = -k
        if any(x != z for x in a[:k]):
            raise InexactDivisionError(f"not divisible by {self.var}^{k}")
        return tuple(a[k:]) + (z,) * min(k, N)

    def valuation(self, a):
        z = self.base.zero
        for i, x in enumerate(a):
            if x != z:
                return i
        return self.precision

    def is_unit(self, a):
        return self.base.is_unit(a[0])

    def inv(self, a):
        B = self.base
        if not B.is_unit(a[0]):
            raise NotInvertibleError(f"{self.format(a)} is not a unit")
        z = B.zero
        b0 = B.inv(a[0])
        nb0 = B.neg(b0)
        out = [b0]
        anz = [(j, x) for j, x in enumerate(a) if j > 0 and x != z]
        for k in range(1, self.precision):
            acc = z
            for j, x in anz:
                if j > k:
                    break
                y = out[k - j]
                if y != z:
                    acc = B.add(acc, B.mul(x, y))
            out.append(B.mul(nb0, acc) if acc != z else z)
        return tuple(out)

    def exact_div(self, a, b):
        if self.base.is_unit(b[0]):
            return self.mul(a, self.inv(b))
        if b == self.zero:
            raise NotInvertibleError("division by zero series")
        if self.base.is_field:
            v = self.valuation(b)
            if self.valuation(a) < v:
                raise InexactDivisionError(f"not divisible by {self.var}^{v}")
            return self.mul(self.shift(a, -v), self.inv(self.shift(b, -v)))
        if self.padic:
            return self._padic_exact_div(a, b)
        raise CapabilityError(f"division by a non-unit in {self.name()}")

    def derivative(self, a):
        B = self.base
        return tuple(B.scale_int(a[i], i) for i in range(1, self.precision)) + (B.zero,)

    def truncate(self, a, n):
        """Reduce a payload to precision n (n <= N) or zero-extend (n > N)."""
        if n <= self.precision:
            return tuple(a[:n])
        return tuple(a) + (self.base.zero,) * (n - self.precision)

    def coefficients(self, a):
        return list(a)

    # -- normal forms ------------------------------------------------------

    def canonical(self, a):
        if a == self.zero:
            return self.one, self.zero
        if self.base.is_field:
            v = self.valuation(a)
            return self.shift(a, -v), self.shift(self.one, v)
        if self.padic:
            k, unit, P = self.weierstrass(a)
            normal = self.scale_base(self._poly_to_series(P), self.base.from_int(self.base.p ** k))
            return unit, normal
        raise CapabilityError(f"{self.name()} has no canonical associates")

    def gcd(self, a, b):
        if a == self.zero:
            return self.canonical(b)[1]
        if b == self.zero:
            return self.canonical(a)[1]
        if self.base.is_field:
            return self.shift(self.one, min(self.valuation(a), self.valuation(b)))
        if self.padic:
            ka, _, Pa = self.weierstrass(a)
            kb, _, Pb = self.weierstrass(b)
            P = self._distinguished_gcd(Pa, Pb)
            c = self.base.from_int(self.base.p ** min(ka, kb))
            return self.scale_base(self._poly_to_series(P), c)
        raise CapabilityError(f"{self.name()} does not support gcd")

    def uniformizer_power(self, v):
        return self.shift(self.one, v)

    def euclid_size(self, a):
        return self.valuation(a)

    def divmod(self, a, b):
        if self.valuation(a) >= self.valuation(b):
            return self.exact_div(a, b), self.zero
        return self.zero, a

    # -- Weierstrass theory over Z_p ----------------------------------------

    def content_valuation(self, a):
        B = self.base
        return min(B.valuation(x) for x in a)

    def weierstrass(self, a):
        """Return (k, unit, P) with a = p^k * unit * P and P distinguished.

        P is a monic polynomial (low degree first) whose non-leading
        coefficients lie in pZ_p. When deg P = d > 0 the unit is only
        determined modulo s^(N-d).
        """
        B = self.base
        if a == self.zero:
            raise ValueError("zero has no Weierstrass decomposition")
        k = self.content_valuation(a)
        if k >= B.precision:
            raise ValueError("zero has no Weierstrass decomposition")
        pk = B.from_int(B.p ** k)
        g = tuple(B.exact_div(x, pk) for x in a)
        d = next(i for i, x in enumerate(g) if B.is_unit(x))
        if d == 0:
            return k, g, [B.one]
        q, r = self.weierstrass_divide(self.shift(self.one, d), g, d)
        r = r + [B.zero] * (d - len(r))
        P = poly.neg(B, r) + [B.one]
        return k, self.inv(q), P

    def weierstrass_divide(self, h, g, d):
        """Divide h by g (g of Weierstrass degree d): h = q*g + r, deg r < d."""
        B = self.base
        N = self.precision
        if d >= N:
            raise CapabilityError("Weierstrass degree exceeds series precision")
        low = tuple(g[:d]) + (B.zero,) * (N - d)
        high_inv = self.inv(tuple(g[d:]) + (B.zero,) * d)
        q = self.zero
        top = tuple(h[d:]) + (B.zero,) * d
        for _ in range(B.precision + 2):
            corr = self.mul(q, low)
            corr = tuple(corr[d:]) + (B.zero,) * d
            nq = self.mul(self.sub(top, corr), high_inv)
            if nq == q:
                break
            q = nq
        prod = self.mul(q, g)
        r = poly.trim(B, [B.sub(h[i], prod[i]) for i in range(d)])
        return q, r

    def _poly_to_series(self, P):
        z = self.base.zero
        if len(P) > self.precision:
            raise CapabilityError("polynomial degree exceeds series precision")
        return tuple(P) + (z,) * (self.precision - len(P))

    def _distinguished_gcd(self, f, g):
        B = self.base
        if len(f) < len(g):
            f, g = g, f
        while len(g) > 1:
            _, r = poly.divmod_exact_lc(B, f, g)
            if not r:
                return g
            k, _, P = self.weierstrass(self._poly_to_series(r))
            f, g = g, P
        return [B.one]

    def _padic_exact_div(self, a, b):
        B = self.base
        if a == self.zero:
            return self.zero
        kb, ub, Pb = self.weierstrass(b)
        ka, _, _ = self.weierstrass(a)
        if ka < kb:
            raise InexactDivisionError("quotient has negative p-adic valuation")
        d = len(Pb) - 1
        x = a
        if d:
            Ps = self._poly_to_series(Pb)
            q, r = self.weierstrass_divide(a, Ps, d)
            if r:
                raise InexactDivisionError("series division leaves a remainder")
            x = q
        pk = B.from_int(B.p ** kb)
        x = tuple(B.exact_div(c, pk) for c in x)
        return self.mul(x, self.inv(ub))

    # -- residue field -----------------------------------------------------

    def residue_field(self):
        return self.base.residue_field()

    def residue(self, a):
        return self.base.residue(a[0])

    def lift_residue(self, c):
        return self.from_base(self.base.lift_residue(c))

    # -- formatting --------------------------------------------------------

    def format(self, a):
        B = self.base
        terms = [(B.format(c), e) for e, c in enumerate(a) if c != B.zero]
        if not terms:
            return f"O({self.var}^{self.precision})"
        return f"{format_poly(terms, self.var)} + O({self.var}^{self.precision})"

    def format_bare(self, a):
        B = self.base
        terms = [(B.format(c), e) for e, c in enumerate(a) if c != B.zero]
        return format_poly(terms, self.var) if terms else "0"

    def to_data(self, a):
        return [self.base.to_data(c) for c in a]

    def from_data(self, d):
        if not isinstance(d, list):
            return self.from_base(self.base.from_data(d))
        vals = [self.base.from_data(c) for c in d[:self.precision]]
        return tuple(vals) + (self.base.zero,) * (self.precision - len(vals))
