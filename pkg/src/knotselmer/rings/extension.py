"""Simple algebraic extensions B[w]/(m(w)) with m monic."""

from dataclasses import dataclass

from ..errors import CapabilityError, NotInvertibleError
from . import poly
from .base import Elem, Ring


@dataclass(frozen=True)
class ExtensionDescriptor:
    base: object
    minpoly: tuple
    name: str

    def build(self):
        base = self.base.build()
        return SimpleExtension(base, [base.from_data(c) for c in self.minpoly], self.name)

    def __str__(self):
        return f"{self.base}[{self.name}]/({'; '.join(map(str, self.minpoly))})"


def _atomic(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and ch in "+- " and i > 0:
            return False
    return True


def format_poly(terms, var):
    """Join (coefficient string, exponent) pairs into a readable polynomial."""
    parts = []
    for c, e in terms:
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if not mono:
            parts.append(c)
        elif c == "1":
            parts.append(mono)
        elif c == "-1":
            parts.append("-" + mono)
        else:
            parts.append((c if _atomic(c) else f"({c})") + "*" + mono)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class SimpleExtension(Ring):
    """B[w]/(m) for a monic m of degree d; payloads are d-tuples over B.

    Over a field base the minimal polynomial is assumed irreducible; a
    reducible one is detected when an inversion hits a zero divisor.
    """

    def __init__(self, base, minpoly, name="w"):
        coeffs = [base.coerce_raw(c) if isinstance(c, (Elem, int)) else c for c in minpoly]
        coeffs = poly.trim(base, coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != base.one:
            raise ValueError("minimal polynomial must be monic")
        self.base = base
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.var = name
        self.is_field = base.is_field
        self.is_euclidean = base.is_field
        self.has_gcd = base.is_field
        d = self.degree
        self.zero = (base.zero,) * d
        self.one = (base.one,) + (base.zero,) * (d - 1)
        # reduction table: w^k for k = d .. 2d-2 as d-vectors
        table = []
        cur = [base.neg(c) for c in coeffs[:-1]]
        for _ in range(d - 1):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [base.zero] + cur[:-1]
            if top != base.zero:
                cur = [base.add(cur[i], base.mul(top, base.neg(coeffs[i]))) for i in range(d)]
        self._table = table
        self._m0 = base.neg(coeffs[0])
        self._m1 = base.neg(coeffs[1]) if d == 2 else None
        if d == 1:
            raise ValueError("degree-one extensions are not supported; use the base ring")
        if d == 2 and base.is_field and base.has_gcd:
            self._check_quadratic()

    def _check_quadratic(self):
        B = self.base
        if hasattr(B, "p") or B.name() == "QQ":
            b, c = self.minpoly[1], self.minpoly[0]
            disc = B.sub(B.mul(b, b), B.scale_int(c, 4))
            if _is_square(B, disc):
                raise ValueError(f"{self.var}: minimal polynomial is reducible")

    @property
    def descriptor(self):
        return ExtensionDescriptor(self.base.descriptor,
                                   tuple(self.base.to_data(c) for c in self.minpoly), self.var)

    def name(self):
        return f"{self.base.name()}[{self.var}]"

    @property
    def gen(self):
        B = self.base
        return Elem(self, (B.zero, B.one) + (B.zero,) * (self.degree - 2))

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
        if self.degree == 2:
            a0, a1 = a
            b0, b1 = b
            if a1 == z:
                if b1 == z:
                    return (B.mul(a0, b0), z)
                return (B.mul(a0, b0), B.mul(a0, b1))
            if b1 == z:
                return (B.mul(a0, b0), B.mul(a1, b0))
            c0 = B.mul(a0, b0)
            c2 = B.mul(a1, b1)
            c1 = B.sub(B.sub(B.mul(B.add(a0, a1), B.add(b0, b1)), c0), c2)
            r0 = B.add(c0, B.mul(self._m0, c2))
            if self._m1 != z:
                c1 = B.add(c1, B.mul(self._m1, c2))
            return (r0, c1)
        d = self.degree
        prod = [z] * (2 * d - 1)
        bnz = [(j, y) for j, y in enumerate(b) if y != z]
        if not bnz:
            return self.zero
        for i, x in enumerate(a):
            if x == z:
                continue
            for j, y in bnz:
                prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c == z:
                continue
            row = self._table[k - d]
            for i in range(d):
                if row[i] != z:
                    out[i] = B.add(out[i], B.mul(c, row[i]))
        return tuple(out)

    def from_int(self, n):
        return (self.base.from_int(n),) + self.zero[1:]

    def from_rational(self, q):
        return (self.base.from_rational(q),) + self.zero[1:]

    def from_base(self, a):
        return (a,) + self.zero[1:]

    def is_base(self, a):
        z = self.base.zero
        return all(x == z for x in a[1:])

    def scale_int(self, a, n):
        B = self.base
        c = B.from_int(n)
        return tuple(B.mul(x, c) for x in a)

    def scale_base(self, a, c):
        B = self.base
        return tuple(B.mul(x, c) for x in a)

    def is_unit(self, a):
        if self.base.is_field:
            return a != self.zero
        if self.is_base(a):
            return self.base.is_unit(a[0])
        raise CapabilityError(f"unit test in {self.name()} needs a field base")

    def inv(self, a):
        B = self.base
        if a == self.zero:
            raise NotInvertibleError(f"division by zero in {self.name()}")
        if self.is_base(a):
            c = B.inv(a[0])
            return (c,) + self.zero[1:]
        if not B.is_field:
            raise CapabilityError(f"inversion in {self.name()} needs a field base")
        s = poly.field_xgcd_inverse(B, list(a), list(self.minpoly))
        return tuple(s) + (B.zero,) * (self.degree - len(s))

    def exact_div(self, a, b):
        if self.is_base(b) and not self.base.is_field:
            B = self.base
            return tuple(B.exact_div(x, b[0]) for x in a)
        return self.mul(a, self.inv(b))

    def canonical(self, a):
        if not self.is_field:
            raise CapabilityError(f"{self.name()} has no canonical associates")
        return (self.one, self.zero) if a == self.zero else (a, self.one)

    def gcd(self, a, b):
        if not self.is_field:
            raise CapabilityError(f"{self.name()} does not support gcd")
        return self.zero if a == self.zero and b == self.zero else self.one

    def euclid_size(self, a):
        return 0

    def divmod(self, a, b):
        return self.mul(a, self.inv(b)), self.zero

    def norm_to_base(self, a):
        """Norm down one layer: determinant of multiplication by a."""
        from ..linalg import det
        d = self.degree
        w = self.gen.raw
        cols = []
        cur = a
        for _ in range(d):
            cols.append(cur)
            cur = self.mul(cur, w)
        M = [[Elem(self.base, cols[j][i]) for j in range(d)] for i in range(d)]
        return det(M).raw

    def format(self, a):
        B = self.base
        terms = []
        for e in range(self.degree - 1, -1, -1):
            c = a[e]
            if c != B.zero:
                terms.append((B.format(c), e))
        return format_poly(terms, self.var)

    def to_data(self, a):
        return [self.base.to_data(c) for c in a]

    def from_data(self, d):
        if not isinstance(d, list):
            return self.from_base(self.base.from_data(d))
        if len(d) != self.degree:
            raise ValueError("wrong number of coordinates")
        return tuple(self.base.from_data(c) for c in d)


def _is_square(B, a):
    if hasattr(B, "p") and B.is_field:
        return a == 0 or pow(a, (B.p - 1) // 2, B.p) == 1
    if B.name() == "QQ":
        from gmpy2 import is_square
        return a >= 0 and is_square(int(a.numerator)) and is_square(int(a.denominator))
    return False


def finite_field_square_extension(p, name="z"):
    """F_{p^2} as F_p[z]/(z^2 - n) for the least non-residue n (p odd)."""
    from .numbers import PrimeField
    F = PrimeField(p)
    if p == 2:
        return SimpleExtension(F, [1, 1, 1], name)
    n = 2
    while pow(n, (p - 1) // 2, p) == 1:
        n += 1
    return SimpleExtension(F, [(-n) % p, 0, 1], name)


def check_root(ext, value):
    """True if value (in some ring) is a root of ext's minimal polynomial."""
    R = value.ring
    acc = R.zero_elem
    for c in reversed(ext.minpoly):
        acc = acc * value + R(Elem(ext.base, c))
    return acc.is_zero()
