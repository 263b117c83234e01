"""Rings of integers of imaginary quadratic fields with a Euclidean norm."""

import math
from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import CapabilityError, InexactDivisionError, NotInvertibleError
from .base import Elem, Ring
from .extension import SimpleExtension
from .numbers import QQ

EUCLIDEAN_DISCRIMINANTS = (-1, -2, -3, -7, -11)


@dataclass(frozen=True)
class QuadraticIntegersDescriptor:
    d: int
    name: str

    def build(self):
        return QuadraticIntegers(self.d, self.name)

    def __str__(self):
        return f"O(sqrt({self.d}))"


class QuadraticIntegers(Ring):
    """The maximal order of Q(w), w^2 = d, for the norm-Euclidean imaginary d.

    Elements are stored as in Q(w), as pairs (a, b) meaning a + b*w, and
    are kept inside the order by an integrality check.
    """

    is_euclidean = True
    has_gcd = True

    def __init__(self, d, name="w"):
        d = int(d)
        if d not in EUCLIDEAN_DISCRIMINANTS:
            raise CapabilityError(f"Q(sqrt({d})) is not supported (need one of {EUCLIDEAN_DISCRIMINANTS})")
        self.d = d
        self.var = name
        self.ambient = SimpleExtension(QQ, [-d, 0, 1], name)
        self.zero = self.ambient.zero
        self.one = self.ambient.one
        self.half_integral = d % 4 == 1

    @property
    def descriptor(self):
        return QuadraticIntegersDescriptor(self.d, self.var)

    def name(self):
        return f"O[{self.var}]"

    @property
    def gen(self):
        return Elem(self, (mpq(0), mpq(1)))

    def is_integral(self, a):
        x, y = a
        if self.half_integral:
            tx, ty = 2 * x, 2 * y
            return tx.denominator == 1 and ty.denominator == 1 and (tx - ty) % 2 == 0
        return x.denominator == 1 and y.denominator == 1

    def _check(self, a):
        if not self.is_integral(a):
            raise InexactDivisionError(f"{self.ambient.format(a)} is not integral")
        return a

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def from_int(self, n):
        return (mpq(n), mpq(0))

    def from_rational(self, q):
        q = mpq(q)
        if q.denominator != 1:
            raise InexactDivisionError(f"{q} is not an algebraic integer")
        return (q, mpq(0))

    def coerce_raw(self, x):
        if isinstance(x, Elem) and x.ring == self.ambient:
            return self._check(x.raw)
        return super().coerce_raw(x)

    def norm(self, a):
        return a[0] * a[0] - self.d * a[1] * a[1]

    def is_unit(self, a):
        return self.norm(a) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertibleError(f"{self.format(a)} is not a unit")
        return (a[0], -a[1])

    def exact_div(self, a, b):
        if b == self.zero:
            raise NotInvertibleError("division by zero")
        return self._check(self.ambient.exact_div(a, b))

    def units(self):
        one = self.one
        out = [one, self.neg(one)]
        if self.d == -1:
            i = (mpq(0), mpq(1))
            out += [i, self.neg(i)]
        elif self.d == -3:
            w = (mpq(1, 2), mpq(1, 2))
            w2 = self.mul(w, w)
            out += [w, self.neg(w), w2, self.neg(w2)]
        return out

    def canonical(self, a):
        if a == self.zero:
            return self.one, self.zero
        if self.is_unit(a):
            return a, self.one
        best = None
        for u in self.units():
            c = self.mul(u, a)
            if best is None or (c[1], c[0]) > (best[1][1], best[1][0]):
                best = (u, c)
        u, c = best
        return self.inv(u), c

    def euclid_size(self, a):
        return int(self.norm(a))

    def _round(self, q):
        x, y = q
        if not self.half_integral:
            return (mpq(round(x)), mpq(round(y)))
        best = None
        t = 2 * y
        for n in (math.floor(t), math.ceil(t)):
            m = round(x - mpq(n, 2))
            c = (m + mpq(n, 2), mpq(n, 2))
            e = (x - c[0], y - c[1])
            nrm = self.norm(e)
            if best is None or nrm < best[0]:
                best = (nrm, c)
        return best[1]

    def divmod(self, a, b):
        if b == self.zero:
            raise NotInvertibleError("division by zero")
        q = self._round(self.ambient.exact_div(a, b))
        r = self.sub(a, self.mul(q, b))
        assert self.norm(r) < self.norm(b)
        return q, r

    def gcd(self, a, b):
        while b != self.zero:
            _, r = self.divmod(a, b)
            a, b = b, r
        return self.canonical(a)[1]

    def format(self, a):
        return self.ambient.format(a)

    def to_data(self, a):
        return self.ambient.to_data(a)

    def from_data(self, d):
        return self._check(self.ambient.from_data(d))
