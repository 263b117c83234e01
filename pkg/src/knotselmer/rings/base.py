"""Common machinery for the exact ring layers.

Every ring works on raw payloads (ints, mpq, tuples) so that nested
layers can call each other without allocating wrappers. User code sees
`Elem`, a thin wrapper that carries its ring and forwards operators.
"""

from fractions import Fraction

from gmpy2 import mpq

from ..errors import CapabilityError, InexactDivisionError, NotInvertibleError

_MPQ = type(mpq(0))


class Ring:
    """Abstract ring layer.

    Subclasses implement the raw-level hooks. Flags describe which
    algorithms apply: `is_field`, `is_dvr` (discrete valuation ring, with
    `valuation`), `is_euclidean` (with `euclid_size`/`divmod`), `has_gcd`.
    """

    is_field = False
    is_dvr = False
    is_euclidean = False
    has_gcd = False
    base = None
    zero = None
    one = None

    # -- identity ----------------------------------------------------------

    @property
    def descriptor(self):
        raise NotImplementedError

    def __eq__(self, other):
        return self is other or (isinstance(other, Ring) and self.descriptor == other.descriptor)

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return self.name()

    def name(self):
        return type(self).__name__

    # -- raw arithmetic ----------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero

    def from_int(self, n):
        raise NotImplementedError

    def from_rational(self, q):
        q = mpq(q)
        num = self.from_int(int(q.numerator))
        if q.denominator == 1:
            return num
        return self.exact_div(num, self.from_int(int(q.denominator)))

    def from_base(self, a):
        raise TypeError(f"{self.name()} has no base ring")

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def exact_div(self, a, b):
        """Return q with q*b == a, or raise InexactDivisionError."""
        if self.is_unit(b):
            return self.mul(a, self.inv(b))
        raise InexactDivisionError(f"cannot divide in {self.name()}")

    def pow(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def scale_int(self, a, n):
        return self.mul(a, self.from_int(n))

    # -- normal forms ------------------------------------------------------

    def canonical(self, a):
        """Split a = unit * normal with `normal` the chosen representative."""
        raise CapabilityError(f"{self.name()} has no canonical associates")

    def gcd(self, a, b):
        raise CapabilityError(f"{self.name()} does not support gcd")

    def valuation(self, a):
        raise CapabilityError(f"{self.name()} is not a valuation ring")

    def euclid_size(self, a):
        raise CapabilityError(f"{self.name()} is not Euclidean")

    def divmod(self, a, b):
        raise CapabilityError(f"{self.name()} is not Euclidean")

    # -- residue field -----------------------------------------------------

    def residue_field(self):
        """The residue field of a local layer; a field is its own residue field."""
        if self.is_field:
            return self
        raise CapabilityError(f"{self.name()} is not local")

    def residue(self, a):
        if self.is_field:
            return a
        raise CapabilityError(f"{self.name()} is not local")

    def lift_residue(self, c):
        if self.is_field:
            return c
        raise CapabilityError(f"{self.name()} is not local")

    # -- formatting --------------------------------------------------------

    def format(self, a):
        raise NotImplementedError

    def format_bare(self, a):
        """Like format, without precision markers."""
        return self.format(a)

    def to_data(self, a):
        raise NotImplementedError

    def from_data(self, d):
        raise NotImplementedError

    # -- coercion and wrappers --------------------------------------------

    def coerce_raw(self, x):
        if isinstance(x, Elem):
            if x.ring is self or x.ring == self:
                return x.raw
            if self.base is not None:
                return self.from_base(self.base.coerce_raw(x))
            raise TypeError(f"cannot coerce element of {x.ring.name()} into {self.name()}")
        if isinstance(x, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, (Fraction, _MPQ)):
            return self.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name()}")

    def __call__(self, x=0):
        return Elem(self, self.coerce_raw(x))

    def elem(self, raw):
        return Elem(self, raw)

    @property
    def zero_elem(self):
        return Elem(self, self.zero)

    @property
    def one_elem(self):
        return Elem(self, self.one)

    def contains(self, other):
        """True if elements of `other` coerce into this ring through the base chain."""
        r = self
        while r is not None:
            if r == other:
                return True
            r = r.base
        return False


class Elem:
    """A ring element: a raw payload tagged with its ring."""

    __slots__ = ("ring", "raw")

    def __init__(self, ring, raw):
        self.ring = ring
        self.raw = raw

    def _other(self, other):
        if isinstance(other, Elem) and other.ring is self.ring:
            return other.raw
        if isinstance(other, Elem) and not self.ring.contains(other.ring):
            if other.ring.contains(self.ring):
                return None
        return self.ring.coerce_raw(other)

    def _lift(self, other):
        # self lives in a smaller ring than other: promote self
        return Elem(other.ring, other.ring.coerce_raw(self))

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return self._lift(other) + other
        return Elem(self.ring, self.ring.add(self.raw, o))

    def __radd__(self, other):
        return Elem(self.ring, self.ring.add(self.ring.coerce_raw(other), self.raw))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return self._lift(other) - other
        return Elem(self.ring, self.ring.sub(self.raw, o))

    def __rsub__(self, other):
        return Elem(self.ring, self.ring.sub(self.ring.coerce_raw(other), self.raw))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return self._lift(other) * other
        return Elem(self.ring, self.ring.mul(self.raw, o))

    def __rmul__(self, other):
        return Elem(self.ring, self.ring.mul(self.ring.coerce_raw(other), self.raw))

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.raw))

    def __pos__(self):
        return self

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return self._lift(other) / other
        return Elem(self.ring, self.ring.exact_div(self.raw, o))

    def __rtruediv__(self, other):
        return Elem(self.ring, self.ring.exact_div(self.ring.coerce_raw(other), self.raw))

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        return Elem(self.ring, self.ring.pow(self.raw, n))

    def __eq__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        if o is None:
            return self._lift(other) == other
        return self.raw == o

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self.raw)

    def __bool__(self):
        return not self.ring.is_zero(self.raw)

    def __repr__(self):
        return self.ring.format(self.raw)

    __str__ = __repr__

    def is_zero(self):
        return self.ring.is_zero(self.raw)

    def is_unit(self):
        return self.ring.is_unit(self.raw)

    def inverse(self):
        return Elem(self.ring, self.ring.inv(self.raw))

    def canonical(self):
        u, n = self.ring.canonical(self.raw)
        return Elem(self.ring, u), Elem(self.ring, n)

    def normal(self):
        return Elem(self.ring, self.ring.canonical(self.raw)[1])

    def valuation(self):
        return self.ring.valuation(self.raw)

    def residue(self):
        r = self.ring.residue_field()
        return Elem(r, self.ring.residue(self.raw))

    def to_data(self):
        return self.ring.to_data(self.raw)


def associates(a, b):
    """True if a and b differ by a unit factor (compared via canonical forms)."""
    if a.ring != b.ring:
        b = a.ring(b)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.normal() == b.normal()


def check_not_zero_divisor(ring, b):
    if ring.is_zero(b):
        raise NotInvertibleError("division by zero")
