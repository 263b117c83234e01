"""Bottom layers: the rationals, prime fields and truncated p-adic integers."""

from dataclasses import dataclass

from gmpy2 import is_prime, mpq

from ..errors import InexactDivisionError, NotInvertibleError
from .base import Ring


@dataclass(frozen=True)
class RationalsDescriptor:
    def build(self):
        return QQ

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeFieldDescriptor:
    p: int

    def build(self):
        return PrimeField(self.p)

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class PAdicDescriptor:
    p: int
    precision: int

    def build(self):
        return PAdicIntegers(self.p, self.precision)

    def __str__(self):
        return f"Zp({self.p}, {self.precision})"


class Rationals(Ring):
    """The field of rational numbers; payloads are gmpy2 mpq values."""

    is_field = True
    is_euclidean = True
    has_gcd = True

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    @property
    def descriptor(self):
        return RationalsDescriptor()

    def name(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return mpq(n)

    def from_rational(self, q):
        return mpq(q)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertibleError("division by zero in QQ")
        return 1 / a

    def exact_div(self, a, b):
        if b == 0:
            raise NotInvertibleError("division by zero in QQ")
        return a / b

    def canonical(self, a):
        if a == 0:
            return self.one, self.zero
        return a, self.one

    def gcd(self, a, b):
        return self.zero if a == 0 and b == 0 else self.one

    def euclid_size(self, a):
        return 0

    def divmod(self, a, b):
        return a / b, self.zero

    def format(self, a):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def to_data(self, a):
        return self.format(a)

    def from_data(self, d):
        return mpq(d)


QQ = Rationals()


class PrimeField(Ring):
    """The finite field F_p; payloads are ints in [0, p)."""

    is_field = True
    is_euclidean = True
    has_gcd = True

    def __init__(self, p):
        p = int(p)
        if p < 2 or not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    @property
    def descriptor(self):
        return PrimeFieldDescriptor(self.p)

    def name(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def from_int(self, n):
        return n % self.p

    def from_rational(self, q):
        q = mpq(q)
        den = int(q.denominator)
        if den % self.p == 0:
            raise NotInvertibleError(f"{q} is not defined modulo {self.p}")
        return int(q.numerator) * pow(den, -1, self.p) % self.p

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertibleError(f"division by zero in GF({self.p})")
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        return a * self.inv(b) % self.p

    def canonical(self, a):
        return (1, 0) if a == 0 else (a, 1)

    def gcd(self, a, b):
        return 0 if a == 0 and b == 0 else 1

    def euclid_size(self, a):
        return 0

    def divmod(self, a, b):
        return self.exact_div(a, b), 0

    def elements(self):
        return range(self.p)

    def format(self, a):
        return str(a)

    def to_data(self, a):
        return a

    def from_data(self, d):
        return int(d) % self.p


class PAdicIntegers(Ring):
    """Z_p truncated at p^N; payloads are ints in [0, p^N).

    Operations are exact modulo p^N. Dividing by p^k loses the top k
    digits; the unknown digits are filled with zeros.
    """

    is_dvr = True
    is_euclidean = True
    has_gcd = True

    def __init__(self, p, precision):
        p = int(p)
        if p < 2 or not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if precision < 1:
            raise ValueError("precision must be positive")
        self.p = p
        self.precision = int(precision)
        self.modulus = p ** self.precision
        self.zero = 0
        self.one = 1 % self.modulus

    @property
    def descriptor(self):
        return PAdicDescriptor(self.p, self.precision)

    def name(self):
        return f"Zp({self.p}, {self.precision})"

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def from_int(self, n):
        return n % self.modulus

    def from_rational(self, q):
        q = mpq(q)
        den = int(q.denominator)
        if den % self.p == 0:
            raise InexactDivisionError(f"{q} is not a {self.p}-adic integer")
        return int(q.numerator) * pow(den, -1, self.modulus) % self.modulus

    def valuation(self, a):
        if a == 0:
            return self.precision
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        if a % self.p == 0:
            raise NotInvertibleError(f"{a} is not a {self.p}-adic unit")
        return pow(a, -1, self.modulus)

    def exact_div(self, a, b):
        vb = self.valuation(b)
        if vb == 0:
            return a * pow(b, -1, self.modulus) % self.modulus
        if b == 0:
            raise NotInvertibleError("division by zero in Zp")
        if self.valuation(a) < vb:
            raise InexactDivisionError("quotient is not a p-adic integer")
        pk = self.p ** vb
        return (a // pk) * pow(b // pk, -1, self.modulus) % self.modulus

    def canonical(self, a):
        if a == 0:
            return self.one, 0
        v = self.valuation(a)
        return a // self.p ** v, self.p ** v % self.modulus

    def gcd(self, a, b):
        v = min(self.valuation(a), self.valuation(b))
        return 0 if v >= self.precision else self.p ** v

    def uniformizer_power(self, v):
        return self.p ** v % self.modulus

    def euclid_size(self, a):
        return self.valuation(a)

    def divmod(self, a, b):
        if self.valuation(a) >= self.valuation(b):
            return self.exact_div(a, b), 0
        return 0, a

    def residue_field(self):
        return PrimeField(self.p)

    def residue(self, a):
        return a % self.p

    def lift_residue(self, c):
        return c % self.p

    def centered(self, a):
        """Symmetric representative in (-p^N/2, p^N/2]."""
        return a - self.modulus if a > self.modulus // 2 else a

    def format(self, a):
        return str(self.centered(a))

    def to_data(self, a):
        return a

    def from_data(self, d):
        return int(d) % self.modulus
