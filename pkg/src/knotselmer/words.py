"""Free-group words, integral group rings, Fox calculus and knot-group presentations.

A word is a tuple of letters; a letter is a nonzero int, +i for the
generator g_i and -i for its inverse (generators are numbered from 1).
Words are kept freely reduced.
"""

import re
from dataclasses import dataclass, field

from .errors import PresentationError


def reduce_word(letters):
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_mul(a, b):
    return reduce_word(a + b)


def word_inverse(w):
    return tuple(-x for x in reversed(w))


def word_power(w, n):
    if n < 0:
        w, n = word_inverse(w), -n
    return reduce_word(w * n)


def exponent_sum(w, gen=None):
    """Total exponent, or the exponent of one generator when `gen` is given."""
    if gen is None:
        return sum(1 if x > 0 else -1 for x in w)
    return sum((1 if x > 0 else -1) for x in w if abs(x) == gen)


def abelianization(w):
    """Image in H_1 of a knot group: all meridians map to the same generator t."""
    return exponent_sum(w)


def format_word(w, names=None):
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        x = w[i]
        j = i
        while j < len(w) and w[j] == x:
            j += 1
        n = j - i
        name = names[abs(x) - 1] if names else f"g{abs(x)}"
        e = n if x > 0 else -n
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^\(?(-?\d+)\)?)?$")


def parse_word(text, names):
    """Parse 'g1 g2^-1 g1^2' (space separated, optional integer powers)."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    index = {n: i + 1 for i, n in enumerate(names)}
    letters = []
    for tok in text.replace("*", " ").split():
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in index:
            raise PresentationError(f"bad word token {tok!r}")
        g = index[m.group(1)]
        e = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([g if e > 0 else -g] * abs(e))
    return reduce_word(letters)


class GroupRingElement:
    """A finite Z-linear combination of reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            w = reduce_word(w)
            c = self.terms.get(w, 0) + c
            if c:
                self.terms[w] = c
            else:
                self.terms.pop(w, None)

    @classmethod
    def word(cls, w, coeff=1):
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls):
        return cls({(): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        r = GroupRingElement()
        r.terms = out
        return r

    def __neg__(self):
        r = GroupRingElement()
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = word_mul(w1, w2)
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        r = GroupRingElement()
        r.terms = out
        return r

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def augmentation(self):
        return sum(self.terms.values())

    def conjugate(self):
        """The involution sum a_w w -> sum a_w w^-1."""
        return GroupRingElement({word_inverse(w): c for w, c in self.terms.items()})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{format_word(w)}]" for w, c in self.items())


def fox_derivative(w, j):
    """The Fox derivative d w / d g_j as an element of Z[F]."""
    terms = {}
    prefix = []
    for x in w:
        if x == j:
            key = reduce_word(prefix)
            terms[key] = terms.get(key, 0) + 1
        elif x == -j:
            key = reduce_word(prefix + [x])
            terms[key] = terms.get(key, 0) - 1
        prefix.append(x)
    return GroupRingElement({k: c for k, c in terms.items() if c})


def fox_jacobian(relators, n):
    """Matrix of Fox derivatives, rows indexed by relators, columns by generators."""
    return [[fox_derivative(r, j) for j in range(1, n + 1)] for r in relators]


@dataclass
class Presentation:
    """A deficiency-one presentation of a knot group with peripheral words."""

    generators: list
    relators: list
    meridian: tuple = (1,)
    longitude: tuple = None
    notes: list = field(default_factory=list)

    @property
    def n(self):
        return len(self.generators)

    def validate(self):
        """Return a list of problems; empty when the presentation is usable."""
        problems = []
        n = self.n
        if n < 2:
            problems.append("need at least two generators")
        if len(self.relators) != n - 1:
            problems.append(f"expected {n - 1} relators, got {len(self.relators)}")
        for i, r in enumerate(self.relators, 1):
            if any(abs(x) > n for x in r):
                problems.append(f"relator {i} uses an unknown generator")
            if not r:
                problems.append(f"relator {i} is trivial")
            elif abelianization(r) != 0:
                problems.append(f"relator {i} has exponent sum {abelianization(r)}, not 0")
        if any(abs(x) > n for x in self.meridian):
            problems.append("meridian uses an unknown generator")
        if self.longitude is not None:
            if abelianization(self.longitude) != 0:
                problems.append("longitude has nonzero exponent sum")
        return problems

    def check(self):
        problems = self.validate()
        if problems:
            raise PresentationError("; ".join(problems))
        return self

    def format_word(self, w):
        return format_word(w, self.generators)

    def parse_word(self, text):
        return parse_word(text, self.generators)


def relator_from_relation(lhs, rhs):
    return word_mul(lhs, word_inverse(rhs))


def presentation_from_text(generators, relations, meridian=None, longitude=None):
    """Build a presentation from word strings; a relation may be 'u = v' or a single relator."""
    rels = []
    for text in relations:
        if "=" in text:
            a, b = text.split("=", 1)
            rels.append(relator_from_relation(parse_word(a, generators), parse_word(b, generators)))
        else:
            rels.append(parse_word(text, generators))
    mer = parse_word(meridian, generators) if meridian else (1,)
    lon = parse_word(longitude, generators) if longitude else None
    return Presentation(list(generators), rels, mer, lon)
