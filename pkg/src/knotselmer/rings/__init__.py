"""Exact coefficient rings: Q, F_p, Z_p, number fields, power series, Laurent polynomials."""

from .base import Elem, Ring, associates
from .extension import ExtensionDescriptor, SimpleExtension, finite_field_square_extension
from .hensel import algebraic_root, roots_in_prime_field, sqrt_hensel
from .laurent import LaurentDescriptor, LaurentPolynomialRing
from .numbers import (QQ, PAdicDescriptor, PAdicIntegers, PrimeField, PrimeFieldDescriptor,
                      Rationals, RationalsDescriptor)
from .quadratic import QuadraticIntegers, QuadraticIntegersDescriptor
from .reduce import reduce_mod, residual
from .series import PowerSeriesRing, SeriesDescriptor


def ring_construct(descriptor):
    """Build the ring described by a descriptor (a frozen dataclass)."""
    return descriptor.build()


def ring_tower(ring):
    """The list of layers from the bottom of the tower up to `ring`."""
    out = []
    r = ring
    while r is not None:
        out.append(r)
        r = r.base
    return out[::-1]


__all__ = [
    "Elem", "Ring", "associates", "SimpleExtension", "finite_field_square_extension",
    "algebraic_root", "roots_in_prime_field", "sqrt_hensel", "LaurentPolynomialRing",
    "QQ", "PAdicIntegers", "PrimeField", "Rationals", "QuadraticIntegers",
    "reduce_mod", "residual", "PowerSeriesRing", "ring_construct", "ring_tower",
    "RationalsDescriptor", "PrimeFieldDescriptor", "PAdicDescriptor", "ExtensionDescriptor",
    "QuadraticIntegersDescriptor", "SeriesDescriptor", "LaurentDescriptor",
]
