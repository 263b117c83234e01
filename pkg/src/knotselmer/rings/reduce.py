"""Reduction maps between layers of the ring tower."""

from ..errors import ReductionError
from .base import Elem
from .extension import SimpleExtension
from .laurent import LaurentPolynomialRing
from .numbers import PAdicIntegers, PrimeField, Rationals
from .quadratic import QuadraticIntegers
from .series import PowerSeriesRing


def reduce_mod(a, target, images=None):
    """Map `a` into `target` along the natural reductions.

    Supported steps: Z_p -> F_p or a lower p-adic precision; B[[s]] -> B
    (s -> 0) or a lower s-precision; coefficientwise maps on series and
    Laurent layers; Q and number fields -> F_p. For an extension generator
    the image must be given in `images` (generator name -> value in the
    target) and must be a root of the minimal polynomial there.
    """
    images = dict(images or {})
    return target.elem(_reduce_raw(a.ring, a.raw, target, images))


def _reduce_raw(R, x, T, images):
    if R == T:
        return x
    if isinstance(R, LaurentPolynomialRing):
        if not isinstance(T, LaurentPolynomialRing):
            raise ReductionError("a Laurent polynomial only reduces to a Laurent polynomial")
        return T.make(x[0], [_reduce_raw(R.base, c, T.base, images) for c in x[1]])
    if isinstance(R, PowerSeriesRing):
        if isinstance(T, PowerSeriesRing) and T.var == R.var:
            if T.precision > R.precision:
                raise ReductionError("cannot raise series precision")
            return tuple(_reduce_raw(R.base, c, T.base, images) for c in x[:T.precision])
        return _reduce_raw(R.base, x[0], T, images)
    if isinstance(T, PowerSeriesRing):
        return T.from_base(_reduce_raw(R, x, T.base, images))
    if isinstance(R, PAdicIntegers):
        if isinstance(T, PrimeField) and T.p == R.p:
            return x % R.p
        if isinstance(T, PAdicIntegers) and T.p == R.p and T.precision <= R.precision:
            return x % T.modulus
        raise ReductionError(f"no reduction from {R.name()} to {T.name()}")
    if isinstance(R, Rationals):
        return T.from_rational(x)
    if isinstance(R, QuadraticIntegers):
        return _reduce_raw(R.ambient, x, T, images)
    if isinstance(R, SimpleExtension):
        if isinstance(T, SimpleExtension) and T.var == R.var and T.degree == R.degree:
            return tuple(_reduce_raw(R.base, c, T.base, images) for c in x)
        if R.var not in images:
            raise ReductionError(f"an image for generator {R.var} is required")
        g = T.elem(T.coerce_raw(images[R.var]))
        acc = T.zero_elem
        for c in reversed(x):
            acc = acc * g + T.elem(_reduce_raw(R.base, c, T, images))
        chk = T.zero_elem
        for c in reversed(R.minpoly):
            chk = chk * g + T.elem(_reduce_raw(R.base, c, T, images))
        if not chk.is_zero():
            raise ReductionError(f"image of {R.var} is not a root of its minimal polynomial")
        return acc.raw
    raise ReductionError(f"no reduction from {R.name()} to {T.name()}")


def residual(a):
    """Image in the residue field of a local layer."""
    return Elem(a.ring.residue_field(), a.ring.residue(a.raw))
