"""Square roots and simple roots by Newton iteration, with the branch fixed by a seed."""

from ..errors import HenselError
from . import poly
from .base import Elem


def _iteration_bound(R):
    bound = 8
    r = R
    while r is not None:
        bound += getattr(r, "precision", 0)
        r = r.base
    return 2 * bound


def sqrt_hensel(a, c0):
    """The square root of `a` whose residue is that of `c0`.

    In a field the seed must already be an exact square root. In a local
    layer (p-adics, power series) the seed only has to match modulo the
    maximal ideal, and 2*c0 must be a unit there.
    """
    R = a.ring
    c = R(c0)
    if R.is_field:
        if c * c != a:
            raise HenselError(f"witness {c} does not square to {a}")
        return c
    F = R.residue_field()
    ra, rc = R.residue(a.raw), R.residue(c.raw)
    if F.mul(rc, rc) != ra:
        raise HenselError(f"witness residue {F.format(rc)} does not square to {F.format(ra)}")
    if not F.is_unit(F.scale_int(rc, 2)):
        raise HenselError("square root of a non-unit cannot be lifted (2*c0 is not a unit)")
    r = c
    two = R(2)
    for _ in range(_iteration_bound(R)):
        nr = (r + a / r) / two
        if nr == r:
            break
        r = nr
    if r * r != a:
        raise HenselError("Newton iteration for the square root did not converge")
    return r


def evaluate_poly(coeffs, x):
    acc = x.ring.zero_elem
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def algebraic_root(coeffs, seed):
    """The root of sum(coeffs[i] X^i) congruent to `seed` modulo the maximal ideal.

    The seed must be a simple root of the reduced polynomial (the Hensel
    condition). In a field the seed must already be an exact root.
    """
    if not coeffs:
        raise HenselError("zero polynomial")
    R = seed.ring if isinstance(seed, Elem) else coeffs[-1].ring
    cs = [R(c) for c in coeffs]
    y = R(seed)
    dcs = [c * i for i, c in enumerate(cs)][1:]
    if R.is_field:
        if not evaluate_poly(cs, y).is_zero():
            raise HenselError(f"seed {y} is not a root")
        return y
    F = R.residue_field()
    fy = evaluate_poly(cs, y)
    dfy = evaluate_poly(dcs, y)
    if R.residue(fy.raw) != F.zero:
        raise HenselError(f"seed {y} is not a root modulo the maximal ideal")
    if not F.is_unit(R.residue(dfy.raw)):
        raise HenselError(f"seed {y} is not a simple root (derivative vanishes at the residue)")
    for _ in range(_iteration_bound(R)):
        fy = evaluate_poly(cs, y)
        if fy.is_zero():
            break
        y = y - fy / evaluate_poly(dcs, y)
    if not evaluate_poly(cs, y).is_zero():
        raise HenselError("Newton iteration did not converge")
    return y


def roots_in_prime_field(F, coeffs):
    """All roots in a finite prime field, by exhaustive search."""
    raw = [F.coerce_raw(c) for c in coeffs]
    return [F.elem(x) for x in range(F.p) if poly.evaluate(F, raw, x) == 0]
