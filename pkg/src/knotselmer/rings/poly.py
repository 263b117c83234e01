"""Dense univariate polynomials over a ring, on raw payload lists (low degree first)."""

from ..errors import InexactDivisionError, NotInvertibleError


def trim(R, f):
    f = list(f)
    z = R.zero
    while f and f[-1] == z:
        f.pop()
    return f


def add(R, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = R.add(out[i], c)
    return trim(R, out)


def sub(R, f, g):
    n = max(len(f), len(g))
    z = R.zero
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else z
        b = g[i] if i < len(g) else z
        out.append(R.sub(a, b))
    return trim(R, out)


def neg(R, f):
    return [R.neg(c) for c in f]


def scale(R, f, c):
    return trim(R, [R.mul(c, x) for x in f])


def mul(R, f, g):
    if not f or not g:
        return []
    z = R.zero
    out = [z] * (len(f) + len(g) - 1)
    gnz = [(j, y) for j, y in enumerate(g) if y != z]
    for i, x in enumerate(f):
        if x == z:
            continue
        for j, y in gnz:
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return trim(R, out)


def shift(R, f, k):
    """Multiply by X^k (k >= 0)."""
    if not f:
        return []
    return [R.zero] * k + list(f)


def evaluate(R, f, x):
    acc = R.zero
    for c in reversed(f):
        acc = R.add(R.mul(acc, x), c)
    return acc


def derivative(R, f):
    return trim(R, [R.scale_int(c, i) for i, c in enumerate(f)][1:])


def divmod_exact_lc(R, f, g):
    """Long division by g where every leading-coefficient quotient is exact in R.

    With a unit leading coefficient this is ordinary division with remainder.
    Raises InexactDivisionError when a step is not possible.
    """
    if not g:
        raise NotInvertibleError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    lc_inv = R.inv(lc) if R.is_unit(lc) else None
    q = [R.zero] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = R.mul(f[-1], lc_inv) if lc_inv is not None else R.exact_div(f[-1], lc)
        q[k] = c
        for i, y in enumerate(g):
            f[i + k] = R.sub(f[i + k], R.mul(c, y))
        f.pop()
        f = trim(R, f)
    return trim(R, q), f


def exact_quotient(R, f, g):
    q, r = divmod_exact_lc(R, f, g)
    if r:
        raise InexactDivisionError("polynomial division leaves a remainder")
    return q


def pseudo_rem(R, f, g):
    """lc(g)^(deg f - deg g + 1) * f mod g, computed without division."""
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    if len(f) - 1 < dg:
        return f
    e = len(f) - 1 - dg + 1
    while f and len(f) - 1 >= dg:
        k = len(f) - 1 - dg
        c = f[-1]
        f = [R.mul(lc, x) for x in f]
        for i, y in enumerate(g):
            f[i + k] = R.sub(f[i + k], R.mul(c, y))
        f.pop()
        f = trim(R, f)
        e -= 1
    if e and f:
        m = R.pow(lc, e)
        f = [R.mul(m, x) for x in f]
    return trim(R, f)


def content(R, f):
    g = R.zero
    for c in f:
        g = R.gcd(g, c)
        if R.is_unit(g):
            return R.one
    return g


def primitive_part(R, f):
    c = content(R, f)
    if c == R.one or not f:
        return list(f)
    return trim(R, [R.exact_div(x, c) for x in f])


def field_xgcd_inverse(R, a, m):
    """Inverse of a modulo m over a field R, via the extended Euclidean algorithm."""
    r0, r1 = list(m), trim(R, a)
    s0, s1 = [], [R.one]
    if not r1:
        raise NotInvertibleError("zero is not invertible")
    while len(r1) > 1:
        q, r = divmod_exact_lc(R, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(R, s0, mul(R, q, s1))
        if not r1:
            raise NotInvertibleError("element is a zero divisor (minimal polynomial is reducible)")
    c = R.inv(r1[0])
    return scale(R, s1, c)


def field_monic(F, f):
    if not f:
        return []
    c = F.inv(f[-1])
    return [F.mul(c, x) for x in f]


def field_xgcd(F, f, g):
    """(d, u, v) with u f + v g = d, d monic gcd over the field F."""
    r0, r1 = trim(F, f), trim(F, g)
    u0, u1 = [F.one], []
    v0, v1 = [], [F.one]
    while r1:
        q, r = divmod_exact_lc(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(F, u0, mul(F, q, u1))
        v0, v1 = v1, sub(F, v0, mul(F, q, v1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, u0, c), scale(F, v0, c)


def field_gcd(F, f, g):
    return field_xgcd(F, f, g)[0]


def hensel_factor(R, f, g0, h0, max_iter):
    """Lift f = g h from residues over a local ring R with nilpotent maximal ideal.

    f, g0, h0 are monic over R with residues of g0, h0 coprime. Returns the
    lifted monic (g, h) or None when the iteration does not settle.
    """
    F = R.residue_field()
    gb = [R.residue(c) for c in g0]
    hb = [R.residue(c) for c in h0]
    d, sb, tb = field_xgcd(F, gb, hb)
    if len(d) != 1:
        return None
    s = [R.lift_residue(c) for c in sb]
    t = [R.lift_residue(c) for c in tb]
    g, h = list(g0), list(h0)
    for _ in range(max_iter):
        e = sub(R, f, mul(R, g, h))
        if not e:
            return g, h
        _, dg = divmod_exact_lc(R, mul(R, t, e), g)
        _, dh = divmod_exact_lc(R, mul(R, s, e), h)
        g = add(R, g, dg)
        h = add(R, h, dh)
    return None
