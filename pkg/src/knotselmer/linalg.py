"""Exact matrix algorithms over the ring tower.

Matrices are lists of rows of `Elem`s sharing one ring. Internally the
algorithms run on raw payloads.
"""

from itertools import combinations

from .errors import CapabilityError, InexactDivisionError
from .rings.base import Elem

# Laplace expansion is division-free and therefore exact even when the ring
# only carries truncated precision; beyond this size Bareiss is used.
LAPLACE_LIMIT = 6


def ring_of(M):
    for row in M:
        for x in row:
            return x.ring
    raise ValueError("empty matrix")


def to_raw(M):
    return [[x.raw for x in row] for row in M]


def from_raw(R, A):
    return [[Elem(R, x) for x in row] for row in A]


def zeros(R, m, n):
    return [[R.zero_elem for _ in range(n)] for _ in range(m)]


def identity(R, n):
    return [[R.one_elem if i == j else R.zero_elem for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_mul(A, B):
    R = ring_of(A)
    a, b = to_raw(A), to_raw(B)
    return from_raw(R, _mul_raw(R, a, b))


def _mul_raw(R, a, b):
    z = R.zero
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [z] * n
        for k, x in enumerate(row):
            if x == z:
                continue
            for j, y in enumerate(b[k]):
                if y != z:
                    acc[j] = R.add(acc[j], R.mul(x, y))
        out.append(acc)
    return out


def mat_add(A, B):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A, B):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(A, c):
    return [[c * x for x in row] for row in A]


def block_matrix(blocks):
    """Assemble a matrix from a grid of equally sized blocks."""
    out = []
    for brow in blocks:
        for i in range(len(brow[0])):
            out.append([x for blk in brow for x in blk[i]])
    return out


def submatrix(M, rows, cols):
    return [[M[i][j] for j in cols] for i in rows]


# -- determinants ----------------------------------------------------------

def _det3(R, a):
    m, s, ad = R.mul, R.sub, R.add
    return ad(s(m(a[0][0], s(m(a[1][1], a[2][2]), m(a[1][2], a[2][1]))),
                m(a[0][1], s(m(a[1][0], a[2][2]), m(a[1][2], a[2][0])))),
              m(a[0][2], s(m(a[1][0], a[2][1]), m(a[1][1], a[2][0]))))


def det_raw(R, a):
    n = len(a)
    if n == 0:
        return R.one
    if n == 1:
        return a[0][0]
    if n == 2:
        return R.sub(R.mul(a[0][0], a[1][1]), R.mul(a[0][1], a[1][0]))
    if n == 3:
        return _det3(R, a)
    if R.is_field:
        return _det_gauss(R, a)
    if n <= LAPLACE_LIMIT:
        table = _laplace_table(R, a, list(range(n)), list(range(n)), n)
        return table[(tuple(range(n)), tuple(range(n)))]
    return _det_bareiss(R, a)


def det(M):
    R = ring_of(M)
    return Elem(R, det_raw(R, to_raw(M)))


def _det_gauss(R, a):
    a = [list(r) for r in a]
    n = len(a)
    z = R.zero
    result = R.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != z), None)
        if p is None:
            return z
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = R.neg(result)
        piv = a[c][c]
        result = R.mul(result, piv)
        inv = R.inv(piv)
        for i in range(c + 1, n):
            if a[i][c] != z:
                f = R.mul(a[i][c], inv)
                a[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[i], a[c])]
    return result


def _det_bareiss(R, a):
    a = [list(r) for r in a]
    n = len(a)
    z = R.zero
    sign = False
    prev = R.one
    for k in range(n - 1):
        p = next((i for i in range(k, n) if a[i][k] != z and R.is_unit(a[i][k])), None)
        if p is None:
            p = next((i for i in range(k, n) if a[i][k] != z), None)
        if p is None:
            return z
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = not sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = R.sub(R.mul(a[k][k], a[i][j]), R.mul(a[i][k], a[k][j]))
                a[i][j] = R.exact_div(num, prev) if prev != R.one else num
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return R.neg(d) if sign else d


# -- minors ----------------------------------------------------------------

def _laplace_table(R, a, rows, cols, k, lazy=False):
    """All k-minors on the given rows/cols via Laplace expansion along the last row.

    Minors of size k-1 are tabulated; with `lazy` the last level is
    returned as a generator so that callers may stop early.
    """
    z = R.zero
    prev = {((i,), (j,)): a[i][j] for i in rows for j in cols}
    if k == 1:
        return prev if not lazy else iter(prev.items())

    def level(size, prev):
        for rsub in combinations(rows, size):
            last = rsub[-1]
            rm = rsub[:-1]
            arow = a[last]
            for csub in combinations(cols, size):
                acc = z
                for pos, c in enumerate(csub):
                    e = arow[c]
                    if e == z:
                        continue
                    sub = prev[(rm, csub[:pos] + csub[pos + 1:])]
                    if sub == z:
                        continue
                    term = R.mul(e, sub)
                    acc = R.add(acc, term) if (size - 1 + pos) % 2 == 0 else R.sub(acc, term)
                yield (rsub, csub), acc

    for size in range(2, k):
        prev = dict(level(size, prev))
    if lazy:
        return level(k, prev)
    return dict(level(k, prev))


def _nonzero_lines(R, a):
    z = R.zero
    rows = [i for i, r in enumerate(a) if any(x != z for x in r)]
    cols = [j for j in range(len(a[0]) if a else 0) if any(r[j] != z for r in a)]
    return rows, cols


def minors_raw(R, a, k):
    """Yield ((rows, cols), value) for the k-minors that are not trivially zero."""
    if k == 0:
        yield ((), ()), R.one
        return
    rows, cols = _nonzero_lines(R, a)
    if k > min(len(rows), len(cols)):
        return
    if k <= LAPLACE_LIMIT:
        yield from _laplace_table(R, a, rows, cols, k, lazy=True)
        return
    for rsub in combinations(rows, k):
        for csub in combinations(cols, k):
            sub = [[a[i][j] for j in csub] for i in rsub]
            yield (rsub, csub), det_raw(R, sub)


def minors(M, k):
    """List of (rows, cols, minor) for all k-minors that are not trivially zero."""
    R = ring_of(M)
    return [(r, c, Elem(R, v)) for (r, c), v in minors_raw(R, to_raw(M), k)]


def minors_gcd(M, k, early_exit=True):
    """gcd of the k x k minors, canonically normalized.

    Stops at the first unit when `early_exit` is set. Raises
    CapabilityError when the ring has no gcd.
    """
    R = ring_of(M)
    if not R.has_gcd:
        raise CapabilityError(f"{R.name()} does not support gcd; use minors() instead")
    if k <= 0:
        return R.one_elem
    if hasattr(R, "gcd_many"):
        vals = [v for _, v in minors_raw(R, to_raw(M), k) if v != R.zero]
        return Elem(R, R.gcd_many(vals))
    g = R.zero
    for _, v in minors_raw(R, to_raw(M), k):
        if v == R.zero:
            continue
        g = R.gcd(g, v) if g != R.zero else R.canonical(v)[1]
        if early_exit and R.is_unit(g):
            return R.one_elem
    return Elem(R, g)


def unit_minor_exists(M, k):
    R = ring_of(M)
    return any(v != R.zero and R.is_unit(v) for _, v in minors_raw(R, to_raw(M), k))


# -- Smith normal form -------------------------------------------------------

def smith_diagonal(M):
    """Diagonal of the Smith normal form, as canonical elements.

    Needs a Euclidean layer (fields, DVRs such as K[[s]] and Z_p, Euclidean
    quadratic orders). Entries satisfy d_1 | d_2 | ...; zeros come last.
    """
    R = ring_of(M)
    if not R.is_euclidean:
        raise CapabilityError(f"{R.name()} is not Euclidean; Smith form unavailable")
    a = [list(r) for r in to_raw(M)]
    m = len(a)
    n = len(a[0]) if a else 0
    z = R.zero
    diag = []

    def size(x):
        return R.euclid_size(x)

    def move_min(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != z and (best is None or size(x) < best[0]):
                    best = (size(x), i, j)
                    if best[0] == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return False
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        return True

    for t in range(min(m, n)):
        if not move_min(t):
            break
        while True:
            clean = True
            piv = a[t][t]
            for i in range(t + 1, m):
                if a[i][t] != z:
                    q, r = R.divmod(a[i][t], piv)
                    a[i] = [R.sub(x, R.mul(q, y)) for x, y in zip(a[i], a[t])]
                    if r != z:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j] != z:
                    q, r = R.divmod(a[t][j], piv)
                    for row in a:
                        row[j] = R.sub(row[j], R.mul(q, row[t]))
                    if r != z:
                        clean = False
            if not clean:
                _move_line_min(R, a, t, m, n)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] != z and R.divmod(a[i][j], piv)[1] != z:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [R.add(x, y) for x, y in zip(a[t], a[bad])]
        diag.append(a[t][t])
    diag += [z] * (min(m, n) - len(diag))
    return [Elem(R, R.canonical(d)[1]) for d in diag]


def _move_line_min(R, a, t, m, n):
    z = R.zero
    best = (R.euclid_size(a[t][t]) if a[t][t] != z else None, t, t)
    for i in range(t, m):
        x = a[i][t]
        if x != z and (best[0] is None or R.euclid_size(x) < best[0]):
            best = (R.euclid_size(x), i, t)
    for j in range(t, n):
        x = a[t][j]
        if x != z and (best[0] is None or R.euclid_size(x) < best[0]):
            best = (R.euclid_size(x), t, j)
    _, i, j = best
    a[t], a[i] = a[i], a[t]
    for row in a:
        row[t], row[j] = row[j], row[t]


def elementary_divisors(M):
    return smith_diagonal(M)


# -- kernels ---------------------------------------------------------------

def adjugate(M):
    R = ring_of(M)
    a = to_raw(M)
    n = len(a)
    out = [[R.zero_elem] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[a[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            v = det_raw(R, sub)
            out[j][i] = Elem(R, v if (i + j) % 2 == 0 else R.neg(v))
    return out


def primitive_vector(v):
    """Divide out the gcd of the entries and normalize the first nonzero entry."""
    R = v[0].ring
    g = R.zero
    for x in v:
        if not x.is_zero():
            g = R.gcd(g, x.raw) if g != R.zero else R.canonical(x.raw)[1]
    if g == R.zero:
        return list(v)
    if g != R.one:
        try:
            v = [Elem(R, R.exact_div(x.raw, g)) for x in v]
        except InexactDivisionError as exc:
            raise InexactDivisionError("content division failed (insufficient precision?)") from exc
    lead = next(x for x in v if not x.is_zero())
    u, _ = R.canonical(lead.raw)
    ui = R.inv(u)
    return [Elem(R, R.mul(x.raw, ui)) for x in v]


def column_kernel_rank_one(M):
    """Primitive generator of the column kernel of a square matrix of corank one.

    Uses a nonzero column of the adjugate. Returns None when the adjugate
    vanishes (corank at least two) or the determinant is nonzero.
    """
    if not det(M).is_zero():
        return None
    adj = adjugate(M)
    cols = transpose(adj)
    best = None
    R = ring_of(M)
    for c in cols:
        if all(x.is_zero() for x in c):
            continue
        if R.is_dvr:
            v = min(x.valuation() for x in c if not x.is_zero())
            if best is None or v < best[0]:
                best = (v, c)
        else:
            best = (0, c)
            break
    if best is None:
        return None
    return primitive_vector(best[1])


def rank_over_field(M):
    R = ring_of(M)
    if not R.is_field:
        raise CapabilityError("rank_over_field needs a field")
    a = [list(r) for r in to_raw(M)]
    z = R.zero
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c] != z), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        inv = R.inv(a[rank][c])
        for i in range(len(a)):
            if i != rank and a[i][c] != z:
                f = R.mul(a[i][c], inv)
                a[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank
