"""Direct library constructions of the worked examples (independent of the job files)."""

from knotselmer.cli.fixtures import fixture_text
from knotselmer.cli.jobfile import build_context, parse_job
from knotselmer.rings import (QQ, PAdicIntegers, PowerSeriesRing, QuadraticIntegers,
                              SimpleExtension, algebraic_root, sqrt_hensel)
from knotselmer.representation import rep_from_assignment
from knotselmer.words import presentation_from_text

FIG8_RELATION = "g1 g2^-1 g1^-1 g2 g1 = g2 g1 g2^-1 g1^-1 g2"
FIG8_LONGITUDE = "g2 g1^-1 g2^-1 g1 g1 g2^-1 g1^-1 g2"
K52_RELATION = "g1 g2 g1^-1 g2^-1 g1 g2 g1 = g2 g1 g2 g1^-1 g2^-1 g1 g2"
K52_LONGITUDE = "g2 g1 g2^-1 g1^-1 g2 g1 g1 g2 g1^-1 g2^-1 g1 g2 g1^-4"


def fig8():
    return presentation_from_text(["g1", "g2"], [FIG8_RELATION], "g1", FIG8_LONGITUDE)


def k52():
    return presentation_from_text(["g1", "g2"], [K52_RELATION], "g1", K52_LONGITUDE)


def load(name, precision_s=None, precision_p=None):
    """Context (ring, constants, representation) of a bundled job file."""
    return build_context(parse_job(fixture_text(name)), precision_s, precision_p)


def riley_form(P, x, y, r):
    """g1 = [m, 1; 0, 1/m], g2 = [m, 0; -(x^2 - y - 2), 1/m] with m = (x + r)/2."""
    m, mi = (x + r) / 2, (x - r) / 2
    return rep_from_assignment(P, [[[m, 1], [0, mi]], [[m, 0], [-(x * x - y - 2), mi]]])


def fig8_series(N=8):
    """Figure-eight over Q(w)(v)[[s]], w^2 = -3, v^2 = -2, x = s^2 + 1."""
    K1 = SimpleExtension(QQ, [3, 0, 1], "w")
    K = SimpleExtension(K1, [2, 0, 1], "v")
    A = PowerSeriesRing(K, "s", N)
    s, w, v = A.gen, A(K1.gen), A(K.gen)
    x = s * s + 1
    r = sqrt_hensel(x * x - 4, w)
    y = (x * x + 1 + s * sqrt_hensel((s * s + 2) * (s ** 4 + 2 * s * s - 4), 2 * v)) / 2
    return riley_form(fig8(), x, y, r), {"A": A, "s": s, "w": w, "x": x, "y": y, "r": r}


def fig8_near_root(N=8):
    """Figure-eight near x = sqrt(5/2) over Q(a)(c)[[s]], a^2 = 10, c^2 = -6."""
    Ka = SimpleExtension(QQ, [-10, 0, 1], "a")
    Kc = SimpleExtension(Ka, [6, 0, 1], "c")
    A = PowerSeriesRing(Kc, "s", N)
    s, a, c = A.gen, A(Ka.gen), A(Kc.gen)
    x = s + sqrt_hensel(A(5) / 2, a / 2)
    r = sqrt_hensel(x * x - 4, c / 2)
    rt = sqrt_hensel((x * x - 1) * (x * x - 5), a * c / 4)
    y = (x * x + 1 + rt) / 2
    return riley_form(fig8(), x, y, r), {"A": A, "s": s, "x": x, "r": r, "rt": rt,
                                         "T_mu": rt / 2, "T_lambda": 5 - 2 * x * x}


def k52_scalars(x, y):
    Py = 3 * y * y - 2 * (x * x + 1) * y + 3 * x * x - 2
    EL = (5 * x ** 4 * y - 10 * x ** 4 - 5 * x * x * y * y - 7 * x * x * y + 31 * x * x
          + 7 * y * y - 7 * y - 21)
    return Py, EL


def k52_series(N=8):
    """5_2 knot with uniformizer s = y - xi over Q(b)(r)[[s]]."""
    Kb = SimpleExtension(QQ, [-7, -14, -5, 2, 1], "b")
    b0 = Kb.gen
    Kr = SimpleExtension(Kb, [-(b0 * b0 - 4), 0, 1], "r")
    A = PowerSeriesRing(Kr, "s", N)
    s, b, r = A.gen, A(b0), A(Kr.gen)
    xi = b ** 3 / 2 + b ** 2 / 2 - 5 * b / 2 - 2
    y = xi + s
    x = sqrt_hensel((y ** 3 - y * y - 2 * y + 1) / (y * y - 3 * y + 2), b)
    m = sqrt_hensel(x * x - 4, r)
    Py, EL = k52_scalars(x, y)
    return riley_form(k52(), x, y, m), {"A": A, "s": s, "x": x, "y": y, "b": b, "xi": xi,
                                        "T_mu": Py / 2, "T_lambda": EL}


def fig8_holonomy():
    """Figure-eight holonomy over the Eisenstein integers."""
    O = QuadraticIntegers(-3, "w")
    w = O.gen
    omega = (1 + w) / 2
    rep = rep_from_assignment(fig8(), [[[O(1), O(1)], [O(0), O(1)]], [[O(1), O(0)], [omega, O(1)]]])
    return rep, {"O": O, "w": w, "omega": omega}


def fig8_z53(Ns=8, Np=8):
    """Figure-eight over Z_53[[s]], sqrt(5/2) = 33 mod 53."""
    A = PowerSeriesRing(PAdicIntegers(53, Np), "s", Ns)
    s = A.gen
    x = s + sqrt_hensel(A(5) / 2, A(33))
    r = sqrt_hensel(x * x - 4, A(5))
    rt = sqrt_hensel((x * x - 1) * (x * x - 5), A(6))
    y = (x * x + 1 + rt) / 2
    return riley_form(fig8(), x, y, r), {"A": A, "s": s, "x": x, "rt": rt,
                                         "T_mu": rt / 2, "T_lambda": 5 - 2 * x * x}


def k52_z17(Ns=8, Np=8):
    """5_2 over Z_17[[s]] in a conjugated form with entries in the ring."""
    A = PowerSeriesRing(PAdicIntegers(17, Np), "s", Ns)
    s = A.gen
    beta = algebraic_root([A(343), 0, A(196), 0, A(-126), 0, A(20)], A(2))
    xi = algebraic_root([A(16), A(-11), A(-2), A(2)], A(4))
    x = s + beta
    y = algebraic_root([-2 * x * x + 1, 3 * x * x - 2, -(x * x + 1), A(1)], xi)
    q = algebraic_root([x - 2, -(y - 2 * x + 2), x - 2], A(0))
    g1 = [[x - 1, A(1)], [x - 2, A(1)]]
    g2 = [[A(1), q], [y - x - (x - 2) * (1 + q), x - 1]]
    rep = rep_from_assignment(k52(), [g1, g2])
    Py, EL = k52_scalars(x, y)
    E = (2 * x ** 4 * y - 4 * x ** 4 - 2 * x * x * y * y - 2 * x * x * y + 10 * x * x
         + 2 * y * y - 2 * y - 6)
    F = (x ** 4 * y - 2 * x ** 4 - x * x * y * y - 3 * x * x * y + 11 * x * x
         + 3 * y * y - 3 * y - 9)
    return rep, {"A": A, "s": s, "x": x, "y": y, "beta": beta, "xi": xi,
                 "T_mu": Py / 2, "T_lambda": EL, "E": E, "F": F}


TREFOIL_RELATION = "g1 g2 g1 = g2 g1 g2"


def trefoil():
    return presentation_from_text(["g1", "g2"], [TREFOIL_RELATION], "g1", "g2 g1 g1 g2 g1^-4")


def torus_2_3():
    """<a, b | a^2 = b^3>, with meridian b^-1 a."""
    return presentation_from_text(["a", "b"], ["a a = b b b"], "b^-1 a")


def _mul(A, B, p):
    return ((A[0] * B[0] + A[1] * B[2]) % p, (A[0] * B[1] + A[1] * B[3]) % p,
            (A[2] * B[0] + A[3] * B[2]) % p, (A[2] * B[1] + A[3] * B[3]) % p)


def _inv(A, p):
    return (A[3], -A[1] % p, -A[2] % p, A[0])


def eval_word_mod_p(images, w, p):
    M = (1, 0, 0, 1)
    for x in w:
        g = images[abs(x) - 1]
        M = _mul(M, g if x > 0 else _inv(g, p), p)
    return M


def riley_points(P, p):
    """All (g1, g2) = ([m, 1; 0, 1/m], [m, 0; c, 1/m]) over F_p satisfying the relators."""
    out = []
    for m in range(1, p):
        mi = pow(m, -1, p)
        for c in range(p):
            imgs = [(m, 1, 0, mi), (m, 0, c, mi)]
            if all(eval_word_mod_p(imgs, r, p) == (1, 0, 0, 1) for r in P.relators):
                out.append(imgs)
    return out


def torus_pair(x1, y1, x2, y2, p):
    """(a, b) with tr a = 0 and tr b = 1 over F_p, so a^2 = b^3 = -1."""
    y1, y2 = y1 % p or 1, y2 % p or 1
    a = (x1 % p, y1, -(1 + x1 * x1) * pow(y1, -1, p) % p, -x1 % p)
    b = (x2 % p, y2, (x2 * (1 - x2) - 1) * pow(y2, -1, p) % p, (1 - x2) % p)
    return [a, b]


def sl2_from_seed(a, b, c, p):
    """A matrix of SL2(F_p) from three residues (a made nonzero)."""
    a = a % p or 1
    d = (1 + b * c) * pow(a, -1, p) % p
    return (a, b % p, c % p, d)


def conjugate_mod_p(images, U, p):
    Ui = _inv(U, p)
    return [_mul(_mul(Ui, g, p), U, p) for g in images]


def rep_mod_p(P, images, p):
    from knotselmer.rings import PrimeField
    F = PrimeField(p)
    return rep_from_assignment(P, [[[F(g[0]), F(g[1])], [F(g[2]), F(g[3])]] for g in images], ring=F)
