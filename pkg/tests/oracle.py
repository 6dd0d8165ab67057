"""Slow elementwise reference implementations over fractions.Fraction.

Everything here works on plain nested lists and explicit loops over basis
vectors so it shares no code path with the vectorized package internals.
"""

from fractions import Fraction
from itertools import product


def to_lists(arr):
    if hasattr(arr, "tolist"):
        arr = arr.tolist()
    if isinstance(arr, list):
        return [to_lists(x) for x in arr]
    return Fraction(int(arr.numerator), int(arr.denominator))


class Alg:
    """Structure constants c[i][j][k], twist A[i][j] (column action), parities p."""

    def __init__(self, a):
        self.p = list(a.parities)
        self.n = len(self.p)
        self.c = to_lists(a.mul)
        self.A = to_lists(a.alpha)

    def vec(self, i):
        return [Fraction(int(k == i)) for k in range(self.n)]

    def add(self, *terms):
        out = [Fraction(0)] * self.n
        for coef, v in terms:
            for k in range(self.n):
                out[k] += coef * v[k]
        return out

    def mul_with(self, t, x, y):
        out = [Fraction(0)] * self.n
        for i, j in product(range(self.n), repeat=2):
            if x[i] and y[j]:
                for k in range(self.n):
                    out[k] += x[i] * y[j] * t[i][j][k]
        return out

    def mul(self, x, y):
        return self.mul_with(self.c, x, y)

    def alpha(self, x):
        return [sum(self.A[r][s] * x[s] for s in range(self.n)) for r in range(self.n)]

    def lin(self, t, x):
        """1-cochain t[i][k] applied to x."""
        return [sum(x[i] * t[i][k] for i in range(self.n)) for k in range(self.n)]

    def s(self, i, j):
        return -1 if self.p[i] and self.p[j] else 1

    def triples(self):
        return product(range(self.n), repeat=3)


def is_zero_vec(v):
    return all(x == 0 for x in v)


def hom_novikov(alg: Alg) -> bool:
    e, m, a = alg.vec, alg.mul, alg.alpha
    for i, j in product(range(alg.n), repeat=2):
        if alg.alpha(m(e(i), e(j))) != m(a(e(i)), a(e(j))):
            return False
    for i, j, k in alg.triples():
        x, y, z = e(i), e(j), e(k)
        hxyz = alg.add((1, m(m(x, y), a(z))), (-1, m(a(x), m(y, z))))
        hyxz = alg.add((1, m(m(y, x), a(z))), (-1, m(a(y), m(x, z))))
        if alg.add((1, hxyz), (-alg.s(i, j), hyxz)) != [0] * alg.n:
            return False
        if m(m(x, y), a(z)) != alg.add((alg.s(j, k), m(m(x, z), a(y)))):
            return False
    return True


def hom_lie(alg: Alg) -> bool:
    e, b, a = alg.vec, alg.mul, alg.alpha
    for i, j in product(range(alg.n), repeat=2):
        if alg.add((1, b(e(i), e(j))), (alg.s(i, j), b(e(j), e(i)))) != [0] * alg.n:
            return False
        if alg.alpha(b(e(i), e(j))) != b(a(e(i)), a(e(j))):
            return False
    for i, j, k in alg.triples():
        x, y, z = e(i), e(j), e(k)
        total = alg.add(
            (alg.s(i, k), b(a(x), b(y, z))),
            (alg.s(j, i), b(a(y), b(z, x))),
            (alg.s(k, j), b(a(z), b(x, y))),
        )
        if not is_zero_vec(total):
            return False
    return True


def delta1(alg: Alg, t, fpar: int):
    """delta^1 f(x1, x2) = (-1)^{|x1||f|} x1 f(x2) + f(x1) x2 - f(x1 x2)."""
    e = alg.vec
    out = [[[Fraction(0)] * alg.n for _ in range(alg.n)] for _ in range(alg.n)]
    for i, j in product(range(alg.n), repeat=2):
        x, y = e(i), e(j)
        sign = -1 if alg.p[i] and fpar else 1
        v = alg.add(
            (sign, alg.mul(x, alg.lin(t, y))),
            (1, alg.mul(alg.lin(t, x), y)),
            (-1, alg.lin(t, alg.mul(x, y))),
        )
        out[i][j] = v
    return out


def delta2(alg: Alg, t, fpar: int):
    """The eight-term coboundary of a 2-cochain, evaluated pointwise."""
    e, m, a = alg.vec, alg.mul, alg.alpha

    def f(x, y):
        return alg.mul_with(t, x, y)

    out = [[[None] * alg.n for _ in range(alg.n)] for _ in range(alg.n)]
    for i, j, k in alg.triples():
        x, y, z = e(i), e(j), e(k)
        sxy, syz = alg.s(i, j), alg.s(j, k)
        sxf = -1 if alg.p[i] and fpar else 1
        syf = -1 if alg.p[j] and fpar else 1
        out[i][j][k] = alg.add(
            (1, f(a(x), m(y, z))),
            (-sxy, f(a(y), m(x, z))),
            (sxy, f(m(y, x), a(z))),
            (sxf, m(a(x), f(y, z))),
            (-sxy * syf, m(a(y), f(x, z))),
            (sxy, m(f(y, x), a(z))),
            (-syz, f(m(x, z), a(y))),
            (-syz, m(f(x, z), a(y))),
        )
    return out


def circle(alg: Alg, tf, tg):
    """f o_alpha g for even 2-cochains, written from its two halves."""
    e, a = alg.vec, alg.alpha

    def f(x, y):
        return alg.mul_with(tf, x, y)

    def g(x, y):
        return alg.mul_with(tg, x, y)

    out = [[[None] * alg.n for _ in range(alg.n)] for _ in range(alg.n)]
    for i, j, k in alg.triples():
        x, y, z = e(i), e(j), e(k)
        sxy, syz = alg.s(i, j), alg.s(j, k)
        out[i][j][k] = alg.add(
            (1, f(a(x), g(y, z))),
            (-1, f(g(x, y), a(z))),
            (-sxy, f(a(y), g(x, z))),
            (sxy, f(g(y, x), a(z))),
            (1, f(g(x, y), a(z))),
            (-syz, f(g(x, z), a(y))),
        )
    return out


def rank(rows) -> int:
    """Rank by fraction Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                q = m[i][c] / m[r][c]
                m[i] = [u - q * v for u, v in zip(m[i], m[r])]
        r += 1
    return r
