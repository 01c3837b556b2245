"""Exact univariate polynomials over Q, Berlekamp-Massey and matrix minimal
polynomials.  No floating point anywhere."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


def _trim(c: list[Fraction]) -> tuple[Fraction, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Dense polynomial, coefficients in ascending degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim([Fraction(x) for x in coeffs])

    @classmethod
    def x(cls, power: int = 1) -> "Poly":
        return cls([0] * power + [1])

    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Comma-separated integer coefficients, ascending degree."""
        return cls(int(t) for t in text.strip().split(","))

    def format(self) -> str:
        return ",".join(str(v) for v in self.int_coeffs()) + "\n"

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            terms.append(f"{sign} {body}{'*' if body and mon else ''}{mon}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.c), len(other.c))
        return Poly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-a for a in self.c)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(a * other for a in self.c)
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def monic(self) -> "Poly":
        if not self.c:
            return self
        lc = self.c[-1]
        return Poly(a / lc for a in self.c)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.c)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"non-integral polynomial {self!r}")
        return [int(a) for a in self.c]

    def primitive(self) -> "Poly":
        """Integer polynomial with content 1 and positive leading coefficient."""
        if not self.c:
            return self
        den = reduce(lambda a, b: a * b // gcd(a, b), (a.denominator for a in self.c), 1)
        ints = [int(a * den) for a in self.c]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Poly(v // g for v in ints)


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.c)
    db, lb = b.degree, b.lead()
    if a.degree < db:
        return Poly(), a
    quo = [Fraction(0)] * (a.degree - db + 1)
    for i in range(a.degree - db, -1, -1):
        q = rem[i + db] / lb
        quo[i] = q
        if q:
            for j, bc in enumerate(b.c):
                rem[i + j] -= q * bc
    return Poly(quo), Poly(rem[:db])


def _pseudo_rem(a: Poly, b: Poly) -> Poly:
    """lc(b)^(deg a - deg b + 1) * a  mod  b, kept integral."""
    rem = [int(x) for x in a.c]
    bc = [int(x) for x in b.c]
    db, lb = len(bc) - 1, bc[-1]
    for i in range(len(rem) - 1, db - 1, -1):
        t = rem[i]
        rem = [r * lb for r in rem]
        if t:
            for j, c in enumerate(bc):
                rem[i - db + j] -= t * c
        rem.pop()
    return Poly(rem)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via a primitive polynomial remainder sequence."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, _pseudo_rem(a, b).primitive()
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_lcm_all(polys: Iterable[Poly]) -> Poly:
    return reduce(poly_lcm, polys, Poly.const(1))


def strip_x_power(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("cannot strip the zero polynomial")
    i = 0
    while p.c[i] == 0:
        i += 1
    return Poly(p.c[i:]).monic()


def x_power(p: Poly) -> int:
    i = 0
    while p.c[i] == 0:
        i += 1
    return i


def berlekamp_massey(seq: Sequence) -> Poly:
    """Monic characteristic polynomial of least degree generating ``seq``
    from its first term on (an x^e factor absorbs leading transients)."""
    s = [Fraction(v) for v in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            if C[i]:
                d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = C[:] if 2 * L <= n else None
        if len(C) < len(B) + m:
            C.extend([Fraction(0)] * (len(B) + m - len(C)))
        for i, bc in enumerate(B):
            if bc:
                C[i + m] -= coef * bc
        if T is not None:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = C + [Fraction(0)] * (L + 1 - len(C))
    return Poly(C[L - i] for i in range(L + 1))


def berlekamp_massey_mod(seq: Sequence[int], p: int) -> list[int]:
    """Connection polynomial over GF(p) as ascending coefficients of the
    monic characteristic polynomial (symmetric residues)."""
    s = [v % p for v in seq]
    C, B = [1], [1]
    L, m, b = 0, 1, 1
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d = (d + C[i] * s[n - i]) % p
        if d == 0:
            m += 1
            continue
        coef = d * pow(b, p - 2, p) % p
        T = C[:] if 2 * L <= n else None
        if len(C) < len(B) + m:
            C.extend([0] * (len(B) + m - len(C)))
        for i, bc in enumerate(B):
            C[i + m] = (C[i + m] - coef * bc) % p
        if T is not None:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = C + [0] * (L + 1 - len(C))
    half = p // 2
    return [c - p if c > half else c for c in (C[L - i] for i in range(L + 1))]


def recurrence_residual(p: Poly, seq: Sequence, n: int, offset: int = 0) -> Fraction:
    """sum_i p_i * seq(n - d + i), where seq[j] holds the term of index offset + j."""
    d = p.degree
    return sum((p.c[i] * seq[n - d + i - offset] for i in range(d + 1) if p.c[i]), Fraction(0))


def check_recurrence(p: Poly, seq: Sequence, from_index: int, offset: int = 0, to_index: int | None = None) -> bool:
    """True iff the recurrence with characteristic polynomial ``p`` holds at
    every index n in [from_index, to_index] (default: the last term)."""
    last = offset + len(seq) - 1
    to_index = last if to_index is None else to_index
    if from_index - p.degree < offset or to_index > last or to_index < from_index:
        raise ValueError("not enough terms to check the recurrence")
    return all(recurrence_residual(p, seq, n, offset) == 0 for n in range(from_index, to_index + 1))


# --- matrix minimal polynomials ---------------------------------------------

def _rows(M) -> list[list[tuple[int, int]]]:
    return [[(j, int(v)) for j, v in enumerate(row) if v] for row in M]


def _apply(rows, vec):
    return [sum(v * vec[j] for j, v in r) if r else 0 for r in rows]


class _Echelon:
    """Fraction-free row echelon basis over Z (spans the same Q-space),
    optionally tracking the combination that produced each row."""

    def __init__(self):
        self.basis: list[tuple[int, list[int], list[int] | None]] = []

    def reduce(self, v: list[int], combo: list[int] | None = None):
        v = list(v)
        combo = None if combo is None else list(combo)
        for p, b, cb in self.basis:
            t = v[p]
            if not t:
                continue
            s = b[p]
            v = [s * x - t * y for x, y in zip(v, b)]
            if combo is not None:
                if len(combo) < len(cb):
                    combo += [0] * (len(cb) - len(combo))
                combo = [s * x - t * (cb[i] if i < len(cb) else 0) for i, x in enumerate(combo)]
            g = reduce(gcd, v, 0)
            if combo is not None:
                g = reduce(gcd, combo, g)
            if g > 1:
                v = [x // g for x in v]
                if combo is not None:
                    combo = [x // g for x in combo]
        return v, combo

    def add(self, v: list[int], combo: list[int] | None = None) -> None:
        p = next(i for i, x in enumerate(v) if x)
        self.basis.append((p, v, combo))

    def __len__(self) -> int:
        return len(self.basis)


def vector_minpoly(M, v) -> Poly:
    """Monic generator of {q : q(M) v = 0} via the Krylov sequence of v."""
    rows = _rows(M)
    ech = _Echelon()
    cur = [int(x) for x in v]
    for i in range(len(rows) + 1):
        r, combo = ech.reduce(cur, [0] * i + [1])
        if not any(r):
            return Poly(combo).monic()
        ech.add(r, combo)
        cur = _apply(rows, cur)
    raise AssertionError("Krylov sequence failed to become dependent")


def matrix_minpoly(M) -> Poly:
    """Minimal polynomial of a square integer matrix: LCM of the minimal
    polynomials of unit vectors, skipping those already inside the sum of
    Krylov spaces seen so far (their minimal polynomial divides the LCM)."""
    N = len(M)
    if N == 0:
        return Poly.const(1)
    rows = _rows(M)
    span = _Echelon()
    result = Poly.const(1)
    for j in range(N):
        e = [0] * N
        e[j] = 1
        r, _ = span.reduce(e)
        if not any(r):
            continue
        result = poly_lcm(result, vector_minpoly(M, e))
        cur = e
        while True:
            r, _ = span.reduce(cur)
            if not any(r):
                break
            span.add(r)
            cur = _apply(rows, cur)
    return result


def poly_eval_matrix(p: Poly, M) -> list[list[int]]:
    """p(M) for an integer matrix and integral p, by Horner's rule."""
    N = len(M)
    rows = _rows(M)
    coeffs = p.int_coeffs()
    X = [[0] * N for _ in range(N)]
    for a in reversed(coeffs):
        # X <- X * M + a I ; column j of X*M sums columns of X weighted by M[.][j]
        Y = [[0] * N for _ in range(N)]
        for i, r in enumerate(rows):
            for j, v in r:
                # (X M)[:, j] += M[i][j] * X[:, i]
                for t in range(N):
                    xi = X[t][i]
                    if xi:
                        Y[t][j] += v * xi
        for t in range(N):
            Y[t][t] += a
        X = Y
    return X
