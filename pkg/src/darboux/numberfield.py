"""Arithmetic in simple algebraic number fields ``Q[t]/(m)``.

Elements are tuples of ``deg m`` rationals (coefficients low to high).
Polynomials over a field are lists of elements, also low to high, with no
trailing zeros.  Factorization over an extension uses Trager's norm method;
only the univariate factorization over Q is delegated (see symbridge).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "NumberField",
    "QQ_FIELD",
    "qpoly_divmod",
    "qpoly_gcdex",
    "upoly_trim",
    "upoly_add",
    "upoly_sub",
    "upoly_mul",
    "upoly_divmod",
    "upoly_gcd",
    "upoly_monic",
    "upoly_deriv",
    "upoly_eval",
    "upoly_shift",
    "squarefree_decomposition",
    "factor_over",
    "extend",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# --- rational univariate polynomials, lists of Fractions low to high -------

def _qtrim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def qpoly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _qtrim([Fraction(c) for c in a])
    b = _qtrim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a.pop()
        _qtrim(a)
    return _qtrim(q), a


def _qmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qtrim(out)


def _qsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)])


def qpoly_gcdex(a: Sequence[Fraction], b: Sequence[Fraction]):
    """``(s, t, g)`` with ``s*a + t*b = g`` and ``g`` the monic gcd."""
    r0, r1 = _qtrim(list(a)), _qtrim(list(b))
    s0, s1 = [_ONE], []
    t0, t1 = [], [_ONE]
    while r1:
        q, r = qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        t0, t1 = t1, _qsub(t0, _qmul(q, t1))
    if not r0:
        return [], [], []
    lead = r0[-1]
    return [c / lead for c in s0], [c / lead for c in t0], [c / lead for c in r0]


# --- the field -------------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """``Q[t]/(m)`` for a monic ``m`` irreducible over Q (not re-checked).

    ``modulus`` lists the coefficients of ``m`` low to high.  The field of
    rationals is ``NumberField((0, 1))``.
    """

    modulus: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        m = tuple(Fraction(c) for c in self.modulus)
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        object.__setattr__(self, "modulus", m)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def zero(self) -> tuple[Fraction, ...]:
        return (_ZERO,) * self.degree

    def one(self) -> tuple[Fraction, ...]:
        return self.from_rational(1)

    def gen(self) -> tuple[Fraction, ...]:
        """The class of ``t``; for Q this is the rational ``-m(0)``."""
        if self.degree == 1:
            return (-self.modulus[0],)
        return self.reduce([_ZERO, _ONE])

    def from_rational(self, c) -> tuple[Fraction, ...]:
        return (Fraction(c),) + (_ZERO,) * (self.degree - 1)

    def reduce(self, p: Sequence[Fraction]) -> tuple[Fraction, ...]:
        p = list(p)
        n = self.degree
        m = self.modulus
        for k in range(len(p) - 1, n - 1, -1):
            c = p[k]
            if c:
                for i in range(n):
                    p[k - n + i] -= c * m[i]
        p = p[:n] + [_ZERO] * (n - len(p))
        return tuple(p)

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_rational(self, a) -> bool:
        return not any(a[1:])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self.degree == 1:
            return (a[0] * b[0],)
        if not any(a) or not any(b):
            return self.zero()
        return self.reduce(_qmul(a, b) or [_ZERO])

    def scale(self, a, c: Fraction):
        return tuple(x * c for x in a)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.degree == 1:
            return (1 / a[0],)
        s, _, g = qpoly_gcdex(_qtrim(list(a)), list(self.modulus))
        if len(g) != 1:
            raise ArithmeticError("modulus is reducible: zero divisor found")
        return self.reduce(s or [_ZERO])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        r = self.one()
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def eval_rational_poly(self, coeffs: Sequence[Fraction], x):
        """Value at ``x`` of a polynomial with rational coefficients."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.from_rational(c))
        return acc


QQ_FIELD = NumberField((Fraction(0), Fraction(1)))


# --- polynomials over a field ------------------------------------------------

def upoly_trim(K: NumberField, p: list) -> list:
    while p and not any(p[-1]):
        p.pop()
    return p


def upoly_add(K: NumberField, a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    z = K.zero()
    return upoly_trim(K, [K.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def upoly_sub(K: NumberField, a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    z = K.zero()
    return upoly_trim(K, [K.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def upoly_mul(K: NumberField, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [K.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if any(x):
            for j, y in enumerate(b):
                if any(y):
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
    return upoly_trim(K, out)


def upoly_divmod(K: NumberField, a: Sequence, b: Sequence) -> tuple[list, list]:
    a = upoly_trim(K, list(a))
    b = upoly_trim(K, list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = K.inv(b[-1])
    q = [K.zero()] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = K.mul(a[-1], inv_lead)
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = K.sub(a[k + i], K.mul(c, bc))
        a.pop()
        upoly_trim(K, a)
    return upoly_trim(K, q), a


def upoly_monic(K: NumberField, a: Sequence) -> list:
    a = upoly_trim(K, list(a))
    if not a:
        return a
    inv = K.inv(a[-1])
    return [K.mul(c, inv) for c in a]


def upoly_gcd(K: NumberField, a: Sequence, b: Sequence) -> list:
    """Monic gcd; the gcd of two zero polynomials is the empty list."""
    a, b = upoly_trim(K, list(a)), upoly_trim(K, list(b))
    while b:
        a, b = b, upoly_divmod(K, a, b)[1]
    return upoly_monic(K, a)


def upoly_deriv(K: NumberField, a: Sequence) -> list:
    return upoly_trim(K, [K.scale(c, Fraction(i)) for i, c in enumerate(a)][1:])


def upoly_eval(K: NumberField, a: Sequence, x):
    acc = K.zero()
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def upoly_shift(K: NumberField, a: Sequence, s) -> list:
    """Coefficients of ``a(t + s)`` (Horner-style Taylor shift)."""
    a = list(a)
    n = len(a)
    if not any(s):
        return a
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] = K.add(a[j], K.mul(s, a[j + 1]))
    return upoly_trim(K, a)


def squarefree_decomposition(K: NumberField, a: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: ``a = lc * prod(f_i ** i)`` with monic square-free
    pairwise coprime ``f_i``; only non-constant factors are returned."""
    a = upoly_monic(K, a)
    if len(a) <= 1:
        return []
    out = []
    da = upoly_deriv(K, a)
    g = upoly_gcd(K, a, da)
    b = upoly_divmod(K, a, g)[0]
    c = upoly_divmod(K, da, g)[0]
    d = upoly_sub(K, c, upoly_deriv(K, b))
    i = 1
    while len(b) > 1:
        f = upoly_gcd(K, b, d)
        b = upoly_divmod(K, b, f)[0]
        c = upoly_divmod(K, d, f)[0]
        d = upoly_sub(K, c, upoly_deriv(K, b))
        if len(f) > 1:
            out.append((f, i))
        i += 1
    return out


# --- Trager norms ------------------------------------------------------------

def _norm(K: NumberField, h: Sequence, k: int) -> list[Fraction]:
    """``Res_t(m(t), h(x - k t))`` as rational coefficients in ``x``."""
    import sympy

    x, t = sympy.symbols("x t")
    m = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(K.modulus))
    H = 0
    for j, c in enumerate(h):
        cj = sum(sympy.Rational(v.numerator, v.denominator) * t ** i for i, v in enumerate(c))
        H += cj * (x - k * t) ** j
    r = sympy.Poly(sympy.resultant(sympy.Poly(m, t), sympy.Poly(sympy.expand(H), t)), x)
    return [Fraction(int(c.p), int(c.q)) for c in reversed(r.all_coeffs())]


def _shifts(with_zero: bool = True):
    if with_zero:
        yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _squarefree_norm(K: NumberField, h: Sequence, with_zero: bool = True) -> tuple[int, list[Fraction]]:
    for k in _shifts(with_zero):
        N = _norm(K, h, k)
        dN = [i * c for i, c in enumerate(N)][1:]
        if len(qpoly_gcdex(N, dN)[2]) == 1:
            return k, N
    raise AssertionError("unreachable")  # pragma: no cover


def factor_over(K: NumberField, a: Sequence) -> list[tuple[list, int]]:
    """Monic irreducible factors of ``a`` over ``K`` with multiplicities."""
    from .symbridge import factor_rational

    out = []
    if K.degree == 1:
        a = upoly_trim(K, list(a))
        if len(a) <= 1:
            return []
        for fac, k in factor_rational([c[0] for c in a]):
            out.append(([K.from_rational(c) for c in fac], k))
        return out
    alpha = K.gen()
    for s, mult in squarefree_decomposition(K, a):
        if len(s) == 2:
            out.append((s, mult))
            continue
        k, N = _squarefree_norm(K, s)
        for Ni, _ in factor_rational(N):
            # Ni(x + k*alpha) has coefficients in K
            shifted = upoly_shift(K, [K.from_rational(c) for c in Ni], K.scale(alpha, Fraction(k)))
            f = upoly_gcd(K, s, shifted)
            if len(f) > 1:
                out.append((f, mult))
    return out


def extend(K: NumberField, h: Sequence):
    """Adjoin a root of ``h`` (irreducible over ``K``, degree >= 2).

    Returns ``(L, embed, beta)``: the field ``L = K(beta)`` given by a
    primitive element, a function mapping elements of ``K`` into ``L``, and
    ``beta`` as an element of ``L``.
    """
    h = upoly_monic(K, h)
    if len(h) < 3:
        raise ValueError("extend needs a polynomial of degree >= 2")
    if K.degree == 1:
        L = NumberField(tuple(c[0] for c in h))
        return L, (lambda a: L.from_rational(a[0])), L.gen()
    # k = 0 would make h(w - k t) constant in t, so alpha could not be read off
    k, N = _squarefree_norm(K, h, with_zero=False)
    L = NumberField(tuple(N))
    w = L.gen()
    # alpha_L is the common root in t of m(t) and h(w - k t), over L
    m_L = [L.from_rational(c) for c in K.modulus]
    # h(w - k t) = sum_j c_j(t) (w - k t)^j with c_j(t) polynomials in t
    lin = [w, L.from_rational(-k)]
    H: list = []
    power = [L.one()]
    for c in h:
        cj = [L.from_rational(v) for v in c]
        H = upoly_add(L, H, upoly_mul(L, upoly_trim(L, cj), power))
        power = upoly_mul(L, power, lin)
    g = upoly_gcd(L, m_L, H)
    if len(g) != 2:
        raise ArithmeticError("primitive element construction failed")
    alpha_L = L.neg(g[0])
    beta = L.sub(w, L.scale(alpha_L, Fraction(k)))

    def embed(a):
        return L.eval_rational_poly(a, alpha_L)

    return L, embed, beta
