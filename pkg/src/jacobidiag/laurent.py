"""Exact arithmetic in Q[t, t^-1] and in fractions with polynomial denominators.

Everything here is immutable and exact: coefficients are ``fractions.Fraction``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class LaurentPoly:
    """A Laurent polynomial with rational coefficients.

    Stored as a sorted tuple of ``(exponent, coefficient)`` pairs with no zero
    coefficients.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, coeffs: Mapping[int, Rational] | Iterable[tuple[int, Rational]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = Fraction(c)
            if c:
                acc[e] = acc.get(e, 0) + c
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Rational = 1) -> "LaurentPoly":
        c = Fraction(coeff)
        return cls._raw(((exp, c),) if c else ())

    @classmethod
    def constant(cls, c: Rational) -> "LaurentPoly":
        return cls.monomial(0, c)

    # -- basic queries -------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exp(self) -> int:
        return self.terms[0][0]

    def max_exp(self) -> int:
        return self.terms[-1][0]

    def spread(self) -> int:
        return self.terms[-1][0] - self.terms[0][0] if self.terms else 0

    def coeff(self, e: int) -> Fraction:
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def key(self) -> tuple:
        return tuple((e, c.numerator, c.denominator) for e, c in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def leading(self) -> Fraction:
        return self.terms[-1][1]

    # -- arithmetic ----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __lt__(self, other: "LaurentPoly") -> bool:
        return self.key() < other.key()

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((e, -c) for e, c in self.terms))

    def __add__(self, other):
        if isinstance(other, LaurentFraction):
            return NotImplemented
        other = _as_poly(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return LaurentPoly._raw(tuple(sorted(acc.items())))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LaurentFraction):
            return NotImplemented
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, LaurentFraction):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return ZERO
            return LaurentPoly._raw(tuple((e, a * c) for e, a in self.terms))
        if not self.terms or not other.terms:
            return ZERO
        if len(other.terms) == 1:
            (f, b), = other.terms
            return LaurentPoly._raw(tuple((e + f, a * b) for e, a in self.terms))
        if len(self.terms) == 1:
            return other * self
        acc: dict[int, Fraction] = {}
        for e, a in self.terms:
            for f, b in other.terms:
                acc[e + f] = acc.get(e + f, 0) + a * b
        return LaurentPoly._raw(tuple(sorted((e, c) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return LaurentFraction(self, _as_poly(other))

    def __rtruediv__(self, other):
        return LaurentFraction(_as_poly(other), self)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-unit")
            (e, c), = self.terms
            return LaurentPoly.monomial(-e * (-n), c ** n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((e + k, c) for e, c in self.terms))

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple((-e, c) for e, c in reversed(self.terms)))

    def __call__(self, x: Rational) -> Fraction:
        x = Fraction(x)
        return sum((c * x ** e for e, c in self.terms), Fraction(0))

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1)


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Laurent polynomial")


def bar(p):
    """Apply t -> t^-1 to a polynomial or fraction."""
    return p.bar()


def is_symmetric(p: LaurentPoly) -> bool:
    """True iff bar(p) = a * t^k * p for some rational a and integer k."""
    if p.is_zero():
        raise ValueError("is_symmetric: zero polynomial")
    q = p.bar()
    # every shift that could align some term of t^k * p with the lowest term of q
    for k in range(q.min_exp() - p.max_exp(), q.max_exp() - p.min_exp() + 1):
        shifted = p.shift(k)
        if shifted.min_exp() != q.min_exp():
            continue
        a = q.terms[0][1] / shifted.terms[0][1]
        if shifted * a == q:
            return True
    return False


# --------------------------------------------------------------------------
# Ordinary polynomials in Q[t], as coefficient lists (index = degree).
# Used for division, gcd and modular inverses after t-powers are cleared.

def _to_ordinary(p: LaurentPoly) -> tuple[list[Fraction], int]:
    """Return (coeffs, shift) with p = t^shift * sum coeffs[i] t^i, coeffs[0] != 0."""
    if p.is_zero():
        return [], 0
    lo = p.min_exp()
    out = [Fraction(0)] * (p.max_exp() - lo + 1)
    for e, c in p.terms:
        out[e - lo] = c
    return out, lo


def _from_ordinary(coeffs: list[Fraction], shift: int = 0) -> LaurentPoly:
    return LaurentPoly._raw(tuple((i + shift, c) for i, c in enumerate(coeffs) if c))


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


def _mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _monic(a: list[Fraction]) -> list[Fraction]:
    lead = a[-1]
    return [c / lead for c in a]


def _xgcd(a: list[Fraction], b: list[Fraction]):
    """Extended Euclid: returns (g, s, u) with s*a + u*b = g, g monic."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [Fraction(1)], []
    u0, u1 = [], [Fraction(1)]
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1))
        u0, u1 = u1, _sub(u0, _mul(q, u1))
    if not r0:
        return [], s0, u0
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in u0]


def ordinary_part(p: LaurentPoly) -> LaurentPoly:
    """p with its t-power unit removed and made monic: an ordinary polynomial, p(0) != 0."""
    coeffs, _ = _to_ordinary(p)
    if not coeffs:
        raise ValueError("zero polynomial has no ordinary part")
    return _from_ordinary(_monic(coeffs))


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in Q[t] after clearing t-powers (so the result is a unit-free representative)."""
    if a.is_zero():
        return ordinary_part(b) if b else ZERO
    if b.is_zero():
        return ordinary_part(a)
    g, _, _ = _xgcd(_to_ordinary(a)[0], _to_ordinary(b)[0])
    return _from_ordinary(g)


def poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a, b = ordinary_part(a), ordinary_part(b)
    g = poly_gcd(a, b)
    q, r = _divmod(_to_ordinary(a * b)[0], _to_ordinary(g)[0])
    assert not r
    return _from_ordinary(_monic(q))


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """a / b in Q[t^{+-1}]; raises if b does not divide a."""
    if a.is_zero():
        return ZERO
    ac, ash = _to_ordinary(a)
    bc, bsh = _to_ordinary(b)
    q, r = _divmod(ac, bc)
    if r:
        raise ValueError(f"{b} does not divide {a}")
    return _from_ordinary(q, ash - bsh)


def poly_mod(p: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Representative of p modulo m with exponents in [0, deg m).

    m is taken up to units; t is invertible modulo m because m(0) != 0 once
    t-powers are cleared.
    """
    mc, _ = _to_ordinary(m)
    if not mc:
        raise ZeroDivisionError("reduction modulo zero")
    if len(mc) == 1 or p.is_zero():
        return ZERO
    pc, psh = _to_ordinary(p)
    if psh >= 0:
        _, r = _divmod([Fraction(0)] * psh + pc, mc)
        return _from_ordinary(r)
    _, acc = _divmod(pc, mc)
    tinv = _tinv_mod(mc)
    for _ in range(-psh):
        if not acc:
            break
        _, acc = _divmod(_mul(acc, tinv), mc)
    return _from_ordinary(acc)


_TINV_CACHE: dict[tuple, list[Fraction]] = {}


def _tinv_mod(mc: list[Fraction]) -> list[Fraction]:
    key = tuple(mc)
    got = _TINV_CACHE.get(key)
    if got is None:
        g, s, _ = _xgcd([Fraction(0), Fraction(1)], mc)
        if g != [Fraction(1)]:
            raise ValueError("t is not invertible modulo a polynomial divisible by t")
        _, got = _divmod(s, mc)
        _TINV_CACHE[key] = got
    return got


def invert_mod(p: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Q with p*Q = 1 modulo m (extended Euclid over Q[t]); exponents in [0, deg m)."""
    mo = ordinary_part(m)
    mc = _to_ordinary(mo)[0]
    if len(mc) == 1:
        return ZERO
    pr = poly_mod(p, mo)
    if pr.is_zero():
        raise ValueError(f"invert_mod: {p} is divisible by {mo}")
    g, s, _ = _xgcd([Fraction(0)] * pr.min_exp() + _to_ordinary(pr)[0], mc)
    if len(g) != 1:
        raise ValueError(f"invert_mod: {p} and {m} share the factor {format_poly(_from_ordinary(g))}")
    _, r = _divmod(s, mc)
    return _from_ordinary(r)


# --------------------------------------------------------------------------
class LaurentFraction:
    """A fraction num/den with den an ordinary monic polynomial, den(0) != 0.

    Construction reduces by the gcd, so equal fractions have equal fields.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | Rational, den: LaurentPoly | Rational = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        dc, dsh = _to_ordinary(den)
        lead = dc[-1]
        # num / (t^dsh * lead * monic) = (num * t^-dsh / lead) / monic
        num = num.shift(-dsh) * (1 / lead)
        dc = [c / lead for c in dc]
        if num.is_zero():
            self.num, self.den, self._hash = ZERO, ONE, None
            return
        if len(dc) > 1:
            nc, nsh = _to_ordinary(num)
            g, _, _ = _xgcd(nc, dc)
            if len(g) > 1:
                nc, _ = _divmod(nc, g)
                dc, _ = _divmod(dc, g)
                num = _from_ordinary(nc, nsh)
        self.num = num
        self.den = _from_ordinary(dc)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "LaurentFraction":
        obj = object.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def of(cls, x) -> "LaurentFraction":
        if isinstance(x, LaurentFraction):
            return x
        return cls._raw(_as_poly(x), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def key(self) -> tuple:
        return (self.num.key(), self.den.key())

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentFraction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.den == ONE and self.num == _as_poly(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return LaurentFraction._raw(-self.num, self.den)

    def __add__(self, other):
        o = LaurentFraction.of(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return LaurentFraction(self.num + o.num, self.den)
        return LaurentFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LaurentFraction.of(other))

    def __rsub__(self, other):
        return LaurentFraction.of(other) - self

    def __mul__(self, other):
        o = LaurentFraction.of(other)
        if o.den == ONE and self.den != ONE:
            return LaurentFraction(self.num * o.num, self.den)
        if self.den == ONE and o.den == ONE:
            return LaurentFraction._raw(self.num * o.num, ONE)
        return LaurentFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = LaurentFraction.of(other)
        return LaurentFraction(self.num * o.den, self.den * o.num)

    def bar(self) -> "LaurentFraction":
        if self.den == ONE:
            return LaurentFraction._raw(self.num.bar(), ONE)
        return LaurentFraction(self.num.bar(), self.den.bar())

    def as_poly(self) -> LaurentPoly:
        if self.den != ONE:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __repr__(self) -> str:
        return f"LaurentFraction({format_fraction(self)!r})"

    def __str__(self) -> str:
        return format_fraction(self)


def normalize_fraction(f: LaurentFraction) -> tuple[LaurentPoly, LaurentFraction]:
    """Split f into a Laurent polynomial part and a proper part R/den, 0 <= deg R < deg den."""
    f = LaurentFraction.of(f)
    if f.den == ONE:
        return f.num, LaurentFraction._raw(ZERO, ONE)
    r = poly_mod(f.num, f.den)
    poly = exact_div(f.num - r, f.den)
    return poly, LaurentFraction._raw(r, f.den) if r else LaurentFraction._raw(ZERO, ONE)


def reduce_mod_poly(f) -> LaurentFraction:
    """Representative of f modulo Q[t^{+-1}]."""
    return normalize_fraction(LaurentFraction.of(f))[1]


def congruent_mod_poly(f, g) -> bool:
    return normalize_fraction(LaurentFraction.of(f) - LaurentFraction.of(g))[1].is_zero()


# --------------------------------------------------------------------------
# Text syntax: sums of terms c*t^k, parentheses, products, quotients.

def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.terms, key=lambda ec: -ec[0]):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _fmt_rat(a)
        else:
            mon = "t" if e == 1 else f"t^{e}"
            body = mon if a == 1 else f"{_fmt_rat(a)}*{mon}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_fraction(f: LaurentFraction) -> str:
    if f.den == ONE:
        return format_poly(f.num)
    return f"({format_poly(f.num)}) / ({format_poly(f.den)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\^)|([-+*/()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        toks.append(m.group(m.lastindex))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok=None):
        got = self.peek()
        if got is None or (tok is not None and got != tok):
            raise ParseError(f"expected {tok or 'token'} in {self.text!r}")
        self.i += 1
        return got

    def expr(self) -> LaurentFraction:
        if self.peek() in ("+", "-"):
            sign = self.take()
            acc = self.term()
            if sign == "-":
                acc = -acc
        else:
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> LaurentFraction:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero in {self.text!r}")
                acc = acc / rhs
        return acc

    def factor(self) -> LaurentFraction:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() in ("-", "+"):
                neg = self.take() == "-"
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"bad exponent in {self.text!r}")
            n = int(tok) * (-1 if neg else 1)
            if n < 0:
                if not (base.den == ONE and base.num.is_monomial()):
                    base = LaurentFraction(ONE) / base
                    n = -n
                else:
                    return LaurentFraction._raw(base.num ** n, ONE)
            out = LaurentFraction._raw(ONE, ONE)
            for _ in range(n):
                out = out * base
            return out
        return base

    def atom(self) -> LaurentFraction:
        tok = self.peek()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "t":
            self.take()
            return LaurentFraction._raw(T, ONE)
        if tok is not None and tok.isdigit():
            self.take()
            return LaurentFraction._raw(LaurentPoly.constant(int(tok)), ONE)
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_fraction(text: str) -> LaurentFraction:
    p = _Parser(text)
    val = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()!r} in {text!r}")
    return val


def parse_poly(text: str) -> LaurentPoly:
    f = parse_fraction(text)
    if f.den != ONE:
        raise ParseError(f"{text!r} is not a Laurent polynomial")
    return f.num


def poly(x) -> LaurentPoly:
    """Coerce a string, int, Fraction or LaurentPoly to a LaurentPoly."""
    if isinstance(x, str):
        return parse_poly(x)
    return _as_poly(x)


def frac(x) -> LaurentFraction:
    """Coerce a string, number, polynomial or fraction to a LaurentFraction."""
    if isinstance(x, str):
        return parse_fraction(x)
    return LaurentFraction.of(x)
