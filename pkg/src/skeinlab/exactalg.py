"""Exact sparse Laurent polynomials and rational functions over the integers.

Polynomial products, exact division and gcd are delegated to python-flint's
``fmpz_mpoly``.  A :class:`LaurentPoly` is stored as ``x^shift * P`` where ``P``
is an ordinary polynomial with no monomial factor, which makes the
representation canonical.  A :class:`RationalFunc` is ``num / den`` with ``den``
an ordinary polynomial without monomial factor, coprime to ``num`` and with
positive leading coefficient under graded lexicographic order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint

__all__ = [
    "LaurentPoly",
    "RationalFunc",
    "BudgetExceeded",
    "ZeroDivision",
    "as_laurent",
    "is_positive",
    "substitute",
    "chebyshev",
    "membership_bounded",
    "MembershipResult",
    "parse_laurent",
    "parse_rational",
    "default_names",
]


class ZeroDivision(ZeroDivisionError):
    """Division by the zero rational function."""


class ParseError(ValueError):
    """Malformed Laurent or rational text; the message names the column."""


class BudgetExceeded(RuntimeError):
    """A size budget was exhausted before a decision was reached."""


@lru_cache(maxsize=None)
def _ctx(nvars: int):
    names = tuple(f"x{i}" for i in range(max(nvars, 1)))
    return flint.fmpz_mpoly_ctx.get(names, "deglex")


def default_names(nvars: int, npunct: int = 0) -> list[str]:
    """Variable names ``A1..An`` followed by ``V1..Vp``."""
    return [f"A{i + 1}" for i in range(nvars - npunct)] + [
        f"V{i + 1}" for i in range(npunct)
    ]


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    Immutable.  Equality and hashing are structural on the canonical form.
    """

    __slots__ = ("nvars", "_poly", "_shift", "_hash", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], int] | None = None):
        ctx = _ctx(nvars)
        self.nvars = nvars
        self._hash = None
        self._terms = None
        if not terms:
            self._poly = ctx.from_dict({})
            self._shift = (0,) * nvars
            return
        items = [(tuple(e), int(c)) for e, c in terms.items() if c]
        for e, _ in items:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
        if not items:
            self._poly = ctx.from_dict({})
            self._shift = (0,) * nvars
            return
        low = tuple(min(e[i] for e, _ in items) for i in range(nvars))
        data: dict[tuple[int, ...], int] = {}
        for e, c in items:
            key = tuple(a - b for a, b in zip(e, low))
            data[key] = data.get(key, 0) + c
        self._set(ctx.from_dict({k: v for k, v in data.items() if v}), low)

    def _set(self, poly, shift: tuple[int, ...]) -> None:
        # strip the monomial content into the shift
        if poly.is_zero():
            self._poly = poly
            self._shift = (0,) * self.nvars
            return
        tc = poly.term_content()
        e = tc.monoms()[0] if self.nvars else ()
        if any(e):
            poly = poly / tc
            shift = tuple(a + b for a, b in zip(shift, e))
        self._poly = poly
        self._shift = tuple(shift)

    @classmethod
    def _raw(cls, nvars: int, poly, shift: Sequence[int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._hash = None
        obj._terms = None
        obj._set(poly, tuple(shift))
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls._raw(nvars, _ctx(nvars).constant(int(c)), (0,) * nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "LaurentPoly":
        return cls.monomial(nvars, tuple(1 if j == i else 0 for j in range(nvars)))

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls._raw(nvars, _ctx(nvars).constant(int(coeff)), tuple(exps))

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        if self._terms is None:
            s = self._shift
            self._terms = {
                tuple(a + b for a, b in zip(e, s)): int(c)
                for e, c in self._poly.to_dict().items()
            }
        return self._terms

    @property
    def poly(self):
        """The polynomial part ``P`` with ``self = x^shift * P``."""
        return self._poly

    @property
    def shift(self) -> tuple[int, ...]:
        return self._shift

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __len__(self) -> int:
        return len(self._poly)

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (self._poly.is_constant() and not any(self._shift))

    def is_polynomial(self) -> bool:
        return all(s >= 0 for s in self._shift)

    def min_degrees(self) -> tuple[int, ...]:
        return self._shift

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(int(c))
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** int(k)
            total += term
        return total

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        low = tuple(min(a, b) for a, b in zip(self._shift, o._shift))
        p = self._poly * _mono(self.nvars, [a - b for a, b in zip(self._shift, low)])
        q = o._poly * _mono(self.nvars, [a - b for a, b in zip(o._shift, low)])
        return LaurentPoly._raw(self.nvars, p + q, low)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, -self._poly, self._shift)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LaurentPoly._raw(
            self.nvars,
            self._poly * o._poly,
            tuple(a + b for a, b in zip(self._shift, o._shift)),
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            c = int(self._poly.leading_coefficient())
            if abs(c) != 1:
                raise ValueError("negative power of a non-unit monomial")
            return LaurentPoly.monomial(self.nvars, [s * k for s in self._shift], c ** (-k))
        return LaurentPoly._raw(self.nvars, self._poly ** k, [s * k for s in self._shift])

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Return ``self / other`` if it is a Laurent polynomial, else None."""
        if other.is_zero():
            raise ZeroDivision("division by zero")
        try:
            q = self._poly / other._poly
        except Exception:
            return None
        return LaurentPoly._raw(
            self.nvars, q, tuple(a - b for a, b in zip(self._shift, other._shift))
        )

    # -- identity -----------------------------------------------------
    def _key(self):
        return (self.nvars, self._shift, tuple(sorted(self._poly.to_dict().items())))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.nvars, other)
        if isinstance(other, RationalFunc):
            return other == RationalFunc(self)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self._shift == other._shift
            and self._poly == other._poly
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def to_string(self, names: Sequence[str] | None = None) -> str:
        return _format_terms(self.sorted_terms(), names or default_names(self.nvars))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_string()!r})"


@lru_cache(maxsize=4096)
def _mono_cached(nvars: int, exps: tuple[int, ...]):
    ctx = _ctx(nvars)
    if not any(exps):
        return ctx.constant(1)
    return ctx.term(coeff=1, exp_vec=list(exps))


def _mono(nvars: int, exps: Sequence[int]):
    return _mono_cached(nvars, tuple(exps))


def _format_terms(terms, names: Sequence[str]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms):
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        a = abs(c)
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(a)] + factors)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class RationalFunc:
    """Normalized quotient ``num / den`` of Laurent polynomials.

    ``den`` is kept as an ordinary polynomial without monomial factor and with
    positive leading coefficient; all monomial units live in ``num``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | int, den: LaurentPoly | int | None = None, *, nvars: int | None = None):
        if isinstance(num, int):
            if nvars is None:
                if isinstance(den, LaurentPoly):
                    nvars = den.nvars
                else:
                    raise ValueError("nvars required for integer numerator")
            num = LaurentPoly.constant(nvars, num)
        n = num.nvars
        if den is None:
            den = LaurentPoly.one(n)
        elif isinstance(den, int):
            den = LaurentPoly.constant(n, den)
        if den.nvars != n:
            raise ValueError("variable count mismatch")
        if den.is_zero():
            raise ZeroDivision("zero denominator")
        self._hash = None
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _trusted(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def variable(cls, nvars: int, i: int) -> "RationalFunc":
        return cls._trusted(LaurentPoly.variable(nvars, i), LaurentPoly.one(nvars))

    @classmethod
    def constant(cls, nvars: int, c: int) -> "RationalFunc":
        return cls._trusted(LaurentPoly.constant(nvars, c), LaurentPoly.one(nvars))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the normalized denominator is exactly 1."""
        return self.den.is_constant() and self.den == 1

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivision("denominator vanishes at point")
        return self.num.evaluate(point) / d

    def _coerce(self, other) -> "RationalFunc | None":
        if isinstance(other, RationalFunc):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunc._trusted(other, LaurentPoly.one(other.nvars))
        if isinstance(other, int):
            return RationalFunc.constant(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RationalFunc(self.num + o.num, self.den)
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc._trusted(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if self.is_zero():
            raise ZeroDivision("inverse of zero")
        return RationalFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivision("division by zero")
        return RationalFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "RationalFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunc._trusted(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if self.is_laurent():
            return self.num.to_string(names)
        return f"({self.num.to_string(names)})/({self.den.to_string(names)})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RationalFunc({self.to_string()!r})"


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    n = num.nvars
    one = LaurentPoly.one(n)
    # move the monomial part of den into num
    if any(den.shift):
        num = num * LaurentPoly.monomial(n, [-s for s in den.shift])
        den = LaurentPoly._raw(n, den.poly, (0,) * n)
    if num.is_zero():
        return num, one
    dp = den.poly
    if dp.is_constant():
        c = int(dp.leading_coefficient())
        if c == 1:
            return num, one
        g = _int_content(num.poly)
        from math import gcd

        g = gcd(g, c)
        if c < 0:
            g = -g
        if g != 1:
            num = LaurentPoly._raw(n, num.poly / g, num.shift)
            c //= g
        return num, LaurentPoly.constant(n, c)
    # fast path: exact division (the Laurent phenomenon makes this common)
    try:
        q = num.poly / dp
    except Exception:
        q = None
    if q is not None:
        return LaurentPoly._raw(n, q, num.shift), one
    g = num.poly.gcd(dp)
    if not g.is_constant() or abs(int(g.leading_coefficient())) != 1:
        np_ = num.poly / g
        dp = dp / g
    else:
        np_ = num.poly
    if int(dp.leading_coefficient()) < 0:
        np_, dp = -np_, -dp
    num = LaurentPoly._raw(n, np_, num.shift)
    den = LaurentPoly._raw(n, dp, (0,) * n)
    if any(den.shift):  # cannot happen: gcd quotient of a monomial-free poly
        num = num * LaurentPoly.monomial(n, [-s for s in den.shift])
        den = LaurentPoly._raw(n, den.poly, (0,) * n)
    return num, den


def _int_content(p) -> int:
    from math import gcd

    g = 0
    for c in p.coeffs():
        g = gcd(g, int(c))
    return g


def _to_rf(x, nvars: int | None = None) -> RationalFunc:
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunc._trusted(x, LaurentPoly.one(x.nvars))
    if isinstance(x, int) and nvars is not None:
        return RationalFunc.constant(nvars, x)
    raise TypeError(f"cannot convert {type(x).__name__} to RationalFunc")


def as_laurent(r: RationalFunc | LaurentPoly) -> LaurentPoly | None:
    """The Laurent polynomial equal to ``r``, or None.

    Coefficients are integers, so ``r`` with a constant denominator other
    than 1 (such as ``x/2``) is reported as absent.
    """
    if isinstance(r, LaurentPoly):
        return r
    if r.is_laurent():
        return r.num
    return None


def is_positive(p: LaurentPoly | RationalFunc) -> bool:
    """True iff every stored coefficient is positive."""
    if isinstance(p, RationalFunc):
        q = as_laurent(p)
        if q is None:
            return False
        p = q
    return all(int(c) > 0 for c in p.poly.coeffs())


def substitute(p: RationalFunc | LaurentPoly, images: Sequence[RationalFunc | LaurentPoly]) -> RationalFunc:
    """Replace variable ``i`` of ``p`` by ``images[i]``."""
    if len(images) != p.nvars:
        raise ValueError(f"expected {p.nvars} images, got {len(images)}")
    imgs = [_to_rf(x) for x in images]
    if not imgs:
        return _to_rf(p)
    m = imgs[0].nvars
    if any(x.nvars != m for x in imgs):
        raise ValueError("images live in different rings")
    if isinstance(p, LaurentPoly):
        return _subst_laurent(p, imgs)
    num = _subst_laurent(p.num, imgs)
    den = _subst_laurent(p.den, imgs)
    if den.is_zero():
        raise ZeroDivision("substitution makes the denominator vanish")
    return num / den


def _subst_laurent(p: LaurentPoly, imgs: list[RationalFunc]) -> RationalFunc:
    m = imgs[0].nvars
    if p.is_zero():
        return RationalFunc.constant(m, 0)
    terms = p.terms
    n = p.nvars
    lo = [min(e[i] for e in terms) for i in range(n)]
    hi = [max(e[i] for e in terms) for i in range(n)]
    for i in range(n):
        if lo[i] < 0 and imgs[i].is_zero():
            raise ZeroDivision(f"variable {i} occurs with negative exponent but maps to 0")
    # Write image_i = a_i / b_i and clear denominators per variable: a term
    # x^e becomes a^e b^(hi-e) / b^hi, negative exponents swap roles.
    pos_num: dict[int, list] = {}
    tops = []
    one = LaurentPoly.one(m)
    for i in range(n):
        a, b = imgs[i].num, imgs[i].den
        pos_num[i] = ([one], [one])  # powers of a and b
        tops.append((a, b))

    def pw(i: int, which: int, k: int) -> LaurentPoly:
        cache = pos_num[i][which]
        base = tops[i][which]
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]

    total = LaurentPoly.zero(m)
    for e, c in terms.items():
        t = LaurentPoly.constant(m, c)
        for i in range(n):
            span = hi[i] - lo[i]
            if span == 0 and tops[i][1] == one and lo[i] >= 0:
                if e[i]:
                    t = t * pw(i, 0, e[i])
                continue
            # x_i^e = a^(e-lo) b^(hi-e) * (a^lo / b^hi)
            k = e[i] - lo[i]
            t = t * pw(i, 0, k) * pw(i, 1, hi[i] - e[i])
        total = total + t
    num = total
    den = one
    for i in range(n):
        span = hi[i] - lo[i]
        if span == 0 and tops[i][1] == one and lo[i] >= 0:
            continue
        a, b = tops[i]
        den = den * b ** hi[i]
        if lo[i] >= 0:
            num = num * a ** lo[i]
        else:
            den = den * a ** (-lo[i])
    if den.is_zero():
        raise ZeroDivision("substitution makes a denominator vanish")
    return RationalFunc(num, den)


def chebyshev(k: int, t):
    """Normalized Chebyshev ``T_k(t)`` with ``T_0 = 2`` and ``T_1 = t``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    one = t ** 0
    prev, cur = 2 * one, t
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, t * cur - prev
    return cur


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\^)\s*(-?\d+)|([*+\-()/]))")


def parse_laurent(text: str, names: Sequence[str]) -> LaurentPoly:
    """Parse ``"3*A1^2*A2^-1 - A3"`` over the given variable names."""
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    src = text.strip()
    if src == "":
        raise ValueError("empty polynomial string")
    terms: dict[tuple[int, ...], int] = {}
    pos = 0
    sign = 1
    expect_term = True
    coeff = None
    exps = [0] * n
    have_factor = False

    def flush():
        nonlocal coeff, exps, have_factor
        if not have_factor and coeff is None:
            raise ParseError(f"empty term at column {pos + 1}")
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * (1 if coeff is None else coeff)
        coeff, exps, have_factor = None, [0] * n, False

    pending_star = False
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r} at column {pos + 1}")
        num, name, caret, power, op = m.groups()
        if num is not None:
            if have_factor or coeff is not None:
                if not pending_star:
                    raise ParseError(f"missing '*' at column {pos + 1}")
            if coeff is not None and pending_star:
                coeff *= int(num)
            elif have_factor:
                coeff = (coeff or 1) * int(num)
            else:
                coeff = int(num)
            pending_star = False
            expect_term = False
        elif name is not None:
            if name not in index:
                raise ParseError(f"unknown variable {name!r} at column {pos + 1}")
            if (have_factor or coeff is not None) and not pending_star:
                raise ParseError(f"missing '*' at column {pos + 1}")
            exps[index[name]] += 1
            have_factor = True
            pending_star = False
            expect_term = False
            last = index[name]
        elif caret is not None:
            if not have_factor or pending_star:
                raise ParseError(f"misplaced '^' at column {pos + 1}")
            exps[last] += int(power) - 1
        elif op in "+-":
            if expect_term:
                sign = sign * (-1 if op == "-" else 1)
            else:
                if pending_star:
                    raise ParseError(f"dangling '*' at column {pos + 1}")
                flush()
                sign = -1 if op == "-" else 1
                expect_term = True
        elif op == "*":
            if expect_term or pending_star:
                raise ParseError(f"misplaced '*' at column {pos + 1}")
            pending_star = True
        else:
            raise ParseError(f"unexpected {op!r} at column {pos + 1}")
        pos = m.end()
    if expect_term or pending_star:
        raise ValueError("polynomial string ends unexpectedly")
    flush()
    return LaurentPoly(n, {k: v for k, v in terms.items() if v})


def parse_rational(text: str, names: Sequence[str]) -> RationalFunc:
    """Parse either a Laurent string or ``"(num)/(den)"``."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s, re.S)
    if m and _balanced(m.group(1)) and _balanced(m.group(2)):
        return RationalFunc(parse_laurent(m.group(1), names), parse_laurent(m.group(2), names))
    return RationalFunc(parse_laurent(s, names))


def _balanced(s: str) -> bool:
    return "(" not in s and ")" not in s


# ---------------------------------------------------------------------------
# bounded subalgebra membership


class MembershipResult:
    """Outcome of :func:`membership_bounded` with its evidence."""

    __slots__ = ("member", "method", "columns", "rows", "detail")

    def __init__(self, member: bool, method: str, columns: int = 0, rows: int = 0, detail: str = ""):
        self.member = member
        self.method = method
        self.columns = columns
        self.rows = rows
        self.detail = detail

    def __bool__(self) -> bool:
        return self.member

    def as_dict(self) -> dict:
        return {
            "member": self.member,
            "method": self.method,
            "columns": self.columns,
            "rows": self.rows,
            "detail": self.detail,
        }


def _laurent_over_q(r: RationalFunc) -> bool:
    return r.den.is_constant()


def _exponents(r: RationalFunc) -> list[tuple[int, ...]]:
    return list(r.num.terms) + list(r.den.terms)


def _grading_lattice(elements: Sequence[RationalFunc], n: int):
    """HNF basis of the lattice spanned by exponent differences.

    Every element is homogeneous for the induced ``Z^n / L`` grading.
    """
    rows = []
    for r in elements:
        if not _laurent_over_q(r):
            return None
        es = list(r.num.terms)
        base = es[0]
        for e in es[1:]:
            rows.append([a - b for a, b in zip(e, base)])
    if not rows:
        return []
    m = flint.fmpz_mat(rows).hnf()
    basis = []
    for i in range(m.nrows()):
        row = [int(m[i, j]) for j in range(n)]
        if any(row):
            basis.append(row)
    return basis


def _reduce(v: Sequence[int], basis: list[list[int]]) -> tuple[int, ...]:
    v = list(v)
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        p = row[c]
        q = v[c] // p
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def membership_bounded(
    target: RationalFunc | LaurentPoly,
    generators: Sequence[RationalFunc | LaurentPoly],
    total_degree_bound: int,
    budget: int = 2_000_000,
    charts: Iterable[Sequence[RationalFunc]] | None = None,
    detailed: bool = False,
):
    """Decide whether ``target`` lies in the rational span of products of at
    most ``total_degree_bound`` generators.

    An optional sequence of ``charts`` (substitutions into other coordinate
    systems) gives a sound obstruction: if every generator is Laurent after a
    chart substitution and the target is not, the target cannot lie in the
    span.  Otherwise the question is settled by exact rank computation over a
    common monomial support, after pruning products by the grading in which
    all inputs are homogeneous.  Raises :class:`BudgetExceeded` when the
    coefficient matrix would exceed ``budget`` entries.
    """
    if not generators:
        raise ValueError("generators must be nonempty")
    if total_degree_bound < 1:
        raise ValueError("bound must be at least 1")
    tgt = _to_rf(target)
    gens = [_to_rf(g) for g in generators]
    n = tgt.nvars

    def done(res: MembershipResult):
        return res if detailed else res.member

    if tgt.is_zero():
        return done(MembershipResult(True, "zero"))
    if charts is not None:
        for ci, chart in enumerate(charts):
            if not _laurent_over_q(substitute(tgt, chart)) and all(
                _laurent_over_q(substitute(g, chart)) for g in gens
            ):
                return done(MembershipResult(False, "chart-obstruction", detail=f"chart {ci}"))
    if not _laurent_over_q(tgt) and all(_laurent_over_q(g) for g in gens):
        return done(MembershipResult(False, "chart-obstruction", detail="identity chart"))
    if not all(_laurent_over_q(g) for g in gens) or not _laurent_over_q(tgt):
        # clear a common denominator and work with numerators is not sound for
        # products; only Laurent inputs are handled by linear algebra
        raise ValueError("rank method requires Laurent inputs")

    basis = _grading_lattice([tgt] + gens, n)
    deg = lambda r: _reduce(next(iter(r.num.terms)), basis)  # noqa: E731
    zero = _reduce((0,) * n, basis)

    def add(u, v):
        return _reduce([a + b for a, b in zip(u, v)], basis)

    tdeg = deg(tgt)
    gdeg = [deg(g) for g in gens]
    # enumerate multisets of generator indices with degree sum == tdeg
    products: list[tuple[int, ...]] = []
    limit = budget

    def rec(start: int, size: int, acc, chosen: list[int]):
        if acc == tdeg:
            products.append(tuple(chosen))
            if len(products) > limit:
                raise BudgetExceeded(f"more than {limit} candidate products")
        if size == total_degree_bound:
            return
        for i in range(start, len(gens)):
            chosen.append(i)
            rec(i, size + 1, add(acc, gdeg[i]), chosen)
            chosen.pop()

    rec(0, 0, zero, [])
    cols = len(products) + 1
    support: dict[tuple[int, ...], int] = {}
    columns: list[dict[tuple[int, ...], int]] = []
    cache: dict[tuple[int, ...], RationalFunc] = {(): RationalFunc.constant(n, 1)}

    def prod(idx: tuple[int, ...]) -> RationalFunc:
        if idx in cache:
            return cache[idx]
        r = prod(idx[:-1]) * gens[idx[-1]]
        cache[idx] = r
        return r

    for idx in products + [None]:
        r = tgt if idx is None else prod(idx)
        # Laurent over Q: num / c with constant c; scale columns by c
        c = int(r.den.poly.leading_coefficient())
        col = {}
        for e, v in r.num.terms.items():
            support.setdefault(e, len(support))
            col[e] = Fraction(v, c)
        columns.append(col)
        if len(support) * cols > budget:
            raise BudgetExceeded(
                f"coefficient matrix {len(support)}x{cols} exceeds budget {budget}"
            )
    rows = len(support)
    rank_a = _rank(columns[:-1], support)
    rank_b = _rank(columns, support)
    return done(MembershipResult(rank_a == rank_b, "rank", columns=cols, rows=rows))


def _rank(columns: list[dict], support: dict) -> int:
    if not columns:
        return 0
    m = flint.fmpq_mat(len(support), len(columns))
    for j, col in enumerate(columns):
        for e, v in col.items():
            m[support[e], j] = flint.fmpq(v.numerator, v.denominator)
    return m.rank()


def random_points(nvars: int, count: int, rng, lo: int = 2, hi: int = 97) -> list[list[Fraction]]:
    """Rational sample points with entries in ``[lo, hi]`` for evaluation oracles."""
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 7)) for _ in range(nvars)] for _ in range(count)]


def product(items: Iterable, start):
    acc = start
    for x in items:
        acc = acc * x
    return acc

