"""Multivariate Laurent polynomials with integer coefficients, and a small
univariate toolkit (primitive pseudo-remainder gcd) over Z[t]."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence


class LaurentPolynomial:
    """Sparse map from exponent tuples to nonzero integer coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent length does not match the number of variables")
            if c:
                clean[tuple(e)] = int(c)
        self.terms = clean
        self._hash = None

    # -- constructors --

    @classmethod
    def zero(cls, nvars: int):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int = 1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1):
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, i: int, nvars: int, power: int = 1):
        """t_i**power with 1-based i."""
        e = [0] * nvars
        e[i - 1] = power
        return cls(nvars, {tuple(e): 1})

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("different numbers of variables")
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial() or abs(next(iter(self.terms.values()))) != 1:
                raise ValueError("only unit monomials have negative powers")
            (e, c), = self.terms.items()
            return LaurentPolynomial(self.nvars, {tuple(-x * -k for x in e): c ** (-k)})
        result = LaurentPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(self.nvars, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- queries --

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        return self.is_monomial() and abs(next(iter(self.terms.values()))) == 1

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> tuple[int, ...]:
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def degree_span(self) -> tuple[int, ...]:
        """Highest minus lowest exponent in each variable."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return tuple(b - a for a, b in zip(self.min_exponents(), self.max_exponents()))

    def normalize(self) -> "LaurentPolynomial":
        """Unit normal form: minimal exponents 0, lexicographically least term positive."""
        if not self.terms:
            return self
        shift = self.min_exponents()
        terms = {tuple(a - b for a, b in zip(e, shift)): c for e, c in self.terms.items()}
        lead = terms[min(terms)]
        if lead < 0:
            terms = {e: -c for e, c in terms.items()}
        return LaurentPolynomial(self.nvars, terms)

    def unit_factor(self) -> "LaurentPolynomial":
        """The unit u with self == u * self.normalize()."""
        shift = self.min_exponents()
        n = self.normalize()
        sign = 1 if n.terms[min(n.terms)] == self.terms[min(self.terms)] else -1
        return LaurentPolynomial.monomial(shift, sign)

    def substitute(self, phi: Sequence[int]) -> "LaurentPolynomial":
        """Univariate specialization t_i -> t**phi_i."""
        out: dict = {}
        for e, c in self.terms.items():
            k = sum(a * x for a, x in zip(e, phi))
            out[(k,)] = out.get((k,), 0) + c
        return LaurentPolynomial(1, out)

    def evaluate(self, values: Sequence) -> object:
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                term = term * v ** k
            total = total + term
        return total

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"t{i + 1}" for i in range(self.nvars)] if self.nvars > 1 else ["t"]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def variables(nvars: int) -> list[LaurentPolynomial]:
    return [LaurentPolynomial.variable(i, nvars) for i in range(1, nvars + 1)]


def product_of_powers(bases: Sequence[LaurentPolynomial], exps: Sequence[int]) -> LaurentPolynomial:
    out = LaurentPolynomial.constant(bases[0].nvars, 1)
    for b, k in zip(bases, exps):
        if k:
            out = out * b ** k
    return out


# -- univariate integer polynomials as coefficient lists (lowest degree first) --


def to_coeffs(p: LaurentPolynomial) -> list[int]:
    """Coefficients of the normalized univariate polynomial."""
    if p.nvars != 1:
        raise ValueError("univariate polynomial expected")
    if p.is_zero():
        return []
    n = p.normalize()
    top = max(e[0] for e in n.terms)
    out = [0] * (top + 1)
    for (k,), c in n.terms.items():
        out[k] = c
    return out


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def primitive(a: Sequence[int]) -> list[int]:
    a = _trim(list(a))
    if not a:
        return a
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        la = a[-1]
        a = [lb * c for c in a]
        for k, c in enumerate(b):
            a[k + shift] -= la * c
        a = _trim(a)
    return a


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd over Z[t] by the primitive pseudo-remainder sequence."""
    g = gcd(content(a), content(b))
    a, b = primitive(a), primitive(b)
    if not a:
        return [g * c for c in b]
    if not b:
        return [g * c for c in a]
    while b:
        r = pseudo_remainder(a, b)
        a, b = b, primitive(r)
    return [g * c for c in primitive(a)]


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod_exact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact quotient a / b over Z; raises if b does not divide a."""
    a = _trim(list(a))
    b = _trim(list(b))
    q = [0] * max(len(a) - len(b) + 1, 0)
    while a and len(a) >= len(b):
        shift = len(a) - len(b)
        if a[-1] % b[-1]:
            raise ValueError("not an exact division")
        f = a[-1] // b[-1]
        q[shift] = f
        for k, c in enumerate(b):
            a[k + shift] -= f * c
        a = _trim(a)
    if a:
        raise ValueError("not an exact division")
    return q


def degree(a: Sequence[int]) -> int:
    a = _trim(list(a))
    return len(a) - 1


def gcd_many(polys: Iterable[Sequence[int]]) -> list[int]:
    g: list[int] = []
    for p in polys:
        g = poly_gcd(g, p) if g else primitive(p)
        if len(g) == 1:
            break
    return g
