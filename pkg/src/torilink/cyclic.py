"""Betti numbers of infinite cyclic covers from the specialized Alexander ideal."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import laurent as lp
from .groups import predicate_exponents

INFINITY = math.inf


def totient(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass
class CyclotomicExponentMap:
    """prod Phi_d^{e_d} up to units; ``zero`` marks the zero polynomial."""

    exponents: dict[int, int] = field(default_factory=dict)
    zero: bool = False

    def degree(self) -> float:
        if self.zero:
            return INFINITY
        return sum(e * totient(d) for d, e in self.exponents.items())

    def get(self, d: int) -> int:
        return self.exponents.get(d, 0)


def check_class(phi: Sequence[int]) -> tuple[int, ...]:
    phi = tuple(int(x) for x in phi)
    if len(phi) != 5:
        raise ValueError("a class has five coordinates")
    return phi


def is_primitive(phi: Sequence[int]) -> bool:
    g = 0
    for x in phi:
        g = math.gcd(g, x)
    return g == 1


def specialize_generator(a: Sequence[int], phi: Sequence[int]) -> CyclotomicExponentMap:
    """Cyclotomic exponents of prod (t^{x_i} - 1)^{a_i}."""
    exps: dict[int, int] = {}
    zero = False
    for ai, xi in zip(a, phi):
        if not ai:
            continue
        if xi == 0:
            zero = True
            continue
        for d in divisors(xi):
            exps[d] = exps.get(d, 0) + ai
    return CyclotomicExponentMap(exps, zero)


@lru_cache(maxsize=None)
def ideal_exponents() -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(predicate_exponents()))


def gcd_exponent_map(phi: Sequence[int], generators: Iterable[Sequence[int]] | None = None):
    """Per-d minimum of e_d over the generators that survive specialization."""
    phi = check_class(phi)
    gens = list(generators) if generators is not None else ideal_exponents()
    maps = [specialize_generator(a, phi) for a in gens]
    live = [m for m in maps if not m.zero]
    if not live:
        return CyclotomicExponentMap({}, True)
    ds = set().union(*(m.exponents for m in live))
    out = {}
    for d in sorted(ds):
        e = min(m.get(d) for m in live)
        if e:
            out[d] = e
    return CyclotomicExponentMap(out)


def delta_phi_degree(phi: Sequence[int]) -> float:
    """Degree of the gcd of the specialized ideal (infinite if it is zero)."""
    phi = check_class(phi)
    A = _generator_matrix()
    zero_cols = [i for i, x in enumerate(phi) if x == 0]
    live = np.all(A[:, zero_cols] == 0, axis=1) if zero_cols else None
    if live is not None and not live.any():
        return INFINITY
    top = max(abs(x) for x in phi)
    # D[i, d-1] = 1 when d divides a nonzero x_i
    D = np.zeros((5, top), dtype=np.int64)
    for i, x in enumerate(phi):
        if x:
            for d in divisors(x):
                D[i, d - 1] = 1
    E = (A if live is None else A[live]) @ D
    mins = E.min(axis=0)
    return int(sum(int(e) * totient(d + 1) for d, e in enumerate(mins) if e))


def b1_cyclic_cover(phi: Sequence[int]) -> float:
    return delta_phi_degree(phi)


def b2_cyclic_cover(phi: Sequence[int]) -> float:
    """Always infinite for infinite cyclic covers of finite-volume hyperbolic 4-manifolds
    (a documented rule, not computed)."""
    return INFINITY


def b3_cyclic_cover(phi: Sequence[int]) -> float:
    """0 when every coordinate is nonzero, infinite otherwise (rule)."""
    return 0 if all(x != 0 for x in check_class(phi)) else INFINITY


def d_invariant(phi: Sequence[int]) -> float:
    """b1 - 8."""
    b = b1_cyclic_cover(phi)
    return b - 8 if b != INFINITY else INFINITY


# -- honest polynomial oracle ------------------------------------------------------


def t_power_minus_one(x: int) -> list[int]:
    """Coefficients of t^|x| - 1 (the unit -t^{-x} absorbed for negative x)."""
    n = abs(x)
    out = [0] * (n + 1)
    out[0] = -1
    out[n] += 1
    return out


def specialized_polynomial(a: Sequence[int], phi: Sequence[int]) -> list[int]:
    """Fully expanded prod (t^{x_i}-1)^{a_i} via the Laurent substitution t_i -> t^{x_i}."""
    bases = [t - 1 for t in lp.variables(5)]
    p = lp.product_of_powers(bases, a).substitute(phi)
    return lp.to_coeffs(p)


def oracle_degree_direct(phi: Sequence[int], generators=None) -> float:
    """Degree of the gcd of all specialized generators, expanded and reduced by
    pseudo-remainder gcds.  Slow; meant for spot checks."""
    gens = list(generators) if generators is not None else ideal_exponents()
    polys = [specialized_polynomial(a, phi) for a in gens]
    polys = [p for p in polys if p]
    if not polys:
        return INFINITY
    return lp.degree(lp.gcd_many(polys))


@lru_cache(maxsize=None)
def coprime_basis(values: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Gcd-free basis of {t^m - 1 : m in values} computed with polynomial gcds.

    Returns (basis polynomials, exponent rows) where row k gives the
    multiplicity of each basis element in t^{values[k]} - 1.
    """
    basis: list[list[int]] = []
    for m in values:
        basis.append(t_power_minus_one(m))
    # refine until pairwise coprime
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = lp.poly_gcd(basis[i], basis[j])
                if lp.degree(g) > 0:
                    a = lp.poly_divmod_exact(basis[i], g)
                    b = lp.poly_divmod_exact(basis[j], g)
                    rest = [basis[k] for k in range(len(basis)) if k not in (i, j)]
                    basis = rest + [p for p in (a, b, g) if lp.degree(p) > 0]
                    changed = True
                    break
            if changed:
                break
    basis = sorted({tuple(lp.primitive(p)) for p in basis})
    rows = []
    for m in values:
        p = t_power_minus_one(m)
        row = []
        for b in basis:
            k = 0
            while True:
                try:
                    q = lp.poly_divmod_exact(p, list(b))
                except ValueError:
                    break
                p = q
                k += 1
            row.append(k)
        if lp.degree(p) != 0:
            raise AssertionError("basis does not factor the input")
        rows.append(tuple(row))
    return tuple(basis), tuple(rows)


_GEN_MATRIX = None


def _generator_matrix() -> np.ndarray:
    global _GEN_MATRIX
    if _GEN_MATRIX is None:
        _GEN_MATRIX = np.array(ideal_exponents(), dtype=np.int64)
    return _GEN_MATRIX


def oracle_degree(phi: Sequence[int]) -> float:
    """Gcd degree from a gcd-free basis of the factors t^{x_i} - 1.

    Every specialized generator factors over the basis, so the gcd is the
    product of basis elements raised to the minimum multiplicity.
    """
    phi = check_class(phi)
    A = _generator_matrix()
    nz = [i for i, x in enumerate(phi) if x != 0]
    zero_cols = [i for i, x in enumerate(phi) if x == 0]
    live = np.all(A[:, zero_cols] == 0, axis=1) if zero_cols else np.ones(len(A), dtype=bool)
    if not live.any():
        return INFINITY
    values = tuple(sorted({abs(phi[i]) for i in nz}))
    basis, rows = coprime_basis(values)
    M = np.zeros((5, len(basis)), dtype=np.int64)
    for i in nz:
        M[i] = rows[values.index(abs(phi[i]))]
    mult = A[live] @ M
    mins = mult.min(axis=0)
    return int(sum(int(k) * lp.degree(list(b)) for k, b in zip(mins, basis)))


def table(values: Iterable[int], primitive_only: bool = True):
    """Rows (phi, b1, b2, b3) over all classes with coordinates in ``values``."""
    vals = list(values)
    for phi in product(vals, repeat=5):
        if primitive_only and not is_primitive(phi):
            continue
        yield phi, b1_cyclic_cover(phi), b2_cyclic_cover(phi), b3_cyclic_cover(phi)
