"""Signed-permutation symmetry groups and exact checks of the quadric tori and
the height function, in the field Q(sqrt 2)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

# -- signed permutations -----------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """x -> (s_1 x_{sigma(1)}, ..., s_n x_{sigma(n)}), with 0-based ``perm``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, n: int):
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]], signs=None):
        """Permutation from 1-based cycles (sigma maps each entry to the next)."""
        perm = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                perm[a - 1] = b - 1
        return cls(tuple(perm), tuple(signs) if signs else (1,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply(self, x: Sequence):
        return tuple(s * x[p] for s, p in zip(self.signs, self.perm))

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for i in range(self.n):
            row = [0] * self.n
            row[self.perm[i]] = self.signs[i]
            rows.append(tuple(row))
        return tuple(rows)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """(self * other)(x) = self(other(x))."""
        # self(y)_i = s_i y_{p(i)}, y_j = t_j x_{q(j)}
        perm = tuple(other.perm[self.perm[i]] for i in range(self.n))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(self.n))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        perm = [0] * self.n
        signs = [0] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def order(self) -> int:
        k, g = 1, self
        ident = SignedPermutation.identity(self.n)
        while g != ident:
            g = g * self
            k += 1
        return k

    def index_image(self, i: int) -> int:
        """1-based sigma(i)."""
        return self.perm[i - 1] + 1

    def permutation_sign(self) -> int:
        seen, sign = set(), 1
        for start in range(self.n):
            if start in seen:
                continue
            length, j = 0, start
            while j not in seen:
                seen.add(j)
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign


def closure(generators: Iterable[SignedPermutation]) -> frozenset[SignedPermutation]:
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    ident = SignedPermutation.identity(gens[0].n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = h * g
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return frozenset(seen)


def group_H() -> frozenset[SignedPermutation]:
    return closure([SignedPermutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
                    SignedPermutation.from_cycles(5, [(2, 3, 5, 4)])])


def sign_changes(n: int) -> list[SignedPermutation]:
    out = []
    for i in range(n):
        s = [1] * n
        s[i] = -1
        out.append(SignedPermutation(tuple(range(n)), tuple(s)))
    return out


def group_G() -> frozenset[SignedPermutation]:
    return closure([SignedPermutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
                    SignedPermutation.from_cycles(5, [(2, 3, 5, 4)])] + sign_changes(5))


def index_action(group) -> frozenset[tuple[int, ...]]:
    return frozenset(g.perm for g in group)


def transitivity_on_subsets(group, k: int, n: int = 5) -> tuple[bool, list[int]]:
    """Orbits of the index action on k-subsets; (single orbit?, orbit sizes)."""
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    perms = index_action(group)
    remaining = set(frozenset(s) for s in itertools.combinations(range(n), k))
    sizes = []
    while remaining:
        s = remaining.pop()
        orbit = {frozenset(p[i] for i in s) for p in perms}
        remaining -= orbit
        sizes.append(len(orbit))
    sizes.sort(reverse=True)
    assert sum(sizes) == comb(n, k)
    return len(sizes) == 1, sizes


def borromean_symmetries() -> frozenset[SignedPermutation]:
    """(x1..x4) -> (+-x_s(1), +-x_s(2), +-x_s(3), sgn(s) x4) for s in S3."""
    out = set()
    for p in itertools.permutations(range(3)):
        base = SignedPermutation(tuple(p) + (3,), (1, 1, 1, 1))
        sg = base.permutation_sign()
        for signs in itertools.product((1, -1), repeat=3):
            out.add(SignedPermutation(tuple(p) + (3,), tuple(signs) + (sg,)))
    group = frozenset(out)
    if closure(group) != group:
        raise AssertionError("the 48 maps are not closed under composition")
    return group


# -- the field Q(sqrt 2) ------------------------------------------------------------


class QSqrt2:
    """a + b sqrt 2 with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def lift(x):
        return x if isinstance(x, QSqrt2) else QSqrt2(x)

    def __add__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QSqrt2.lift(o))

    def __rsub__(self, o):
        return QSqrt2.lift(o) - self

    def __mul__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self):
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, o):
        o = QSqrt2.lift(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        p = self * o.conjugate()
        return QSqrt2(p.a / n, p.b / n)

    def __rtruediv__(self, o):
        return QSqrt2.lift(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, QSqrt2)):
            o = QSqrt2.lift(o)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def sign(self) -> int:
        """Exact sign of a + b sqrt 2."""
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def __repr__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt2"
        return f"({self.a} + {self.b}*sqrt2)"

    @staticmethod
    def sqrt(r) -> "QSqrt2 | None":
        """Square root of a nonnegative rational inside Q(sqrt 2), if it exists."""
        r = Fraction(r)
        if r < 0:
            return None
        q = _rational_sqrt(r)
        if q is not None:
            return QSqrt2(q)
        q = _rational_sqrt(r / 2)
        if q is not None:
            return QSqrt2(0, q)
        return None


def _rational_sqrt(r: Fraction) -> Fraction | None:
    from math import isqrt
    n, d = r.numerator, r.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


Point = tuple  # of QSqrt2


def point(*coords) -> Point:
    return tuple(QSqrt2.lift(c) for c in coords)


SQRT2_HALF = QSqrt2(0, Fraction(1, 2))


# -- quadrics -----------------------------------------------------------------------


def quadric_coefficients(i: int) -> tuple[int, ...]:
    """Diagonal coefficients of x_{i+1}^2 - x_{i+2}^2 - x_{i+3}^2 + x_{i+4}^2 (1-based, mod 5)."""
    c = [0] * 5
    for shift, s in ((1, 1), (2, -1), (3, -1), (4, 1)):
        c[(i - 1 + shift) % 5] = s
    return tuple(c)


def on_quadric(p: Point, i: int) -> bool:
    q = quadric_coefficients(i)
    value = sum((c * x * x for c, x in zip(q, p)), QSqrt2())
    return p[i - 1] == 0 and value == 0


def on_sphere(p: Point) -> bool:
    return sum((x * x for x in p), QSqrt2()) == 1


def quadric_intersection(i: int, j: int) -> list[Point]:
    """Q_i, Q_j and the unit sphere, solved exactly.

    The equations are linear in the squares s_k = x_k^2 of the three free
    coordinates; each nonnegative solution gives all sign choices.
    """
    if i == j:
        raise ValueError("need two different quadrics")
    free = [k for k in range(5) if k not in (i - 1, j - 1)]
    qi, qj = quadric_coefficients(i), quadric_coefficients(j)
    rows = [[Fraction(qi[k]) for k in free] + [Fraction(0)],
            [Fraction(qj[k]) for k in free] + [Fraction(0)],
            [Fraction(1)] * 3 + [Fraction(1)]]
    sol = _solve_square(rows)
    if sol is None:
        raise ValueError("the square coordinates are not determined")
    roots = [QSqrt2.sqrt(s) for s in sol]
    if any(r is None for r in roots):
        return []
    pts = set()
    for signs in itertools.product((1, -1), repeat=3):
        p = [QSqrt2()] * 5
        for k, s, r in zip(free, signs, roots):
            p[k] = r * s
        pts.add(tuple(p))
    return sorted(pts, key=lambda p: [(x.a, x.b) for x in p])


def _solve_square(rows):
    """Solve a square system given as augmented rows; None if singular."""
    n = len(rows)
    A = [r[:] for r in rows]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [A[r][n] / A[r][r] for r in range(n)]


def _solve_least(M, rhs):
    """Exact solution of M y = rhs over Q(sqrt 2) (M has full column rank), or None."""
    rows = [list(r) + [b] for r, b in zip(M, rhs)]
    ncols = len(M[0])
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c] / rows[r][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[k][-1] for k in range(r, len(rows))):
        return None
    y = [QSqrt2()] * ncols
    for k, c in enumerate(pivots):
        y[c] = rows[k][-1] / rows[k][c]
    return y


def constraint_gradients(p: Point, i: int):
    """Gradients of |x|^2 - 1, x_i and the quadric of Q_i at p."""
    q = quadric_coefficients(i)
    g1 = [2 * x for x in p]
    g2 = [QSqrt2(1 if k == i - 1 else 0) for k in range(5)]
    g3 = [2 * c * x for c, x in zip(q, p)]
    return g1, g2, g3


@dataclass
class CriticalCheck:
    point: Point
    on_surface: bool
    critical: bool
    multipliers: tuple | None
    index: int | None
    label: str


def check_critical(p: Point, i: int = 1) -> CriticalCheck:
    """Lagrange test for f = sum x_k on Q_i within the unit sphere, plus Morse index."""
    p = point(*p)
    on = on_sphere(p) and on_quadric(p, i)
    if not on:
        return CriticalCheck(p, False, False, None, None, "not on the torus")
    g = constraint_gradients(p, i)
    M = [[g[0][k], g[1][k], g[2][k]] for k in range(5)]
    y = _solve_least(M, [QSqrt2(1)] * 5)
    if y is None:
        return CriticalCheck(p, True, False, None, None, "not critical")
    index = morse_index(p, i, y)
    label = {0: "minimum", 1: "saddle", 2: "maximum"}.get(index, "critical, index unverified")
    return CriticalCheck(p, True, True, tuple(y), index, label)


def morse_index(p: Point, i: int, multipliers) -> int | None:
    """Negative directions of the Hessian of the Lagrangian on the tangent plane.

    L = f - mu (|x|^2 - 1) - lam x_i - nu q(x); its Hessian is diagonal with
    entries -2 mu - 2 nu q_k.  The tangent plane is the kernel of the three
    constraint gradients.
    """
    mu, _, nu = multipliers
    q = quadric_coefficients(i)
    hess = [-2 * mu - 2 * nu * c for c in q]
    g = constraint_gradients(p, i)
    basis = _kernel([g[0], g[1], g[2]], 5)
    if len(basis) != 2:
        return None
    B = [[sum((u[k] * hess[k] * v[k] for k in range(5)), QSqrt2()) for v in basis] for u in basis]
    # signature of a 2x2 symmetric form
    a, b, d = B[0][0], B[0][1], B[1][1]
    det = a * d - b * b
    ds = det.sign()
    if ds == 0:
        return None
    if ds < 0:
        return 1
    return 0 if a.sign() > 0 else 2


def _kernel(rows, n):
    """Basis of the null space of the given rows over Q(sqrt 2)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((k for k in range(r, len(A)) if A[k][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c]:
                f = A[k][c]
                A[k] = [x - f * y for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        v = [QSqrt2()] * n
        v[fc] = QSqrt2(1)
        for k, pc in enumerate(pivots):
            v[pc] = -A[k][fc]
        out.append(v)
    return out


H = Fraction(1, 2)

# expected: one minimum, two saddles (0, +-1/2, +-1/2, -+1/2, -+1/2), one maximum
LISTED_CRITICAL_POINTS = [
    (0, -H, -H, -H, -H),
    (0, H, H, -H, -H),
    (0, -H, -H, H, H),
    (0, H, H, H, H),
]
LISTED_LABELS = ["minimum", "saddle", "saddle", "maximum"]

LISTED_INTERSECTION_12 = [point(0, 0, s3 * SQRT2_HALF, 0, s5 * SQRT2_HALF)
                          for s3 in (1, -1) for s5 in (1, -1)]


def grid_critical_points(i: int = 1) -> list[CriticalCheck]:
    """Every critical point of f on Q_i among points with coordinates in
    {0, +-1/2, +-1, +-sqrt2/2} (exhaustive over that grid)."""
    values = [QSqrt2(0), QSqrt2(H), QSqrt2(-H), QSqrt2(1), QSqrt2(-1), SQRT2_HALF, -SQRT2_HALF]
    out = []
    for rest in itertools.product(values, repeat=4):
        p = list(rest)
        p.insert(i - 1, QSqrt2(0))
        p = tuple(p)
        if not (on_sphere(p) and on_quadric(p, i)):
            continue
        chk = check_critical(p, i)
        if chk.critical:
            out.append(chk)
    return out


def shift_point(p: Sequence, i: int) -> Point:
    """Move a point of Q_1 to the corresponding point of Q_i (cyclic shift)."""
    k = i - 1
    return tuple(QSqrt2.lift(p[(j - k) % 5]) for j in range(5))


def quadric_pair_preserved(g: SignedPermutation, i: int) -> bool:
    """The pair (x_i, quadric_i) composed with g equals +-(x_j, quadric_j) for j = sigma(i)."""
    j = g.index_image(i)
    # the linear part x_i(g(x)) = s_i x_{sigma(i)} is +-x_j by construction
    qi = quadric_coefficients(i)
    composed = [0] * 5
    for k in range(5):
        composed[g.perm[k]] += qi[k]  # (s_k x_{sigma(k)})^2
    target = quadric_coefficients(j)
    return tuple(composed) == target or tuple(-c for c in composed) == target


@dataclass
class QuadricReport:
    i: int
    j: int
    intersection: list
    listed_intersection_ok: bool | None
    critical: list[CriticalCheck]
    listed_ok: bool
    grid_critical: list[CriticalCheck]
    preserved: bool


def quadric_checks(i: int = 1, j: int = 2) -> QuadricReport:
    pts = quadric_intersection(i, j)
    listed_ok = None
    if (i, j) == (1, 2):
        listed_ok = set(pts) == set(LISTED_INTERSECTION_12) and all(
            on_sphere(p) and on_quadric(p, 1) and on_quadric(p, 2) for p in LISTED_INTERSECTION_12)
    crit = [check_critical(shift_point(p, i), i) for p in LISTED_CRITICAL_POINTS]
    ok = all(c.critical and c.label == lab for c, lab in zip(crit, LISTED_LABELS))
    grid = grid_critical_points(i)
    G = group_G()
    preserved = all(quadric_pair_preserved(g, k) for g in G for k in range(1, 6))
    return QuadricReport(i, j, pts, listed_ok, crit, ok, grid, preserved)
