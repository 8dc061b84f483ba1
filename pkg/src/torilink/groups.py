"""Free-group words, presentations, Fox calculus and Alexander ideals, plus
label-word rewriting on the dual cubulation."""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .homology import smith_normal_form
from .laurent import LaurentPolynomial, product_of_powers, variables

Letter = tuple[int, int]  # (generator index, exponent +-1)


class Word:
    """A word in a free group; letters are (generator index, +-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = tuple((int(g), int(e)) for g, e in letters)
        for g, e in self.letters:
            if e not in (1, -1):
                raise ValueError("letters must have exponent +-1")

    @classmethod
    def gen(cls, g: int, e: int = 1):
        return cls([(g, 1 if e > 0 else -1)] * abs(e))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    def reduce(self) -> "Word":
        out: list[Letter] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return Word(out)

    def cyclic_reduce(self) -> "Word":
        w = list(self.reduce().letters)
        while len(w) >= 2 and w[0] == (w[-1][0], -w[-1][1]):
            w = w[1:-1]
        return Word(w)

    def is_empty(self) -> bool:
        return not self.letters

    def exponent_sums(self, ngens: int) -> list[int]:
        out = [0] * ngens
        for g, e in self.letters:
            out[g] += e
        return out

    def substitute(self, images: dict[int, "Word"]) -> "Word":
        out: list[Letter] = []
        for g, e in self.letters:
            img = images.get(g, Word([(g, 1)]))
            out.extend((img if e > 0 else img.inverse()).letters)
        return Word(out)

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        return " ".join(names[g] + ("" if e > 0 else "^-1") for g, e in self.letters)

    def __repr__(self):
        return f"Word({self.letters})"


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


@dataclass
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relators = tuple(r.cyclic_reduce() for r in self.relators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self) -> str:
        lines = [" ".join(self.generators)]
        lines += [r.format(self.generators) for r in self.relators]
        return "\n".join(lines)


# -- parsing --------------------------------------------------------------------


def _tokenize(text: str, names: Sequence[str]) -> list[str]:
    ordered = sorted(names, key=len, reverse=True)
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch == "*":
            i += 1
            continue
        if ch in "[],":
            tokens.append(ch)
            i += 1
            continue
        m = re.match(r"\^\s*(-?\d+)", text[i:])
        if m:
            tokens.append("^" + m.group(1))
            i += m.end()
            continue
        for n in ordered:
            if text.startswith(n, i):
                tokens.append(n)
                i += len(n)
                break
        else:
            raise ValueError(f"cannot parse {text[i:]!r}")
    return tokens


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse letters with optional ^k exponents and [x,y] commutator sugar."""
    tokens = _tokenize(text, names)
    pos = 0

    def parse_seq(stop: set) -> Word:
        nonlocal pos
        w = Word()
        while pos < len(tokens) and tokens[pos] not in stop:
            tok = tokens[pos]
            if tok == "[":
                pos += 1
                x = parse_seq({","})
                if pos >= len(tokens) or tokens[pos] != ",":
                    raise ValueError("commutator is missing ','")
                pos += 1
                y = parse_seq({"]"})
                if pos >= len(tokens) or tokens[pos] != "]":
                    raise ValueError("commutator is missing ']'")
                pos += 1
                item = commutator(x, y)
            elif tok in names:
                pos += 1
                item = Word([(list(names).index(tok), 1)])
            else:
                raise ValueError(f"unexpected token {tok!r}")
            if pos < len(tokens) and tokens[pos].startswith("^"):
                k = int(tokens[pos][1:])
                pos += 1
                base = item if k > 0 else item.inverse()
                item = Word(base.letters * abs(k))
            w = w * item
        return w

    w = parse_seq(set())
    if pos != len(tokens):
        raise ValueError(f"unbalanced input near {tokens[pos]!r}")
    return w


def parse_presentation(text: str) -> Presentation:
    """First non-empty line lists generators; each further line is a relator."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty presentation")
    gens = tuple(g for g in re.split(r"[\s,]+", lines[0]) if g)
    rels = [parse_word(ln, gens) for ln in lines[1:]]
    return Presentation(gens, tuple(rels))


def link_presentation() -> Presentation:
    from .data import LINK_GROUP_TEXT
    return parse_presentation(LINK_GROUP_TEXT)


def peripheral_triples(p: Presentation | None = None) -> list[tuple[Word, Word, Word]]:
    """The triples x_i, [x_{i+2}, x_{i+3}], [x_{i+1}^-1, x_{i+4}^-1] (indices mod 5)."""
    p = p or link_presentation()
    out = []
    for i in range(5):
        g = lambda k: Word([((i + k) % 5, 1)])
        out.append((g(0), commutator(g(2), g(3)), commutator(g(1).inverse(), g(4).inverse())))
    return out


def kill_generators(p: Presentation, gens: Iterable[str]) -> Presentation:
    """Set the given generators to 1 and drop relators that become trivial."""
    killed = {p.index(g) for g in gens}
    keep = [i for i in range(len(p.generators)) if i not in killed]
    renumber = {old: new for new, old in enumerate(keep)}
    rels = []
    for r in p.relators:
        w = Word((renumber[g], e) for g, e in r if g not in killed).cyclic_reduce()
        if not w.is_empty():
            rels.append(w)
    return Presentation(tuple(p.generators[i] for i in keep), tuple(rels))


@dataclass
class Abelianization:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def abelianization(p: Presentation) -> Abelianization:
    n = len(p.generators)
    rows = [r.exponent_sums(n) for r in p.relators]
    factors, rank = smith_normal_form(rows) if rows else ((), 0)
    return Abelianization(n - rank, tuple(d for d in factors if d > 1))


def longitudes(p: Presentation | None = None) -> list[Word]:
    """[c,d], [d,e], [e,a], [a,b], [b,c]."""
    out = []
    for i in range(5):
        out.append(commutator(Word([((i + 2) % 5, 1)]), Word([((i + 3) % 5, 1)])))
    return out


def surgery_quotient() -> tuple[Presentation, Abelianization]:
    p = link_presentation()
    q = Presentation(p.generators, p.relators + tuple(longitudes()))
    return q, abelianization(q)


def trivial_modulo(word: Word, killers: Sequence[Word], depth: int = 16) -> list[Word] | None:
    """Search for a way to empty ``word`` by deleting subwords that are cyclic
    permutations of killers (or their inverses), with free reduction in between.

    Returns the sequence of intermediate words, or None within the depth bound.
    """
    pieces = set()
    for k in killers:
        for w in (k.cyclic_reduce(), k.cyclic_reduce().inverse()):
            L = w.letters
            for s in range(len(L)):
                pieces.add(L[s:] + L[:s])
    start = word.reduce().letters
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        cur, d = queue.popleft()
        if not cur:
            path = []
            node = cur
            while node is not None:
                path.append(Word(node))
                node = parent[node]
            return path[::-1]
        if d >= depth:
            continue
        for piece in pieces:
            n = len(piece)
            for s in range(len(cur) - n + 1):
                if cur[s:s + n] == piece:
                    nxt = Word(cur[:s] + cur[s + n:]).reduce().letters
                    if nxt not in parent:
                        parent[nxt] = cur
                        queue.append((nxt, d + 1))
    return None


# -- Fox calculus --------------------------------------------------------------------


def fox_derivative(w: Word, g: int, nvars: int | None = None) -> LaurentPolynomial:
    """Abelianized Fox derivative, generator i sent to t_{i+1}."""
    n = nvars if nvars is not None else max([h for h, _ in w] + [g]) + 1
    prefix = [0] * n
    out: dict = {}
    for h, e in w:
        if e > 0:
            if h == g:
                key = tuple(prefix)
                out[key] = out.get(key, 0) + 1
            prefix[h] += 1
        else:
            prefix[h] -= 1
            if h == g:
                key = tuple(prefix)
                out[key] = out.get(key, 0) - 1
    return LaurentPolynomial(n, out)


def abelianize(w: Word, nvars: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(w.exponent_sums(nvars))


def alexander_matrix(p: Presentation) -> list[list[LaurentPolynomial]]:
    n = len(p.generators)
    return [[fox_derivative(r, g, n) for g in range(n)] for r in p.relators]


def minors(m: Sequence[Sequence[LaurentPolynomial]], k: int):
    """All k x k minors, keyed by (row subset, column subset), in lexicographic order."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if k > min(rows, cols):
        raise ValueError("minor size exceeds the matrix")
    nvars = m[0][0].nvars
    zero = LaurentPolynomial.zero(nvars)
    memo: dict = {}

    def det(rs: tuple, cs: tuple) -> LaurentPolynomial:
        key = (rs, cs)
        if key in memo:
            return memo[key]
        if len(rs) == 1:
            val = m[rs[0]][cs[0]]
        else:
            val = zero
            r0 = rs[0]
            for j, c in enumerate(cs):
                a = m[r0][c]
                if a.is_zero():
                    continue
                sub = det(rs[1:], cs[:j] + cs[j + 1:])
                if sub.is_zero():
                    continue
                term = a * sub
                val = val + term if j % 2 == 0 else val - term
        memo[key] = val
        return val

    out = []
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            out.append(((rs, cs), det(rs, cs)))
    return out


@lru_cache(maxsize=None)
def _monomial_in_t_minus_one(exps: tuple[int, ...]) -> LaurentPolynomial:
    bases = [t - 1 for t in variables(len(exps))]
    return product_of_powers(bases, exps).normalize()


def t_minus_one_exponents(p: LaurentPolynomial) -> tuple[int, ...] | None:
    """a with p equal to prod (t_i - 1)^{a_i} up to a unit, else None."""
    if p.is_zero():
        return None
    q = p.normalize()
    a = q.degree_span()
    return a if _monomial_in_t_minus_one(a) == q else None


@dataclass
class IdealGenerators:
    total: int
    zero: int
    generators: set  # unit-normalized nonzero minors
    exponents: set | None  # exponent vectors when every generator is a product of (t_i-1)


def alexander_ideal_generators(m, k: int) -> IdealGenerators:
    allm = minors(m, k)
    nonzero = {p.normalize() for _, p in allm if not p.is_zero()}
    zero = sum(1 for _, p in allm if p.is_zero())
    exps = set()
    for p in nonzero:
        a = t_minus_one_exponents(p)
        if a is None:
            exps = None
            break
        exps.add(a)
    return IdealGenerators(len(allm), zero, nonzero, exps)


def ideal_predicate(a: Sequence[int]) -> bool:
    """The exponent condition describing the Alexander ideal generators."""
    if len(a) != 5 or any(x < 0 or x > 4 for x in a) or sum(a) != 8:
        return False
    if sum(1 for x in a if x == 0) > 1:
        return False
    for i in range(5):
        for s in (1, 2):
            if (a[(i - s) % 5], a[i], a[(i + s) % 5]) == (1, 0, 1):
                return False
    return True


def predicate_exponents() -> set[tuple[int, ...]]:
    return {a for a in itertools.product(range(5), repeat=5) if ideal_predicate(a)}


def laurent_gcd(polys: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    """Unit-normalized gcd; products of (t_i-1) use exponent minima, anything else
    goes through sympy."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of the zero ideal")
    n = polys[0].nvars
    exps = [t_minus_one_exponents(p) for p in polys]
    if all(e is not None for e in exps):
        mins = tuple(min(col) for col in zip(*exps))
        return _monomial_in_t_minus_one(mins)
    import sympy
    ts = sympy.symbols(f"t1:{n + 1}")

    def to_sym(p):
        q = p.normalize()
        return sum(c * sympy.prod([t ** k for t, k in zip(ts, e)]) for e, c in q.terms.items())

    g = to_sym(polys[0])
    for p in polys[1:]:
        g = sympy.gcd(g, to_sym(p))
    poly = sympy.Poly(g, *ts)
    return LaurentPolynomial(n, {tuple(e): int(c) for e, c in poly.terms()}).normalize()


def alexander_polynomial(p: Presentation) -> LaurentPolynomial:
    m = alexander_matrix(p)
    k = len(p.generators) - 1
    gens = alexander_ideal_generators(m, k)
    return laurent_gcd(gens.generators)


# -- label words on the dual cubulation ---------------------------------------------

LABEL = re.compile(r"([1-5][ab])")


@dataclass(frozen=True)
class LabelWord:
    labels: tuple[str, ...]

    @classmethod
    def parse(cls, text: str) -> "LabelWord":
        stripped = re.sub(r"[\s,]+", "", text)
        labels = LABEL.findall(stripped)
        if "".join(labels) != stripped:
            raise ValueError(f"not a label word: {text!r}")
        return cls(tuple(labels))

    def inverse(self) -> "LabelWord":
        return LabelWord(tuple(reversed(self.labels)))

    def __mul__(self, other):
        return LabelWord(self.labels + other.labels)

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return " ".join(self.labels) or "(empty)"


def label_commutator(x: LabelWord, y: LabelWord) -> LabelWord:
    return x * y * x.inverse() * y.inverse()


def p4_label_adjacency() -> Callable[[str, str], bool]:
    """Two labels commute when their facets of P4 are adjacent."""
    from .data import p4_labels
    from .polytope import build_builtin
    P = build_builtin("P4")
    labels = p4_labels()
    adj = P.dual_graph()
    idx = {lab: P.facet_index(f) for lab, f in labels.items()}
    pairs = {frozenset((a, b)) for a in idx for b in idx if idx[b] in adj[idx[a]]}
    return lambda a, b: frozenset((a, b)) in pairs


def p4_label_colours() -> dict[str, int]:
    """Label -> colour vector e_i of its facet in the five-colouring."""
    return {f"{i}{s}": 1 << (i - 1) for i in range(1, 6) for s in "ab"}


def path_endpoint(w: LabelWord, colours: dict[str, int] | None = None) -> int:
    """Endpoint in (Z/2)^5 of the path from the base vertex."""
    colours = colours or p4_label_colours()
    v = 0
    for lab in w.labels:
        v ^= colours[lab]
    return v


@dataclass
class Move:
    kind: str  # "cancel" or "swap" (or their reverses when read backwards)
    position: int
    result: LabelWord


@dataclass
class Derivation:
    found: bool
    moves: list[Move] = field(default_factory=list)
    explored: int = 0

    def __str__(self):
        if not self.found:
            return f"no derivation within the depth bound ({self.explored} words explored)"
        return "\n".join(f"{m.kind:>8} at {m.position}: {m.result}" for m in self.moves)


def _neighbours(w: tuple, adjacent):
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if a == b:
            yield "cancel", i, w[:i] + w[i + 2:]
        elif adjacent(a, b):
            yield "swap", i, w[:i] + (b, a) + w[i + 2:]


def rewrite_equivalent(w1: LabelWord, w2: LabelWord, adjacency=None, depth: int = 64,
                       colours: dict[str, int] | None = None, limit: int = 2_000_000) -> Derivation:
    """Bidirectional breadth-first search joining w1 and w2 by cancellations of
    repeated labels and swaps of labels on adjacent facets."""
    adjacent = adjacency or p4_label_adjacency()
    colours = colours or p4_label_colours()
    a, b = w1.labels, w2.labels
    if path_endpoint(w1, colours) != path_endpoint(w2, colours):
        return Derivation(False)
    parents = [{a: None}, {b: None}]
    frontiers = [[a], [b]]
    dist = 0
    meet = a if a == b else None
    while meet is None and dist < depth and (frontiers[0] or frontiers[1]):
        side = 0 if (len(frontiers[0]) <= len(frontiers[1]) and frontiers[0]) or not frontiers[1] else 1
        nxt = []
        for w in frontiers[side]:
            for kind, i, u in _neighbours(w, adjacent):
                if u in parents[side]:
                    continue
                assert path_endpoint(LabelWord(u), colours) == path_endpoint(LabelWord(w), colours)
                parents[side][u] = (w, kind, i)
                if u in parents[1 - side]:
                    meet = u
                    break
                nxt.append(u)
            if meet is not None:
                break
        frontiers[side] = nxt
        dist += 1
        if len(parents[0]) + len(parents[1]) > limit:
            break
    explored = len(parents[0]) + len(parents[1])
    if meet is None:
        return Derivation(False, explored=explored)
    forward = []
    node = meet
    while parents[0][node] is not None:
        prev, kind, i = parents[0][node]
        forward.append(Move(kind, i, LabelWord(node)))
        node = prev
    forward.reverse()
    backward = []
    node = meet
    while parents[1][node] is not None:
        prev, kind, i = parents[1][node]
        backward.append(Move("insert" if kind == "cancel" else kind, i, LabelWord(prev)))
        node = prev
    return Derivation(True, forward + backward, explored)
