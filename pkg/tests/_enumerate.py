"""Enumeration helpers shared by the test modules."""

import itertools

from torilink.colouring import Colouring, is_proper


def rref_matrices(r, m):
    """Every r x m matrix over GF(2) in reduced row echelon form with rank r,
    returned as a list of column bitmasks."""
    for pivots in itertools.combinations(range(m), r):
        free = [(i, j) for i in range(r) for j in range(m)
                if j > pivots[i] and j not in pivots]
        for values in itertools.product((0, 1), repeat=len(free)):
            cols = [0] * m
            for i, p in enumerate(pivots):
                cols[p] |= 1 << i
            for (i, j), v in zip(free, values):
                if v:
                    cols[j] |= 1 << i
            yield cols


def proper_colourings(P, ranks):
    """Proper colourings of P up to change of basis, one per rank in ``ranks``."""
    for r in ranks:
        for cols in rref_matrices(r, P.n_facets):
            if any(c == 0 for c in cols):
                continue
            c = Colouring(P, r, cols)
            if is_proper(c):
                yield c


def random_word(rng, ngens, max_len=20):
    from torilink.groups import Word
    n = rng.randint(0, max_len)
    return Word([(rng.randrange(ngens), rng.choice((1, -1))) for _ in range(n)])


def gaussian_binomial_2(n, k):
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den

