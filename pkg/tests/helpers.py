"""Independent oracles used across the test suite.

These deliberately avoid the library's optimized code paths: distances
come from a naive full-span walk, and the star oracle multiplies every
codeword pair instead of generator rows.
"""

from itertools import combinations, product

from starpir.code import LinearCode
from starpir.cyclic import CyclicSpec, cyclotomic_cosets


def span_words(code: LinearCode):
    """All codewords by direct coefficient enumeration (no Gray walk)."""
    F = code.field
    q = F.order
    rows = code.gen.rows
    for coeffs in product(range(q), repeat=code.k):
        word = [0] * code.n
        for c, row in zip(coeffs, rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        word[j] = F.add(word[j], F.mul(c, x))
        yield tuple(word)


def brute_min_distance(code: LinearCode):
    best = None
    for word in span_words(code):
        w = sum(1 for x in word if x)
        if w and (best is None or w < best):
            best = w
    return best


def brute_weight_distribution(code: LinearCode):
    counts = [0] * (code.n + 1)
    for word in span_words(code):
        counts[sum(1 for x in word if x)] += 1
    return counts


def brute_star(a: LinearCode, b: LinearCode) -> LinearCode:
    """Span of the componentwise products of all codeword pairs."""
    F = a.field
    rows = [[F.mul(x, y) for x, y in zip(wa, wb)]
            for wa in span_words(a) for wb in span_words(b)]
    return LinearCode.from_generator(F, rows, n=a.n)


def all_cyclic_specs(q: int, n: int) -> list[CyclicSpec]:
    cosets = cyclotomic_cosets(n, q)
    out = []
    for r in range(len(cosets) + 1):
        for combo in combinations(cosets, r):
            T = frozenset().union(*combo) if combo else frozenset()
            out.append(CyclicSpec(q, n, T))
    return out
