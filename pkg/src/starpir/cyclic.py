"""Cyclic codes by defining set: cyclotomic cosets, minimal polynomials,
BCH constructors, the sumset rule for star products of cyclic codes,
two-weight irreducible cyclic codes, and coset-counting rate bounds.

Defining sets are the primary representation (all of the star-product
arithmetic is set arithmetic on exponents); generator polynomials are
derived on demand.  The primitive n-th root used throughout is
beta = generator^((q^m - 1)/n) with the deterministic generator from gf,
so the coset-to-polynomial mapping is reproducible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .code import LinearCode
from .gf import Poly, field_create, order_of, prime_power


def cyclotomic_coset(n: int, q: int, i: int) -> frozenset[int]:
    """Orbit of i under multiplication by q modulo n."""
    if gcd(n, q) != 1:
        raise ValueError(f"gcd({n}, {q}) != 1")
    out, x = set(), i % n
    while x not in out:
        out.add(x)
        x = (x * q) % n
    return frozenset(out)


def cyclotomic_cosets(n: int, q: int) -> list[frozenset[int]]:
    """Partition of Z/nZ into cyclotomic cosets, sorted by minimum element."""
    if gcd(n, q) != 1:
        raise ValueError(f"gcd({n}, {q}) != 1")
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        c = cyclotomic_coset(n, q, i)
        seen |= c
        out.append(c)
    return out


def coset_count(n: int, q: int) -> int:
    return len(cyclotomic_cosets(n, q))


@dataclass(frozen=True)
class CyclicSpec:
    """A cyclic code as (q, n, defining set T); T must be coset-closed."""

    q: int
    n: int
    defining_set: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "defining_set", frozenset(i % self.n for i in self.defining_set))
        if gcd(self.n, self.q) != 1:
            raise ValueError(f"gcd({self.n}, {self.q}) != 1")
        T = self.defining_set
        for i in T:
            if (i * self.q) % self.n not in T:
                raise ValueError("defining set is not closed under multiplication by q")

    @property
    def nonzero_set(self) -> frozenset[int]:
        return frozenset(set(range(self.n)) - self.defining_set)

    @property
    def dimension(self) -> int:
        return self.n - len(self.defining_set)


@dataclass(frozen=True)
class BchSpec:
    """Designed-distance description: defining set spans exponents b..b+delta-2."""

    q: int
    n: int
    b: int
    delta: int

    def __post_init__(self):
        if self.delta < 2:
            raise ValueError("designed distance must be >= 2")
        if gcd(self.n, self.q) != 1:
            raise ValueError(f"gcd({self.n}, {self.q}) != 1")


class _RootContext:
    """GF(q), GF(q^m), the primitive n-th root, and the subfield embedding."""

    def __init__(self, q: int, n: int):
        p, e = prime_power(q)
        m = order_of(q, n)
        self.base = field_create(p, e)
        self.ext = field_create(p, e * m)
        self.m = m
        self.beta = self.ext.pow(self.ext.generator, (self.ext.order - 1) // n)
        self.fwd, self.back = self.ext.embed(self.base)


@functools.lru_cache(maxsize=None)
def _context(q: int, n: int) -> _RootContext:
    return _RootContext(q, n)


@functools.lru_cache(maxsize=None)
def minimal_polynomial(q: int, n: int, i: int) -> Poly:
    """Minimal polynomial of beta^i over GF(q): prod over the coset of i."""
    ctx = _context(q, n)
    ext = ctx.ext
    prod = Poly(ext, [1])
    for j in sorted(cyclotomic_coset(n, q, i)):
        root = ext.pow(ctx.beta, j)
        prod = prod * Poly(ext, [ext.neg(root), 1])
    coeffs = []
    for c in prod.coeffs:
        if c not in ctx.back:
            raise RuntimeError(
                f"minimal polynomial coefficient {c} not in GF({q}); inconsistent context")
        coeffs.append(ctx.back[c])
    return Poly(ctx.base, coeffs)


@functools.lru_cache(maxsize=None)
def generator_polynomial(spec: CyclicSpec) -> Poly:
    """Product of the minimal polynomials over the cosets inside T."""
    base = _context(spec.q, spec.n).base
    g = Poly(base, [1])
    remaining = set(spec.defining_set)
    while remaining:
        i = min(remaining)
        g = g * minimal_polynomial(spec.q, spec.n, i)
        remaining -= cyclotomic_coset(spec.n, spec.q, i)
    if g.degree != len(spec.defining_set):
        raise RuntimeError("generator degree does not match the defining set size")
    return g


@functools.lru_cache(maxsize=None)
def cyclic_code(spec: CyclicSpec) -> LinearCode:
    """Realize the cyclic code: circulant shifts of the generator polynomial."""
    g = generator_polynomial(spec)
    base = _context(spec.q, spec.n).base
    k = spec.n - g.degree
    coeffs = list(g.coeffs)
    rows = [[0] * i + coeffs + [0] * (spec.n - g.degree - i - 1) for i in range(k)]
    return LinearCode.from_generator(base, rows, n=spec.n)


def dual_defining_set(spec: CyclicSpec) -> CyclicSpec:
    """Defining set of the dual code: negate the complement."""
    comp = set(range(spec.n)) - spec.defining_set
    return CyclicSpec(spec.q, spec.n, frozenset((-i) % spec.n for i in comp))


def defining_set_from_poly(q: int, n: int, coeffs) -> CyclicSpec:
    """Defining set of the cyclic code generated by the given polynomial.

    The polynomial (low-degree-first coefficient encodings over GF(q))
    must divide x^n - 1.
    """
    ctx = _context(q, n)
    g = Poly.from_ints(ctx.base, coeffs)
    if g.is_zero:
        raise ValueError("zero polynomial")
    xn1 = Poly(ctx.base, [ctx.base.neg(1)] + [0] * (n - 1) + [1])
    if not (xn1 % g).is_zero:
        raise ValueError("polynomial does not divide x^n - 1")
    ext = ctx.ext
    lifted = Poly(ext, [ctx.fwd[c] for c in g.coeffs])
    T = frozenset(i for i in range(n) if lifted.eval_enc(ext.pow(ctx.beta, i)) == 0)
    if len(T) != g.degree:
        raise RuntimeError("root count does not match degree")
    return CyclicSpec(q, n, T)


def bch_defining_set(spec: BchSpec) -> CyclicSpec:
    """Defining set of the BCH code: cosets of b .. b+delta-2."""
    T: set[int] = set()
    for i in range(spec.b, spec.b + spec.delta - 1):
        T |= cyclotomic_coset(spec.n, spec.q, i)
    return CyclicSpec(spec.q, spec.n, frozenset(T))


def bch(spec: BchSpec) -> tuple[CyclicSpec, LinearCode]:
    """BCH code with designed distance delta, realized."""
    cspec = bch_defining_set(spec)
    return cspec, cyclic_code(cspec)


def bch_bound(defining_set: frozenset[int], n: int) -> int:
    """Designed distance read off a defining set: longest cyclic run + 1."""
    T = set(defining_set)
    if len(T) == n:
        return n + 1
    best = 0
    for start in range(n):
        if start in T and (start - 1) % n not in T:
            run = 0
            while (start + run) % n in T:
                run += 1
            best = max(best, run)
    return best + 1


def sumset(s1, s2, n: int) -> frozenset[int]:
    """{a + b mod n}; empty if either operand is empty."""
    return frozenset((a + b) % n for a in s1 for b in s2)


def star_cyclic(spec1: CyclicSpec, spec2: CyclicSpec) -> CyclicSpec:
    """Star product at the defining-set level: nonzero sets add."""
    if (spec1.q, spec1.n) != (spec2.q, spec2.n):
        raise ValueError("star product needs matching (q, n)")
    s = sumset(spec1.nonzero_set, spec2.nonzero_set, spec1.n)
    return CyclicSpec(spec1.q, spec1.n, frozenset(set(range(spec1.n)) - s))


# -- two-weight irreducible cyclic codes --------------------------------


@dataclass(frozen=True)
class TwoWeightPair:
    """An irreducible cyclic code (dim n-m) and its two-weight dual (dim m)."""

    m: int
    e: int
    n: int
    spec: CyclicSpec
    code: LinearCode
    dual: LinearCode
    min_weight: int
    max_weight: int
    weight_counts: tuple[tuple[int, int], ...]  # (weight, count), ascending


def two_weight_irreducible(m: int, e: int) -> TwoWeightPair:
    """Length (2^m - 1)/e binary code generated by the minimal polynomial of
    beta = alpha^e, together with its m-dimensional two-weight dual.

    Requires m even and e | 2^(m/2) + 1; the divisor e = 2^(m/2) + 1 itself
    degenerates (beta then generates a proper subfield) and is rejected.
    """
    if m < 2 or m % 2:
        raise ValueError("m must be even and >= 2")
    if (2 ** (m // 2) + 1) % e:
        raise ValueError(f"e={e} does not divide 2^{m//2}+1")
    n = (2 ** m - 1) // e
    if order_of(2, n) != m:
        raise ValueError(f"degenerate case: beta lies in a subfield (ord_2({n}) != {m})")
    spec = CyclicSpec(2, n, cyclotomic_coset(n, 2, 1))
    c = cyclic_code(spec)
    d = cyclic_code(dual_defining_set(spec))
    half = 2 ** (m // 2 - 1)
    wmin = (2 ** (m - 1) - (e - 1) * half) // e
    wmax = (2 ** (m - 1) + half) // e
    if e == 1:
        counts = ((wmin, n),)
    else:
        counts = ((wmin, n), (wmax, (e - 1) * n))
    return TwoWeightPair(m, e, n, spec, c, d, wmin, wmax, counts)


# -- rate bounds ----------------------------------------------------------


@dataclass(frozen=True)
class RateBound:
    """A formulaic retrieval-rate lower bound, clamped below at zero."""

    value: Fraction
    vacuous: bool  # the unclamped formula was negative


def _clamp(raw: Fraction) -> RateBound:
    if raw < 0:
        return RateBound(Fraction(0), True)
    return RateBound(raw, False)


def bch_pair_rate_bound(n: int, q: int, delta1: int, delta2: int) -> RateBound:
    """Rate bound for BCH storage with dual-BCH retrieval, via the total
    coset count N: (n - (N - delta1 + 1)(delta2 - 1) m^2) / n."""
    N = coset_count(n, q)
    m = order_of(q, n)
    return _clamp(Fraction(n - (N - delta1 + 1) * (delta2 - 1) * m * m, n))


def coset_union_rate_bound(n: int, q: int, s1, delta2: int) -> RateBound:
    """Rate bound when the storage nonzero set is a coset union S1:
    (n - m |S1| (delta2 - 1)) / n."""
    m = order_of(q, n)
    return _clamp(Fraction(n - m * len(set(s1)) * (delta2 - 1), n))


def low_cost_rate_bound(m: int, e: int, delta: int) -> RateBound:
    """Digit-counting rate bound for the two-weight storage scheme:
    (n - (m - t) 2^(t+1)) / n with t minimal such that delta <= 2^t + 1."""
    if delta < 2:
        raise ValueError("designed distance must be >= 2")
    n = (2 ** m - 1) // e
    t = 1
    while delta > 2 ** t + 1:
        t += 1
    return _clamp(Fraction(n - (m - t) * 2 ** (t + 1), n))


@dataclass(frozen=True)
class LowCostScheme:
    """All parameters of the two-weight-storage / dual-BCH-retrieval scheme."""

    m: int
    e: int
    delta: int
    n: int
    storage_rate: Fraction
    failed_server_ratio: Fraction  # (d(storage) - 1) / n
    privacy: int                   # delta - 1, from the designed distance
    max_weight: int
    star_dimension: int            # |S1 + S2|, exact
    exact_rate: Fraction           # (n - |S1 + S2|) / n
    rate_bound: RateBound


def low_cost_scheme(m: int, e: int, delta: int) -> LowCostScheme:
    """Analyze the scheme with storage = two-weight dual code and retrieval =
    dual of the narrow-sense-at-0 BCH of designed distance delta.

    The star dimension is exact, computed by the sumset rule on nonzero
    sets; the rate bound is the digit-counting formula, which exact
    computation can and does contradict on some instances (the verify
    suite reports this).
    """
    pair = two_weight_irreducible(m, e)
    n = pair.n
    storage_spec = dual_defining_set(pair.spec)
    retrieval_spec = dual_defining_set(bch_defining_set(BchSpec(2, n, 0, delta)))
    s = sumset(storage_spec.nonzero_set, retrieval_spec.nonzero_set, n)
    return LowCostScheme(
        m=m, e=e, delta=delta, n=n,
        storage_rate=Fraction(m, n),
        failed_server_ratio=Fraction(pair.min_weight - 1, n),
        privacy=delta - 1,
        max_weight=pair.max_weight,
        star_dimension=len(s),
        exact_rate=Fraction(n - len(s), n),
        rate_bound=low_cost_rate_bound(m, e, delta),
    )
