"""Reed-Muller codes, their punctured extended-cyclic realization, and the
scheme rate machinery for RM storage with extended-BCH-dual retrieval.

Point ordering is fixed so that extended-cyclic equality is literal, not
up to permutation: position 0 evaluates at the zero vector (the parity
coordinate that extend() prepends), and position i >= 1 evaluates at the
coordinate vector of alpha^(i-1) under the deterministic GF(2^m) basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .code import LinearCode
from .cyclic import (BchSpec, CyclicSpec, bch, bch_defining_set, cyclotomic_coset,
                     dual_defining_set, sumset)
from .gf import field_create

RM_MAX_M = 7


def rm_dimension(m: int, r: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def two_adic_weight(a: int) -> int:
    """Number of nonzero binary digits of the canonical residue."""
    if a < 0:
        raise ValueError("need a canonical (nonnegative) residue")
    return a.bit_count()


def _points(m: int) -> list[tuple[int, ...]]:
    """Evaluation points: zero vector first, then alpha^0, alpha^1, ..."""
    F = field_create(2, m)
    pts = [tuple([0] * m)]
    x = 1
    for _ in range(2 ** m - 1):
        pts.append(F.decode(x))
        x = F.mul(x, F.generator)
    return pts


def rm_code(m: int, r: int) -> LinearCode:
    """RM(m, r): evaluations of multilinear monomials of degree <= r."""
    if not 0 <= r <= m:
        raise ValueError("order out of range")
    if m > RM_MAX_M:
        raise ValueError(f"m > {RM_MAX_M} exceeds the construction cap")
    pts = _points(m)
    F2 = field_create(2)
    rows = []
    for deg in range(r + 1):
        for mono in combinations(range(m), deg):
            rows.append([_eval_monomial(pt, mono) for pt in pts])
    return LinearCode.from_generator(F2, rows, n=2 ** m)


def _eval_monomial(pt: tuple[int, ...], mono: tuple[int, ...]) -> int:
    for i in mono:
        if not pt[i]:
            return 0
    return 1


def punctured_rm_spec(m: int, r: int) -> CyclicSpec:
    """Defining set of the punctured RM(m, r) code as a length 2^m - 1
    cyclic code: nonzero residues of 2-adic weight at most m - r - 1."""
    if not 0 <= r < m:
        raise ValueError("need 0 <= r < m")
    n = 2 ** m - 1
    T = frozenset(a for a in range(1, n) if two_adic_weight(a) <= m - r - 1)
    spec = CyclicSpec(2, n, T)
    if spec.dimension != rm_dimension(m, r):
        raise RuntimeError("defining set does not give the RM dimension")
    return spec


@dataclass(frozen=True)
class ExtendedDualIdentity:
    """Result of checking Ext(B)^perp == (0, B^perp) + span(all-ones)."""

    holds: bool
    dim_left: int
    dim_right: int


def extended_dual_identity(m: int, delta: int) -> ExtendedDualIdentity:
    """Exact code equality between the dual of an extended BCH code and the
    zero-prefixed dual BCH plus the all-ones vector."""
    n = 2 ** m - 1
    _, b_code = bch(BchSpec(2, n, 0, delta))
    left = b_code.extend().dual()
    F2 = field_create(2)
    rows = [[0] + list(r) for r in b_code.dual().gen.rows]
    rows.append([1] * (n + 1))
    right = LinearCode.from_generator(F2, rows, n=n + 1)
    return ExtendedDualIdentity(left == right, left.k, right.k)


def rm_bch_scheme_rate(m: int, r: int, rp: int) -> Fraction:
    """Retrieval rate of the scheme with storage RM(m, r) (extended cyclic)
    and retrieval the dual of the extended BCH of designed distance
    2^(rp+1) - 1: (2^m - 1 - dim(C star B^perp)) / 2^m, with the star
    dimension computed exactly by the sumset rule.

    rp = 0 degenerates the retrieval side to the replicated code (the
    designed distance collapses below 2), leaving rate
    (2^m - 1 - dim C) / 2^m.
    """
    if m > 10:
        raise ValueError("m > 10 exceeds the sumset cap")
    n = 2 ** m - 1
    if rp == 0:
        s2 = frozenset({0})
    else:
        s2 = _retrieval_nonzero_set(m, rp)
    s1 = punctured_rm_spec(m, r).nonzero_set
    dim_star = len(sumset(s1, s2, n))
    return Fraction(n - dim_star, 2 ** m)


def _retrieval_nonzero_set(m: int, rp: int) -> frozenset[int]:
    """Nonzero set of the dual of the designed-distance 2^(rp+1)-1 BCH code."""
    n = 2 ** m - 1
    bspec = bch_defining_set(BchSpec(2, n, 0, 2 ** (rp + 1) - 1))
    return dual_defining_set(bspec).nonzero_set


def rm_bch_star_dimension(m: int, r: int, rp: int) -> int:
    """dim(C star B^perp) via the sumset rule (exact)."""
    n = 2 ** m - 1
    s1 = punctured_rm_spec(m, r).nonzero_set
    return len(sumset(s1, _retrieval_nonzero_set(m, rp), n))


def rm_retrieval_rate(m: int, r: int, r2: int) -> Fraction:
    """Rate of the all-RM scheme: storage RM(m, r), retrieval RM(m, r2):
    dim(RM(m, r + r2)^perp) / 2^m."""
    return Fraction(2 ** m - rm_dimension(m, min(r + r2, m)), 2 ** m)


@dataclass(frozen=True)
class SumsetCount:
    """Exact size of a structured sumset next to its counting bound."""

    size: int
    bound: int


def first_order_sumset_size(m: int) -> SumsetCount:
    """|S1 + S2| for the first-order scheme example: S1 is the m-element set
    of residues of 2-adic weight m - 1, S2 the union of the cosets of
    0, -1, -3, -5; bound m + m(m-1)/2 + 2m^2."""
    if m < 4:
        raise ValueError("need m >= 4")
    n = 2 ** m - 1
    s1 = frozenset((n - (1 << h)) % n for h in range(m))
    if len(s1) != m:
        raise RuntimeError("expected an m-element set")
    s2: set[int] = set()
    for j in (0, 1, 3, 5):
        s2 |= cyclotomic_coset(n, 2, -j % n)
    return SumsetCount(len(sumset(s1, s2, n)), m + m * (m - 1) // 2 + 2 * m * m)
