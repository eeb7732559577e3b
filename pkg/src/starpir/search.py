"""Retrieval-code search for a fixed storage code: enumerate structured
candidate families and keep the Pareto front over (privacy t, rate).

Families are deterministic generators of (descriptor, code) candidates;
descriptors carry full provenance so any front entry can be reproduced.
Dominance uses the transitive rate when available, the basic rate
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .agcode import ag_one_point, all_curves
from .code import DEFAULT_MAX_WORDS, LinearCode
from .cyclic import BchSpec, CyclicSpec, bch, cyclic_code, cyclotomic_cosets
from .errors import CapExceededError
from .gf import Field
from .pir import analyze

FAMILY_CAP = 1 << 20


@dataclass(frozen=True)
class Candidate:
    descriptor: dict | None
    code: LinearCode
    transitive: bool  # cyclic-by-construction


@dataclass(frozen=True)
class AllCyclicFamily:
    """Every cyclic code of the storage length: all coset-subset codes."""

    def candidates(self, field: Field, n: int) -> Iterator[Candidate]:
        q = field.order
        cosets = cyclotomic_cosets(n, q)
        if 2 ** len(cosets) > FAMILY_CAP:
            raise CapExceededError(f"2^{len(cosets)} coset subsets exceed the family cap")
        for r in range(len(cosets) + 1):
            for combo in combinations(cosets, r):
                T = frozenset().union(*combo) if combo else frozenset()
                spec = CyclicSpec(q, n, T)
                desc = {"cyclic": {"q": q, "n": n,
                                   "defining_set": sorted(spec.defining_set)}}
                yield Candidate(desc, cyclic_code(spec), True)


@dataclass(frozen=True)
class BchDualFamily:
    """Duals of BCH codes over ranges of starting exponent and designed distance."""

    b_values: tuple[int, ...]
    deltas: tuple[int, ...]

    def candidates(self, field: Field, n: int) -> Iterator[Candidate]:
        q = field.order
        if len(self.b_values) * len(self.deltas) > FAMILY_CAP:
            raise CapExceededError("family cap exceeded")
        for b in self.b_values:
            for delta in self.deltas:
                _, code = bch(BchSpec(q, n, b, delta))
                desc = {"dual": {"bch": {"q": q, "n": n, "b": b, "delta": delta}}}
                yield Candidate(desc, code.dual(), True)


@dataclass(frozen=True)
class AgOnePointFamily:
    """One-point elliptic evaluation codes: curves over GF(p) with enough
    affine points, all n-point subsets in lexicographic order."""

    mult: int
    max_candidates: int = 256

    def candidates(self, field: Field, n: int) -> Iterator[Candidate]:
        if field.e != 1 or field.p <= 3:
            raise ValueError("one-point elliptic codes need a prime field, p > 3")
        produced = 0
        for curve in all_curves(field.p):
            if len(curve.affine_points) < n:
                continue
            for subset in combinations(curve.affine_points, n):
                code = ag_one_point(curve, subset, self.mult)
                desc = {"ag_elliptic": {"p": curve.p, "a": curve.a, "b": curve.b,
                                        "points": [list(pt) for pt in subset],
                                        "mult": self.mult}}
                yield Candidate(desc, code, False)
                produced += 1
                if produced >= self.max_candidates:
                    return


@dataclass(frozen=True)
class DirectSumFamily:
    """Direct sums of candidates from two component families.

    `left_positions` places the left component's coordinates (ascending;
    the right component fills the complement); the default is the first
    half.  Storage codes whose codewords split over an interleaved
    support pattern need the matching interleaved placement here.
    """

    left: object
    right: object
    left_positions: tuple[int, ...] | None = None

    def candidates(self, field: Field, n: int) -> Iterator[Candidate]:
        lpos = tuple(self.left_positions) if self.left_positions else tuple(range(n // 2))
        if any(not 0 <= j < n for j in lpos) or len(set(lpos)) != len(lpos):
            raise ValueError("invalid left positions")
        rpos = tuple(j for j in range(n) if j not in set(lpos))
        contiguous = lpos == tuple(range(len(lpos)))
        rights = list(self.right.candidates(field, len(rpos)))
        for lc in self.left.candidates(field, len(lpos)):
            for rc in rights:
                code = _place(field, n, (lpos, lc.code), (rpos, rc.code))
                if contiguous:
                    desc = {"direct_sum": [lc.descriptor, rc.descriptor]}
                else:
                    from .descriptors import normalize

                    desc = normalize(code)
                yield Candidate(desc, code, False)


def _place(field: Field, n: int, *parts: tuple[tuple[int, ...], LinearCode]) -> LinearCode:
    rows = []
    for positions, code in parts:
        for r in code.gen.rows:
            row = [0] * n
            for j, x in zip(positions, r):
                row[j] = x
            rows.append(row)
    return LinearCode.from_generator(field, rows, n=n)


@dataclass(frozen=True)
class ExplicitFamily:
    """A fixed candidate list."""

    entries: tuple[Candidate, ...]

    def candidates(self, field: Field, n: int) -> Iterator[Candidate]:
        for cand in self.entries:
            if cand.code.field != field or cand.code.n != n:
                raise ValueError("explicit candidate does not match the storage code")
            yield cand


@dataclass(frozen=True)
class ParetoEntry:
    """A non-dominated (privacy, rate) point with a reproducing candidate.

    When several candidates tie at the same point, the lexicographically
    first descriptor represents them and `multiplicity` counts the rest.
    """

    descriptor: dict | None
    privacy: int
    rate: Fraction                      # dominance key
    rate_basic: Fraction | None
    rate_transitive: Fraction | None
    defect: int | None
    multiplicity: int = 1


def enumerate_candidates(family, storage: LinearCode) -> Iterator[Candidate]:
    """Stream a family's candidates in the storage code's (q, n) context."""
    return family.candidates(storage.field, storage.n)


def pareto(storage: LinearCode, families,
           storage_transitivity: str | None = None,
           max_words: int = DEFAULT_MAX_WORDS) -> list[ParetoEntry]:
    """Analyze every candidate from every family and drop dominated entries.

    An entry dominates another when it is at least as good in both privacy
    and rate and strictly better in one; exact ties are all kept.
    """
    cyclic_storage = storage_transitivity in ("cyclic", "replicated")
    entries: list[ParetoEntry] = []
    for family in families:
        for cand in enumerate_candidates(family, storage):
            hint = "cyclic" if (cyclic_storage and cand.transitive) else None
            res = analyze(storage, cand.code, transitivity=hint, max_words=max_words)
            rate = res.rate_transitive if res.rate_transitive is not None else res.rate_basic
            if res.privacy is None or rate is None:
                continue
            entries.append(ParetoEntry(cand.descriptor, res.privacy, rate,
                                       res.rate_basic, res.rate_transitive, res.defect))
    front = [e for e in entries if not any(_dominates(o, e) for o in entries)]
    front.sort(key=lambda e: (e.privacy, -e.rate, str(e.descriptor)))
    # one representative per (privacy, rate) point; ties counted
    grouped: dict[tuple[int, Fraction], ParetoEntry] = {}
    for e in front:
        key = (e.privacy, e.rate)
        if key in grouped:
            prev = grouped[key]
            grouped[key] = ParetoEntry(prev.descriptor, prev.privacy, prev.rate,
                                       prev.rate_basic, prev.rate_transitive,
                                       prev.defect, prev.multiplicity + 1)
        else:
            grouped[key] = e
    return [grouped[k] for k in sorted(grouped, key=lambda k: (k[0], -k[1]))]


def _dominates(a: ParetoEntry, b: ParetoEntry) -> bool:
    return (a.privacy >= b.privacy and a.rate >= b.rate
            and (a.privacy > b.privacy or a.rate > b.rate))
