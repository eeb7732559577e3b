"""Linear codes over a Field and the operators schemes are built from:
dual, star (componentwise) product, puncture/shorten/extend, direct sum,
exact minimum distance and weight distribution by exhaustive enumeration.

A LinearCode is canonically represented by the rref of its generator
matrix with zero rows removed, so code equality is matrix equality.
Exact distances are found by enumerating codewords (Gray-code bitsets
over GF(2), an odometer walk otherwise) under a hard word-count cap;
when a code is too large to enumerate, a trusted distance can travel
with the code as `declared_distance` metadata and callers may fall back
to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import CapExceededError
from .gf import Field
from .matrix import Matrix, _pack

DEFAULT_MAX_WORDS = 1 << 26
_CHECK_SEARCH_MAX = 1 << 20

#: Minimum distance of the zero code.
INFINITE = math.inf


@dataclass(frozen=True)
class CodeParams:
    """[n, k, d] plus the defect n - (d + k)."""

    n: int
    k: int
    d: int | float
    defect: int | float

    def __str__(self):
        d = "inf" if self.d == INFINITE else self.d
        return f"[{self.n}, {self.k}, {d}]"


class LinearCode:
    """A length-n linear code over a Field, in canonical generator form."""

    __slots__ = ("field", "n", "k", "gen", "declared_distance", "declared_dual_distance")

    def __init__(self, field: Field, gen: Matrix, *,
                 declared_distance: int | None = None,
                 declared_dual_distance: int | None = None):
        # gen must already be canonical rref with zero rows removed
        self.field = field
        self.n = gen.ncols
        self.k = gen.nrows
        self.gen = gen
        self.declared_distance = declared_distance
        self.declared_dual_distance = declared_dual_distance

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_generator(cls, field: Field, rows: Iterable[Sequence[int]],
                       n: int | None = None,
                       declared_distance: int | None = None) -> "LinearCode":
        """Canonicalize arbitrary spanning rows (entries are encodings)."""
        mat = Matrix(field, rows, ncols=n)
        red, _ = mat.rref()
        return cls(field, red, declared_distance=declared_distance)

    @classmethod
    def replicated(cls, field: Field, n: int) -> "LinearCode":
        """The [n, 1, n] repetition code."""
        return cls.from_generator(field, [[1] * n], declared_distance=n)

    @classmethod
    def full_space(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, Matrix.identity(field, n))

    @classmethod
    def zero(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, Matrix(field, [], ncols=n))

    # -- basic predicates --------------------------------------------------

    def contains(self, word: Sequence[int]) -> bool:
        if len(word) != self.n:
            raise ValueError("word length mismatch")
        return self.gen.row_span_contains(word)

    def __eq__(self, other):
        return (isinstance(other, LinearCode) and self.field == other.field
                and self.n == other.n and self.gen == other.gen)

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.n, self.gen.rows))

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"

    # -- enumeration -------------------------------------------------------

    def _check_cap(self, max_words: int, k: int | None = None) -> None:
        k = self.k if k is None else k
        if self.field.order ** k > max_words:
            raise CapExceededError(
                f"{self.field.order}^{k} codewords exceed the cap of {max_words}")

    def _virtual_rows(self, rows=None) -> list[list[int]]:
        """Rows scaled by the polynomial-basis powers 1, x, ..., x^(e-1).

        A base-p odometer over these reaches every GF(p^e)-linear
        combination with one vector addition per step (repeatedly adding
        an unscaled row only ever walks the prime subfield).
        """
        F = self.field
        rows = self.gen.rows if rows is None else rows
        if F.e == 1:
            return [list(r) for r in rows]
        out = []
        for r in rows:
            for i in range(F.e):
                scale = F.encode([0] * i + [1])
                out.append([F.mul(scale, x) for x in r])
        return out

    def codewords(self, max_words: int = DEFAULT_MAX_WORDS) -> Iterator[tuple[int, ...]]:
        """All q^k codewords, the zero word first."""
        self._check_cap(max_words)
        F = self.field
        p = F.p
        word = [0] * self.n
        yield tuple(word)
        if self.k == 0:
            return
        rows = self._virtual_rows()
        sparse = [[(j, x) for j, x in enumerate(r) if x] for r in rows]
        digits = [0] * len(rows)
        add = F.add
        for _ in range(F.order ** self.k - 1):
            pos = 0
            while True:
                for j, x in sparse[pos]:
                    word[j] = add(word[j], x)
                digits[pos] += 1
                if digits[pos] == p:
                    digits[pos] = 0
                    pos += 1
                else:
                    break
            yield tuple(word)

    def min_distance(self, max_words: int = DEFAULT_MAX_WORDS) -> int | float:
        """Exact minimum nonzero weight; INFINITE for the zero code.

        Enumerates the q^k codewords when that fits the cap; otherwise,
        for high-rate codes, falls back to the smallest number of
        linearly dependent parity-check columns (the search depth is
        bounded by n - k + 1, so a small dual keeps it exact and cheap).
        """
        if self.k == 0:
            return INFINITE
        F = self.field
        if F.order ** self.k > max_words:
            return self._min_distance_via_checks(max_words)
        if F.p == 2 and F.e == 1:
            packed = [_pack(r) for r in self.gen.rows]
            best = self.n + 1
            word = 0
            for i in range(1, 1 << self.k):
                word ^= packed[(i & -i).bit_length() - 1]
                w = word.bit_count()
                if w < best:
                    best = w
            return best
        return self._min_distance_projective()

    def _min_distance_via_checks(self, max_words: int) -> int:
        # d = least w such that some w parity-check columns are dependent,
        # i.e. some column lies in the span of w-1 others.  Levels run
        # ascending and exhaustively, so the first hit is exact.
        n = self.n
        F = self.field
        q = F.order
        h = self.gen.kernel()
        cols = [h.column(j) for j in range(n)]
        if any(not any(c) for c in cols):
            return 1
        budget = min(max_words, _CHECK_SEARCH_MAX)
        spent = n
        add, mul = F.add, F.mul
        for w in range(2, n - self.k + 2):
            spent += comb(n, w - 1) * (q ** (w - 1) + n)
            if spent > budget:
                raise CapExceededError(
                    f"{q}^{self.k} codewords and the depth-{w} column search "
                    f"both exceed the cap")
            for subset in combinations(range(n), w - 1):
                span = set()
                base = [cols[s] for s in subset]
                for coeffs in product(range(q), repeat=w - 1):
                    vec = tuple(0 for _ in range(h.nrows))
                    for c, col in zip(coeffs, base):
                        if c:
                            vec = tuple(add(v, mul(c, x)) for v, x in zip(vec, col))
                    span.add(vec)
                inset = set(subset)
                for j in range(n):
                    if j not in inset and cols[j] in span:
                        return w
        raise RuntimeError("no dependent column set within the Singleton bound")

    def _min_distance_projective(self) -> int:
        # enumerate one representative per scalar class: first nonzero
        # coefficient normalized to 1, the later coefficients free
        F = self.field
        q = F.order
        p = F.p
        n = self.n
        prime = p if F.e == 1 else None
        add = F.add
        best = n + 1
        for lead in range(self.k):
            word = [0] * n
            weight = 0
            for j, x in enumerate(self.gen.rows[lead]):
                if x:
                    word[j] = x
                    weight += 1
            if weight < best:
                best = weight
            tail = [[(j, x) for j, x in enumerate(r) if x]
                    for r in self._virtual_rows(self.gen.rows[lead + 1:])]
            if not tail:
                continue
            digits = [0] * len(tail)
            for _ in range(q ** (self.k - lead - 1) - 1):
                pos = 0
                while True:
                    row = tail[pos]
                    if prime is not None:
                        for j, x in row:
                            old = word[j]
                            new = (old + x) % prime
                            word[j] = new
                            weight += (new != 0) - (old != 0)
                    else:
                        for j, x in row:
                            old = word[j]
                            new = add(old, x)
                            word[j] = new
                            weight += (new != 0) - (old != 0)
                    digits[pos] += 1
                    if digits[pos] == p:
                        digits[pos] = 0
                        pos += 1
                    else:
                        break
                if weight < best:
                    best = weight
        return best

    def weight_distribution(self, max_words: int = DEFAULT_MAX_WORDS) -> list[int]:
        """Counts A_0..A_n over all q^k codewords."""
        counts = [0] * (self.n + 1)
        counts[0] = 1
        if self.k == 0:
            return counts
        self._check_cap(max_words)
        F = self.field
        if F.p == 2 and F.e == 1:
            packed = [_pack(r) for r in self.gen.rows]
            word = 0
            for i in range(1, 1 << self.k):
                word ^= packed[(i & -i).bit_length() - 1]
                counts[word.bit_count()] += 1
            return counts
        p = F.p
        word = [0] * self.n
        weight = 0
        sparse = [[(j, x) for j, x in enumerate(r) if x] for r in self._virtual_rows()]
        digits = [0] * len(sparse)
        prime = p if F.e == 1 else None
        add = F.add
        for _ in range(F.order ** self.k - 1):
            pos = 0
            while True:
                row = sparse[pos]
                if prime is not None:
                    for j, x in row:
                        old = word[j]
                        new = (old + x) % prime
                        word[j] = new
                        weight += (new != 0) - (old != 0)
                else:
                    for j, x in row:
                        old = word[j]
                        new = add(old, x)
                        word[j] = new
                        weight += (new != 0) - (old != 0)
                digits[pos] += 1
                if digits[pos] == p:
                    digits[pos] = 0
                    pos += 1
                else:
                    break
            counts[weight] += 1
        return counts

    def params(self, max_words: int = DEFAULT_MAX_WORDS) -> CodeParams:
        d = self.min_distance(max_words)
        return CodeParams(self.n, self.k, d, self.n - (d + self.k))

    # -- code operators ----------------------------------------------------

    def dual(self) -> "LinearCode":
        """Kernel-based dual; declared metadata swaps sides."""
        return LinearCode(self.field, self.gen.kernel(),
                          declared_distance=self.declared_dual_distance,
                          declared_dual_distance=self.declared_distance)

    def star(self, other: "LinearCode") -> "LinearCode":
        """Componentwise (Schur) product span.

        By bilinearity the k_C * k_D products of generator rows span the
        product of the full codeword sets.
        """
        if self.field != other.field or self.n != other.n:
            raise ValueError("star product needs matching field and length")
        F = self.field
        mul = F.mul
        rows = []
        for a in self.gen.rows:
            for b in other.gen.rows:
                rows.append([mul(x, y) for x, y in zip(a, b)])
        return LinearCode.from_generator(F, rows, n=self.n)

    def puncture(self, positions: Iterable[int]) -> "LinearCode":
        """Delete the given coordinates."""
        pos = self._validate_positions(positions)
        keep = [j for j in range(self.n) if j not in pos]
        return LinearCode.from_generator(
            self.field, [[r[j] for j in keep] for r in self.gen.rows], n=len(keep))

    def shorten(self, positions: Iterable[int]) -> "LinearCode":
        """Keep codewords zero on the given coordinates, then delete them."""
        pos = self._validate_positions(positions)
        if not pos:
            return self
        sub = self.gen.select_columns(sorted(pos))
        coeffs = sub.transpose().kernel()  # combinations vanishing on pos
        rows = coeffs.times(self.gen)
        keep = [j for j in range(self.n) if j not in pos]
        return LinearCode.from_generator(
            self.field, [[r[j] for j in keep] for r in rows.rows], n=len(keep))

    def extend(self) -> "LinearCode":
        """Prepend an overall-parity coordinate; extended words sum to zero."""
        F = self.field
        rows = []
        for r in self.gen.rows:
            s = 0
            for x in r:
                s = F.add(s, x)
            rows.append([F.neg(s)] + list(r))
        return LinearCode.from_generator(F, rows, n=self.n + 1)

    def direct_sum(self, other: "LinearCode") -> "LinearCode":
        if self.field != other.field:
            raise ValueError("direct sum needs a common field")
        rows = [list(r) + [0] * other.n for r in self.gen.rows]
        rows += [[0] * self.n + list(r) for r in other.gen.rows]
        return LinearCode.from_generator(self.field, rows, n=self.n + other.n)

    def _validate_positions(self, positions: Iterable[int]) -> set[int]:
        pos = set(positions)
        if any(not 0 <= j < self.n for j in pos):
            raise ValueError("position out of range")
        return pos


def distance_or_declared(code: LinearCode,
                         max_words: int = DEFAULT_MAX_WORDS) -> int | float | None:
    """Exact distance when enumerable, declared metadata otherwise, else None."""
    try:
        return code.min_distance(max_words)
    except CapExceededError:
        return code.declared_distance
