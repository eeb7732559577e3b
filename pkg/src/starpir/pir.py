"""Star-product scheme analysis and end-to-end protocol simulation.

The analyzer reports every scheme parameter of a (storage, retrieval)
pair that is computable within the enumeration caps: storage rate, failed
server ratio, privacy level t = d(D_perp) - 1, basic retrieval rate
(d(C*D) - 1)/n, the improved rate dim((C*D)_perp)/n when the caller can
vouch for transitivity, and the scheme defect.  Exact distances fall back
to declared metadata when enumeration is infeasible; fields that remain
unknown are None rather than guessed.

The simulator realizes the basic scheme: per round the user samples one
uniform retrieval codeword per file, bumps the target file's row on the
round's position group, collects inner-product responses, and erasure
decodes against the star code's parity check.  Everything is exact and
bit-reproducible from the seed.
"""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .code import DEFAULT_MAX_WORDS, INFINITE, LinearCode, distance_or_declared
from .errors import CapExceededError
from .matrix import Matrix

#: Accepted transitivity vouchers for the improved rate formula.
TRANSITIVITY_HINTS = frozenset({"cyclic", "extended-cyclic", "replicated"})


@dataclass(frozen=True)
class PirAnalysis:
    """All scheme parameters of a (storage, retrieval) pair.

    Rates are exact fractions; fields are None when the quantity needs a
    distance that is neither enumerable nor declared, or when the pair is
    too degenerate for the quantity to be defined (see notes).
    """

    n: int
    storage_rate: Fraction
    failed_server_ratio: Fraction | None
    privacy: int | None
    rate_basic: Fraction | None
    rate_transitive: Fraction | None
    defect: int | None
    star_dimension: int
    d_storage: int | float | None
    d_star: int | float | None
    d_dual_retrieval: int | float | None
    notes: tuple[str, ...] = ()


def analyze(storage: LinearCode, retrieval: LinearCode,
            transitivity: str | None = None,
            max_words: int = DEFAULT_MAX_WORDS) -> PirAnalysis:
    """Analyze the star-product scheme built from the given pair."""
    if storage.field != retrieval.field or storage.n != retrieval.n:
        raise ValueError("storage and retrieval codes need matching field and length")
    if storage.k == 0:
        raise ValueError("storage code must be nonzero")
    if transitivity is not None and transitivity not in TRANSITIVITY_HINTS:
        raise ValueError(f"unknown transitivity hint {transitivity!r}; "
                         f"expected one of {sorted(TRANSITIVITY_HINTS)}")
    n = storage.n
    notes: list[str] = []

    star = storage.star(retrieval)
    star_dual = star.dual()

    d_storage = distance_or_declared(storage, max_words)
    f = Fraction(d_storage - 1, n) if d_storage is not None else None
    if d_storage is None:
        notes.append("d(storage) unknown: enumeration capped and no declared distance")

    if retrieval.k == n:
        t = n
        d_dual_r: int | float | None = INFINITE
        notes.append("retrieval code is the full space: privacy clamped to n")
    else:
        d_dual_r = distance_or_declared(retrieval.dual(), max_words)
        t = d_dual_r - 1 if d_dual_r is not None else None
        if d_dual_r is None:
            notes.append("d(dual retrieval) unknown: enumeration capped and no declared distance")

    d_star = distance_or_declared(star, max_words)
    if d_star is None:
        # the star of a replicated code is the other factor; inherit metadata
        if star == retrieval:
            d_star = retrieval.declared_distance
        elif star == storage:
            d_star = storage.declared_distance
    if d_star == INFINITE:
        rate_basic: Fraction | None = Fraction(n, n)
        notes.append("star product is the zero code: every round is pure download")
    elif d_star is not None:
        rate_basic = Fraction(d_star - 1, n)
    else:
        rate_basic = None
        notes.append("d(star) unknown: basic rate unavailable")

    rate_transitive = Fraction(star_dual.k, n) if transitivity is not None else None

    defect: int | None = None
    if (star.k >= 1 and retrieval.k < n and d_dual_r is not None
            and not _has_weight_one_word(star_dual)):
        defect = (n + 2) - (star_dual.k + storage.k + d_dual_r)
    elif star.k >= 1:
        notes.append("defect undefined for this degenerate pair")

    return PirAnalysis(
        n=n,
        storage_rate=Fraction(storage.k, n),
        failed_server_ratio=f,
        privacy=t,
        rate_basic=rate_basic,
        rate_transitive=rate_transitive,
        defect=defect,
        star_dimension=star.k,
        d_storage=d_storage,
        d_star=d_star,
        d_dual_retrieval=d_dual_r,
        notes=tuple(notes),
    )


def _has_weight_one_word(dual_code: LinearCode) -> bool:
    """Whether the primal code contains a weight-1 word: true iff some
    column of the dual's generator matrix is identically zero."""
    rows = dual_code.gen.rows
    return any(all(r[j] == 0 for r in rows) for j in range(dual_code.n))


# -- privacy --------------------------------------------------------------


def privacy_level(retrieval: LinearCode,
                  max_words: int = DEFAULT_MAX_WORDS) -> int:
    """d(D_perp) - 1, clamped to n for the full space."""
    if retrieval.k == retrieval.n:
        return retrieval.n
    d = distance_or_declared(retrieval.dual(), max_words)
    if d is None:
        raise CapExceededError("dual distance not enumerable and not declared")
    return d - 1


def privacy_verify(retrieval: LinearCode, t: int, max_n: int = 24) -> bool:
    """Exhaustively check that every size-t coordinate set sees jointly
    uniform queries: the generator restricted to any t columns has rank t."""
    if retrieval.n > max_n:
        raise CapExceededError(f"n > {max_n}: refusing the exhaustive subset check")
    if t < 0 or t > retrieval.n:
        raise ValueError("t out of range")
    if t == 0:
        return True
    for cols in combinations(range(retrieval.n), t):
        if retrieval.gen.select_columns(cols).rank() != t:
            return False
    return True


def exact_query_distribution(retrieval: LinearCode, num_files: int, target: int,
                             positions: Sequence[int], subset: Sequence[int],
                             max_tuples: int = 1 << 20) -> Counter:
    """Exact joint distribution of the queries the servers in `subset` see,
    counted over all retrieval-codeword tuples (no sampling).

    `positions` is the round's bump group; `target` is 1-based.
    """
    F = retrieval.field
    words = list(retrieval.codewords(max_tuples))
    if len(words) ** num_files > max_tuples:
        raise CapExceededError("codeword tuple space exceeds the counting cap")
    posset = set(positions)
    counts: Counter = Counter()
    for tup in product(words, repeat=num_files):
        key = []
        for j in subset:
            for i in range(num_files):
                v = tup[i][j]
                if i == target - 1 and j in posset:
                    v = F.add(v, 1)
                key.append(v)
        counts[tuple(key)] += 1
    return counts


# -- upper bound on collusion from disjoint-support partitions ------------


@dataclass(frozen=True)
class PartitionBound:
    """Strongest derivable collusion bound from a disjoint-support partition
    of the coordinates by storage codewords: min over partitions of
    (max weight) - 1."""

    value: int
    weights: tuple[int, ...]
    supports: tuple[tuple[int, ...], ...]


def collusion_partition_bound(storage: LinearCode,
                              max_words: int = DEFAULT_MAX_WORDS,
                              max_n: int = 28) -> PartitionBound | None:
    """Search the codeword supports for a disjoint exact cover of all n
    coordinates; None when no partition exists."""
    if storage.n > max_n:
        raise CapExceededError(f"n > {max_n}: cover search refused")
    n = storage.n
    supports: set[int] = set()
    for word in storage.codewords(max_words):
        mask = 0
        for j, x in enumerate(word):
            if x:
                mask |= 1 << j
        if mask:
            supports.add(mask)
    if not supports:
        return None
    full = (1 << n) - 1
    for wmax in sorted({m.bit_count() for m in supports}):
        usable = [m for m in supports if m.bit_count() <= wmax]
        by_pos = [[m for m in usable if (m >> j) & 1] for j in range(n)]
        chosen = _exact_cover(0, full, by_pos)
        if chosen is not None:
            masks = tuple(sorted(chosen, key=lambda m: (m & -m).bit_length()))
            return PartitionBound(
                value=wmax - 1,
                weights=tuple(m.bit_count() for m in masks),
                supports=tuple(tuple(j for j in range(n) if (m >> j) & 1)
                               for m in masks),
            )
    return None


def _exact_cover(used: int, full: int, by_pos: list[list[int]]) -> list[int] | None:
    if used == full:
        return []
    low = (~used & full)
    pos = (low & -low).bit_length() - 1
    for m in by_pos[pos]:
        if not m & used:
            rest = _exact_cover(used | m, full, by_pos)
            if rest is not None:
                return [m] + rest
    return None


def rm_collusion_bound(m: int, r: int) -> int:
    """Closed-form partition bound for RM(m, r) storage: the translates of
    a degree-r monomial's flat partition the 2^m points into 2^r disjoint
    weight-2^(m-r) codewords, giving 2^(m-r) - 1."""
    if not 0 <= r <= m:
        raise ValueError("order out of range")
    return 2 ** (m - r) - 1


# -- storage and the protocol ---------------------------------------------


@dataclass(frozen=True)
class StorageSystem:
    """Files distributed by the storage code: server j holds the inner
    products of every file with generator column j."""

    code: LinearCode
    files: tuple[tuple[int, ...], ...]
    contents: tuple[tuple[int, ...], ...]  # contents[j][i] = <x_i, g_j>

    @classmethod
    def build(cls, code: LinearCode, files: Sequence[Sequence[int]]) -> "StorageSystem":
        files_t = tuple(tuple(row) for row in files)
        if not files_t:
            raise ValueError("need at least one file")
        if any(len(row) != code.k for row in files_t):
            raise ValueError(f"each file must have {code.k} symbols")
        F = code.field
        order = F.order
        for row in files_t:
            if any(not 0 <= x < order for x in row):
                raise ValueError("file symbol is not a valid field encoding")
        contents = []
        for j in range(code.n):
            col = code.gen.column(j)
            contents.append(tuple(_dot(F, row, col) for row in files_t))
        return cls(code, files_t, tuple(contents))

    def verify(self) -> bool:
        """Re-derive server contents from the files and compare."""
        return StorageSystem.build(self.code, self.files).contents == self.contents


def _dot(F, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


@dataclass(frozen=True)
class RoundRecord:
    positions: tuple[int, ...]
    codeword_digest: str          # sha256 of the sampled retrieval codewords
    queries: tuple[tuple[int, ...], ...]   # queries[j][i]: server j, file i
    responses: tuple[int, ...]
    recovered_symbols: tuple[int, ...]     # <x_target, g_j> for j in positions


@dataclass(frozen=True)
class Transcript:
    """One full protocol run (deterministic given inputs and seed)."""

    target: int  # 1-based file index
    rounds: tuple[RoundRecord, ...]
    recovered: tuple[int, ...]


def simulate(storage: LinearCode, retrieval: LinearCode,
             files: Sequence[Sequence[int]], target: int, seed: int,
             max_words: int = DEFAULT_MAX_WORDS) -> Transcript:
    """Run the basic scheme end to end and decode file `target` (1-based).

    Per round: sample one uniform retrieval codeword per file, add 1 to
    the target row on the round's position group J (|J| = d(C*D) - 1),
    send column j to server j, and erasure-decode the response vector
    against the star code's parity check (unique because |J| < d).
    Rounds run over consecutive position groups until the collected
    generator columns of the storage code reach full rank.
    """
    if storage.field != retrieval.field or storage.n != retrieval.n:
        raise ValueError("storage and retrieval codes need matching field and length")
    system = StorageSystem.build(storage, files)
    if not 1 <= target <= len(system.files):
        raise ValueError(f"target {target} out of range 1..{len(system.files)}")
    F = storage.field
    n = storage.n
    q = F.order

    star = storage.star(retrieval)
    d_star = star.min_distance(max_words)
    if d_star < 2:
        raise ValueError("d(star) < 2: the scheme has zero rate")
    group_size = n if d_star == INFINITE else int(d_star) - 1
    parity = star.dual().gen

    master = random.Random(seed)
    rounds: list[RoundRecord] = []
    collected_cols: list[tuple[int, ...]] = []
    collected_vals: list[int] = []
    collected_idx: list[int] = []
    pos = 0
    while pos < n:
        group = tuple(range(pos, min(pos + group_size, n)))
        pos += group_size
        rng = random.Random(master.getrandbits(64))
        codewords = []
        for _ in range(len(system.files)):
            word = [0] * n
            for row in retrieval.gen.rows:
                c = rng.randrange(q)
                if c:
                    for j, x in enumerate(row):
                        if x:
                            word[j] = F.add(word[j], F.mul(c, x))
            codewords.append(tuple(word))
        digest = hashlib.sha256(
            repr((F.p, F.e, tuple(codewords))).encode()).hexdigest()
        gset = set(group)
        queries = tuple(
            tuple(F.add(codewords[i][j], 1) if (i == target - 1 and j in gset)
                  else codewords[i][j]
                  for i in range(len(system.files)))
            for j in range(n))
        responses = tuple(_dot(F, queries[j], system.contents[j]) for j in range(n))
        # erasure decode: parity * (responses - e) = 0 with e supported on group
        rhs = parity.mat_vec(responses)
        sol = parity.select_columns(group).solve(rhs)
        if sol is None:
            raise RuntimeError("erasure system inconsistent")  # unreachable
        rounds.append(RoundRecord(group, digest, queries, responses, tuple(sol)))
        for j, v in zip(group, sol):
            collected_idx.append(j)
            collected_cols.append(storage.gen.column(j))
            collected_vals.append(v)
        if Matrix(F, collected_cols).rank() == storage.k:
            break
    colmat = Matrix(F, collected_cols, ncols=storage.k)
    if colmat.rank() != storage.k:
        raise ValueError("storage code columns never reach full rank; "
                         "the file is not recoverable")
    recovered = colmat.solve(collected_vals)
    if recovered is None:
        raise RuntimeError("inconsistent recovery system")  # unreachable
    return Transcript(target=target, rounds=tuple(rounds), recovered=tuple(recovered))
