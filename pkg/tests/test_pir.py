import random
from fractions import Fraction

import pytest

from helpers import all_cyclic_specs

from starpir.agcode import ag_one_point, curve_search
from starpir.code import INFINITE, LinearCode
from starpir.cyclic import (BchSpec, CyclicSpec, bch, cyclic_code,
                            defining_set_from_poly)
from starpir.errors import CapExceededError
from starpir.gf import field_create
from starpir.pir import (PartitionBound, StorageSystem, analyze,
                         collusion_partition_bound, exact_query_distribution,
                         privacy_level, privacy_verify, rm_collusion_bound, simulate)
from starpir.rmext import rm_code

F2 = field_create(2)
F3 = field_create(3)
F5 = field_create(5)

GEN73 = [37, 36, 34, 33, 32, 27, 25, 24, 22, 21, 19, 18, 15, 11, 10, 8, 7, 5, 3, 0]


def hamming74():
    return cyclic_code(CyclicSpec(2, 7, frozenset({1, 2, 4})))


def ag734():
    curve = curve_search(5, 8)
    return ag_one_point(curve, curve.affine_points, 3)


def test_analyze_73_server_replicated():
    coeffs = [1 if i in GEN73 else 0 for i in range(38)]
    parent = cyclic_code(defining_set_from_poly(2, 73, coeffs))
    parent = LinearCode(parent.field, parent.gen, declared_distance=16)
    res = analyze(LinearCode.replicated(F2, 73), parent.dual(), transitivity="cyclic")
    assert res.privacy == 15
    assert res.rate_transitive == Fraction(36, 73)
    assert res.rate_basic is None  # the [73, 37] star distance is not enumerable
    assert res.failed_server_ratio == Fraction(72, 73)
    assert res.defect == 22


def test_analyze_seven_server_cyclic_pairs():
    storage = LinearCode.replicated(F5, 7)
    rep = cyclic_code(CyclicSpec(5, 7, frozenset(range(1, 7))))   # [7, 1, 7]
    par = cyclic_code(CyclicSpec(5, 7, frozenset({0})))           # [7, 6, 2]
    res_rep = analyze(storage, rep, transitivity="cyclic")
    assert (res_rep.privacy, res_rep.rate_basic) == (1, Fraction(6, 7))
    assert res_rep.rate_transitive == Fraction(6, 7)
    res_par = analyze(storage, par, transitivity="cyclic")
    assert (res_par.privacy, res_par.rate_basic) == (6, Fraction(1, 7))
    assert res_par.rate_transitive == Fraction(1, 7)


def test_analyze_elliptic_retrieval():
    # the quoted value for this configuration is 4/7; the computed basic
    # rate (d(star) - 1)/n = 3/7 is authoritative
    res = analyze(LinearCode.replicated(F5, 7), ag734())
    assert res.privacy == 2
    assert res.rate_basic == Fraction(3, 7)
    assert res.rate_transitive is None


def interleaved_double(code: LinearCode, n: int) -> LinearCode:
    """Place one copy of `code` on even and one on odd coordinates."""
    rows = []
    for parity in (0, 1):
        for r in code.gen.rows:
            row = [0] * n
            for idx, x in enumerate(r):
                row[2 * idx + parity] = x
            rows.append(row)
    return LinearCode.from_generator(code.field, rows, n=n)


def test_analyze_comb_direct_sum():
    comb = LinearCode.from_generator(F5, [[1, 0] * 7, [0, 1] * 7])
    retrieval = interleaved_double(ag734(), 14)
    assert (retrieval.n, retrieval.k, retrieval.min_distance()) == (14, 6, 4)
    res = analyze(comb, retrieval)
    assert res.privacy == 2
    assert res.rate_basic == Fraction(3, 14)
    assert res.defect is not None and res.defect >= 0


def test_analyze_validations():
    with pytest.raises(ValueError):
        analyze(LinearCode.replicated(F5, 7), LinearCode.replicated(F5, 8))
    with pytest.raises(ValueError):
        analyze(LinearCode.zero(F2, 4), LinearCode.replicated(F2, 4))
    with pytest.raises(ValueError):
        analyze(LinearCode.replicated(F2, 4), LinearCode.replicated(F2, 4),
                transitivity="nope")


def test_analyze_full_space_retrieval_clamps():
    res = analyze(LinearCode.replicated(F5, 7), LinearCode.full_space(F5, 7))
    assert res.privacy == 7          # all-collusion convention
    assert res.rate_basic == 0       # star is the full space, d = 1
    assert res.defect is None


def test_analyze_zero_retrieval():
    res = analyze(hamming74(), LinearCode.zero(F2, 7))
    assert res.privacy == 0
    assert res.rate_basic == 1       # star is the zero code: pure download
    assert res.d_star == INFINITE
    assert res.defect is None


def test_partition_bound_extended_hamming():
    assert collusion_partition_bound(hamming74().extend()).value == 3


def test_partition_bound_binary_golay():
    g23 = cyclic_code(CyclicSpec(2, 23, frozenset({1, 2, 4, 8, 16, 9, 18, 13, 3, 6, 12})))
    found = collusion_partition_bound(g23.extend())
    assert found.value == 7
    assert found.weights == (8, 8, 8)


def test_partition_bound_ternary_golay():
    g11 = cyclic_code(CyclicSpec(3, 11, frozenset({1, 3, 9, 5, 4})))
    found = collusion_partition_bound(g11.extend())
    assert found.value == 5
    assert found.weights == (6, 6)


def test_partition_bound_rm41_and_closed_form():
    assert collusion_partition_bound(rm_code(4, 1)).value == 7
    assert rm_collusion_bound(4, 1) == 7
    assert rm_collusion_bound(6, 2) == 15


def test_partition_bound_replicated():
    assert collusion_partition_bound(LinearCode.replicated(F2, 9)).value == 8


def test_partition_bound_witness_is_a_partition():
    found = collusion_partition_bound(rm_code(4, 1))
    seen = set()
    for support in found.supports:
        assert not (seen & set(support))
        seen |= set(support)
    assert seen == set(range(16))


def test_partition_bound_absent():
    # a code with a zero coordinate admits no support partition
    code = LinearCode.from_generator(F2, [[1, 1, 0]], n=3)
    assert collusion_partition_bound(code) is None


def test_partition_bound_caps():
    with pytest.raises(CapExceededError):
        collusion_partition_bound(LinearCode.replicated(F2, 40))


SIM_CONFIGS = [
    ("replicated-hamming", LinearCode.replicated(F2, 7), lambda: hamming74(), 3),
    ("replicated-ag", LinearCode.replicated(F5, 7), ag734, 2),
    ("bch-storage", lambda: bch(BchSpec(2, 15, 1, 5))[1],
     lambda: bch(BchSpec(2, 15, 1, 2))[1].dual(), 2),
]


@pytest.mark.parametrize("name,storage,retrieval,expected_t", SIM_CONFIGS,
                         ids=[c[0] for c in SIM_CONFIGS])
def test_simulate_recovers_and_residuals(name, storage, retrieval, expected_t):
    storage = storage() if callable(storage) else storage
    retrieval = retrieval() if callable(retrieval) else retrieval
    F = storage.field
    rng = random.Random(name)
    files = [[rng.randrange(F.order) for _ in range(storage.k)] for _ in range(3)]
    star = storage.star(retrieval)
    for seed in range(10):
        target = seed % 3 + 1
        tr = simulate(storage, retrieval, files, target, seed)
        assert list(tr.recovered) == files[target - 1]
        for rd in tr.rounds:
            residual = list(rd.responses)
            for j, v in zip(rd.positions, rd.recovered_symbols):
                residual[j] = F.sub(residual[j], v)
            assert star.contains(residual)
    assert privacy_level(retrieval) == expected_t
    assert privacy_verify(retrieval, expected_t)
    assert not privacy_verify(retrieval, expected_t + 1)


def test_simulate_deterministic_and_target_validation():
    storage = LinearCode.replicated(F2, 7)
    files = [[1], [0]]
    a = simulate(storage, hamming74(), files, 2, seed=99)
    b = simulate(storage, hamming74(), files, 2, seed=99)
    assert a == b
    c = simulate(storage, hamming74(), files, 2, seed=100)
    assert a != c
    with pytest.raises(ValueError):
        simulate(storage, hamming74(), files, 0, seed=1)
    with pytest.raises(ValueError):
        simulate(storage, hamming74(), files, 3, seed=1)


def test_simulate_over_extension_field():
    # full protocol run with GF(4) symbols (encodings 0..3)
    F4 = field_create(2, 2)
    storage = LinearCode.replicated(F4, 5)
    retrieval = cyclic_code(CyclicSpec(4, 5, frozenset({1, 4})))  # [5, 3]
    files = [[2], [3], [1]]
    star = storage.star(retrieval)
    for seed in range(8):
        target = seed % 3 + 1
        tr = simulate(storage, retrieval, files, target, seed)
        assert list(tr.recovered) == files[target - 1]
        for rd in tr.rounds:
            residual = list(rd.responses)
            for j, v in zip(rd.positions, rd.recovered_symbols):
                residual[j] = F4.sub(residual[j], v)
            assert star.contains(residual)


def test_simulate_zero_rate_error():
    storage = hamming74()
    with pytest.raises(ValueError):
        simulate(storage, LinearCode.full_space(F2, 7), [[1, 0, 0, 0]], 1, seed=0)


def test_simulate_round_count():
    # stop as soon as the collected generator columns reach full rank
    storage = LinearCode.replicated(F5, 7)
    tr = simulate(storage, ag734(), [[2], [3]], 1, seed=5)
    assert len(tr.rounds) == 1
    assert tr.rounds[0].positions == (0, 1, 2)

    bch_storage = bch(BchSpec(2, 15, 1, 5))[1]
    d = bch(BchSpec(2, 15, 1, 2))[1].dual()
    files = [[1] * bch_storage.k]
    tr2 = simulate(bch_storage, d, files, 1, seed=5)
    assert len(tr2.rounds) == bch_storage.k  # groups of size 1, rref generator


def test_storage_system_roundtrip():
    storage = bch(BchSpec(2, 15, 1, 5))[1]
    files = [[1, 0, 1, 1, 0, 0, 1], [0] * 7]
    system = StorageSystem.build(storage, files)
    assert system.verify()
    with pytest.raises(ValueError):
        StorageSystem.build(storage, [[1, 2]])


def test_privacy_examples():
    assert privacy_level(hamming74()) == 3
    assert privacy_level(LinearCode.full_space(F2, 7)) == 7
    # d(D_perp) - 1: the [7,1,7] code has the [7,6,2] dual, hence level 1,
    # and vice versa (the two 7-server cyclic schemes)
    rep = cyclic_code(CyclicSpec(5, 7, frozenset(range(1, 7))))
    par = cyclic_code(CyclicSpec(5, 7, frozenset({0})))
    assert privacy_level(rep) == 1
    assert privacy_level(par) == 6


def test_privacy_verify_equivalence_small_corpus():
    corpus = [cyclic_code(s) for s in all_cyclic_specs(2, 7)]
    corpus += [cyclic_code(s) for s in all_cyclic_specs(3, 8)]
    corpus += [hamming74().extend(), rm_code(3, 1)]
    for code in corpus:
        if code.k == 0:
            continue
        level = privacy_level(code)
        for t in range(0, code.n + 1):
            assert privacy_verify(code, t) == (t <= level)


def test_exact_query_distribution_uniform_and_target_independent():
    storage = LinearCode.replicated(F2, 7)
    retrieval = hamming74()
    t = privacy_level(retrieval)
    d_star = storage.star(retrieval).min_distance()
    groups = [tuple(range(i, min(i + d_star - 1, 7))) for i in range(0, 7, d_star - 1)]
    from itertools import combinations

    for group in groups:
        for subset in combinations(range(7), t):
            base = None
            for w in (1, 2):
                dist = exact_query_distribution(retrieval, 2, w, group, subset)
                assert len(set(dist.values())) == 1  # exactly uniform
                assert sum(dist.values()) == 2 ** (2 * retrieval.k)
                if base is None:
                    base = dist
                else:
                    assert dist == base


def test_exact_query_distribution_all_4_2_codes():
    # every 2-dimensional binary code of length 4 with t >= 1
    from itertools import combinations

    words = list(range(1, 16))
    seen = set()
    codes = []
    for a, b in combinations(words, 2):
        span = frozenset({0, a, b, a ^ b})
        if len(span) == 4 and span not in seen:
            seen.add(span)
            rows = [[(w >> j) & 1 for j in range(4)] for w in (a, b)]
            codes.append(LinearCode.from_generator(F2, rows, n=4))
    assert len(codes) == 35
    for code in codes:
        t = privacy_level(code)
        if t == 0:
            continue
        for subset in combinations(range(4), t):
            d1 = exact_query_distribution(code, 2, 1, (0,), subset)
            d2 = exact_query_distribution(code, 2, 2, (0,), subset)
            assert d1 == d2
            assert len(set(d1.values())) == 1


def test_partition_bound_dominates_privacy():
    # whenever a support partition exists, no positive-rate retrieval code
    # in the corpus may exceed the derived collusion bound
    storage = hamming74().extend()
    bound = collusion_partition_bound(storage)
    assert isinstance(bound, PartitionBound)
    retrievals = [cyclic_code(s) for s in all_cyclic_specs(2, 7)]
    retrievals = [r.extend() for r in retrievals if r.k >= 1]
    for retrieval in retrievals:
        res = analyze(storage, retrieval)
        if res.rate_basic and res.rate_basic > 0 and res.privacy is not None:
            assert res.privacy <= bound.value


def test_basic_rate_never_exceeds_transitive_rate():
    # Singleton on the star code: d(star) - 1 <= dim(star_dual)
    storage7 = LinearCode.replicated(F5, 7)
    for spec in all_cyclic_specs(5, 7):
        res = analyze(storage7, cyclic_code(spec), transitivity="cyclic")
        if res.rate_basic is not None and res.rate_transitive is not None:
            assert res.rate_basic <= res.rate_transitive
    storage15 = bch(BchSpec(2, 15, 1, 5))[1]
    for spec in all_cyclic_specs(2, 15)[:16]:
        res = analyze(storage15, cyclic_code(spec), transitivity="cyclic")
        if res.rate_basic is not None and res.rate_transitive is not None:
            assert res.rate_basic <= res.rate_transitive


def test_defect_nonnegative_on_realistic_pairs():
    pairs = []
    storage7 = LinearCode.replicated(F5, 7)
    for spec in all_cyclic_specs(5, 7):
        pairs.append((storage7, cyclic_code(spec)))
    pairs.append((storage7, ag734()))
    storage15 = bch(BchSpec(2, 15, 1, 5))[1]
    for spec in all_cyclic_specs(2, 15)[:16]:
        pairs.append((storage15, cyclic_code(spec)))
    for storage, retrieval in pairs:
        res = analyze(storage, retrieval)
        if res.defect is not None:
            assert res.defect >= 0
