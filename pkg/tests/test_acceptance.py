"""Acceptance suite: one test per criterion, each printing a pass/fail line
with its runtime against the stated budget.

Two clauses are contradicted by exact computation and kept as strict
xfail tests so they stay visible: the two-weight scheme's counting rate
bound at (m, e, delta) = (10, 3, 17), and the claim that extended-BCH-dual
retrieval beats all-RM retrieval at m in {5, 6}.  The verify command
surfaces both as discrepancies with the computed values authoritative.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from helpers import all_cyclic_specs

from starpir.agcode import ag_one_point, curve_search
from starpir.code import LinearCode
from starpir.cyclic import (BchSpec, CyclicSpec, bch, bch_bound, cyclic_code,
                            defining_set_from_poly, low_cost_scheme,
                            star_cyclic, two_weight_irreducible)
from starpir.gf import field_create
from starpir.pir import (analyze, collusion_partition_bound,
                         exact_query_distribution, privacy_level, privacy_verify,
                         simulate)
from starpir.rmext import (extended_dual_identity, first_order_sumset_size,
                           rm_bch_scheme_rate, rm_code, rm_retrieval_rate)
from starpir.search import AgOnePointFamily, AllCyclicFamily, pareto
from starpir.verify import DISCREPANCY, FAIL, run_checks

F2 = field_create(2)
F5 = field_create(5)

GEN73 = [37, 36, 34, 33, 32, 27, 25, 24, 22, 21, 19, 18, 15, 11, 10, 8, 7, 5, 3, 0]


class Budget:
    """Context manager asserting a wall-clock budget and printing the line."""

    def __init__(self, label: str, seconds: float | None):
        self.label = label
        self.seconds = seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        budget = f", budget {self.seconds:.0f}s" if self.seconds else ""
        print(f"[{self.label}] {status} ({elapsed:.2f}s{budget})")
        if exc_type is None and self.seconds is not None:
            assert elapsed < self.seconds, f"{self.label} exceeded {self.seconds}s"
        return False


def test_criterion_01_star_sumset_oracle():
    with Budget("criterion 1: cyclic star = sumset", 10):
        for q, n in ((2, 7), (5, 7)):
            specs = all_cyclic_specs(q, n)
            for s1 in specs:
                for s2 in specs:
                    assert (cyclic_code(star_cyclic(s1, s2))
                            == cyclic_code(s1).star(cyclic_code(s2)))
        specs15 = all_cyclic_specs(2, 15)
        rng = random.Random(13571113)
        for _ in range(200):
            s1, s2 = rng.choice(specs15), rng.choice(specs15)
            assert (cyclic_code(star_cyclic(s1, s2))
                    == cyclic_code(s1).star(cyclic_code(s2)))


def test_criterion_02_low_cost_scheme_reproduction():
    with Budget("criterion 2: two-weight scheme at (10,3,17)", 5):
        sch = low_cost_scheme(10, 3, 17)
        assert sch.n == 341
        assert sch.storage_rate == Fraction(10, 341)
        assert sch.privacy == 16
        assert sch.max_weight == 176
        assert sch.failed_server_ratio == Fraction(159, 341)
        # d = 160 from the closed form, confirmed by full enumeration
        pair = two_weight_irreducible(10, 3)
        assert pair.min_weight == 160
        wd = pair.dual.weight_distribution()
        assert [(w, c) for w, c in enumerate(wd) if c and w] == [(160, 341), (176, 682)]
        # cross-check of the closed form at m=6, e=3: A = 1 + 21 z^8 + 42 z^12
        small = two_weight_irreducible(6, 3)
        wd6 = small.dual.weight_distribution()
        assert wd6[0] == 1 and wd6[8] == 21 and wd6[12] == 42 and sum(wd6) == 64
        # the counting bound evaluates to the quoted 149/341 ...
        assert sch.rate_bound.value == Fraction(149, 341)
        # ... while the exact sumset rate is 61/341 (see the xfail below)
        assert sch.exact_rate == Fraction(61, 341)


@pytest.mark.xfail(strict=True, reason=(
    "the digit-counting rate bound (149/341) overstates the exact sumset "
    "rate (61/341) at (m,e,delta)=(10,3,17); confirmed against a realized "
    "star product at (6,1,5); surfaced by verify as "
    "quoted-two-weight-rate-bound"))
def test_criterion_02_rate_bound_clause():
    sch = low_cost_scheme(10, 3, 17)
    print("[criterion 2 bound clause] FAIL by design: "
          f"exact {sch.exact_rate} < bound {sch.rate_bound.value}")
    assert sch.exact_rate >= Fraction(149, 341)


def test_criterion_03_partition_bounds():
    with Budget("criterion 3: disjoint-support collusion bounds", 60):
        ext_hamming = cyclic_code(CyclicSpec(2, 7, frozenset({1, 2, 4}))).extend()
        assert collusion_partition_bound(ext_hamming).value == 3
        golay24 = cyclic_code(
            CyclicSpec(2, 23, frozenset({1, 2, 4, 8, 16, 9, 18, 13, 3, 6, 12}))).extend()
        assert (golay24.n, golay24.k, golay24.min_distance()) == (24, 12, 8)
        assert collusion_partition_bound(golay24).value == 7
        golay12 = cyclic_code(CyclicSpec(3, 11, frozenset({1, 3, 9, 5, 4}))).extend()
        assert (golay12.n, golay12.k, golay12.min_distance()) == (12, 6, 6)
        assert collusion_partition_bound(golay12).value == 5
        assert collusion_partition_bound(rm_code(4, 1)).value == 7 == 2 ** (4 - 1) - 1


def test_criterion_04_73_server_scheme():
    with Budget("criterion 4: 73-server replicated scheme", None):
        coeffs = [1 if i in GEN73 else 0 for i in range(38)]
        spec = defining_set_from_poly(2, 73, coeffs)
        parent = cyclic_code(spec)
        assert (parent.n, parent.k) == (73, 36)
        # 2^36 codewords are far beyond the enumeration cap: d = 16 enters as
        # declared metadata, with the defining-set run bound recorded
        designed = bch_bound(spec.defining_set, 73)
        assert designed == 6
        parent = LinearCode(parent.field, parent.gen, declared_distance=16)
        res = analyze(LinearCode.replicated(F2, 73), parent.dual(),
                      transitivity="cyclic")
        assert res.privacy == 15
        assert res.rate_transitive == Fraction(36, 73)
        print(f"  (declared d=16 metadata; defining-set bound {designed} recorded)")


def test_criterion_05_seven_servers_and_direct_sum():
    with Budget("criterion 5: 7-server fronts and the split storage code", 10):
        curve = curve_search(5, 8)
        assert curve.num_points == 8
        ag = ag_one_point(curve, curve.affine_points, 3)
        assert (ag.n, ag.k, ag.min_distance()) == (7, 3, 4)
        assert ag.dual().min_distance() == 3

        storage = LinearCode.replicated(F5, 7)
        front = pareto(storage, [AllCyclicFamily()], storage_transitivity="replicated")
        points = {(e.privacy, e.rate) for e in front}
        assert points == {(0, Fraction(1)), (1, Fraction(6, 7)),
                          (6, Fraction(1, 7)), (7, Fraction(0))}

        with_ag = pareto(storage, [AllCyclicFamily(), AgOnePointFamily(mult=3)],
                         storage_transitivity="replicated")
        assert (2, Fraction(3, 7)) in {(e.privacy, e.rate) for e in with_ag}

        comb = LinearCode.from_generator(F5, [[1, 0] * 7, [0, 1] * 7])
        rows = []
        for parity in (0, 1):
            for r in ag.gen.rows:
                row = [0] * 14
                for idx, x in enumerate(r):
                    row[2 * idx + parity] = x
                rows.append(row)
        retrieval = LinearCode.from_generator(F5, rows, n=14)
        res = analyze(comb, retrieval)
        assert res.privacy == 2
        assert res.rate_basic == Fraction(3, 14)


def test_criterion_06_extended_dual_identity():
    with Budget("criterion 6: extended dual identity", None):
        for m, delta in ((3, 2), (4, 3), (4, 5)):
            assert extended_dual_identity(m, delta).holds


def test_criterion_07_sumset_counts():
    with Budget("criterion 7: first-order sumset counts", 5):
        for m, expected in ((5, 25), (6, 41)):
            res = first_order_sumset_size(m)
            assert res.size == expected
            assert res.size <= res.bound == m + m * (m - 1) // 2 + 2 * m * m


@pytest.mark.xfail(strict=True, reason=(
    "rm_bch_scheme_rate(m,1,2) = 5/32 (m=5) and 21/64 (m=6) do not exceed "
    "the all-RM rates 6/32 and 22/64; the improvement claim only holds for "
    "m >= 9; confirmed against a realized star product at m=5; surfaced by "
    "verify as quoted-rm-bch-rate-improvement"))
def test_criterion_07_rate_exceeds_rm_clause():
    for m in (5, 6):
        scheme, rm_rate = rm_bch_scheme_rate(m, 1, 2), rm_retrieval_rate(m, 1, 2)
        print(f"[criterion 7 rate clause] FAIL by design at m={m}: "
              f"{scheme} <= {rm_rate}")
        assert scheme > rm_rate


SIM_CASES = [
    ("replicated/[7,4,3]", lambda: LinearCode.replicated(F2, 7),
     lambda: cyclic_code(CyclicSpec(2, 7, frozenset({1, 2, 4})))),
    ("replicated/[7,3,4]-elliptic", lambda: LinearCode.replicated(F5, 7),
     lambda: ag_one_point(curve_search(5, 8), curve_search(5, 8).affine_points, 3)),
    ("[15,7,5]-bch/dual-bch", lambda: bch(BchSpec(2, 15, 1, 5))[1],
     lambda: bch(BchSpec(2, 15, 1, 2))[1].dual()),
]


def test_criterion_08_simulation():
    with Budget("criterion 8: 100 seeded protocol runs per pair", 30):
        for name, mk_storage, mk_retrieval in SIM_CASES:
            storage, retrieval = mk_storage(), mk_retrieval()
            F = storage.field
            star = storage.star(retrieval)
            rng = random.Random(name)
            files = [[rng.randrange(F.order) for _ in range(storage.k)]
                     for _ in range(3)]
            for seed in range(100):
                target = seed % 3 + 1
                tr = simulate(storage, retrieval, files, target, seed)
                assert list(tr.recovered) == files[target - 1]
                for rd in tr.rounds:
                    residual = list(rd.responses)
                    for j, v in zip(rd.positions, rd.recovered_symbols):
                        residual[j] = F.sub(residual[j], v)
                    assert star.contains(residual)
            t = privacy_level(retrieval)
            assert privacy_verify(retrieval, t)
            assert not privacy_verify(retrieval, t + 1)


def test_criterion_09_exact_distributional_privacy():
    with Budget("criterion 9: exact query distributions", 60):
        # every [4,2] binary code with positive privacy level
        codes = []
        seen = set()
        for a, b in combinations(range(1, 16), 2):
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
                d1 = exact_query_distribution(code, 2, 1, (0, 1), subset)
                d2 = exact_query_distribution(code, 2, 2, (0, 1), subset)
                assert d1 == d2 and len(set(d1.values())) == 1

        ham = cyclic_code(CyclicSpec(2, 7, frozenset({1, 2, 4})))
        t = privacy_level(ham)  # 3
        groups = [(0, 1), (2, 3), (4, 5), (6,)]
        for group in groups:
            for subset in combinations(range(7), t):
                d1 = exact_query_distribution(ham, 2, 1, group, subset)
                d2 = exact_query_distribution(ham, 2, 2, group, subset)
                assert d1 == d2
                assert len(set(d1.values())) == 1
                assert sum(d1.values()) == 2 ** (2 * ham.k)


def test_criterion_10_discrepancies_surfaced():
    with Budget("criterion 10: discrepancies surfaced by verify", None):
        results = run_checks(sample_pairs=50)
        by_name = {r.name: r for r in results}
        for required in ("quoted-seven-server-elliptic-rate",
                         "quoted-interval-sumset-rate",
                         "quoted-first-order-defining-set"):
            assert by_name[required].status == DISCREPANCY
            assert "authoritative" in by_name[required].detail or \
                   "corrected" in by_name[required].detail
        assert not any(r.status == FAIL for r in results)
