"""Acceptance gate: one test per criterion, all checks exact."""

import math
import random
from collections import Counter
from itertools import combinations_with_replacement

from multisym.basedalg import PolynomialAlgebra, bracket_product, multiset, power_sum, to_orbit_basis
from multisym.s4pairs import (
    all_graphs,
    nine_symbol_presentation,
    fingerprint,
    generator_labels,
    invariant_dim,
    is_decomposable,
    isomorphism_classes,
    kernel_report,
    phi_s4,
    relabel,
    relation_generators,
    s4_elements,
    s4_min_generator_report,
    symmetrized_rank,
    ten_generators,
)
from multisym.syzygy import (
    fpoly_from_multiset,
    min_generator_report,
    normal_form_by_expansion,
    phi,
    psi,
    rewrite_product,
)
from multisym.tracecheck import (
    fundamental_identity,
    gamma_evaluation_check,
    generic_matrices,
    random_commuting_tuple,
    random_rational_matrix,
    trace_at_diagonals,
)

from conftest import sign_algebra, truncated_cubic

SEED = 20240501
KXY = PolynomialAlgebra(2)


def test_criterion_01_master_syzygy_vanishes(criterion):
    n = 3
    words = KXY.words_up_to(3)
    # every multiset of words of degree <= 3; those of total degree <= 6 are a subset
    multisets = list(combinations_with_replacement(words, n + 1))
    low = sum(1 for mu in multisets if sum(w.degree for w in mu) <= 6)
    bad = [mu for mu in multisets if phi(KXY, n, psi(KXY, n, mu))]
    rng = random.Random(SEED)
    table_bad = []
    for A in (sign_algebra(), truncated_cubic()):
        for _ in range(50):
            k = rng.randint(1, 3)
            mu = [rng.choice(A.basis) for _ in range(k + 1)]
            if phi(A, k, psi(A, k, mu)):
                table_bad.append((A, mu))
    ok = not bad and not table_bad
    criterion(1, f"phi(Psi)=0 on {len(multisets)} K[x,y] multisets (n=3, words of deg<=3; {low} of total deg<=6) and 2x50 table multisets", ok)
    assert ok


def test_criterion_02_rewrite_oracle(criterion):
    rng = random.Random(SEED + 2)
    words = KXY.words_up_to(4)
    mismatches = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        mu = [rng.choice(words) for _ in range(rng.randint(1, 6))]
        if rewrite_product(KXY, n, mu) != normal_form_by_expansion(KXY, n, fpoly_from_multiset(KXY, mu)):
            mismatches += 1
    criterion(2, f"rewrite_product == to_power_product_basis(phi(.)) on 100 random multisets ({mismatches} mismatches)", not mismatches)
    assert not mismatches


def test_criterion_03_triangularity(criterion):
    rng = random.Random(SEED + 3)
    algebras = [KXY, sign_algebra(), truncated_cubic()]
    failures = 0
    for i in range(100):
        A = algebras[i % 3]
        words = A.words_up_to(3) if A.graded else A.basis
        n = rng.randint(1, 3)
        mu = multiset(rng.choice(words) for _ in range(rng.randint(1, n)))
        c = to_orbit_basis(A, n, bracket_product(A, n, mu))
        top = math.prod(math.factorial(k) for k in Counter(mu).values())
        if c.get(mu) != top or any(len(nu) >= len(mu) for nu in c if nu != mu):
            failures += 1
    criterion(3, f"top orbit coefficient r1!...rd! and lower heights elsewhere on 100 bracket products ({failures} failures)", not failures)
    assert not failures


def test_criterion_04_fundamental_trace_identity(criterion):
    symbolic = [not fundamental_identity(n, generic_matrices(n, n + 1)) for n in (1, 2, 3)]
    rng = random.Random(SEED + 4)
    numeric = []
    for n in (4, 5):
        for _ in range(20):
            numeric.append(fundamental_identity(n, [random_rational_matrix(n, rng) for _ in range(n + 1)]) == 0)
    ok = all(symbolic) and all(numeric)
    criterion(4, f"symbolic zero for n=1,2,3; exact zero at {sum(numeric)}/40 random tuples for n=4,5", ok)
    assert ok


def test_criterion_05_relations_vanish(criterion):
    rels = relation_generators()
    _, tilde = nine_symbol_presentation()
    images = [phi_s4(r.poly) for r in rels] + [phi_s4(r.poly) for r in tilde]
    ok = len(rels) == 6 and len(tilde) == 5 and not any(images)
    criterion(5, "six relation generators and five T_y3-substituted relations map to 0", ok)
    assert ok


def test_criterion_06_kernel_degreewise(criterion):
    rows = kernel_report(10)
    matches = all(r.match for r in rows)
    minimal = all(all(r.minimality.values()) for r in rows)
    degrees = {name: r.degree for r in rows for name in r.minimality}
    ok = matches and minimal and [r.degree for r in rows] == list(range(11))
    dims = ",".join(str(r.kernel_dim) for r in rows)
    criterion(6, f"nullity == ideal truncation for d<=10 (kernel dims {dims}); each relation needed in its degree {sorted(degrees.values())}", ok)
    assert ok


def test_criterion_07_minimal_generators(criterion):
    s4 = [r.indecomposable for r in s4_min_generator_report(8)]
    kxy = [r.indecomposable for r in min_generator_report(KXY, 3, 3)]
    z6 = dict(zip(generator_labels(), ten_generators()))["[z^6]"]
    ok = s4[1:6] == [1, 2, 3, 2, 1] and s4[6:] == [0, 0, 0] and kxy[1:] == [2, 3, 4] and is_decomposable(z6)
    criterion(7, f"R^S4 indecomposables {s4[1:]} (degrees 1..8), T^3(K[x,y]) {kxy[1:]}, [z^6] decomposable", ok)
    assert ok


def test_criterion_08_hilbert_dimensions(criterion):
    burnside = [invariant_dim(d) for d in range(9)]
    ranks = [symmetrized_rank(d) for d in range(9)]
    ok = burnside == ranks and burnside[:3] == [1, 1, 3]
    criterion(8, f"Burnside counts {burnside} equal symmetrized ranks for d<=8", ok)
    assert ok


def test_criterion_09_graph_isomorphism(criterion):
    res = isomorphism_classes()
    graphs = all_graphs()
    invariant = all(fingerprint(relabel(s, g)) == fingerprint(g) for g in graphs for s in s4_elements())
    ok = res["equal"] and res["count"] == 11 and len(graphs) == 64 and invariant
    criterion(9, f"fingerprint partition == orbit partition on 64 graphs, {res['count']} classes, invariant under 24 relabelings", ok)
    assert ok


def test_criterion_10_evaluation_checks(criterion):
    rng = random.Random(SEED + 10)
    words = KXY.words_up_to(2)
    checked = 0
    nonzero = 0
    for i in range(20):
        n = 2 + i % 2
        kind = "diagonal" if i < 10 else "polynomial"
        mats = random_commuting_tuple(n, 2, rng, kind)
        for mu in combinations_with_replacement(words, n + 1):
            checked += 1
            if gamma_evaluation_check(KXY, n, mats, psi(KXY, n, mu)) != 0:
                nonzero += 1
    trace_bad = 0
    for n in (1, 2, 3):
        for k in (1, 2, 3):
            for ws in combinations_with_replacement(words, k):
                (w,) = KXY.product_of_words(ws).terms
                if trace_at_diagonals(KXY, n, ws) != power_sum(KXY, n, w):
                    trace_bad += 1
    ok = not nonzero and not trace_bad
    criterion(10, f"gamma(Psi)=0 for {checked} relation/point pairs over 20 commuting tuples; diagonal traces equal power sums", ok)
    assert ok
