import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multisym.basedalg import AlgElement, PolynomialAlgebra, power_sum
from multisym.exactmath import Poly, parse_poly
from multisym.syzygy import fpoly_from_multiset, psi, t_symbol
from multisym.tracecheck import (
    NotCommuting,
    Perm,
    SizeMismatch,
    UnsupportedKind,
    diagonal_embedding,
    fundamental_identity,
    gamma_evaluation_check,
    generic_matrices,
    identity,
    mat_mul,
    random_commuting_tuple,
    random_rational_matrix,
    trace,
    trace_at_diagonals,
    trace_word,
    verify_psi_by_substitution,
)

from conftest import sign_algebra


def words(A, text):
    return [A.parse_word(s) for s in text.split(",")]


def test_perm_basics():
    p = Perm.from_cycles(4, [(1, 2, 3)])
    assert p.images == (1, 2, 0, 3)
    assert p.sign == 1 and Perm.from_cycles(3, [(1, 2)]).sign == -1
    assert sorted(len(c) for c in p.cycles()) == [1, 3]
    assert (p * p * p).images == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        Perm.from_cycles(3, [(1, 1)])


def test_trace_word_examples():
    Y = generic_matrices(2, 2)
    assert trace_word(Perm((0, 1)), Y) == trace(Y[0]) * trace(Y[1])
    assert trace_word(Perm.from_cycles(2, [(1, 2)]), Y) == trace(mat_mul(Y[0], Y[1]))
    I3 = identity(3, Fraction(1), Fraction(0))
    assert trace_word(Perm.from_cycles(3, [(1, 2, 3)]), [I3, I3, I3]) == 3
    with pytest.raises(SizeMismatch):
        trace_word(Perm((0, 1, 2)), Y)


def test_generic_matrices():
    (a,), (b,) = generic_matrices(1, 2)[0], generic_matrices(1, 2)[1]
    assert len(a) == 1 and a[0] != b[0]
    (M,) = generic_matrices(2, 1)
    assert len({e for row in M for e in row}) == 4
    mats = generic_matrices(3, 2)
    assert len({v for M in mats for row in M for e in row for v in e.variables()}) == 18


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fundamental_identity_symbolic(n):
    assert not fundamental_identity(n, generic_matrices(n, n + 1))


def test_fundamental_identity_needs_n_plus_one():
    with pytest.raises(SizeMismatch):
        fundamental_identity(2, generic_matrices(2, 2))
    with pytest.raises(SizeMismatch):
        fundamental_identity(2, generic_matrices(3, 3))


def test_fundamental_identity_random_n4():
    rng = random.Random(2)
    for _ in range(3):
        assert fundamental_identity(4, [random_rational_matrix(4, rng) for _ in range(5)]) == 0


def test_identity_fails_for_too_few_matrices_size():
    # 3 matrices of size 3 are not forced to satisfy the n = 2 identity
    rng = random.Random(5)
    Y = [random_rational_matrix(3, rng) for _ in range(3)]
    total = sum(
        (trace_word(Perm(p), Y) * Perm(p).sign for p in permutations(range(3))),
        Fraction(0),
    )
    assert total != 0


def test_diagonal_embedding(Kxz):
    x = Kxz.parse_word("x")
    assert diagonal_embedding(Kxz, 2, x) == [[parse_poly("x1"), Poly()], [Poly(), parse_poly("x2")]]
    one = diagonal_embedding(Kxz, 3, AlgElement.of(1))
    assert one == identity(3, Poly.const(1), Poly())
    a = AlgElement.of(0, {x: 1, Kxz.parse_word("z2"): 1})
    D = diagonal_embedding(Kxz, 3, a)
    assert [D[i][i] for i in range(3)] == [parse_poly(f"x{i} + z{i}^2") for i in (1, 2, 3)]
    with pytest.raises(UnsupportedKind):
        diagonal_embedding(sign_algebra(), 2, sign_algebra().basis[0])


def test_verify_psi_examples(Kx, Kxz):
    assert verify_psi_by_substitution(Kx, 2, words(Kx, "x,x,x"))
    assert verify_psi_by_substitution(Kxz, 1, words(Kxz, "x,z"))
    assert verify_psi_by_substitution(Kxz, 3, words(Kxz, "x,x,z,z2"))


def test_gamma_examples(Kx, Kxy):
    f = psi(Kxy, 2, words(Kxy, "x,x,y"))
    D1 = [[Fraction(2), 0], [0, Fraction(-1, 3)]]
    D2 = [[Fraction(5, 7), 0], [0, Fraction(4)]]
    assert gamma_evaluation_check(Kxy, 2, [D1, D2], f) == 0
    I3 = identity(3, Fraction(1), Fraction(0))
    assert gamma_evaluation_check(Kx, 3, [I3], Poly.gen(t_symbol(Kx, Kx.parse_word("x")))) == 3
    M = [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]]
    N = [[Fraction(0), Fraction(0)], [Fraction(1), Fraction(0)]]
    with pytest.raises(NotCommuting):
        gamma_evaluation_check(Kxy, 2, [M, N], f)
    # a non-relation need not vanish
    assert gamma_evaluation_check(Kxy, 2, [D1, D2], fpoly_from_multiset(Kxy, words(Kxy, "x"))) == Fraction(5, 3)


@pytest.mark.parametrize("kind", ["diagonal", "polynomial"])
def test_random_commuting_tuples_commute(kind):
    rng = random.Random(4)
    mats = random_commuting_tuple(3, 3, rng, kind)
    for A in mats:
        for B in mats:
            assert mat_mul(A, B) == mat_mul(B, A)


# -- properties -------------------------------------------------------------

GEN3 = generic_matrices(2, 3)


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(3)), st.permutations(range(3)))
def test_trace_word_relabeling(pi, sigma):
    # trace_word(sigma^-1 pi sigma, Y o sigma) = trace_word(pi, Y)
    pi, sigma = Perm(tuple(pi)), Perm(tuple(sigma))
    inv = Perm(tuple(sorted(range(3), key=lambda i: sigma.images[i])))
    Yp = [GEN3[sigma.images[j]] for j in range(3)]
    assert trace_word(inv * pi * sigma, Yp) == trace_word(pi, GEN3)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2))
def test_trace_cyclic_rotation(r):
    order = [0, 1, 2]
    rotated = order[r:] + order[:r]
    prod = lambda seq: mat_mul(mat_mul(GEN3[seq[0]], GEN3[seq[1]]), GEN3[seq[2]])
    assert trace(prod(order)) == trace(prod(rotated))


KXY = PolynomialAlgebra(2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.lists(st.sampled_from(KXY.words_up_to(2)), min_size=1, max_size=4))
def test_diagonal_trace_is_power_sum(n, ws):
    (w,) = KXY.product_of_words(ws).terms
    assert trace_at_diagonals(KXY, n, ws) == power_sum(KXY, n, w)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.sampled_from(KXY.words_up_to(2)), min_size=n + 1, max_size=n + 1))))
def test_verify_psi_property(case):
    n, mu = case
    assert verify_psi_by_substitution(KXY, n, mu)
