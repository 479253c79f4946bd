"""Trace identities of n x n matrices and their link to the relations of T^n(A)^{S_n}.

Matrices are plain lists of rows whose entries are any commutative ring
elements supporting ``+`` and ``*`` (``Poly``, ``Fraction`` or tensors).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .basedalg import AlgElement, BasedAlgebra, BasisWord, _MonomialAlgebra
from .exactmath import Poly, var
from .syzygy import WrongSize, fpoly_multisets, phi, psi

__all__ = [
    "Perm",
    "SizeMismatch",
    "NotCommuting",
    "UnsupportedKind",
    "mat_mul",
    "trace",
    "identity",
    "trace_word",
    "fundamental_identity",
    "generic_matrices",
    "random_rational_matrix",
    "random_commuting_tuple",
    "diagonal_embedding",
    "trace_at_diagonals",
    "verify_psi_by_substitution",
    "gamma_evaluation_check",
]


class SizeMismatch(ValueError):
    pass


class NotCommuting(ValueError):
    pass


class UnsupportedKind(TypeError):
    pass


@dataclass(frozen=True)
class Perm:
    """A permutation of ``{0..k-1}`` stored as its image tuple."""

    images: tuple[int, ...]

    @classmethod
    def from_cycles(cls, k: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        """Build from 1-based cycles, e.g. ``Perm.from_cycles(3, [(1, 2, 3)])``."""
        flat = [i for cyc in cycles for i in cyc]
        if len(flat) != len(set(flat)) or not all(1 <= i <= k for i in flat):
            raise ValueError("cycles must be disjoint and within 1..k")
        img = list(range(k))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        if sorted(img) != list(range(k)):
            raise ValueError("cycles do not define a permutation")
        return cls(tuple(img))

    @property
    def size(self) -> int:
        return len(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    @property
    def sign(self) -> int:
        return -1 if (len(self.images) - len(self.cycles())) % 2 else 1

    def __mul__(self, other: "Perm") -> "Perm":
        # (self * other)(i) = self(other(i))
        return Perm(tuple(self.images[j] for j in other.images))


# ---------------------------------------------------------------------------
# matrix helpers


def identity(n: int, one=1, zero=0) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise SizeMismatch("inner dimensions differ")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def trace(a: Sequence[Sequence]):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def _check_square(Y: Sequence, n: int | None = None) -> int:
    sizes = {len(M) for M in Y} | {len(row) for M in Y for row in M}
    if len(sizes) != 1:
        raise SizeMismatch("matrices must be square of one common size")
    (size,) = sizes
    if n is not None and size != n:
        raise SizeMismatch(f"expected {n}x{n} matrices")
    return size


def _canonical_cycle(cyc: tuple[int, ...]) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    return cyc[i:] + cyc[:i]


class _CycleTraces:
    """Memoised ``Tr(Y[i1] ⋯ Y[id])`` keyed by cycles up to rotation."""

    def __init__(self, Y: Sequence):
        self.Y = Y
        self.prods: dict[tuple, list] = {}
        self.traces: dict[tuple, object] = {}

    def product(self, seq: tuple[int, ...]):
        hit = self.prods.get(seq)
        if hit is None:
            hit = self.Y[seq[0]] if len(seq) == 1 else mat_mul(self.product(seq[:-1]), self.Y[seq[-1]])
            self.prods[seq] = hit
        return hit

    def __call__(self, cyc: tuple[int, ...]):
        key = _canonical_cycle(cyc)
        hit = self.traces.get(key)
        if hit is None:
            hit = trace(self.product(key))
            self.traces[key] = hit
        return hit


def trace_word(pi: Perm, Y: Sequence, _traces: _CycleTraces | None = None):
    """``Tr^π``: product over the cycles ``(i1 … id)`` of ``Tr(Y(i1)⋯Y(id))``."""
    if len(Y) != pi.size:
        raise SizeMismatch(f"{pi.size} matrices needed, got {len(Y)}")
    _check_square(Y)
    traces = _traces or _CycleTraces(Y)
    out = None
    for cyc in pi.cycles():
        t = traces(cyc)
        out = t if out is None else out * t
    return out


def fundamental_identity(n: int, Y: Sequence):
    """``Σ_{π ∈ S_{n+1}} sign(π) Tr^π`` for ``n + 1`` matrices of size ``n``."""
    if len(Y) != n + 1:
        raise SizeMismatch(f"{n + 1} matrices needed, got {len(Y)}")
    _check_square(Y, n)
    traces = _CycleTraces(Y)
    total = None
    for images in permutations(range(n + 1)):
        pi = Perm(images)
        t = trace_word(pi, Y, traces)
        t = t if pi.sign > 0 else -t
        total = t if total is None else total + t
    return total


def generic_matrices(n: int, m: int) -> list[list[list[Poly]]]:
    """``m`` generic ``n x n`` matrices with entries ``X<r>_<i>_<j>``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    out = []
    for r in range(1, m + 1):
        out.append(
            [
                [Poly.gen(var(f"X{r}_{i}_{j}", (0, "X", r, (i, j)))) for j in range(1, n + 1)]
                for i in range(1, n + 1)
            ]
        )
    return out


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_rational_matrix(n: int, rng: random.Random) -> list[list[Fraction]]:
    return [[random_rational(rng) for _ in range(n)] for _ in range(n)]


def random_commuting_tuple(n: int, m: int, rng: random.Random, kind: str = "diagonal") -> list[list[list[Fraction]]]:
    """Exactly commuting rational matrices.

    ``diagonal``: independent random diagonal matrices. ``polynomial``: a random
    ``M`` followed by random polynomials of degree ≤ 2 in ``M``.
    """
    zero = Fraction(0)
    if kind == "diagonal":
        return [
            [[random_rational(rng) if i == j else zero for j in range(n)] for i in range(n)]
            for _ in range(m)
        ]
    if kind == "polynomial":
        M = random_rational_matrix(n, rng)
        M2 = mat_mul(M, M)
        out = [M]
        for _ in range(m - 1):
            a, b, c = (random_rational(rng) for _ in range(3))
            out.append(
                [[a * (i == j) + b * M[i][j] + c * M2[i][j] for j in range(n)] for i in range(n)]
            )
        return out
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# diagonal embeddings of A into n x n matrices over T^n(A)


def diagonal_embedding(A: BasedAlgebra, n: int, a: AlgElement | BasisWord) -> list[list[Poly]]:
    """``diag(a⊗1⊗…⊗1, …, 1⊗…⊗1⊗a)``."""
    if not isinstance(A, _MonomialAlgebra):
        raise UnsupportedKind("diagonal embedding needs slot-polynomial tensors")
    if isinstance(a, BasisWord):
        a = AlgElement.word(a)
    zero = A.tensor_zero(n)
    return [[A.tensor_from_element(n, i, a) if i == j else zero for j in range(n)] for i in range(n)]


def trace_at_diagonals(A: BasedAlgebra, n: int, words: Sequence[BasisWord]) -> Poly:
    """``Tr(w̃_1 ⋯ w̃_k)``; equals the bracket of the product word."""
    mats = [diagonal_embedding(A, n, w) for w in words]
    prod = mats[0]
    for M in mats[1:]:
        prod = mat_mul(prod, M)
    return trace(prod)


def verify_psi_by_substitution(A: BasedAlgebra, n: int, mu: Sequence[BasisWord]) -> bool:
    """Compare the trace identity at ``Y(i) = w̃_i`` with ``phi(psi(mu))``.

    Grouping permutations by their cycle partition gives
    ``Σ sign(π) Tr^π = (-1)^{n+1} phi(psi(mu))``; both must vanish.
    """
    if len(mu) != n + 1:
        raise WrongSize(f"need {n + 1} words, got {len(mu)}")
    Y = [diagonal_embedding(A, n, w) for w in mu]
    trace_side = fundamental_identity(n, Y)
    relation_side = phi(A, n, psi(A, n, mu))
    sign = -1 if (n + 1) % 2 else 1
    return trace_side == relation_side * sign and not trace_side


def _word_matrix(w: BasisWord, mats: Sequence, n: int):
    out = identity(n, Fraction(1), Fraction(0))
    for M, e in zip(mats, w.key):
        for _ in range(e):
            out = mat_mul(out, M)
    return out


def gamma_evaluation_check(A: BasedAlgebra, n: int, mats: Sequence, f: Poly) -> Fraction:
    """Value of ``f`` under ``T_w -> Tr(w(M_1, …, M_m))`` at commuting matrices.

    ``A`` must be a polynomial algebra with one matrix per generator; the
    matrices are checked to commute exactly.
    """
    if not isinstance(A, _MonomialAlgebra) or A.q != 1:
        raise UnsupportedKind("gamma evaluation needs a polynomial algebra")
    if len(mats) != A.m:
        raise SizeMismatch(f"{A.m} matrices needed, got {len(mats)}")
    _check_square(mats, n)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mat_mul(mats[i], mats[j]) != mat_mul(mats[j], mats[i]):
                raise NotCommuting(f"matrices {i + 1} and {j + 1} do not commute")
    cache: dict[BasisWord, Fraction] = {}
    total = Fraction(0)
    for mu, c in fpoly_multisets(A, f):
        term = c
        for w in mu:
            if w not in cache:
                cache[w] = trace(_word_matrix(w, mats, n))
            term *= cache[w]
        total += term
    return total
