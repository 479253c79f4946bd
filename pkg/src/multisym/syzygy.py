"""Presentation of T^n(A)^{S_n} by the polynomial ring F = K[T_w].

The map ``phi`` sends ``T_w`` to the bracket ``[w]``; its kernel is generated
by the partition-indexed relations ``psi(A, n, mu)`` for ``|mu| = n + 1``.
This module builds those relations, uses them to rewrite bracket products into
the height-bounded normal form, and measures minimal generating systems of
graded instances degree by degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .basedalg import (
    AlgElement,
    BasedAlgebra,
    BasisWord,
    NotGraded,
    _bracket_orbit_coords,
    bracket_product,
    multiset,
    orbit_to_power_product,
)
from .exactmath import Poly, RowEchelon, Var, var, var_by_id

__all__ = [
    "WrongSize",
    "NotAWord",
    "t_symbol",
    "t_word",
    "fpoly_from_multiset",
    "fpoly_multisets",
    "set_partitions",
    "bell",
    "linearize",
    "psi",
    "phi",
    "rewrite_product",
    "reduce_long_word",
    "kernel_member",
    "invariant_space_basis",
    "DegreeReport",
    "graded_indecomposables",
    "min_generator_report",
]


class WrongSize(ValueError):
    pass


class NotAWord(ValueError):
    pass


# ---------------------------------------------------------------------------
# formal symbols


def t_symbol(A: BasedAlgebra, w: BasisWord) -> Var:
    v = var(f"T_{w.label}", (1, "T", 0, (w.rank, w.label)))
    A._cache.setdefault("tsym", {})[v.id] = w
    return v


def t_word(A: BasedAlgebra, v: Var) -> BasisWord:
    """Inverse of :func:`t_symbol`; falls back to parsing the label."""
    w = A._cache.get("tsym", {}).get(v.id)
    if w is None:
        if not v.label.startswith("T_"):
            raise ValueError(f"{v.label} is not a T-symbol")
        w = A.word_from_label(v.label[2:])
        t_symbol(A, w)
    return w


def fpoly_from_multiset(A: BasedAlgebra, mu: Sequence[BasisWord], coeff=1) -> Poly:
    exps: dict[Var, int] = {}
    for w in mu:
        v = t_symbol(A, w)
        exps[v] = exps.get(v, 0) + 1
    return Poly.monomial(exps, coeff)


def fpoly_multisets(A: BasedAlgebra, f: Poly) -> Iterator[tuple[tuple[BasisWord, ...], Fraction]]:
    """Each term of ``f`` as (multiset of words, coefficient)."""
    for m, c in f.terms.items():
        words = []
        for vid, e in m:
            words.extend([t_word(A, var_by_id(vid))] * e)
        yield multiset(words), c


def t_variables(A: BasedAlgebra) -> dict[str, Var]:
    """Label map of every T-symbol created so far for ``A`` (parsing context)."""
    return {var_by_id(i).label: var_by_id(i) for i in A._cache.get("tsym", {})}


# ---------------------------------------------------------------------------
# set partitions


def set_partitions(k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of ``{1..k}`` from restricted-growth strings.

    Blocks come out sorted by least element; the sequence is the RGS order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    a = [0] * k
    while True:
        blocks: list[list[int]] = []
        for i, label in enumerate(a):
            if label == len(blocks):
                blocks.append([])
            blocks[label].append(i + 1)
        yield tuple(tuple(bl) for bl in blocks)
        # advance to the next restricted growth string
        i = k - 1
        while i > 0:
            bound = max(a[:i]) + 1
            if a[i] < bound:
                a[i] += 1
                for j in range(i + 1, k):
                    a[j] = 0
                break
            i -= 1
        else:
            return


def bell(k: int) -> int:
    """Bell number via the recurrence B(k+1) = Σ C(k, j) B(j)."""
    b = [1]
    for i in range(k):
        b.append(sum(math.comb(i, j) * b[j] for j in range(i + 1)))
    return b[k]


# ---------------------------------------------------------------------------
# the relations


def linearize(A: BasedAlgebra, n: int, a: AlgElement) -> Poly:
    """``T_a = c0 * n + Σ c_w T_w``."""
    out = Poly.const(a.c0 * n)
    for w, c in a.terms.items():
        out = out + Poly.monomial({t_symbol(A, w): 1}, c)
    return out


def psi(A: BasedAlgebra, n: int, mu: Sequence[BasisWord]) -> Poly:
    """The relation indexed by a multiset of ``n + 1`` words.

    Sum over set partitions of ``(-1)^h Π (|block|-1)! T_{product of block}``.
    """
    if len(mu) != n + 1:
        raise WrongSize(f"need {n + 1} words, got {len(mu)}")
    mu = multiset(mu)
    key = ("psi", n, mu)
    cache = A._cache
    if key in cache:
        return cache[key]
    block_cache: dict[tuple, Poly] = {}

    def block_term(idx: tuple[int, ...]) -> Poly:
        sub = multiset(mu[i - 1] for i in idx)
        hit = block_cache.get(sub)
        if hit is None:
            hit = linearize(A, n, A.product_of_words(sub)).scale(math.factorial(len(sub) - 1))
            block_cache[sub] = hit
        return hit

    total = Poly()
    for lam in set_partitions(n + 1):
        term = Poly.const(-1 if len(lam) % 2 else 1)
        for block in lam:
            term = term * block_term(block)
            if not term:
                break
        total = total + term
    cache[key] = total
    return total


def phi(A: BasedAlgebra, n: int, f: Poly):
    """Image of ``f`` in ``T^n(A)`` under ``T_w -> [w]``."""
    out = A.tensor_zero(n)
    for mu, c in fpoly_multisets(A, f):
        out = out + bracket_product(A, n, mu) * c
    return out


def kernel_member(A: BasedAlgebra, n: int, f: Poly) -> bool:
    return not phi(A, n, f)


def rewrite_product(A: BasedAlgebra, n: int, mu: Sequence[BasisWord]) -> dict[tuple, Fraction]:
    """Normal form of ``Π_{w∈mu} [w]`` as brackets products of at most ``n`` factors.

    Repeatedly takes the first ``n + 1`` factors in sorted order and trades
    their product for the lower terms of the corresponding relation.
    """
    if not mu:
        return {(): Fraction(1)}
    top_sign = -1 if (n + 1) % 2 else 1
    pending: dict[tuple, Fraction] = {multiset(mu): Fraction(1)}
    result: dict[tuple, Fraction] = {}
    while pending:
        longest = max(len(m) for m in pending)
        if longest <= n:
            for m, c in pending.items():
                result[m] = result.get(m, 0) + c
            break
        for m in sorted(k for k in pending if len(k) == longest):
            c = pending.pop(m)
            head, rest = m[: n + 1], m[n + 1 :]
            relation = psi(A, n, head)
            # Π T_head = Π T_head - top_sign * relation, whose other terms are shorter
            for nu, r in fpoly_multisets(A, relation):
                if nu == head:
                    if r != top_sign:
                        raise AssertionError("leading coefficient of the relation is off")
                    continue
                key = multiset(nu + rest)
                s = pending.get(key, 0) - top_sign * r * c
                if s:
                    pending[key] = s
                else:
                    pending.pop(key, None)
    return {m: c for m, c in result.items() if c}


def reduce_long_word(A: BasedAlgebra, n: int, factors: Sequence[BasisWord]) -> Poly:
    """Express ``T_{w_1⋯w_{n+1}}`` through T-symbols of proper subproducts.

    Solves the relation for its single-block term, whose coefficient is
    ``-n!`` for monomial algebras.
    """
    if len(factors) != n + 1:
        raise WrongSize(f"need {n + 1} factors, got {len(factors)}")
    full = A.product_of_words(factors)
    if full.c0 or len(full.terms) != 1 or next(iter(full.terms.values())) != 1:
        raise NotAWord(f"product {full} is not a basis word")
    (w,) = full.terms
    T = t_symbol(A, w)
    relation = psi(A, n, factors)
    c = relation.coeff({T: 1})
    if not c:
        raise NotAWord(f"relation has no T_{w.label} term")
    rest = relation - Poly.monomial({T: 1}, c)
    if T.id in {v for m in rest.terms for v, _ in m}:
        raise NotAWord(f"T_{w.label} occurs non-linearly in the relation")
    return rest.scale(Fraction(-1) / c)


# ---------------------------------------------------------------------------
# graded analysis


def invariant_space_basis(A: BasedAlgebra, n: int, d: int) -> list[tuple]:
    """Multisets of height ≤ n and total degree d, in canonical order."""
    if not A.graded:
        raise NotGraded(f"{A.descriptor} has no grading")
    if d == 0:
        return [()]
    words = A.words_up_to(d)
    out: list[tuple] = []

    def rec(start: int, left: int, acc: list):
        if left == 0:
            out.append(tuple(acc))
            return
        if len(acc) == n:
            return
        for i in range(start, len(words)):
            w = words[i]
            if w.degree > left:
                continue
            acc.append(w)
            rec(i, left - w.degree, acc)
            acc.pop()

    rec(0, d, [])
    return sorted(out, key=lambda mu: (len(mu), mu))


@dataclass
class DegreeReport:
    degree: int
    dim: int
    decomposable_dim: int
    indecomposable: int
    witnesses: list = field(default_factory=list)

    def as_dict(self, render: Callable = str) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "decomposable_dim": self.decomposable_dim,
            "indecomposable": self.indecomposable,
            "witnesses": [render(w) for w in self.witnesses],
        }


def graded_indecomposables(
    d_max: int,
    basis: Callable[[int], Sequence],
    coords: Callable[[object], Mapping[Hashable, Fraction]],
    product: Callable[[object, object], object],
    candidates: Callable[[int], Iterable] | None = None,
) -> list[DegreeReport]:
    """Degreewise ``dim R_d``, ``dim (R_+)^2_d`` and indecomposable witnesses.

    ``basis(d)`` spans ``R_d``; ``(R_+)^2_d`` is spanned by products of basis
    elements of complementary positive degrees. Witnesses are picked greedily
    from ``candidates(d)`` (default: ``basis(d)``) to extend the decomposables.
    """
    reports = []
    for d in range(d_max + 1):
        full = RowEchelon()
        for b in basis(d):
            full.add(coords(b))
        if d == 0:
            reports.append(DegreeReport(0, full.rank, 0, 0, []))
            continue
        dec = RowEchelon()
        for i in range(1, d // 2 + 1):
            for a in basis(i):
                for b in basis(d - i):
                    dec.add(coords(product(a, b)))
        decomposable_dim = dec.rank
        witnesses = []
        for cand in candidates(d) if candidates else basis(d):
            if dec.rank == full.rank:
                break
            if dec.add(coords(cand)):
                witnesses.append(cand)
        reports.append(
            DegreeReport(d, full.rank, decomposable_dim, full.rank - decomposable_dim, witnesses)
        )
    return reports


def min_generator_report(A: BasedAlgebra, n: int, d_max: int) -> list[DegreeReport]:
    """Indecomposable counts of ``T^n(A)^{S_n}`` in degrees ``0..d_max``.

    Basis: bracket products of height ≤ n, in orbit-sum coordinates. Witnesses
    are single brackets ``[w]`` given as one-element multisets.
    """
    if not A.graded:
        raise NotGraded(f"{A.descriptor} has no grading")
    basis_cache: dict[int, list] = {}

    def basis(d):
        if d not in basis_cache:
            basis_cache[d] = invariant_space_basis(A, n, d)
        return basis_cache[d]

    return graded_indecomposables(
        d_max,
        basis,
        coords=lambda mu: _bracket_orbit_coords(A, n, mu),
        product=lambda a, b: multiset(a + b),
        candidates=lambda d: [(w,) for w in A.words_of_degree(d)],
    )


def power_product_to_fpoly(A: BasedAlgebra, coeffs: Mapping[tuple, Fraction]) -> Poly:
    out = Poly()
    for mu, c in coeffs.items():
        out = out + fpoly_from_multiset(A, mu, c)
    return out


def normal_form(A: BasedAlgebra, n: int, f: Poly) -> dict[tuple, Fraction]:
    """Power-product normal form of an arbitrary F-polynomial via rewriting."""
    out: dict[tuple, Fraction] = {}
    for mu, c in fpoly_multisets(A, f):
        for nu, e in rewrite_product(A, n, mu).items():
            out[nu] = out.get(nu, 0) + c * e
    return {k: v for k, v in out.items() if v}


def normal_form_by_expansion(A: BasedAlgebra, n: int, f: Poly) -> dict[tuple, Fraction]:
    """Same normal form computed by expanding ``phi(f)`` and converting bases."""
    from .basedalg import to_orbit_basis

    return orbit_to_power_product(A, n, to_orbit_basis(A, n, phi(A, n, f), check=False))
