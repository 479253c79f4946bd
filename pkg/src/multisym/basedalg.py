"""Based commutative algebras and the symmetric tensor power T^n(A)^{S_n}.

An algebra has basis ``{1} ∪ M``; elements of ``M`` are :class:`BasisWord`.
Tensors in ``T^n(A)`` come in two representations:

* polynomial and Veronese algebras use slot-tagged polynomials, so
  ``x ⊗ 1 ⊗ 1`` is the variable ``x1``;
* structure-constant algebras use :class:`SlotTensor`, a map from slot tuples
  of basis indices (0 standing for 1) to coefficients.

Both support ``+``, ``-``, ``*``, scalar multiplication and ``==``, and the
algebra object translates between tensor monomials and slot-word tuples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .exactmath import Poly, Var, as_rat, var

__all__ = [
    "BasisWord",
    "AlgElement",
    "BasedAlgebra",
    "PolynomialAlgebra",
    "Veronese",
    "StructureConstantAlgebra",
    "SlotTensor",
    "NotGraded",
    "TableMiss",
    "NotInvariant",
    "HeightExceedsPower",
    "multiset",
    "multiplicity_factorial",
    "basis_words_up_to",
    "word_product",
    "power_sum",
    "orbit_sum",
    "bracket_product",
    "to_orbit_basis",
    "to_power_product_basis",
    "from_power_product_basis",
    "algebra_from_descriptor",
]


class NotGraded(ValueError):
    pass


class TableMiss(KeyError):
    pass


class NotInvariant(ValueError):
    pass


class HeightExceedsPower(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class BasisWord:
    """A basis element of ``M``; ``key`` is an exponent tuple or a table index."""

    key: object
    label: str = field(compare=False)
    degree: int | None = field(compare=False)
    rank: tuple = field(compare=False, repr=False)

    def __lt__(self, other: "BasisWord") -> bool:
        return self.rank < other.rank

    def __str__(self) -> str:
        return self.label


def multiset(words: Iterable[BasisWord]) -> tuple[BasisWord, ...]:
    """Canonical word multiset: a sorted tuple."""
    return tuple(sorted(words))


def multiplicity_factorial(mu: Sequence[BasisWord]) -> int:
    out = 1
    for w in set(mu):
        out *= math.factorial(mu.count(w))
    return out


def mu_str(mu: Sequence[BasisWord]) -> str:
    return "{" + ",".join(w.label for w in mu) + "}"


@dataclass(frozen=True)
class AlgElement:
    """``c0 + Σ c_w w`` with no zero coefficients in ``terms``."""

    c0: Fraction = Fraction(0)
    terms: Mapping[BasisWord, Fraction] = field(default_factory=dict)

    @classmethod
    def of(cls, c0=0, terms: Mapping[BasisWord, object] | None = None) -> "AlgElement":
        clean = {w: as_rat(c) for w, c in (terms or {}).items() if c}
        return cls(as_rat(c0), clean)

    @classmethod
    def word(cls, w: BasisWord) -> "AlgElement":
        return cls(Fraction(0), {w: Fraction(1)})

    def __add__(self, other: "AlgElement") -> "AlgElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, 0) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return AlgElement(self.c0 + other.c0, t)

    def scale(self, c) -> "AlgElement":
        c = as_rat(c)
        if not c:
            return AlgElement()
        return AlgElement(self.c0 * c, {w: x * c for w, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.c0 and not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.c0 == other.c0 and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.c0, frozenset(self.terms.items())))

    def __str__(self) -> str:
        parts = [] if not self.c0 else [str(self.c0)]
        for w in sorted(self.terms):
            c = self.terms[w]
            parts.append(w.label if c == 1 else f"{c}*{w.label}")
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# algebras


class BasedAlgebra:
    """Common interface. Subclasses fix the basis and the tensor representation."""

    graded: bool = True
    descriptor: str = "?"

    def __init__(self):
        self._cache: dict = {}

    # words ---------------------------------------------------------------
    def words_of_degree(self, d: int) -> list[BasisWord]:
        raise NotImplementedError

    def words_up_to(self, d: int) -> list[BasisWord]:
        if not self.graded:
            raise NotGraded(f"{self.descriptor} has no grading")
        out: list[BasisWord] = []
        for k in range(1, d + 1):
            out.extend(self.words_of_degree(k))
        return out

    def parse_word(self, text: str) -> BasisWord:
        raise NotImplementedError

    def word_from_label(self, label: str) -> BasisWord:
        return self.parse_word(label)

    def word_product(self, u: BasisWord, v: BasisWord) -> AlgElement:
        raise NotImplementedError

    def multiply(self, a: AlgElement, b: AlgElement) -> AlgElement:
        out = AlgElement(a.c0 * b.c0, {})
        if a.c0:
            out = out + AlgElement(Fraction(0), dict(b.terms)).scale(a.c0)
        if b.c0:
            out = out + AlgElement(Fraction(0), dict(a.terms)).scale(b.c0)
        for u, cu in a.terms.items():
            for v, cv in b.terms.items():
                out = out + self.word_product(u, v).scale(cu * cv)
        return out

    def product_of_words(self, words: Sequence[BasisWord]) -> AlgElement:
        acc = AlgElement(Fraction(1), {})
        for w in words:
            acc = self.multiply(acc, AlgElement.word(w))
        return acc

    # tensors -------------------------------------------------------------
    def tensor_zero(self, n: int):
        raise NotImplementedError

    def tensor_one(self, n: int):
        raise NotImplementedError

    def tensor_from_slots(self, n: int, slots: Sequence[BasisWord | None], coeff=1):
        raise NotImplementedError

    def tensor_terms(self, n: int, t) -> Iterator[tuple[tuple[BasisWord | None, ...], Fraction]]:
        raise NotImplementedError

    def tensor_permute(self, n: int, t, perm: Sequence[int]):
        """Move the content of slot ``i`` to slot ``perm[i]`` (0-based)."""
        raise NotImplementedError

    def tensor_from_element(self, n: int, slot: int, a: AlgElement):
        """``1 ⊗ … ⊗ a ⊗ … ⊗ 1`` with ``a`` in ``slot`` (0-based)."""
        out = self.tensor_one(n) * a.c0 if a.c0 else self.tensor_zero(n)
        for w, c in a.terms.items():
            slots = [None] * n
            slots[slot] = w
            out = out + self.tensor_from_slots(n, slots, c)
        return out


# -- polynomial kinds --------------------------------------------------------


def _default_names(m: int) -> tuple[str, ...]:
    if m <= 3:
        return ("x", "y", "z")[:m]
    return tuple(f"x{i}" for i in range(1, m + 1))


class _MonomialAlgebra(BasedAlgebra):
    """Shared machinery for K[x_1..x_m] and its Veronese subalgebras."""

    q = 1

    def __init__(self, names: Sequence[str]):
        super().__init__()
        if len(set(names)) != len(names) or not names:
            raise ValueError("variable names must be distinct and non-empty")
        self.names = tuple(names)
        self.m = len(names)
        self._slot_vars: dict[int, list[list[Var]]] = {}
        self._slot_lookup: dict[int, dict[int, tuple[int, int]]] = {}
        self._juxtapose = all(len(s) == 1 for s in self.names)

    # words
    def word(self, exps: Sequence[int]) -> BasisWord:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.m or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        d = sum(exps)
        if d == 0 or d % self.q:
            raise ValueError(f"{exps} is not a basis word of {self.descriptor}")
        neg = list(-e for e in exps)
        while neg and not neg[-1]:
            neg.pop()
        # trailing zeros stripped so x in K[x] and in K[x,y] rank alike
        return BasisWord(exps, self._label(exps), d, (d, tuple(neg)))

    def _label(self, exps: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e:
                if self._juxtapose:
                    parts.append(name if e == 1 else f"{name}{e}")
                else:
                    parts.append(name if e == 1 else f"{name}e{e}")
        return ("" if self._juxtapose else "_").join(parts)

    def words_of_degree(self, d: int) -> list[BasisWord]:
        if d <= 0 or d % self.q:
            return []
        out = []
        for combo in combinations_with_replacement(range(self.m), d):
            exps = [0] * self.m
            for i in combo:
                exps[i] += 1
            out.append(self.word(exps))
        return sorted(out)

    def parse_word(self, text: str) -> BasisWord:
        """Accept ``x^2*y``, ``x^2y`` and the label form ``x2y``."""
        s = text.replace("*", "").replace(" ", "")
        exps = [0] * self.m
        order = sorted(range(self.m), key=lambda i: -len(self.names[i]))
        pos = 0
        while pos < len(s):
            for i in order:
                name = self.names[i]
                if s.startswith(name, pos):
                    pos += len(name)
                    break
            else:
                raise ValueError(f"cannot parse word {text!r}")
            num = ""
            if pos < len(s) and s[pos] == "^":
                pos += 1
            elif not self._juxtapose and s.startswith("e", pos):
                pos += 1
            while pos < len(s) and s[pos].isdigit():
                num += s[pos]
                pos += 1
            exps[i] += int(num) if num else 1
        return self.word(exps)

    def word_product(self, u: BasisWord, v: BasisWord) -> AlgElement:
        return AlgElement.word(self.word(tuple(a + b for a, b in zip(u.key, v.key))))

    def word_poly(self, w: BasisWord) -> Poly:
        """``w`` as a polynomial in the un-slotted variables."""
        return Poly.monomial({var(n): e for n, e in zip(self.names, w.key)})

    # tensors
    def slot_vars(self, n: int) -> list[list[Var]]:
        """``slot_vars(n)[g][i]`` is generator ``g`` in slot ``i`` (0-based)."""
        sv = self._slot_vars.get(n)
        if sv is None:
            sv = []
            lookup = {}
            for g, name in enumerate(self.names):
                row = []
                for i in range(n):
                    label = f"{name}{i + 1}" if not name[-1].isdigit() else f"{name}_{i + 1}"
                    v = var(label, (0, name, i + 1, ()))
                    row.append(v)
                    lookup[v.id] = (g, i)
                sv.append(row)
            self._slot_vars[n] = sv
            self._slot_lookup[n] = lookup
        return sv

    def tensor_zero(self, n: int) -> Poly:
        return Poly()

    def tensor_one(self, n: int) -> Poly:
        return Poly.const(1)

    def tensor_from_slots(self, n, slots, coeff=1) -> Poly:
        sv = self.slot_vars(n)
        exps = {}
        for i, w in enumerate(slots):
            if w is None:
                continue
            for g, e in enumerate(w.key):
                if e:
                    exps[sv[g][i]] = e
        return Poly.monomial(exps, coeff)

    def tensor_terms(self, n, t: Poly):
        self.slot_vars(n)
        lookup = self._slot_lookup[n]
        for m, c in t.terms.items():
            per_slot = [[0] * self.m for _ in range(n)]
            for vid, e in m:
                try:
                    g, i = lookup[vid]
                except KeyError:
                    raise ValueError(f"variable outside T^{n}({self.descriptor}) in tensor") from None
                per_slot[i][g] += e
            yield tuple(None if not any(ex) else self.word(ex) for ex in per_slot), c

    def tensor_permute(self, n, t: Poly, perm):
        sv = self.slot_vars(n)
        remap = {}
        for g in range(self.m):
            for i in range(n):
                remap[sv[g][i].id] = sv[g][perm[i]].id
        return Poly({tuple(sorted((remap.get(v, v), e) for v, e in m)): c for m, c in t.terms.items()})

    def embed(self, n: int, slot: int, p: Poly) -> Poly:
        """Place a polynomial in the un-slotted generators into ``slot`` (0-based)."""
        sv = self.slot_vars(n)
        return p.substitute({var(name): Poly.gen(sv[g][slot]) for g, name in enumerate(self.names)})


class PolynomialAlgebra(_MonomialAlgebra):
    """``K[x_1..x_m]`` with ``M`` the non-constant monomials."""

    def __init__(self, m: int | None = None, names: Sequence[str] | None = None):
        if names is None:
            if m is None:
                raise ValueError("give m or names")
            names = _default_names(m)
        super().__init__(names)
        self.descriptor = f"poly:{self.m}"

    def __repr__(self):
        return f"PolynomialAlgebra(names={self.names})"


class Veronese(_MonomialAlgebra):
    """Span of the monomials whose degree is a positive multiple of ``q``."""

    def __init__(self, m: int, q: int, names: Sequence[str] | None = None):
        if q < 1:
            raise ValueError("q must be positive")
        self.q = q
        super().__init__(names or _default_names(m))
        self.descriptor = f"veronese:{self.m}:{q}"

    def __repr__(self):
        return f"Veronese(names={self.names}, q={self.q})"


# -- structure constants -----------------------------------------------------


class SlotTensor:
    """Element of ``T^n(A)`` for a finite algebra: slot tuple -> coefficient.

    Slot entries are basis indices, ``0`` standing for the unit.
    """

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: "StructureConstantAlgebra", n: int, terms: dict | None = None):
        self.alg = alg
        self.n = n
        self.terms = terms if terms is not None else {}

    def _new(self, terms):
        return SlotTensor(self.alg, self.n, {k: v for k, v in terms.items() if v})

    def __add__(self, other):
        if not isinstance(other, SlotTensor):
            other = self.alg.tensor_one(self.n) * other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return SlotTensor(self.alg, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SlotTensor):
            c = as_rat(other)
            return self._new({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        prod = self.alg._index_product
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial = {(): c1 * c2}
                for a, b in zip(k1, k2):
                    factor = prod(a, b)
                    nxt = {}
                    for pre, pc in partial.items():
                        for idx, fc in factor.items():
                            key = pre + (idx,)
                            nxt[key] = nxt.get(key, 0) + pc * fc
                    partial = nxt
                for key, c in partial.items():
                    out[key] = out.get(key, 0) + c
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.alg.tensor_one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SlotTensor):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.alg.tensor_one(self.n) * other
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["1"] + [w.label for w in self.alg.basis]
        parts = []
        for k in sorted(self.terms):
            parts.append(f"{self.terms[k]}*" + "⊗".join(names[i] for i in k))
        return " + ".join(parts)

    __repr__ = __str__


class StructureConstantAlgebra(BasedAlgebra):
    """A finite-dimensional commutative algebra given by a multiplication table.

    ``table[(u, v)]`` is an :class:`AlgElement` or a mapping ``{"1": c0, w: c}``.
    Commutativity is enforced by symmetric lookup and associativity is checked
    on every basis triple at construction.
    """

    def __init__(
        self,
        basis: Sequence[str],
        table: Mapping[tuple[str, str], Mapping[str, object]],
        degrees: Mapping[str, int] | None = None,
        name: str = "table",
    ):
        super().__init__()
        self.graded = degrees is not None
        self.descriptor = f"table:{name}"
        words = []
        for i, b in enumerate(basis):
            if b == "1":
                raise ValueError("1 cannot be a basis word")
            d = degrees[b] if degrees else None
            if degrees is not None and d < 1:
                raise ValueError("degrees must be positive")
            words.append(BasisWord(b, b, d, ((d or 0), (i,))))
        if len(set(basis)) != len(basis):
            raise ValueError("duplicate basis names")
        self.basis = sorted(words)
        self._by_name = {w.key: w for w in self.basis}
        self._index = {w: i + 1 for i, w in enumerate(self.basis)}
        self._table: dict[tuple[BasisWord, BasisWord], AlgElement] = {}
        for (u, v), prod in table.items():
            wu, wv = self._by_name[u], self._by_name[v]
            elem = prod if isinstance(prod, AlgElement) else self._element(prod)
            for key in ((wu, wv), (wv, wu)):
                if key in self._table and self._table[key] != elem:
                    raise ValueError(f"table is not commutative at {u},{v}")
                self._table[key] = elem
        self._idx_cache: dict = {}
        self._check_associative()
        if self.graded:
            self._check_grading()

    def _element(self, spec: Mapping[str, object]) -> AlgElement:
        c0 = 0
        terms = {}
        for k, c in spec.items():
            if k == "1":
                c0 = c
            else:
                terms[self._by_name[k]] = c
        return AlgElement.of(c0, terms)

    @classmethod
    def from_json(cls, path: str | Path) -> "StructureConstantAlgebra":
        """Load ``{"u,v": {"1": rat, "w": rat}}``; optionally wrapped as
        ``{"basis": [...], "degrees": {...}, "table": {...}}``."""
        data = json.loads(Path(path).read_text())
        if "table" in data and isinstance(data["table"], dict):
            table_raw = data["table"]
            basis = data.get("basis")
            degrees = data.get("degrees")
        else:
            table_raw, basis, degrees = data, None, None
        table = {}
        seen: list[str] = []
        for key, prod in table_raw.items():
            u, v = (s.strip() for s in key.split(","))
            table[(u, v)] = {k: as_rat(str(c)) for k, c in prod.items()}
            for s in (u, v, *prod.keys()):
                if s != "1" and s not in seen:
                    seen.append(s)
        return cls(basis or seen, table, degrees, name=Path(path).stem)

    def __repr__(self):
        return f"StructureConstantAlgebra({[w.label for w in self.basis]})"

    def word(self, name: str) -> BasisWord:
        return self._by_name[name]

    def parse_word(self, text: str) -> BasisWord:
        try:
            return self._by_name[text.strip()]
        except KeyError:
            raise ValueError(f"{text!r} is not a basis word") from None

    def words_of_degree(self, d: int) -> list[BasisWord]:
        if not self.graded:
            raise NotGraded(f"{self.descriptor} has no grading")
        return [w for w in self.basis if w.degree == d]

    def word_product(self, u: BasisWord, v: BasisWord) -> AlgElement:
        try:
            return self._table[(u, v)]
        except KeyError:
            raise TableMiss(f"{u.label}*{v.label}") from None

    def _check_associative(self):
        for u in self.basis:
            for v in self.basis:
                uv = self.word_product(u, v)
                for w in self.basis:
                    left = self.multiply(uv, AlgElement.word(w))
                    right = self.multiply(AlgElement.word(u), self.word_product(v, w))
                    if left != right:
                        raise ValueError(f"table is not associative at ({u},{v},{w})")

    def _check_grading(self):
        for (u, v), prod in self._table.items():
            if prod.c0 or any(w.degree != u.degree + v.degree for w in prod.terms):
                raise ValueError(f"product {u}*{v} breaks the grading")

    # tensors
    def _index_product(self, a: int, b: int) -> dict[int, Fraction]:
        key = (a, b)
        hit = self._idx_cache.get(key)
        if hit is not None:
            return hit
        if a == 0:
            res = {b: Fraction(1)}
        elif b == 0:
            res = {a: Fraction(1)}
        else:
            e = self.word_product(self.basis[a - 1], self.basis[b - 1])
            res = {self._index[w]: c for w, c in e.terms.items()}
            if e.c0:
                res[0] = e.c0
        self._idx_cache[key] = res
        return res

    def tensor_zero(self, n):
        return SlotTensor(self, n)

    def tensor_one(self, n):
        return SlotTensor(self, n, {(0,) * n: Fraction(1)})

    def tensor_from_slots(self, n, slots, coeff=1):
        c = as_rat(coeff)
        key = tuple(0 if w is None else self._index[w] for w in slots)
        return SlotTensor(self, n, {key: c} if c else {})

    def tensor_terms(self, n, t: SlotTensor):
        for key, c in t.terms.items():
            yield tuple(None if i == 0 else self.basis[i - 1] for i in key), c

    def tensor_permute(self, n, t: SlotTensor, perm):
        out = {}
        for key, c in t.terms.items():
            new = [0] * n
            for i, k in enumerate(key):
                new[perm[i]] = k
            out[tuple(new)] = c
        return SlotTensor(self, n, out)


def algebra_from_descriptor(desc: str) -> BasedAlgebra:
    """``poly:m``, ``veronese:m:q`` or ``table:<path>``."""
    kind, _, rest = desc.partition(":")
    if kind == "poly":
        return PolynomialAlgebra(int(rest))
    if kind == "veronese":
        m, _, q = rest.partition(":")
        return Veronese(int(m), int(q))
    if kind == "table":
        return StructureConstantAlgebra.from_json(rest)
    raise ValueError(f"unknown algebra descriptor {desc!r}")


# ---------------------------------------------------------------------------
# operations on T^n(A)


def basis_words_up_to(A: BasedAlgebra, d: int) -> list[BasisWord]:
    return A.words_up_to(d)


def word_product(A: BasedAlgebra, u: BasisWord, v: BasisWord) -> AlgElement:
    return A.word_product(u, v)


def power_sum(A: BasedAlgebra, n: int, w: BasisWord):
    """The bracket ``[w]``: ``w`` placed in each slot in turn, 1 elsewhere."""
    key = ("ps", n, w)
    hit = A._cache.get(key)
    if hit is None:
        hit = A.tensor_zero(n)
        for i in range(n):
            slots = [None] * n
            slots[i] = w
            hit = hit + A.tensor_from_slots(n, slots)
        A._cache[key] = hit
    return hit


def _distinct_arrangements(items: list) -> Iterator[tuple]:
    # items sorted with None-safe keys; classic next-permutation over indices
    counts: dict = {}
    for it in items:
        counts[it] = counts.get(it, 0) + 1
    keys = list(counts)
    n = len(items)

    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                yield from rec(prefix)
                prefix.pop()
                counts[k] += 1

    yield from rec([])


def orbit_sum(A: BasedAlgebra, n: int, mu: Sequence[BasisWord]):
    """Sum of the distinct slot arrangements of ``w_1 ⊗ … ⊗ w_r ⊗ 1 ⊗ … ⊗ 1``."""
    if len(mu) > n:
        raise HeightExceedsPower(f"height {len(mu)} exceeds n={n}")
    out = A.tensor_zero(n)
    for arrangement in _distinct_arrangements(list(mu) + [None] * (n - len(mu))):
        out = out + A.tensor_from_slots(n, arrangement)
    return out


def bracket_product(A: BasedAlgebra, n: int, mu: Sequence[BasisWord]):
    """``Π_{w∈μ} [w]`` as a tensor (the empty product is 1)."""
    mu = multiset(mu)
    key = ("bp", n, mu)
    hit = A._cache.get(key)
    if hit is None:
        if not mu:
            hit = A.tensor_one(n)
        else:
            hit = bracket_product(A, n, mu[:-1]) * power_sum(A, n, mu[-1])
        A._cache[key] = hit
    return hit


def is_invariant(A: BasedAlgebra, n: int, t) -> bool:
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        if A.tensor_permute(n, t, perm) != t:
            return False
    return True


def to_orbit_basis(A: BasedAlgebra, n: int, t, check: bool = True) -> dict[tuple, Fraction]:
    """Coefficients ``c_μ`` with ``t = Σ c_μ O_μ``."""
    if check and not is_invariant(A, n, t):
        raise NotInvariant("tensor is not fixed by the slot permutations")
    out: dict[tuple, Fraction] = {}
    for slots, c in A.tensor_terms(n, t):
        out[multiset(w for w in slots if w is not None)] = c
    return out


def _bracket_orbit_coords(A: BasedAlgebra, n: int, mu: tuple) -> dict[tuple, Fraction]:
    key = ("bpo", n, mu)
    hit = A._cache.get(key)
    if hit is None:
        hit = to_orbit_basis(A, n, bracket_product(A, n, mu), check=False)
        A._cache[key] = hit
    return hit


def to_power_product_basis(A: BasedAlgebra, n: int, t, check: bool = True) -> dict[tuple, Fraction]:
    """Coefficients ``c_μ`` with ``t = Σ c_μ Π_{w∈μ}[w]``, ``|μ| ≤ n``.

    Works from the top height down: the orbit coefficient at a top-height
    ``μ`` divided by ``r_1!⋯r_d!`` is the bracket coefficient, and subtracting
    that multiple of the bracket product only disturbs lower heights.
    """
    return orbit_to_power_product(A, n, to_orbit_basis(A, n, t, check=check))


def orbit_to_power_product(A: BasedAlgebra, n: int, coords: Mapping[tuple, Fraction]) -> dict[tuple, Fraction]:
    remaining = {mu: c for mu, c in coords.items() if c}
    result: dict[tuple, Fraction] = {}
    while remaining:
        top = max(len(mu) for mu in remaining)
        layer = sorted(mu for mu in remaining if len(mu) == top)
        for mu in layer:
            c = remaining[mu] / multiplicity_factorial(mu)
            result[mu] = c
            for nu, e in _bracket_orbit_coords(A, n, mu).items():
                s = remaining.get(nu, 0) - c * e
                if s:
                    remaining[nu] = s
                else:
                    remaining.pop(nu, None)
    return result


def from_power_product_basis(A: BasedAlgebra, n: int, coeffs: Mapping[tuple, Fraction]):
    out = A.tensor_zero(n)
    for mu, c in coeffs.items():
        out = out + bracket_product(A, n, mu) * c
    return out
