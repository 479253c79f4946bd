"""Exact rational scalars, sparse multivariate polynomials and dense linear algebra.

Scalars are :class:`fractions.Fraction` throughout. Polynomials live over
interned :class:`Var` objects; a monomial is stored as a tuple of
``(var_id, exponent)`` pairs sorted by interning id, which keeps hashing cheap.
The printed order of terms is the graded-lex order induced by each variable's
``sort_key`` and is independent of interning order.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]
Mono = tuple  # tuple[tuple[int, int], ...]

__all__ = [
    "Rat",
    "Var",
    "var",
    "Poly",
    "MissingVariable",
    "PolySyntaxError",
    "UnknownVariable",
    "parse_poly",
    "RatMatrix",
    "rref_nullspace",
    "RowEchelon",
    "as_rat",
]


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and rational strings like ``"-3/4"`` to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class MissingVariable(KeyError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown variable {name!r}")
        self.name = name


# ---------------------------------------------------------------------------
# variables

_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_{}]*\Z")


class Var:
    """An interned polynomial variable. Compare by identity; order by ``sort_key``."""

    __slots__ = ("label", "sort_key", "id", "_explicit")

    def __init__(self, label: str, sort_key: tuple, id_: int, explicit: bool):
        self.label = label
        self.sort_key = sort_key
        self.id = id_
        self._explicit = explicit

    def __repr__(self) -> str:
        return f"Var({self.label!r})"

    def __str__(self) -> str:
        return self.label

    def __lt__(self, other: "Var") -> bool:
        return self.sort_key < other.sort_key

    def __reduce__(self):
        return (var, (self.label, self.sort_key if self._explicit else None))


_registry: dict[str, Var] = {}
_by_id: list[Var] = []
_lock = threading.Lock()


def var(label: str, sort_key: tuple | None = None) -> Var:
    """Intern ``label``. Sort keys are ``(group, name, slot, extra)`` tuples.

    A variable first created without a key gets ``(0, label, 0, ())``; a later
    explicit key replaces that default. Once a key was given explicitly it is
    kept for the rest of the session.
    """
    if not _LABEL_RE.match(label):
        raise ValueError(f"invalid variable name {label!r}")
    with _lock:
        v = _registry.get(label)
        if v is None:
            explicit = sort_key is not None
            v = Var(label, sort_key if explicit else (0, label, 0, ()), len(_by_id), explicit)
            _registry[label] = v
            _by_id.append(v)
        elif sort_key is not None and not v._explicit:
            v.sort_key = sort_key
            v._explicit = True
        return v


def lookup_var(label: str) -> Var | None:
    return _registry.get(label)


def var_by_id(i: int) -> Var:
    return _by_id[i]


# ---------------------------------------------------------------------------
# monomials


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_order_key(m: Mono) -> tuple:
    """Ascending key that lists higher degree first, then lex by variable order."""
    items = sorted(((_by_id[v].sort_key, -e) for v, e in m))
    return (-mono_degree(m), items)


def render_mono(m: Mono) -> str:
    parts = []
    for v, e in sorted(m, key=lambda p: _by_id[p[0]].sort_key):
        label = _by_id[v].label
        parts.append(label if e == 1 else f"{label}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse polynomial with Fraction coefficients; immutable by convention."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        # callers guarantee canonical input: no zero coefficients, Fraction values
        self.terms: dict = terms if terms is not None else {}
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = as_rat(c)
        return cls({(): c} if c else {})

    @classmethod
    def gen(cls, v: Var | str) -> "Poly":
        if isinstance(v, str):
            v = var(v)
        return cls({((v.id, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff: Scalar = 1) -> "Poly":
        c = as_rat(coeff)
        if not c:
            return cls()
        m = tuple(sorted((v.id, e) for v, e in exps.items() if e))
        if any(e < 0 for _, e in m):
            raise ValueError("negative exponent")
        return cls({m: c})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mono, Scalar]]) -> "Poly":
        acc: dict = {}
        for m, c in items:
            acc[m] = acc.get(m, 0) + c
        return cls({m: as_rat(c) for m, c in acc.items() if c})

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            if not mb:
                for ma, ca in a.items():
                    out[ma] = get(ma, 0) + ca * cb
                continue
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Poly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Poly":
        c = as_rat(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def __truediv__(self, c: Scalar) -> "Poly":
        return self.scale(1 / as_rat(c))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection -----------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coeff(self, exps: Mapping[Var, int]) -> Fraction:
        m = tuple(sorted((v.id, e) for v, e in exps.items() if e))
        return self.terms.get(m, Fraction(0))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self, weights: Mapping[Var, int] | None = None) -> bool:
        degs = {self.mono_weight(m, weights) for m in self.terms}
        return len(degs) <= 1

    @staticmethod
    def mono_weight(m: Mono, weights: Mapping[Var, int] | None = None) -> int:
        if weights is None:
            return mono_degree(m)
        return sum(weights[_by_id[v]] * e for v, e in m)

    def variables(self) -> list[Var]:
        ids = {v for m in self.terms for v, _ in m}
        return sorted((_by_id[i] for i in ids), key=lambda v: v.sort_key)

    def items(self) -> list[tuple[dict[Var, int], Fraction]]:
        """Terms in canonical order as ``({var: exp}, coeff)`` pairs."""
        return [
            ({_by_id[v]: e for v, e in m}, c)
            for m, c in sorted(self.terms.items(), key=lambda t: mono_order_key(t[0]))
        ]

    # homomorphisms --------------------------------------------------------
    def substitute(self, mapping: Mapping[Var, "Poly | Scalar"]) -> "Poly":
        """Ring-homomorphic substitution; unmapped variables pass through."""
        images: dict[int, Poly] = {}
        for v, img in mapping.items():
            images[v.id] = img if isinstance(img, Poly) else Poly.const(img)
        powers: dict[tuple[int, int], Poly] = {}

        def power(vid: int, e: int) -> Poly:
            key = (vid, e)
            p = powers.get(key)
            if p is None:
                base = images[vid]
                p = base if e == 1 else power(vid, e - 1) * base
                powers[key] = p
            return p

        out = Poly()
        for m, c in self.terms.items():
            kept = []
            term = Poly({(): c})
            for vid, e in m:
                if vid in images:
                    term = term * power(vid, e)
                else:
                    kept.append((vid, e))
            if kept:
                term = term * Poly({tuple(kept): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, point: Mapping[Var, Scalar]) -> Fraction:
        values = {v.id: as_rat(x) for v, x in point.items()}
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for vid, e in m:
                try:
                    t *= values[vid] ** e
                except KeyError:
                    raise MissingVariable(_by_id[vid].label) from None
            total += t
        return total

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(sorted(self.terms.items(), key=lambda t: mono_order_key(t[0]))):
            neg = c < 0
            a = -c if neg else c
            body = render_mono(m)
            if not body:
                txt = str(a)
            elif a == 1:
                txt = body
            else:
                txt = f"{a}*{body}"
            if i == 0:
                out.append(("-" if neg else "") + txt)
            else:
                out.append((" - " if neg else " + ") + txt)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_{}]*)|(?P<op>[-+*/^]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    return tokens


def parse_poly(text: str, variables: Mapping[str, Var] | Iterable[Var] | None = None) -> Poly:
    """Parse the polynomial text grammar.

    ``term = [sign] [rational "*"] factor ("*" factor)*`` or a bare rational;
    ``factor = name ["^" int]``. With ``variables`` given, names outside it raise
    :class:`UnknownVariable`; otherwise new names are interned on the fly.
    """
    if variables is not None and not isinstance(variables, Mapping):
        variables = {v.label: v for v in variables}
    tokens = _tokenize(text)
    n = len(tokens)
    i = 0

    def peek(kind=None, value=None):
        if i >= n:
            return False
        k, v, _ = tokens[i]
        return (kind is None or k == kind) and (value is None or v == value)

    def where() -> int:
        return tokens[i][2] if i < n else len(text)

    def expect_int() -> int:
        nonlocal i
        if not peek("num"):
            raise PolySyntaxError("expected integer", where())
        val = int(tokens[i][1])
        i += 1
        return val

    def resolve(name: str, pos: int) -> Var:
        if variables is None:
            return var(name)
        v = variables.get(name)
        if v is None:
            raise UnknownVariable(name)
        return v

    if n == 0:
        raise PolySyntaxError("empty polynomial", 0)
    acc: dict = {}
    first = True
    while i < n:
        sign = 1
        if peek("op", "+") or peek("op", "-"):
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolySyntaxError("expected '+' or '-'", where())
        first = False
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        need_factor = True
        if peek("num"):
            num = expect_int()
            den = 1
            if peek("op", "/"):
                i += 1
                den = expect_int()
                if den == 0:
                    raise PolySyntaxError("zero denominator", tokens[i - 1][2])
            coeff *= Fraction(num, den)
            if peek("op", "*"):
                i += 1
            else:
                need_factor = False
        while need_factor:
            if not peek("name"):
                raise PolySyntaxError("expected variable", where())
            _, name, pos = tokens[i]
            i += 1
            v = resolve(name, pos)
            e = 1
            if peek("op", "^"):
                i += 1
                e = expect_int()
                if e <= 0:
                    raise PolySyntaxError("exponent must be positive", tokens[i - 1][2])
            exps[v.id] = exps.get(v.id, 0) + e
            if peek("op", "*"):
                i += 1
            else:
                need_factor = False
        if i < n and not (peek("op", "+") or peek("op", "-")):
            raise PolySyntaxError(f"unexpected token {tokens[i][1]!r}", where())
        m = tuple(sorted(exps.items()))
        acc[m] = acc.get(m, 0) + coeff
    return Poly({m: c for m, c in acc.items() if c})


# ---------------------------------------------------------------------------
# linear algebra


class RatMatrix:
    """Dense rectangular matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Scalar]], cols: int | None = None):
        self.entries = [[as_rat(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != cols for r in self.entries):
            raise ValueError("ragged matrix")
        self.cols = cols

    def __matmul__(self, vec: Sequence[Scalar]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.entries]

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols})"


def rref_nullspace(M: RatMatrix) -> tuple[int, list[list[Fraction]]]:
    """Rank and a nullspace basis read off the reduced row echelon form.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns, so the basis is determined by ``M`` alone.
    """
    a = [row[:] for row in M.entries]
    rows, cols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        pivot_row = [x * inv for x in a[r]]
        a[r] = pivot_row
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][free]
        basis.append(v)
    return len(pivots), basis


class RowEchelon:
    """Incremental sparse row reduction for rank/span membership.

    Vectors are dicts ``column -> Fraction``; keys may be any hashable. Each
    stored row is normalised to pivot coefficient 1.
    """

    def __init__(self):
        self._rows: dict = {}  # pivot key -> row dict
        self._order: list = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping) -> dict:
        v = {k: as_rat(x) for k, x in vec.items() if x}
        rows = self._rows
        # a stored row never contains the pivot of an earlier row, so one
        # pass in insertion order clears every pivot column
        for p in self._order:
            f = v.get(p)
            if not f:
                continue
            for k, x in rows[p].items():
                s = v.get(k, 0) - f * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v, key=_sortable)
        inv = 1 / v[pivot]
        v = {k: x * inv for k, x in v.items()}
        self._rows[pivot] = v
        self._order.append(pivot)
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def __iter__(self) -> Iterator[dict]:
        return (self._rows[k] for k in self._order)


def _sortable(k):
    # pivot choice only needs to be deterministic; keys of mixed type fall back to repr
    return (0, k) if isinstance(k, (int, tuple)) else (1, repr(k))
