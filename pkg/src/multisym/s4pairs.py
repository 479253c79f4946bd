"""Invariants of S_4 acting on the six pair variables x_{ij}, 1 ≤ i < j ≤ 4.

With ``x_1 = x_12 + x_34``, ``z_1 = x_12 - x_34`` (and likewise for the pairs
``13|24`` and ``14|23``) the ring R = K[x_ij] is identified with T^3(K[x, z]),
slot ``i`` carrying ``x_i`` and ``z_i``. The invariant ring R^{S_4} is the
image of the ten-variable ring F = K[T_w, S] under ``T_w -> [ψ(w)]``,
``S -> z_1 z_2 z_3`` where ψ: x -> x, y -> z^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Mapping, Sequence

from .basedalg import PolynomialAlgebra, power_sum
from .exactmath import Poly, RowEchelon, Var, parse_poly, var
from .syzygy import DegreeReport, graded_indecomposables, t_symbol
from .tracecheck import Perm

__all__ = [
    "PAIRS",
    "XY",
    "XZ",
    "pair_var",
    "xz_vars",
    "to_xz",
    "from_xz",
    "s4_elements",
    "double_transpositions",
    "s4_act",
    "ten_generators",
    "nine_generators",
    "symbols",
    "symbol_degree",
    "phi_s4",
    "Relation",
    "relation_generators",
    "swap_xy",
    "bidegree",
    "nine_symbol_presentation",
    "substitute_ty3",
    "invariant_dim",
    "symmetrized_rank",
    "kernel_report",
    "kernel_basis",
    "ideal_dim",
    "f_monomials",
    "generator_labels",
    "KernelDegree",
    "s4_min_generator_report",
    "is_decomposable",
    "parse_edges",
    "format_graph",
    "all_graphs",
    "fingerprint",
    "isomorphism_classes",
]

PAIRS: tuple[tuple[int, int], ...] = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
# slot i of T^3(K[x, z]) pairs these two edges: x_i = first + second, z_i = first - second
_SLOT_PAIRS = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))

XY = PolynomialAlgebra(names=("x", "y"))
XZ = PolynomialAlgebra(names=("x", "z"))


def pair_var(i: int, j: int) -> Var:
    i, j = min(i, j), max(i, j)
    return var(f"x_{i}{j}", (0, "x_", 10 * i + j, ()))


PAIR_VARS: tuple[Var, ...] = tuple(pair_var(i, j) for i, j in PAIRS)


def xz_vars() -> tuple[list[Var], list[Var]]:
    """``([x1, x2, x3], [z1, z2, z3])``."""
    sv = XZ.slot_vars(3)
    return sv[0], sv[1]


@lru_cache(maxsize=None)
def _xz_maps() -> tuple[dict, dict]:
    xs, zs = xz_vars()
    to_map: dict[Var, Poly] = {}
    from_map: dict[Var, Poly] = {}
    half = Fraction(1, 2)
    for i, (a, b) in enumerate(_SLOT_PAIRS):
        xa, xb = Poly.gen(pair_var(*a)), Poly.gen(pair_var(*b))
        xi, zi = Poly.gen(xs[i]), Poly.gen(zs[i])
        from_map[xs[i]] = xa + xb
        from_map[zs[i]] = xa - xb
        to_map[pair_var(*a)] = (xi + zi) * half
        to_map[pair_var(*b)] = (xi - zi) * half
    return to_map, from_map


def to_xz(p: Poly) -> Poly:
    """Rewrite a polynomial in the pair variables in x/z coordinates."""
    return p.substitute(_xz_maps()[0])


def from_xz(p: Poly) -> Poly:
    return p.substitute(_xz_maps()[1])


# ---------------------------------------------------------------------------
# the group


@lru_cache(maxsize=None)
def s4_elements() -> tuple[Perm, ...]:
    return tuple(Perm(p) for p in permutations(range(4)))


def double_transpositions() -> list[Perm]:
    return [Perm.from_cycles(4, c) for c in ([(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)])]


def _pair_image(sigma: Perm, pair: tuple[int, int]) -> tuple[int, int]:
    a, b = (sigma.images[k - 1] + 1 for k in pair)
    return (min(a, b), max(a, b))


@lru_cache(maxsize=None)
def _action_map(sigma: Perm) -> dict[Var, Poly]:
    mapping: dict[Var, Poly] = {}
    for pair in PAIRS:
        mapping[pair_var(*pair)] = Poly.gen(pair_var(*_pair_image(sigma, pair)))
    pair_images = dict(mapping)
    xs, zs = xz_vars()
    from_map = _xz_maps()[1]
    for v in (*xs, *zs):
        mapping[v] = to_xz(from_map[v].substitute(pair_images))
    return mapping


def s4_act(sigma: Perm, p: Poly) -> Poly:
    """``σ · x_ij = x_σ(i)σ(j)``; x/z variables are transported accordingly."""
    return p.substitute(_action_map(sigma))


# ---------------------------------------------------------------------------
# generators and the presentation


def _bracket(a: int, b: int) -> Poly:
    """``[x^a z^b]`` in x/z coordinates."""
    return power_sum(XZ, 3, XZ.word((a, b)))


def z_product() -> Poly:
    _, zs = xz_vars()
    return Poly.gen(zs[0]) * Poly.gen(zs[1]) * Poly.gen(zs[2])


# (x-exponent, z-exponent) of each bracket; None marks z1*z2*z3
_TEN = ((1, 0), (2, 0), (3, 0), (0, 2), (0, 4), (0, 6), (1, 2), (2, 2), (1, 4), None)
_NINE = ((1, 0), (2, 0), (3, 0), (0, 2), (0, 4), (1, 2), (2, 2), (1, 4), None)


def generator_labels(nine: bool = False) -> list[str]:
    out = []
    for spec in _NINE if nine else _TEN:
        if spec is None:
            out.append("z1z2z3")
            continue
        a, b = spec
        txt = ("x" if a == 1 else f"x^{a}" if a else "") + ("z" if b == 1 else f"z^{b}" if b else "")
        out.append(f"[{txt}]")
    return out


def ten_generators() -> list[Poly]:
    return [z_product() if s is None else _bracket(*s) for s in _TEN]


def nine_generators() -> list[Poly]:
    return [z_product() if s is None else _bracket(*s) for s in _NINE]


_WORD_LABELS = ("x", "x2", "x3", "y", "y2", "y3", "xy", "x2y", "xy2")


@lru_cache(maxsize=None)
def symbols() -> dict[str, Var]:
    """The ten presentation symbols by label (``T_x`` … ``T_xy2``, ``S``)."""
    out = {}
    for label in _WORD_LABELS:
        v = t_symbol(XY, XY.parse_word(label))
        out[v.label] = v
    out["S"] = var("S", (2, "S", 0, ()))
    return out


def symbol_degree(v: Var) -> int:
    """R-degree: ``deg T_{x^a y^b} = a + 2b``, ``deg S = 3``."""
    if v.label == "S":
        return 3
    a, b = XY.parse_word(v.label[2:]).key
    return a + 2 * b


def _weights() -> dict[Var, int]:
    return {v: symbol_degree(v) for v in symbols().values()}


@lru_cache(maxsize=None)
def _phi_images() -> dict[Var, Poly]:
    out = {}
    for label, v in symbols().items():
        if label == "S":
            out[v] = z_product()
        else:
            a, b = XY.parse_word(label[2:]).key
            out[v] = _bracket(a, 2 * b)
    return out


def phi_s4(f: Poly) -> Poly:
    """Image of ``f`` in R^{S_4} (x/z coordinates); other variables pass through."""
    return f.substitute(_phi_images())


# ---------------------------------------------------------------------------
# the six relations

_RELATION_TEXT = {
    "S2": "S^2 - 1/3*T_y3 + 1/2*T_y2*T_y - 1/6*T_y^3",
    "J32": (
        "6*T_x2y*T_xy - 3*T_xy2*T_x2 - 2*T_x2y*T_x*T_y + T_xy2*T_x^2 - 4*T_xy^2*T_x"
        " + 2*T_xy*T_x^2*T_y - 3*T_x3*T_y2 + 4*T_x2*T_x*T_y2 - T_x^3*T_y2"
        " + T_x3*T_y^2 - T_x2*T_x*T_y^2"
    ),
    "J23": (
        "6*T_xy2*T_xy - 3*T_x2y*T_y2 - 2*T_xy2*T_x*T_y + T_x2y*T_y^2 - 4*T_xy^2*T_y"
        " + 2*T_xy*T_y^2*T_x - 3*T_y3*T_x2 + 4*T_y2*T_y*T_x2 - T_y^3*T_x2"
        " + T_y3*T_x^2 - T_y2*T_y*T_x^2"
    ),
    "J42": (
        "6*T_x2y^2 + T_xy^2*T_x2 - 3*T_xy^2*T_x^2 - 6*T_x3*T_xy2 + 2*T_x2*T_xy2*T_x"
        " + 4*T_x3*T_xy*T_y - 2*T_x2*T_xy*T_x*T_y + 2*T_xy*T_x^3*T_y - 4*T_x2y*T_x2*T_y"
        " - T_x2^2*T_y2 + T_x2^2*T_y^2 + 4*T_x2*T_x^2*T_y2 - T_x2*T_x^2*T_y^2"
        " - T_x^4*T_y2 - 2*T_x3*T_x*T_y2"
    ),
    "J33": (
        "3*T_x2y*T_xy2 - T_xy*T_x2*T_y2 + T_xy^3 + T_xy*T_x^2*T_y2 - 5*T_xy^2*T_x*T_y"
        " - 3*T_x3*T_y3 + 2*T_xy*T_xy2*T_x + T_x2*T_x*T_y3 - 3*T_x2*T_xy2*T_y"
        " + 2*T_x2y*T_xy*T_y + 3*T_x2*T_x*T_y2*T_y + T_x3*T_y2*T_y + T_x2*T_xy*T_y^2"
        " - T_x^3*T_y2*T_y + 2*T_x^2*T_xy*T_y^2 - T_x2*T_x*T_y^3 - 3*T_x*T_x2y*T_y2"
    ),
    "J24": (
        "6*T_xy2^2 + T_xy^2*T_y2 - 3*T_xy^2*T_y^2 - 6*T_y3*T_x2y + 2*T_y2*T_x2y*T_y"
        " + 4*T_y3*T_xy*T_x - 2*T_y2*T_xy*T_x*T_y + 2*T_xy*T_y^3*T_x - 4*T_xy2*T_y2*T_x"
        " - T_y2^2*T_x2 + T_y2^2*T_x^2 + 4*T_y2*T_y^2*T_x2 - T_y2*T_y^2*T_x^2"
        " - T_y^4*T_x2 - 2*T_y3*T_y*T_x2"
    ),
}
RELATION_ORDER = ("S2", "J32", "J23", "J42", "J33", "J24")


@dataclass(frozen=True)
class Relation:
    name: str
    poly: Poly
    degree: int


def _make_relation(name: str, poly: Poly) -> Relation:
    degs = {Poly.mono_weight(m, _weights()) for m in poly.terms}
    if len(degs) != 1:
        raise ValueError(f"relation {name} is not homogeneous")
    return Relation(name, poly, degs.pop())


def relation_generators(overrides: Mapping[str, str] | None = None) -> list[Relation]:
    """The six generators of ``ker(phi_s4)`` in R-degree order (6, 7, 8, 8, 9, 10).

    ``overrides`` replaces relation texts by name (used to test the checker).
    """
    texts = dict(_RELATION_TEXT)
    if overrides:
        unknown = set(overrides) - set(texts)
        if unknown:
            raise KeyError(f"unknown relation names {sorted(unknown)}")
        texts.update(overrides)
    ctx = symbols()
    return [_make_relation(name, parse_poly(texts[name], ctx)) for name in RELATION_ORDER]


@lru_cache(maxsize=None)
def _swap_map() -> dict[Var, Poly]:
    syms = symbols()
    out = {}
    for label, v in syms.items():
        if label == "S":
            continue
        a, b = XY.parse_word(label[2:]).key
        out[v] = Poly.gen(t_symbol(XY, XY.word((b, a))))
    return out


def swap_xy(f: Poly) -> Poly:
    """``T_{x^a y^b} -> T_{x^b y^a}``; ``S`` fixed."""
    return f.substitute(_swap_map())


def bidegree(f: Poly) -> set[tuple[int, int]]:
    """Set of (x-degree, y-degree) over the terms of an F-polynomial without ``S``."""
    keys = {}
    for label, v in symbols().items():
        if label != "S":
            keys[v.id] = XY.parse_word(label[2:]).key
    out = set()
    for m in f.terms:
        a = b = 0
        for vid, e in m:
            if vid not in keys:
                raise ValueError("bidegree is only defined without S")
            a += keys[vid][0] * e
            b += keys[vid][1] * e
        out.add((a, b))
    return out


def substitute_ty3(f: Poly) -> Poly:
    """Eliminate ``T_{y^3}`` using ``T_{y^3} = 3 S^2 + 3/2 T_{y^2} T_y - 1/2 T_y^3``."""
    syms = symbols()
    S, Ty, Ty2, Ty3 = (Poly.gen(syms[k]) for k in ("S", "T_y", "T_y2", "T_y3"))
    repl = S * S * 3 + Ty2 * Ty * Fraction(3, 2) - Ty**3 * Fraction(1, 2)
    return f.substitute({syms["T_y3"]: repl})


def nine_symbol_presentation() -> tuple[list[Var], list[Relation]]:
    """Nine symbols (``T_{y^3}`` dropped) and the five substituted J-relations."""
    syms = symbols()
    nine = [v for k, v in syms.items() if k != "T_y3"]
    rels = [
        _make_relation(r.name + "~", substitute_ty3(r.poly))
        for r in relation_generators()
        if r.name != "S2"
    ]
    return nine, rels


# ---------------------------------------------------------------------------
# dimensions


def _monomials_of_degree(nvars: int, d: int) -> Iterable[tuple[int, ...]]:
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


@lru_cache(maxsize=None)
def _pair_perms() -> tuple[tuple[int, ...], ...]:
    """Each S_4 element as a permutation of the six pair indices."""
    out = []
    for sigma in s4_elements():
        out.append(tuple(PAIRS.index(_pair_image(sigma, p)) for p in PAIRS))
    return tuple(out)


def _count_solutions(lengths: Sequence[int], d: int) -> int:
    ways = [1] + [0] * d
    for L in lengths:
        for t in range(L, d + 1):
            ways[t] += ways[t - L]
    return ways[d]


def invariant_dim(d: int) -> int:
    """``dim R^{S_4}_d`` by Burnside: average number of fixed degree-d monomials."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    total = 0
    for sigma in s4_elements():
        lengths = []
        seen = set()
        for p in PAIRS:
            if p in seen:
                continue
            L = 0
            q = p
            while q not in seen:
                seen.add(q)
                q = _pair_image(sigma, q)
                L += 1
            lengths.append(L)
        total += _count_solutions(lengths, d)
    assert total % 24 == 0
    return total // 24


def _permute_exps(e: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * 6
    for i, k in enumerate(e):
        out[perm[i]] = k
    return tuple(out)


def symmetrized_rank(d: int) -> int:
    """Rank of the S_4-symmetrisations of all degree-d monomials in the pair variables."""
    ech = RowEchelon()
    perms = _pair_perms()
    for e in _monomials_of_degree(6, d):
        vec: dict = {}
        for perm in perms:
            img = _permute_exps(e, perm)
            vec[img] = vec.get(img, 0) + 1
        ech.add(vec)
    return ech.rank


# ---------------------------------------------------------------------------
# degreewise kernel of phi_s4


def f_monomials(d: int) -> list[dict[Var, int]]:
    """Monomials of R-degree d in the ten presentation symbols, canonical order."""
    syms = list(symbols().values())
    degs = [symbol_degree(v) for v in syms]
    out: list[dict[Var, int]] = []

    def rec(i, left, acc):
        if left == 0:
            out.append({syms[k]: e for k, e in enumerate(acc) if e})
            return
        if i == len(syms):
            return
        for e in range(left // degs[i], -1, -1):
            acc.append(e)
            rec(i + 1, left - e * degs[i], acc)
            acc.pop()

    rec(0, d, [])
    return out


class _PhiCache:
    """Memoised images of F-monomials, built one symbol at a time."""

    def __init__(self):
        self.images = _phi_images()
        self.cache: dict[tuple, Poly] = {(): Poly.const(1)}

    def __call__(self, mono: Mapping[Var, int]) -> Poly:
        key = tuple(sorted((v.id, e) for v, e in mono.items()))
        return self._get(key)

    def _get(self, key: tuple) -> Poly:
        hit = self.cache.get(key)
        if hit is None:
            vid, e = key[-1]
            rest = key[:-1] + (((vid, e - 1),) if e > 1 else ())
            from .exactmath import var_by_id

            hit = self._get(rest) * self.images[var_by_id(vid)]
            self.cache[key] = hit
        return hit


def _symmetric_coords(p: Poly) -> dict:
    """Coefficients at S_3-canonical monomials of an index-symmetric x/z polynomial.

    Images of ``phi_s4`` are fixed by simultaneous permutation of the slot
    indices, so these coefficients determine them.
    """
    xs, zs = xz_vars()
    slot_of = {}
    for i in range(3):
        slot_of[xs[i].id] = (i, 0)
        slot_of[zs[i].id] = (i, 1)
    out = {}
    for m, c in p.terms.items():
        per = [[0, 0], [0, 0], [0, 0]]
        for vid, e in m:
            i, k = slot_of[vid]
            per[i][k] = e
        if per[0] >= per[1] >= per[2]:
            out[m] = c
    return out


@dataclass
class KernelDegree:
    degree: int
    monomials: int
    image_rank: int
    kernel_dim: int
    ideal_dim: int
    match: bool
    minimality: dict[str, bool] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "monomials": self.monomials,
            "image_rank": self.image_rank,
            "kernel_dim": self.kernel_dim,
            "ideal_dim": self.ideal_dim,
            "match": self.match,
            "minimality": dict(self.minimality),
        }


def _mono_key(mono: Mapping[Var, int]) -> tuple:
    return tuple(sorted((v.id, e) for v, e in mono.items()))


def ideal_dim(relations: Sequence[Relation], d: int) -> int:
    """Dimension of the degree-d part of the ideal generated by ``relations``."""
    ech = RowEchelon()
    for r in relations:
        if r.degree > d:
            continue
        for mono in f_monomials(d - r.degree):
            prod = r.poly * Poly.monomial(mono)
            ech.add(prod.terms)
    return ech.rank


def kernel_report(d_max: int = 10, relations: Sequence[Relation] | None = None) -> list[KernelDegree]:
    """Per R-degree: nullity of ``phi_s4`` versus the ideal of the relations.

    ``minimality[name]`` is True when dropping that relation lowers the ideal
    dimension in the relation's own degree.
    """
    rels = list(relations) if relations is not None else relation_generators()
    phi_cache = _PhiCache()
    out = []
    for d in range(d_max + 1):
        monos = f_monomials(d)
        ech = RowEchelon()
        for mono in monos:
            ech.add(_symmetric_coords(phi_cache(mono)))
        kdim = len(monos) - ech.rank
        idim = ideal_dim(rels, d)
        minimality = {}
        for r in rels:
            if r.degree == d:
                others = [s for s in rels if s is not r]
                minimality[r.name] = ideal_dim(others, d) < idim
        out.append(KernelDegree(d, len(monos), ech.rank, kdim, idim, kdim == idim, minimality))
    return out


def kernel_basis(d: int) -> list[Poly]:
    """Exact basis of the degree-d kernel of ``phi_s4`` (for small d)."""
    from .exactmath import RatMatrix, rref_nullspace

    monos = f_monomials(d)
    phi_cache = _PhiCache()
    cols = [_symmetric_coords(phi_cache(m)) for m in monos]
    keys = sorted({k for c in cols for k in c})
    M = RatMatrix([[c.get(k, 0) for c in cols] for k in keys], cols=len(monos))
    _, null = rref_nullspace(M)
    return [
        sum((Poly.monomial(m, x) for m, x in zip(monos, vec) if x), Poly()) for vec in null
    ]


# ---------------------------------------------------------------------------
# minimal generators of R^{S_4}


@lru_cache(maxsize=None)
def _canonical_exps(e: tuple[int, ...]) -> tuple[int, ...]:
    return min(_permute_exps(e, perm) for perm in _pair_perms())


def _exps_of(m: tuple) -> tuple[int, ...]:
    pos = {v.id: i for i, v in enumerate(PAIR_VARS)}
    e = [0] * 6
    for vid, k in m:
        e[pos[vid]] = k
    return tuple(e)


def _orbit_coords(p: Poly) -> dict:
    """Coefficients of an S_4-invariant at canonical orbit representatives."""
    out = {}
    for m, c in p.terms.items():
        e = _exps_of(m)
        if _canonical_exps(e) == e:
            out[e] = c
    return out


@lru_cache(maxsize=None)
def _orbit_sum_basis(d: int) -> tuple[Poly, ...]:
    reps = sorted({_canonical_exps(e) for e in _monomials_of_degree(6, d)}, reverse=True)
    out = []
    for e in reps:
        orbit = {_permute_exps(e, perm) for perm in _pair_perms()}
        out.append(
            Poly({tuple(sorted((PAIR_VARS[i].id, k) for i, k in enumerate(o) if k)): Fraction(1) for o in orbit})
        )
    return tuple(out)


def s4_min_generator_report(d_max: int = 8) -> list[DegreeReport]:
    """Indecomposable counts of R^{S_4}; witnesses are drawn from the ten generators."""
    gens = list(zip(generator_labels(), ten_generators()))
    by_degree: dict[int, list] = {}
    for label, g in gens:
        by_degree.setdefault(g.degree(), []).append((label, from_xz(g)))
    reports = graded_indecomposables(
        d_max,
        basis=lambda d: _orbit_sum_basis(d),
        coords=lambda p: _orbit_coords(p[1] if isinstance(p, tuple) else p),
        product=lambda a, b: a * b,
        candidates=lambda d: by_degree.get(d, []),
    )
    for rep in reports:
        rep.witnesses = [label for label, _ in rep.witnesses]
    return reports


def is_decomposable(p: Poly) -> bool:
    """Whether a homogeneous invariant (x/z or pair coordinates) lies in (R_+)^2."""
    q = from_xz(p)
    d = q.degree()
    ech = RowEchelon()
    for i in range(1, d // 2 + 1):
        for a in _orbit_sum_basis(i):
            for b in _orbit_sum_basis(d - i):
                ech.add(_orbit_coords(a * b))
    return ech.contains(_orbit_coords(q))


# ---------------------------------------------------------------------------
# graphs on four vertices

Graph4 = frozenset  # of pairs (i, j), i < j


def parse_edges(text: str) -> frozenset:
    """``"12,34"`` -> {(1, 2), (3, 4)}; the empty string is the empty graph."""
    edges = set()
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if len(tok) != 2 or not tok.isdigit():
            raise ValueError(f"bad edge {tok!r}")
        a, b = int(tok[0]), int(tok[1])
        if not (1 <= a <= 4 and 1 <= b <= 4) or a == b:
            raise ValueError(f"bad edge {tok!r}")
        edges.add((min(a, b), max(a, b)))
    return frozenset(edges)


def format_graph(g: frozenset) -> str:
    return ",".join(f"{a}{b}" for a, b in sorted(g))


def all_graphs() -> list[frozenset]:
    out = []
    for k in range(7):
        for sub in combinations(PAIRS, k):
            out.append(frozenset(sub))
    return out


def relabel(sigma: Perm, g: frozenset) -> frozenset:
    return frozenset(_pair_image(sigma, p) for p in g)


@lru_cache(maxsize=None)
def _fingerprint_polys() -> tuple[Poly, ...]:
    return tuple(from_xz(g) for g in nine_generators())


def fingerprint(g: Iterable[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Values of the nine minimal generators at the 0/1 edge indicator of ``g``."""
    edges = {(min(a, b), max(a, b)) for a, b in g}
    point = {pair_var(*p): (1 if p in edges else 0) for p in PAIRS}
    return tuple(f.evaluate(point) for f in _fingerprint_polys())


def _canonical_graph(g: frozenset) -> tuple:
    return min(tuple(sorted(relabel(s, g))) for s in s4_elements())


def isomorphism_classes() -> dict:
    """Partition the 64 labelled graphs by fingerprint and by S_4-orbit."""
    graphs = all_graphs()
    by_fp: dict[tuple, list] = {}
    by_orbit: dict[tuple, list] = {}
    for g in graphs:
        by_fp.setdefault(fingerprint(g), []).append(g)
        by_orbit.setdefault(_canonical_graph(g), []).append(g)
    fp_part = {frozenset(v) for v in by_fp.values()}
    orbit_part = {frozenset(v) for v in by_orbit.values()}
    classes = sorted(by_fp.items(), key=lambda kv: (len(min(kv[1], key=len)), format_graph(min(kv[1], key=lambda g: (len(g), sorted(g))))))
    return {
        "fingerprint_classes": [
            {"fingerprint": fp, "graphs": sorted(gs, key=lambda g: (len(g), sorted(g)))} for fp, gs in classes
        ],
        "orbit_classes": list(by_orbit.values()),
        "equal": fp_part == orbit_part,
        "count": len(fp_part),
    }
