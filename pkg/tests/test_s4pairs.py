from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multisym.exactmath import Poly, parse_poly
from multisym.tracecheck import Perm
from multisym.s4pairs import (
    PAIR_VARS,
    all_graphs,
    bidegree,
    nine_symbol_presentation,
    double_transpositions,
    fingerprint,
    from_xz,
    generator_labels,
    invariant_dim,
    is_decomposable,
    isomorphism_classes,
    kernel_basis,
    kernel_report,
    nine_generators,
    pair_var,
    parse_edges,
    phi_s4,
    relabel,
    relation_generators,
    s4_act,
    s4_elements,
    s4_min_generator_report,
    substitute_ty3,
    swap_xy,
    symbols,
    symmetrized_rank,
    ten_generators,
    to_xz,
    xz_vars,
    z_product,
)

XS, ZS = xz_vars()
x = [Poly.gen(v) for v in XS]
z = [Poly.gen(v) for v in ZS]
P = {f"{i}{j}": Poly.gen(pair_var(i, j)) for i in range(1, 5) for j in range(i + 1, 5)}
SYM = symbols()


def T(text):
    return parse_poly(text, SYM)


# -- coordinates and the action ---------------------------------------------


def test_to_xz_examples():
    assert to_xz(P["12"]) == (x[0] + z[0]) * Fraction(1, 2)
    assert from_xz(x[0] + x[1] + x[2]) == sum(P.values(), Poly())
    assert not to_xz(Poly())


def test_action_examples():
    s12 = Perm.from_cycles(4, [(1, 2)])
    assert s4_act(s12, P["13"]) == P["23"]
    d = Perm.from_cycles(4, [(1, 2), (3, 4)])
    assert s4_act(d, z[0]) == z[0]
    assert s4_act(d, z[1]) == -z[1]
    for sigma in s4_elements():
        assert s4_act(sigma, z_product()) == z_product()


def test_generator_examples():
    gens = dict(zip(generator_labels(), ten_generators()))
    assert gens["[x]"] == x[0] + x[1] + x[2]
    assert gens["[xz^2]"] == x[0] * z[0] ** 2 + x[1] * z[1] ** 2 + x[2] * z[2] ** 2
    assert gens["z1z2z3"] == z_product()
    assert len(nine_generators()) == 9 and "[z^6]" not in generator_labels(nine=True)


def test_generators_are_invariant():
    for g in ten_generators():
        for sigma in s4_elements():
            assert s4_act(sigma, g) == g


# -- the presentation -------------------------------------------------------


def test_phi_examples():
    assert phi_s4(T("T_y")) == z[0] ** 2 + z[1] ** 2 + z[2] ** 2
    assert not phi_s4(T("S^2 - 1/3*T_y3 + 1/2*T_y2*T_y - 1/6*T_y^3"))
    assert phi_s4(Poly.const(1)) == Poly.const(1)


def test_relation_degrees_and_vanishing():
    rels = relation_generators()
    assert [r.name for r in rels] == ["S2", "J32", "J23", "J42", "J33", "J24"]
    assert [r.degree for r in rels] == [6, 7, 8, 8, 9, 10]
    for r in rels:
        assert not phi_s4(r.poly), r.name


def test_transcription_checks():
    r = {rel.name: rel.poly for rel in relation_generators()}
    assert swap_xy(r["J32"]) == r["J23"]
    assert swap_xy(r["J42"]) == r["J24"]
    assert swap_xy(r["J33"]) == r["J33"]
    expected = {"J32": (3, 2), "J23": (2, 3), "J42": (4, 2), "J33": (3, 3), "J24": (2, 4)}
    for name, bd in expected.items():
        assert bidegree(r[name]) == {bd}
    with pytest.raises(ValueError):
        bidegree(r["S2"])


def test_ty3_substitution():
    assert substitute_ty3(T("T_y3")) == T("3*S^2 + 3/2*T_y2*T_y - 1/2*T_y^3")
    nine, rels = nine_symbol_presentation()
    assert len(nine) == 9 and SYM["T_y3"] not in nine
    assert [r.degree for r in rels] == [7, 8, 8, 9, 10]
    for r in rels:
        assert SYM["T_y3"] not in r.poly.variables()
        assert not phi_s4(r.poly)


def test_corrupted_relation_is_caught():
    (bad,) = [r for r in relation_generators({"J32": "6*T_x2y*T_xy - 3*T_xy2*T_x2"}) if r.name == "J32"]
    assert phi_s4(bad.poly)
    with pytest.raises(KeyError):
        relation_generators({"J99": "T_x"})


# -- dimensions and kernel --------------------------------------------------


def brute_orbit_count(d):
    """Oracle: count S_4-orbits of degree-d monomials by explicit orbit closure."""
    monos = set(combinations_with_replacement(range(6), d))
    index_of = {v.id: i for i, v in enumerate(PAIR_VARS)}
    perms = []
    for sigma in s4_elements():
        img = []
        for v in PAIR_VARS:
            (m,) = s4_act(sigma, Poly.gen(v)).terms
            ((vid, _),) = m
            img.append(index_of[vid])
        perms.append(img)
    seen, orbits = set(), 0
    for m in monos:
        if m in seen:
            continue
        orbits += 1
        for img in perms:
            seen.add(tuple(sorted(img[i] for i in m)))
    return orbits


def test_invariant_dim_examples():
    assert [invariant_dim(d) for d in range(3)] == [1, 1, 3]


@pytest.mark.parametrize("d", range(0, 6))
def test_invariant_dim_matches_orbit_enumeration(d):
    assert invariant_dim(d) == brute_orbit_count(d) == symmetrized_rank(d)


def test_kernel_small_degrees():
    rows = {r.degree: r for r in kernel_report(7)}
    assert rows[5].kernel_dim == 0
    assert rows[6].kernel_dim == 1 and rows[6].match
    assert rows[7].match and rows[7].kernel_dim == rows[7].ideal_dim
    (k6,) = kernel_basis(6)
    s2 = relation_generators()[0].poly
    lead = next(iter(s2.terms))
    assert k6 * (s2.terms[lead] / k6.terms[lead]) == s2


def test_kernel_report_schema():
    row = kernel_report(6)[-1].as_dict()
    assert {"kernel_dim", "ideal_dim", "match"} <= set(row)


def test_mingen_profile():
    reps = s4_min_generator_report(6)
    assert [r.indecomposable for r in reps[1:]] == [1, 2, 3, 2, 1, 0]
    assert "[z^6]" not in reps[6].witnesses


def test_z6_is_decomposable():
    gens = dict(zip(generator_labels(), ten_generators()))
    assert is_decomposable(gens["[z^6]"])
    assert not is_decomposable(gens["[xz^4]"])


# -- graphs -----------------------------------------------------------------


def test_parse_edges():
    assert parse_edges("12,34") == frozenset({(1, 2), (3, 4)})
    assert parse_edges("21") == frozenset({(1, 2)})
    assert parse_edges("") == frozenset()
    for bad in ("15", "11", "1", "ab"):
        with pytest.raises(ValueError):
            parse_edges(bad)


def test_fingerprint_examples():
    assert fingerprint(frozenset()) == (0,) * 9
    k4 = parse_edges("12,13,14,23,24,34")
    assert fingerprint(k4) == (6, 12, 24, 0, 0, 0, 0, 0, 0)
    assert fingerprint(parse_edges("12")) == (1, 1, 1, 1, 1, 1, 1, 1, 0)


def test_isomorphism_classes():
    res = isomorphism_classes()
    assert len(all_graphs()) == 64
    assert res["count"] == 11 and res["equal"]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(all_graphs()), st.sampled_from(s4_elements()))
def test_fingerprint_relabeling_invariant(g, sigma):
    assert fingerprint(relabel(sigma, g)) == fingerprint(g)


# -- properties -------------------------------------------------------------

pair_polys = st.lists(
    st.tuples(st.dictionaries(st.sampled_from(PAIR_VARS), st.integers(1, 2), max_size=3), st.integers(-4, 4)),
    max_size=4,
).map(lambda ts: sum((Poly.monomial(m, c) for m, c in ts), Poly()))


@settings(max_examples=40, deadline=None)
@given(pair_polys)
def test_xz_round_trip(p):
    assert from_xz(to_xz(p)) == p


@settings(max_examples=30, deadline=None)
@given(pair_polys, st.sampled_from(s4_elements()), st.sampled_from(s4_elements()))
def test_group_action(p, a, b):
    assert s4_act(a, s4_act(b, p)) == s4_act(a * b, p)
    assert to_xz(s4_act(a, p)) == s4_act(a, to_xz(p))


def test_double_transpositions_flip_two_z():
    # the Klein four-group fixes every x_i and negates exactly two z_i
    for d in double_transpositions():
        assert all(s4_act(d, xi) == xi for xi in x)
        assert sorted(s4_act(d, zi) == zi for zi in z) == [False, False, True]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["J32", "J23", "J42", "J33", "J24"]))
def test_relation_is_homogeneous(name):
    (r,) = [rel for rel in relation_generators() if rel.name == name]
    assert phi_s4(r.poly).is_homogeneous()
    assert swap_xy(swap_xy(r.poly)) == r.poly
