"""Command-line front end: ``multisym <verb> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import s4pairs
from .basedalg import (
    BasedAlgebra,
    algebra_from_descriptor,
    mu_str,
    multiset,
    power_sum,
    to_orbit_basis,
    to_power_product_basis,
)
from .exactmath import Poly, PolySyntaxError, UnknownVariable, as_rat, parse_poly
from .syzygy import (
    fpoly_from_multiset,
    kernel_member,
    min_generator_report,
    normal_form_by_expansion,
    phi,
    psi,
    reduce_long_word,
    rewrite_product,
    t_symbol,
)
from .tracecheck import (
    fundamental_identity,
    gamma_evaluation_check,
    generic_matrices,
    random_rational_matrix,
)

DEFAULT_SEED = 20240501


@dataclass
class Report:
    status: str
    payload: dict
    text: str = ""

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1

    def to_json(self) -> str:
        return json.dumps({"status": self.status, **self.payload}, default=_jsonable, sort_keys=True, indent=2)


def _jsonable(x: Any):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _algebra(args) -> BasedAlgebra:
    try:
        return algebra_from_descriptor(args.algebra)
    except (ValueError, OSError, KeyError) as exc:
        raise UsageError(f"bad --algebra {args.algebra!r}: {exc}") from None


def _words(A: BasedAlgebra, text: str):
    try:
        return [A.parse_word(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fpoly(A: BasedAlgebra, text: str) -> Poly:
    """Parse a polynomial in ``T_<word>`` symbols of ``A``."""
    try:
        p = parse_poly(text)
    except PolySyntaxError as exc:
        raise UsageError(f"syntax error: {exc}") from None
    for v in p.variables():
        if not v.label.startswith("T_"):
            raise UsageError(f"unknown variable {v.label!r}: expected T_<word>")
        try:
            t_symbol(A, A.word_from_label(v.label[2:]))
        except (ValueError, KeyError):
            raise UsageError(f"unknown variable {v.label!r}: {v.label[2:]} is not a basis word") from None
    return p


def _coeff_map(coeffs: dict) -> dict[str, str]:
    return {mu_str(mu): str(c) for mu, c in sorted(coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))}


def _coeff_text(coeffs: dict) -> str:
    if not coeffs:
        return "0"
    return "\n".join(f"  {k}: {v}" for k, v in _coeff_map(coeffs).items())


def _matrices(text: str) -> list:
    path = Path(text)
    raw = path.read_text() if path.exists() else text
    try:
        data = json.loads(raw)
        return [[[as_rat(str(x)) for x in row] for row in M] for M in data]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad matrices: {exc}") from None


# ---------------------------------------------------------------------------
# verbs


def cmd_expand(args) -> Report:
    A = _algebra(args)
    f = _fpoly(A, args.poly)
    t = phi(A, args.n, f)
    orbit = to_orbit_basis(A, args.n, t)
    pp = to_power_product_basis(A, args.n, t)
    payload = {"image": str(t), "orbit_basis": _coeff_map(orbit), "power_product_basis": _coeff_map(pp)}
    text = f"phi(f) = {t}\norbit-sum coordinates:\n{_coeff_text(orbit)}\nbracket-product coordinates:\n{_coeff_text(pp)}"
    return Report("ok", payload, text)


def cmd_psi(args) -> Report:
    A = _algebra(args)
    mu = _words(A, args.words)
    if len(mu) != args.n + 1:
        raise UsageError(f"--words needs exactly n+1 = {args.n + 1} words")
    rel = psi(A, args.n, mu)
    vanishes = not phi(A, args.n, rel)
    return Report(
        "ok" if vanishes else "fail",
        {"multiset": mu_str(multiset(mu)), "psi": str(rel), "phi_vanishes": vanishes},
        f"{rel}\nphi(psi) = 0: {vanishes}",
    )


def cmd_rewrite(args) -> Report:
    A = _algebra(args)
    mu = _words(A, args.words)
    nf = rewrite_product(A, args.n, mu)
    oracle = normal_form_by_expansion(A, args.n, fpoly_from_multiset(A, mu))
    agree = nf == oracle
    return Report(
        "ok" if agree else "fail",
        {"multiset": mu_str(multiset(mu)), "normal_form": _coeff_map(nf), "agrees_with_expansion": agree},
        f"normal form of {mu_str(multiset(mu))}:\n{_coeff_text(nf)}\nagrees with expansion: {agree}",
    )


def cmd_reduce_word(args) -> Report:
    A = _algebra(args)
    factors = _words(A, args.words)
    if len(factors) != args.n + 1:
        raise UsageError(f"--words needs exactly n+1 = {args.n + 1} factors")
    try:
        expr = reduce_long_word(A, args.n, factors)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    (w,) = A.product_of_words(factors).terms
    ok = phi(A, args.n, expr) == power_sum(A, args.n, w)
    return Report(
        "ok" if ok else "fail",
        {"word": w.label, "expression": str(expr), "phi_matches": ok},
        f"T_{w.label} = {expr}\nphi agrees: {ok}",
    )


def cmd_kernel_test(args) -> Report:
    A = _algebra(args)
    f = _fpoly(A, args.poly)
    member = kernel_member(A, args.n, f)
    return Report(
        "ok" if member else "fail",
        {"poly": str(f), "in_kernel": member},
        f"phi(f) = 0: {member}",
    )


def cmd_mingen(args) -> Report:
    A = _algebra(args)
    try:
        reports = min_generator_report(A, args.n, args.max_degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    render = lambda mu: mu_str(mu)
    rows = [r.as_dict(render) for r in reports]
    total = sum(r.indecomposable for r in reports)
    lines = [f"{'deg':>4} {'dim':>6} {'decomp':>7} {'indec':>6}  witnesses"]
    for r in reports:
        lines.append(
            f"{r.degree:>4} {r.dim:>6} {r.decomposable_dim:>7} {r.indecomposable:>6}  "
            + " ".join(render(w) for w in r.witnesses)
        )
    lines.append(f"total indecomposables up to degree {args.max_degree}: {total}")
    return Report("ok", {"degrees": {str(r["degree"]): r for r in rows}, "total": total}, "\n".join(lines))


def cmd_trace_check(args) -> Report:
    n = args.n
    if args.mode == "symbolic":
        if n > 3:
            raise UsageError("symbolic mode is capped at n = 3; use --mode random")
        value = fundamental_identity(n, generic_matrices(n, n + 1))
        ok = not value
        payload = {"n": n, "mode": "symbolic", "zero": ok}
        text = f"fundamental trace identity, n={n}, generic matrices: {'0' if ok else value}"
    else:
        rng = random.Random(args.seed)
        failures = []
        for trial in range(args.trials):
            Y = [random_rational_matrix(n, rng) for _ in range(n + 1)]
            value = fundamental_identity(n, Y)
            if value:
                failures.append({"trial": trial, "value": str(value)})
        ok = not failures
        payload = {"n": n, "mode": "random", "seed": args.seed, "trials": args.trials, "failures": failures}
        text = f"fundamental trace identity, n={n}, {args.trials} random rational tuples (seed {args.seed}): " + (
            "all 0" if ok else f"{len(failures)} nonzero"
        )
    return Report("ok" if ok else "fail", payload, text)


def cmd_gamma_check(args) -> Report:
    A = _algebra(args)
    mats = _matrices(args.matrices)
    if args.poly:
        f = _fpoly(A, args.poly)
    elif args.words:
        mu = _words(A, args.words)
        if len(mu) != args.n + 1:
            raise UsageError(f"--words needs exactly n+1 = {args.n + 1} words")
        f = psi(A, args.n, mu)
    else:
        raise UsageError("give --poly or --words")
    try:
        value = gamma_evaluation_check(A, args.n, mats, f)
    except ValueError as exc:
        return Report("fail", {"error": str(exc)}, str(exc))
    expect_zero = args.expect_zero or (args.words and not args.poly)
    ok = not value if expect_zero else True
    return Report("ok" if ok else "fail", {"poly": str(f), "value": value}, f"gamma value: {value}")


# -- s4 ---------------------------------------------------------------------


def _relation_overrides(path: str | None) -> dict | None:
    if not path:
        return None
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read relations file: {exc}") from None


def cmd_s4_verify(args) -> Report:
    try:
        rels = s4pairs.relation_generators(_relation_overrides(args.relations_file))
    except (KeyError, ValueError, PolySyntaxError, UnknownVariable) as exc:
        raise UsageError(str(exc)) from None
    results = {}
    for r in rels:
        results[r.name] = {"degree": r.degree, "image": str(s4pairs.phi_s4(r.poly))}
    by_name = {r.name: r.poly for r in rels}
    checks = {
        "J23_is_swap_of_J32": s4pairs.swap_xy(by_name["J32"]) == by_name["J23"],
        "J33_swap_fixed": s4pairs.swap_xy(by_name["J33"]) == by_name["J33"],
        "J24_is_swap_of_J42": s4pairs.swap_xy(by_name["J42"]) == by_name["J24"],
    }
    for name in ("J32", "J23", "J42", "J33", "J24"):
        checks[f"{name}_bihomogeneous"] = len(s4pairs.bidegree(by_name[name])) == 1
    tilde = {}
    for r in rels:
        if r.name != "S2":
            tilde[r.name + "~"] = str(s4pairs.phi_s4(s4pairs.substitute_ty3(r.poly)))
    ok = all(v["image"] == "0" for v in results.values()) and all(checks.values()) and all(
        v == "0" for v in tilde.values()
    )
    lines = [f"{name:>4} (degree {v['degree']:>2}): phi = {v['image']}" for name, v in results.items()]
    lines += [f"{name:>5}: phi = {v}" for name, v in tilde.items()]
    lines += [f"{k}: {v}" for k, v in checks.items()]
    return Report(
        "ok" if ok else "fail",
        {"relations": results, "substituted": tilde, "transcription_checks": checks},
        "\n".join(lines),
    )


def cmd_s4_kernel(args) -> Report:
    rows = s4pairs.kernel_report(args.max_degree)
    ok = all(r.match for r in rows) and all(all(r.minimality.values()) for r in rows)
    lines = [f"{'deg':>4} {'monos':>6} {'rank':>5} {'ker':>5} {'ideal':>6}  match  minimal"]
    for r in rows:
        mins = " ".join(f"{k}:{'yes' if v else 'NO'}" for k, v in r.minimality.items())
        lines.append(f"{r.degree:>4} {r.monomials:>6} {r.image_rank:>5} {r.kernel_dim:>5} {r.ideal_dim:>6}  {str(r.match):5}  {mins}")
    return Report("ok" if ok else "fail", {"degrees": {str(r.degree): r.as_dict() for r in rows}}, "\n".join(lines))


def cmd_s4_mingen(args) -> Report:
    reports = s4pairs.s4_min_generator_report(args.max_degree)
    counts = [r.indecomposable for r in reports]
    lines = [f"{'deg':>4} {'dim':>5} {'decomp':>7} {'indec':>6}  witnesses"]
    for r in reports:
        lines.append(f"{r.degree:>4} {r.dim:>5} {r.decomposable_dim:>7} {r.indecomposable:>6}  {' '.join(r.witnesses)}")
    lines.append(f"total: {sum(counts)}")
    return Report("ok", {"degrees": {str(r.degree): r.as_dict() for r in reports}, "total": sum(counts)}, "\n".join(lines))


def cmd_s4_fingerprint(args) -> Report:
    try:
        g = s4pairs.parse_edges(args.edges)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fp = s4pairs.fingerprint(g)
    labels = s4pairs.generator_labels(nine=True)
    return Report(
        "ok",
        {"graph": s4pairs.format_graph(g), "fingerprint": list(fp), "labels": labels},
        "\n".join(f"{lab:>8} = {v}" for lab, v in zip(labels, fp)),
    )


def cmd_s4_graphs(args) -> Report:
    res = s4pairs.isomorphism_classes()
    classes = {}
    lines = []
    for i, c in enumerate(res["fingerprint_classes"]):
        graphs = [s4pairs.format_graph(g) or "-" for g in c["graphs"]]
        classes[str(i)] = {"fingerprint": list(c["fingerprint"]), "graphs": graphs}
        lines.append(f"class {i:>2} ({len(graphs):>2} graphs) fp=({', '.join(map(str, c['fingerprint']))})  e.g. {graphs[0]}")
    lines.append(f"classes: {res['count']}; fingerprint partition equals orbit partition: {res['equal']}")
    return Report(
        "ok" if res["equal"] else "fail",
        {"classes": classes, "count": res["count"], "equal": res["equal"]},
        "\n".join(lines),
    )


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", help="also write the report to this file")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--algebra", default="poly:2", help="poly:m | veronese:m:q | table:<path>")
    alg.add_argument("--n", type=int, required=True, help="tensor power")

    parser = argparse.ArgumentParser(prog="multisym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("expand", parents=[common, alg], help="expand an F-polynomial in T^n(A)")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("psi", parents=[common, alg], help="relation of a multiset of n+1 words")
    p.add_argument("--words", required=True, help='comma-separated words, e.g. "x,x,y"')
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("rewrite", parents=[common, alg], help="normal form of a bracket product")
    p.add_argument("--words", required=True)
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("reduce-word", parents=[common, alg], help="T of a product of n+1 words via shorter words")
    p.add_argument("--words", required=True)
    p.set_defaults(func=cmd_reduce_word)

    p = sub.add_parser("kernel-test", parents=[common, alg], help="does phi(f) vanish?")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_kernel_test)

    p = sub.add_parser("mingen", parents=[common, alg], help="indecomposables per degree")
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_mingen)

    p = sub.add_parser("trace-check", parents=[common], help="fundamental trace identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("symbolic", "random"), default="symbolic")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_trace_check)

    p = sub.add_parser("gamma-check", parents=[common, alg], help="evaluate at commuting matrices")
    p.add_argument("--matrices", required=True, help="JSON list of matrices of rational strings, or a file")
    p.add_argument("--poly")
    p.add_argument("--words", help="evaluate the relation of these n+1 words (must vanish)")
    p.add_argument("--expect-zero", action="store_true")
    p.set_defaults(func=cmd_gamma_check)

    s4 = sub.add_parser("s4", help="S_4 acting on pairs of {1,2,3,4}")
    s4sub = s4.add_subparsers(dest="s4verb", required=True)
    p = s4sub.add_parser("verify-relations", parents=[common])
    p.add_argument("--relations-file", help="JSON {name: polynomial} overriding built-in relations")
    p.set_defaults(func=cmd_s4_verify)
    p = s4sub.add_parser("kernel", parents=[common])
    p.add_argument("--max-degree", type=int, default=10)
    p.set_defaults(func=cmd_s4_kernel)
    p = s4sub.add_parser("mingen", parents=[common])
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(func=cmd_s4_mingen)
    p = s4sub.add_parser("fingerprint", parents=[common])
    p.add_argument("--edges", required=True, help='e.g. "12,34"')
    p.set_defaults(func=cmd_s4_fingerprint)
    p = s4sub.add_parser("graphs", parents=[common])
    p.set_defaults(func=cmd_s4_graphs)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[Report, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    return args.func(args), args


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.exit(2, f"multisym: error: {exc}\n")
    out = report.to_json() if args.json else (report.text + ("\n" if report.text else "") + f"status: {report.status}")
    print(out)
    if args.out:
        Path(args.out).write_text(out + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
