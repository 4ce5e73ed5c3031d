"""Command-line front end.

Input is a JSON collection document::

    {"field": "rational" | {"prime": p},
     "num_vars": 3,
     "forms": [{"coeffs": [1, 0, 0], "multiplicity": 2, "label": "x"}, ...]}

Coefficients are integers or rational strings such as ``"1/2"``.  Every
command writes one JSON report (or a CSV table with ``--format csv``) whose
bytes depend only on the input and the tool version.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .betti import (
    NotEquigeneratedError,
    UncertifiedTableError,
    is_linear_resolution,
    koszul_tor_dims,
    regularity,
)
from .decomp import (
    component_irredundancy,
    cor24_decomposition,
    lemma21_components,
    min_codim,
    verify_cor24,
    verify_lemma21,
    verify_prop22,
    _nu_decomposition,
)
from .fold import expand_product, fold_generators
from .graded import is_equigenerated, min_gen_degrees
from .linalg import DEFAULT_PRIME, QQ, PrimeField
from .sigma import (
    FormCollection,
    NonGenericSupportError,
    build_collection,
    code_profile,
    is_generic_support,
    rank_of,
    reembed,
)
from .star import (
    MonomialStarModel,
    StarConfig,
    phi_transfer_check,
    resurgence_search,
    symbolic_power_piece,
    verify_ghm,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3


class SpecError(ValueError):
    """Malformed collection document; the message names the offending field."""


# ---------------------------------------------------------------------------
# input


def parse_field(value) -> Any:
    if value is None or value == "rational":
        return QQ
    if isinstance(value, dict):
        if set(value) != {"prime"}:
            raise SpecError('field: expected "rational" or {"prime": p}')
        try:
            return PrimeField(int(value["prime"]))
        except (TypeError, ValueError) as exc:
            raise SpecError(f"field.prime: {exc}") from None
    if isinstance(value, str) and value.startswith("prime"):
        _, _, p = value.partition(":")
        try:
            return PrimeField(int(p) if p else DEFAULT_PRIME)
        except ValueError as exc:
            raise SpecError(f"field: {exc}") from None
    raise SpecError(f'field: expected "rational" or {{"prime": p}}, got {value!r}')


def _scalar(x, where: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise SpecError(f"{where}: expected an integer or a rational string, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"{where}: cannot parse {x!r} as a rational") from None
    raise SpecError(f"{where}: expected an integer or a rational string, got {x!r}")


def parse_collection(text: str, field_override=None) -> FormCollection:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecError("top level: expected an object")
    unknown = set(doc) - {"field", "num_vars", "forms", "labels"}
    if unknown:
        raise SpecError(f"top level: unknown keys {sorted(unknown)}")
    field = field_override if field_override is not None else parse_field(doc.get("field"))
    nv = doc.get("num_vars")
    if not isinstance(nv, int) or isinstance(nv, bool) or nv < 1:
        raise SpecError("num_vars: expected a positive integer")
    forms = doc.get("forms")
    if not isinstance(forms, list) or not forms:
        raise SpecError("forms: expected a non-empty list")
    items, labels = [], []
    for k, f in enumerate(forms):
        where = f"forms[{k}]"
        if not isinstance(f, dict):
            raise SpecError(f"{where}: expected an object")
        coeffs = f.get("coeffs")
        if not isinstance(coeffs, list) or len(coeffs) != nv:
            raise SpecError(f"{where}.coeffs: expected a list of {nv} entries")
        vals = [_scalar(c, f"{where}.coeffs[{i}]") for i, c in enumerate(coeffs)]
        mult = f.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise SpecError(f"{where}.multiplicity: expected an integer >= 1")
        try:
            field.coerce(vals[0])
            if not any(field.coerce(v) for v in vals):
                raise SpecError(f"{where}.coeffs: the zero form is not allowed")
        except ZeroDivisionError as exc:
            raise SpecError(f"{where}.coeffs: {exc}") from None
        items.append((vals, mult))
        labels.append(f.get("label", f"l{k + 1}"))
    try:
        sigma = build_collection(items, field)
    except ValueError as exc:
        raise SpecError(f"forms: {exc}") from None
    if len(sigma.forms) == len(labels):
        sigma = FormCollection(sigma.forms, sigma.multiplicities, field, tuple(labels))
    return sigma


# ---------------------------------------------------------------------------
# report helpers


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _poly_str(poly: dict) -> str:
    nv = len(next(iter(poly)))
    names = ["x", "y", "z", "w"][:nv] if nv <= 4 else [f"x{i}" for i in range(nv)]
    terms = []
    for e in sorted(poly, key=lambda e: e[::-1]):
        c = poly[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms).replace("+-", "-")


class Report:
    def __init__(self, command: str, params: dict):
        self.command = command
        self.params = params
        self.results: dict = {}
        self.provenance: dict = {"tool_version": __version__}
        self.verdicts: dict = {}
        self.tables: dict = {}

    def verdict(self, name: str, ok: bool, hypothesis_ok: bool = True):
        if not hypothesis_ok:
            self.verdicts[name] = "pass (hypothesis violated)" if ok else "hypothesis violated"
        else:
            self.verdicts[name] = "pass" if ok else "fail"

    @property
    def status(self) -> str:
        vals = self.verdicts.values()
        if any(v == "fail" for v in vals):
            return "verification failed"
        if any("hypothesis violated" in v for v in vals):
            return "hypothesis violated"
        return "ok"

    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "verification failed": EXIT_VERIFICATION_FAILED,
                "hypothesis violated": EXIT_HYPOTHESIS}[self.status]

    def to_dict(self) -> dict:
        return _jsonable({
            "command": self.command,
            "parameters": self.params,
            "results": self.results,
            "provenance": self.provenance,
            "verdicts": self.verdicts,
            "status": self.status,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for name in sorted(self.tables):
            header, rows = self.tables[name]
            w.writerow([f"# {name}"])
            w.writerow(header)
            for r in rows:
                w.writerow([_jsonable(x) for x in r])
        return buf.getvalue()


def _collection_provenance(rep: Report, sigma: FormCollection):
    generic = is_generic_support(sigma)
    rep.provenance.update({
        "field": sigma.field.describe(),
        "generic_support": generic,
        "rank": rank_of(sigma),
        "num_vars": sigma.num_vars,
        "N": sigma.N,
        "s": sigma.s,
    })
    if rank_of(sigma) < sigma.num_vars:
        _, piv = reembed(sigma)
        rep.provenance["projection_pivots"] = list(piv)
    return generic


def _degree_bound(rep: Report, user: int | None, default: int) -> int:
    if user is None:
        rep.provenance.update({"degree_bound": default, "degree_bound_source": "default"})
        return default
    rep.provenance.update({"degree_bound": user, "degree_bound_source": "user",
                           "default_degree_bound": default})
    if user < default:
        rep.provenance["degree_bound_note"] = (
            "user bound is below the default; equalities are verified only in degrees <= bound")
    return user


def _betti_rows(table) -> list:
    return [[i, j, j - i, b] for i, j, b in table.nonzero()]


# ---------------------------------------------------------------------------
# commands


def cmd_gens(sigma: FormCollection, a: int, D: int | None = None) -> Report:
    rep = Report("gens", {"a": a, "collection": sigma.describe()})
    _collection_provenance(rep, sigma)
    I = fold_generators(sigma, a)
    bound = _degree_bound(rep, D, a + sigma.n + 2)
    gens = [{"exponents": list(t), "degree": a, "poly": _poly_str(expand_product(sigma, t))}
            for t in I.gens]
    counts = min_gen_degrees(I.generator_set, bound) if I.gens or a == 0 else {}
    rep.results = {"num_generators": len(I.gens), "generators": gens,
                   "min_gen_degrees": counts, "equigenerated": is_equigenerated(counts)}
    rep.tables["generators"] = (["index"] + [f"t{i + 1}" for i in range(sigma.s)],
                                [[k] + list(t) for k, t in enumerate(I.gens)])
    rep.tables["min_gen_degrees"] = (["degree", "count"], sorted(counts.items()))
    return rep


def cmd_decompose(sigma: FormCollection, a: int, D: int | None = None) -> Report:
    rep = Report("decompose", {"a": a, "collection": sigma.describe()})
    generic = _collection_provenance(rep, sigma)
    if not 1 <= a <= sigma.N:
        raise SpecError(f"a: need 1 <= a <= N = {sigma.N}")
    bound = _degree_bound(rep, D, a + sigma.n + 2)
    decomp = _nu_decomposition(sigma, a)
    rep.results["components"] = decomp.describe()
    rep.results["lemma21_components"] = lemma21_components(sigma, a).describe()
    rep.results["min_component_codim"] = min_codim(decomp)
    rep.verdict("lemma21", verify_lemma21(sigma, a, bound))
    rep.verdict("prop22", verify_prop22(sigma, a, bound, check_hypothesis=False), generic)
    rep.verdict("cor24", verify_cor24(sigma, a, bound, check_hypothesis=False), generic)
    if generic:
        # reported, not asserted: M and non-minimal primes can be redundant
        rep.results["irredundant"] = component_irredundancy(decomp, bound)
    table = koszul_tor_dims(fold_generators(sigma, a).generator_set, sigma.num_vars, bound)
    try:
        reg = regularity(table)
        rep.provenance["regularity_of_quotient"] = reg
        rep.provenance["bound_covers_regularity"] = bound >= reg + 2
    except UncertifiedTableError:
        rep.provenance["regularity_of_quotient"] = None
        rep.provenance["bound_covers_regularity"] = False
    rep.tables["components"] = (
        ["support_indices", "codim", "exponent", "maximal"],
        [[" ".join(map(str, c["support_indices"])), c["codim"], c["exponent"], c["maximal"]]
         for c in decomp.describe()])
    return rep


def cmd_betti(sigma: FormCollection, a: int, D: int | None = None) -> Report:
    rep = Report("betti", {"a": a, "collection": sigma.describe()})
    generic = _collection_provenance(rep, sigma)
    bound = _degree_bound(rep, D, a + sigma.n + 2)
    gens = fold_generators(sigma, a).generator_set
    v = is_linear_resolution(gens, a, bound)
    rep.results = {
        "betti": {"entries": _betti_rows(v.table), "layout": v.table.layout(),
                  "i_max": v.table.i_max, "D": v.table.D},
        "regularity": v.regularity,
        "is_linear": v.is_linear,
        "certified_range": list(v.certified_range),
        "saturation_consistent": v.saturation_consistent,
        "euler_characteristic_ok": v.table.euler_ok,
    }
    rep.verdict("linear_resolution", v.is_linear, generic)
    rep.verdict("saturation_consistency", v.saturation_consistent)
    rep.tables["betti"] = (["i", "j", "j_minus_i", "beta"], _betti_rows(v.table))
    return rep


def cmd_ghw(sigma: FormCollection) -> Report:
    rep = Report("ghw", {"collection": sigma.describe()})
    generic = _collection_provenance(rep, sigma)
    prof = code_profile(sigma)
    rep.results = {
        "generator_matrix": [list(r) for r in prof.generator_matrix.rows],
        "weights": list(prof.weights),
        "height_profile": prof.height_profile,
    }
    if generic:
        via = {a: min_codim(cor24_decomposition(sigma, a)) for a in range(1, sigma.N + 1)}
        rep.results["height_from_decomposition"] = via
        rep.verdict("height_consistency", via == prof.height_profile)
    rep.tables["weights"] = (["r", "d_r"], [[r + 1, w] for r, w in enumerate(prof.weights)])
    rep.tables["heights"] = (["a", "height"], sorted(prof.height_profile.items()))
    return rep


def cmd_star(sigma: FormCollection, c: int, m: int, D: int | None = None) -> Report:
    rep = Report("star", {"c": c, "m": m, "collection": sigma.describe()})
    _collection_provenance(rep, sigma)
    try:
        A = StarConfig(sigma, c)
    except NonGenericSupportError:
        rep.verdict("ghm", False, hypothesis_ok=False)
        return rep
    bound = _degree_bound(rep, D, m * A.fold + 4)
    ghm = verify_ghm(A, m, bound, report=True)
    rep.results = {
        "star_generators": [list(t) for t in fold_generators(sigma, A.fold).gens],
        "generator_degree": A.fold,
        "symbolic_power_dims": {d: symbolic_power_piece(A, m, d).dim for d in range(bound + 1)},
        "ordinary_power_dims": {d: v[0] for d, v in ghm.dims.items()},
        "ghm_rhs_dims": {d: v[1] for d, v in ghm.dims.items()},
        "ghm_degreewise": ghm.ordinary_equals_rhs,
        "star_is_intersection": ghm.star_equals_intersection,
        "matches_saturation_formula": ghm.matches_saturation_formula,
    }
    rep.verdict("ghm", ghm.ok)
    rep.tables["dims"] = (["d", "ordinary", "ghm_rhs", "symbolic", "equal"],
                          [[d, ghm.dims[d][0], ghm.dims[d][1],
                            rep.results["symbolic_power_dims"][d], ghm.ordinary_equals_rhs[d]]
                           for d in range(bound + 1)])
    return rep


def cmd_resurgence(s: int, c: int, m_max: int, r_max: int,
                   sigma: FormCollection | None = None, phi_bound: int = 2,
                   D: int | None = None) -> Report:
    params = {"s": s, "c": c, "m_max": m_max, "r_max": r_max}
    if sigma is not None:
        params["collection"] = sigma.describe()
        params["phi_bound"] = phi_bound
    rep = Report("resurgence", params)
    model = MonomialStarModel(s, c)
    res = resurgence_search(model, m_max, r_max)
    rows = [[m, r, Fraction(m, r), ok] for (m, r), ok in sorted(res.table.items())]
    rep.results = {
        "formula": res.formula,
        "max_failing_ratio": res.max_failing_ratio,
        "closest_failures": [list(p) for p in res.closest_failures],
        "interval": list(res.interval),
        "table": [[m, r, ok] for m, r, _, ok in rows],
        "witnesses": {f"{m},{r}": list(t) for (m, r), t in sorted(res.witnesses.items())},
    }
    rep.verdict("no_failure_at_or_above_formula", res.no_failure_at_or_above_formula)
    rep.verdict("failure_within_1_over_r_max", res.failure_within_gap)
    rep.verdict("failures_below_crude_bound", res.all_failures_below_crude_bound)
    rep.tables["containment"] = (["m", "r", "ratio", "contained"], rows)
    if sigma is not None:
        _collection_provenance(rep, sigma)
        if sigma.s != s:
            raise SpecError(f"collection has {sigma.s} forms but s = {s}")
        try:
            A = StarConfig(sigma, c)
        except NonGenericSupportError:
            rep.verdict("phi_transfer", False, hypothesis_ok=False)
            return rep
        cells = []
        for m in range(1, phi_bound + 1):
            for r in range(1, phi_bound + 1):
                bound = D if D is not None else A.fold * r + 4
                pr = phi_transfer_check(A, m, r, bound, report=True)
                cells.append({"m": m, "r": r, "D": bound, "monomial": pr.monomial_contained,
                              "generic": pr.generic_contained, "certified": pr.certified,
                              "phi_images_in_symbolic": pr.phi_images_in_symbolic})
        rep.results["phi_transfer"] = cells
        rep.verdict("phi_transfer", all(c["monomial"] == c["generic"] and c["phi_images_in_symbolic"]
                                        for c in cells))
    return rep


# ---------------------------------------------------------------------------
# entry point


def _read_spec(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None,
                        help='override the document field: "rational" or "prime:P"')
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--check", action="store_true",
                        help="exit 1 on failed verifications, 3 on violated hypotheses")
    common.add_argument("--degree-bound", type=int, default=None, dest="degree_bound")

    p = argparse.ArgumentParser(prog="foldideals",
                                description="Exact checks for ideals of a-fold products of linear forms.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("gens", "generators and minimal generator degrees of I_a"),
                           ("decompose", "primary decomposition and its degreewise checks"),
                           ("betti", "Betti table, regularity and linear-resolution verdict")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("spec", nargs="?", default="-", help="collection JSON file, or - for stdin")
        sp.add_argument("-a", type=int, required=True)

    sp = sub.add_parser("ghw", parents=[common], help="generalized Hamming weights and heights")
    sp.add_argument("spec", nargs="?", default="-")

    sp = sub.add_parser("star", parents=[common], help="star configuration powers and the GHM check")
    sp.add_argument("spec", nargs="?", default="-")
    sp.add_argument("-c", type=int, required=True)
    sp.add_argument("-m", type=int, default=1)

    sp = sub.add_parser("resurgence", parents=[common], help="monomial-model containment table")
    sp.add_argument("-s", type=int, required=True)
    sp.add_argument("-c", type=int, required=True)
    sp.add_argument("--m-max", type=int, required=True, dest="m_max")
    sp.add_argument("--r-max", type=int, required=True, dest="r_max")
    sp.add_argument("--spec", default=None, help="generic arrangement for the transfer check")
    sp.add_argument("--phi-bound", type=int, default=2, dest="phi_bound")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        override = parse_field(args.field) if args.field is not None else None
        if args.command == "resurgence":
            sigma = parse_collection(_read_spec(args.spec), override) if args.spec else None
            rep = cmd_resurgence(args.s, args.c, args.m_max, args.r_max, sigma,
                                 args.phi_bound, args.degree_bound)
        else:
            sigma = parse_collection(_read_spec(args.spec), override)
            if args.command == "gens":
                rep = cmd_gens(sigma, args.a, args.degree_bound)
            elif args.command == "decompose":
                rep = cmd_decompose(sigma, args.a, args.degree_bound)
            elif args.command == "betti":
                rep = cmd_betti(sigma, args.a, args.degree_bound)
            elif args.command == "ghw":
                rep = cmd_ghw(sigma)
            else:
                rep = cmd_star(sigma, args.c, args.m, args.degree_bound)
    except (SpecError, OSError) as exc:
        print(json.dumps({"command": args.command, "error": str(exc), "status": "parse error"},
                         sort_keys=True), file=sys.stderr)
        return EXIT_USAGE
    except NotEquigeneratedError as exc:
        print(json.dumps({"command": args.command, "error": str(exc), "status": "precondition"},
                         sort_keys=True), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(json.dumps({"command": args.command, "error": str(exc), "status": "invalid parameters"},
                         sort_keys=True), file=sys.stderr)
        return EXIT_USAGE
    stdout.write(rep.to_csv() if args.format == "csv" else rep.to_json())
    return rep.exit_code() if args.check else EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
