"""Command-line driver: generation, verification suites, reporting.

Every command renders its results as a flat list of report rows with stable
check ids, so runs can be diffed, archived, or parsed by CI.  Text output is
for humans; --json emits a deterministic array (modulo the wall-clock
runtime_ms field), and --out appends the same rows as JSON lines.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import gauss_sum
from .group import GroupElement, psl_group, sl13_auxiliary, weil_generators
from .locus import generate_ideal, kappa_point
from .mpoly import RepMatrix, poly_rank
from .qtheta import (
    fricke_check,
    s_transformation_residual,
    sample_locus,
    verify_modular_equation,
    z_family_report,
)
from .rep import (
    character_table,
    decompose,
    hecke_genus,
    hecke_multiplicity,
    isotypic_projector,
    projector_rank,
    span_rep,
    trace_pair,
    verify_paper_bases,
)

CURVE_LEVELS = (7, 11, 13)
SERIES_LEVELS = (2, 3, 5, 7, 13)
FRICKE_TAU = 0.3 + 1.7j

_FIELDS = ("check_id", "p", "status", "details", "residual", "runtime_ms")


@dataclass
class VerificationReport:
    check_id: str
    p: int | None
    status: str  # pass / fail / skipped
    details: str
    residual: float | None
    runtime_ms: int

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in _FIELDS}

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        return cls(**{name: data[name] for name in _FIELDS})


def emit_report(rows, format: str = "text") -> bytes:
    rows = sorted(rows, key=lambda r: r.check_id)
    if format == "json":
        return (json.dumps([r.to_json() for r in rows]) + "\n").encode()
    if not rows:
        return b"no checks selected\n"
    width = max(len(r.check_id) for r in rows)
    lines = []
    for r in rows:
        tail = "" if r.residual is None else f"  [residual {r.residual:.3e}]"
        lines.append(
            f"{r.status.upper():7s} {r.check_id:{width}s}  {r.details}{tail}  ({r.runtime_ms} ms)"
        )
    counts = {s: sum(1 for r in rows if r.status == s) for s in ("pass", "fail", "skipped")}
    lines.append(
        f"{len(rows)} checks: {counts['pass']} passed, {counts['fail']} failed, "
        f"{counts['skipped']} skipped"
    )
    return ("\n".join(lines) + "\n").encode()


def parse_report(data: bytes) -> list:
    return [VerificationReport.from_json(row) for row in json.loads(data)]


class CheckFailure(Exception):
    """A mathematical statement came out false (reported, not raised further)."""


def _run_check(check_id: str, p, fn) -> VerificationReport:
    start = time.monotonic()
    residual = None
    try:
        outcome = fn()
        if isinstance(outcome, tuple):
            details, residual = outcome
        else:
            details = outcome
        status = "pass"
    except CheckFailure as exc:
        details, status = str(exc), "fail"
        if getattr(exc, "residual", None) is not None:
            residual = exc.residual
    ms = int((time.monotonic() - start) * 1000)
    return VerificationReport(check_id, p, status, details, residual, ms)


def _skip(check_id: str, p, why: str) -> VerificationReport:
    return VerificationReport(check_id, p, "skipped", why, None, 0)


def _require(condition: bool, claim: str, residual: float | None = None) -> str:
    if not condition:
        err = CheckFailure(f"FALSE: {claim}")
        err.residual = residual
        raise err
    return claim


# --- suites -------------------------------------------------------------------------


def _suite_group(p: int, order: int, tol: float) -> list:
    rows = []
    G = psl_group(p)
    w = weil_generators(p)
    n = w.S.n
    eye = RepMatrix.identity(w.field, n)

    def gens():
        s, t = GroupElement.S(p), GroupElement.T(p)
        e = GroupElement.identity(p)
        return _require(
            s * s == e and t ** p == e and (s * t) ** 3 == e,
            f"S^2 = T^{p} = (ST)^3 = 1 in the abstract group of order {G.order}",
        )

    rows.append(_run_check(f"group.p{p}.presentation", p, gens))

    def matrix_relations():
        s2 = w.S * w.S
        if w.central_sign == -1:
            _require(s2 == -eye, "S^2 = -1 on the representation space")
        else:
            _require(s2 == eye, "S^2 = 1 on the representation space")
        _require(w.T ** p == eye, f"T^{p} = 1 on the representation space")
        st3 = (w.S * w.T) ** 3
        _require(st3 == eye, "(ST)^3 = 1 on the representation space")
        sign = "-1" if w.central_sign == -1 else "+1"
        return f"matrix relations hold exactly; S^2 = {sign}"

    rows.append(_run_check(f"group.p{p}.weil_relations", p, matrix_relations))

    if p == 13:

        def normalizer_word():
            P, Q, _ = sl13_auxiliary(w)
            cube = (Q ** 3 * P ** 4) ** 3
            _require(cube == -eye, "(Q^3 P^4)^3 = -1")
            return "(Q^3 P^4)^3 = -1 exactly"

        rows.append(_run_check(f"group.p{p}.normalizer_word", p, normalizer_word))
    else:
        rows.append(
            _skip(f"group.p{p}.normalizer_word", p, "auxiliary words are specific to p=13")
        )
    return rows


_EXPECTED_COUNT = {7: 1, 11: 10, 13: 21}


def _suite_locus(p: int, order: int, tol: float) -> list:
    rows = []
    sys_ = generate_ideal(p)

    def count():
        want = _EXPECTED_COUNT[p]
        return _require(
            len(sys_) == want and poly_rank(list(sys_.quartics)) == want,
            f"{len(sys_)} distinct quartics (from {sys_.raw_count} raw), independent",
        )

    rows.append(_run_check(f"locus.p{p}.generator_count", p, count))

    def kappa_members():
        half = (p - 1) // 2
        ok = all(
            sys_.membership(kappa_point(p, t, sys_.field)) is True for t in range(1, half + 1)
        )
        return _require(ok, f"kappa_t in the locus for all {half} values of t")

    rows.append(_run_check(f"locus.p{p}.kappa_membership", p, kappa_members))

    def tangents():
        half = (p - 1) // 2
        want = half - 2
        for t in range(1, half + 1):
            rank, ok = sys_.tangent_check(t)
            _require(
                rank == want and ok,
                f"Jacobian rank {rank} != {want} or tangent misses kappa_3t at t={t}",
            )
        return f"rank {want} Jacobians; tangent at kappa_t meets kappa_3t for all t"

    rows.append(_run_check(f"locus.p{p}.tangent_lines", p, tangents))
    return rows


def _suite_rep(p: int, order: int, tol: float) -> list:
    rows = []
    R = span_rep(p)

    def traces():
        trS, trT = trace_pair(R)
        F = R.field
        if p == 7:
            want = (F.one(), F.one())
            label = "(1, 1)"
        elif p == 11:
            want = (F.from_rational(2), F.from_rational(-1))
            label = "(2, -1)"
        else:
            half = F.from_rational(Fraction(1, 2))
            want = (F.one(), (F.from_rational(3) + gauss_sum(13)) * half)
            label = "(1, (3+sqrt13)/2)"
        return _require((trS, trT) == want, f"(tr S, tr T) = {label} exactly")

    rows.append(_run_check(f"rep.p{p}.traces", p, traces))

    def bases():
        report = verify_paper_bases(p)
        _require(report["stable"], "the stated subspaces are S,T-stable")
        if p == 13:
            _require(report["dims"] == [1, 7, 13], f"dims {report['dims']}")
            _require(report["direct_sum"], "subspaces sum directly to the span")
            _require(
                report["v1_fixed"] and report["v7_anchor"] and report["v13_anchor"],
                "anchor identities for the distinguished vectors",
            )
            return "stable subspaces of dims [1, 7, 13]; direct sum; anchors exact"
        return f"span of dim {report['dims'][0]} is S,T-stable"

    rows.append(_run_check(f"rep.p{p}.stated_bases", p, bases))
    return rows


@lru_cache(maxsize=None)
def _table(p: int):
    return character_table(p)


_EXPECTED_DIMS = {7: [1], 11: [10], 13: [1, 7, 13]}
_EXPECTED_NORM = {7: 1, 11: 1, 13: 3}
_EXPECTED_PROJ_RANK = {7: 1, 11: 0, 13: 1}


def _suite_decompose(p: int, order: int, tol: float) -> list:
    rows = []

    def table_checks():
        tbl = _table(p)
        _require(tbl.verify_orthogonality(exact=True), "row orthogonality over the class sizes")
        dsum = sum(d * d for d in tbl.degrees)
        _require(
            dsum == tbl.group_order,
            f"sum of squared degrees {dsum} = |G| = {tbl.group_order}",
        )
        return f"character table with degrees {sorted(tbl.degrees)}; orthogonal; sum d^2 = |G|"

    rows.append(_run_check(f"decompose.p{p}.character_table", p, table_checks))

    def split():
        d = decompose(span_rep(p), _table(p))
        _require(d["dims"] == _EXPECTED_DIMS[p], f"isotypic dims {d['dims']}")
        _require(d["norm"] == _EXPECTED_NORM[p], f"<chi, chi> = {d['norm']}")
        return f"span decomposes with dims {d['dims']}, <chi,chi> = {d['norm']}"

    rows.append(_run_check(f"decompose.p{p}.isotypic_split", p, split))

    def projector():
        rank = projector_rank(isotypic_projector(span_rep(p)))
        return _require(
            rank == _EXPECTED_PROJ_RANK[p],
            f"group-average projector has rank {rank}",
        )

    rows.append(_run_check(f"decompose.p{p}.invariant_projector", p, projector))
    return rows


def _flatten_report(prefix: str, p: int, report: dict, expectations: dict) -> list:
    """One row per boolean key of an identity report dict."""
    rows = []
    for key, want in expectations.items():
        value = report
        for part in key.split("."):
            value = value[part]

        def check(v=value, w=want, k=key):
            return _require(v == w, f"{k} = {v!r}")

        rows.append(_run_check(f"{prefix}.{key}", p, check))
    return rows


def _suite_invariants(p: int, order: int, tol: float) -> list:
    if p == 7:
        from .invariants import klein7_identities

        report = klein7_identities()
        expectations = {
            "hessian_printed": True,
            "leading_coefficients": True,
            "generator_invariance": True,
            "syzygy": True,
            "conic_resolvent.plus.ok": True,
            "conic_resolvent.minus.ok": True,
            "inflection_images": True,
        }
        rows = _flatten_report(f"invariants.p{p}", p, report, expectations)

        def inflections():
            bad = [k for k, v in report["inflection_resolvent"].items() if not v]
            return _require(not bad, "octic resolvent for all 8 inflection cubics")

        rows.append(_run_check(f"invariants.p{p}.inflection_resolvent", p, inflections))
        return rows

    if p == 11:
        from .invariants import forms11_identities

        points = [sample_locus(11, tau) for tau in (2j, 0.5 + 1.5j)]
        report = forms11_identities(samples=points, tol=1e-8)
        expectations = {
            "linear_form_image": True,
            "quadratic_power_sum": True,
            "cubic_power_sum_defect": True,
            "cubic_relation_ambient": False,  # only on the locus, not ambient
            "cubic_relation_on_curve.ok": True,
            "hauptmodul_map.ok": True,
            "resolvent_constant": True,
        }
        rows = _flatten_report(f"invariants.p{p}", p, report, expectations)
        rows.append(
            VerificationReport(
                f"invariants.p{p}.sqrt_branch",
                p,
                "pass",
                f"square root of -11 pinned to the {report['sqrt_branch']} branch",
                None,
                0,
            )
        )
        return rows

    if p == 13:
        from .invariants import forms13_identities

        report = forms13_identities()
        expectations = {
            "quadric_orbit": True,
            "cubic_orbit.ok": True,
            "sextic_orbit": True,
            "degree14_sum.identically_zero": True,
            "invariant_quadric": True,
            "multiplier_trace": True,
            "quartic_invariance": True,
            "coset_permutation.S": True,
            "coset_permutation.T": True,
        }
        return _flatten_report(f"invariants.p{p}", p, report, expectations)

    return [_skip(f"invariants.p{p}.all", p, "no invariant system at this level")]


_EXPECTED_GENUS = {7: 3, 11: 26, 13: 50}
# degree -> multiplicity list over the doubled space of differentials; halving
# (conjugate pairs count once, doubled singles halve) gives the holomorphic
# splits 3, 5+10+11 and 3*12+14 at the three levels
_EXPECTED_HECKE = {
    7: {3: [1, 1]},
    11: {5: [1, 1], 10: [2], 11: [2]},
    13: {12: [2, 2, 2], 14: [2]},
}


def _suite_hecke(p: int, order: int, tol: float) -> list:
    rows = []

    def multiplicities():
        tbl = _table(p)
        values = [hecke_multiplicity(tbl, i) for i in range(tbl.nclasses)]
        _require(all(v >= 0 for v in values), "all multiplicities are non-negative integers")
        _require(values[tbl.trivial_row()] == 0, "the trivial representation never appears")
        by_degree: dict = {}
        for i, d in enumerate(tbl.degrees):
            if values[i]:
                by_degree.setdefault(d, []).append(values[i])
        want = _EXPECTED_HECKE[p]
        _require(
            {d: sorted(v) for d, v in by_degree.items()} == want,
            f"differential multiplicities by degree: {by_degree}",
        )
        return f"multiplicities {want} over the doubled differentials"

    rows.append(_run_check(f"hecke.p{p}.multiplicities", p, multiplicities))

    def genus():
        g = hecke_genus(_table(p))
        return _require(g == _EXPECTED_GENUS[p], f"genus {g}")

    rows.append(_run_check(f"hecke.p{p}.genus", p, genus))
    return rows


def _suite_qcheck(p: int, order: int, tol: float) -> list:
    rows = []
    for r in verify_modular_equation(p, order):
        name = r["identity"]

        def check(r=r):
            if r["order"] is None:
                detail = "exact polynomial identity"
            else:
                detail = f"series identity through q^{r['order']}"
            _require(
                r["status"] == "ok",
                f"{detail}; first failing order {r['first_bad_order']}",
            )
            return detail

        rows.append(_run_check(f"qcheck.p{p}.{name}", p, check))

    if p in CURVE_LEVELS:
        family = z_family_report(p)
        keys = ["odd_symmetry", "translation_twist", "translation_character"]
        if p == 7:
            keys += ["jacobian_ratio", "ratio_leading"]
        for key in keys:

            def check(key=key):
                return _require(family[key], f"coordinate family property {key}")

            rows.append(_run_check(f"qcheck.p{p}.coords_{key}", p, check))
    else:
        for key in ("odd_symmetry", "translation_twist", "translation_character"):
            rows.append(
                _skip(f"qcheck.p{p}.coords_{key}", p, "no homogeneous coordinate model here")
            )

    def fricke():
        report = fricke_check(p, FRICKE_TAU)
        rel = report["error"] / report["expected"]
        _require(rel < 1e-6, f"product off by {rel:.2e}", residual=rel)
        return f"hauptmodul product = {report['expected']} at two Fricke-paired points", rel

    if p in SERIES_LEVELS:
        rows.append(_run_check(f"qcheck.p{p}.fricke_product", p, fricke))
    return rows


def _sample_or_fail(p: int, tau: complex, tol: float):
    try:
        return sample_locus(p, tau, tolerance=tol)
    except ValueError as exc:
        raise CheckFailure(str(exc)) from exc


def _suite_sample(p: int, tau: complex, tol: float) -> list:
    rows = []

    def membership():
        pt = _sample_or_fail(p, tau, tol)
        return (
            f"residual {pt.residual:.2e} over the defining forms at tau = {tau}",
            pt.residual,
        )

    rows.append(_run_check(f"sample.p{p}.membership", p, membership))

    def inversion():
        report = s_transformation_residual(p, tau)
        _require(
            report["residual"] < 1e-8,
            f"inversion image off by {report['residual']:.2e}",
            residual=report["residual"],
        )
        return "tau -> -1/tau acts by the unitary generator, projectively", report["residual"]

    rows.append(_run_check(f"sample.p{p}.inversion_action", p, inversion))

    if p == 7:

        def j_reproduction():
            from .invariants import covariants7

            cov = covariants7()
            pt = _sample_or_fail(p, tau, tol)
            d_inf = cov.delta["inf"].evaluate(pt.coords)
            nabla = cov.nabla.evaluate(pt.coords)
            root = -(d_inf ** 2) / nabla
            image = (
                (root ** 2 + 13 * root + 49) * (root ** 2 + 5 * root + 1) ** 3 / (1728 * root)
            )
            rel = abs(image - pt.J) / max(1.0, abs(pt.J))
            _require(rel < 1e-6, f"hauptmodul root misses J by {rel:.2e}", residual=rel)
            return "distinguished covariant root reproduces J", rel

        rows.append(_run_check(f"sample.p{p}.hauptmodul_root", p, j_reproduction))
    else:
        rows.append(
            _skip(f"sample.p{p}.hauptmodul_root", p, "covariant root formula lives at p=7")
        )
    return rows


_VERIFY_SUITES = {
    "group": _suite_group,
    "locus": _suite_locus,
    "rep": _suite_rep,
    "decompose": _suite_decompose,
    "invariants": _suite_invariants,
    "hecke": _suite_hecke,
}


# --- command plumbing ------------------------------------------------------------------


def _parse_tau(text: str) -> complex:
    try:
        value = complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse tau {text!r}; try 0.5+1.5i")
    if value.imag <= 0:
        raise argparse.ArgumentTypeError("tau must have positive imaginary part")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modlocus",
        description="exact ideals, representation splits and q-expansion checks "
        "for the degree-7, 11, 13 modular loci",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, levels, with_order=True, with_tau=False, with_tol=False):
        sp.add_argument("--p", type=int, choices=levels, help="prime level")
        if with_order:
            sp.add_argument("--order", type=int, default=30, help="series order (default 30)")
        if with_tau:
            sp.add_argument(
                "--tau", type=_parse_tau, default=complex(0, 2), help="sample point (default 0+2i)"
            )
        if with_tol:
            sp.add_argument(
                "--tol", type=float, default=1e-9, help="membership tolerance (default 1e-9)"
            )
        sp.add_argument("--json", action="store_true", help="emit a JSON array on stdout")
        sp.add_argument("--out", help="append report rows to this file as JSON lines")

    gen = sub.add_parser("gen", help="emit the defining quartics of a locus")
    common(gen, CURVE_LEVELS, with_order=False)

    verify = sub.add_parser("verify", help="run symbolic verification suites")
    common(verify, CURVE_LEVELS, with_tol=True)
    verify.add_argument(
        "--suite",
        choices=sorted(_VERIFY_SUITES) + ["all"],
        default="all",
        help="which suite to run (default all)",
    )

    dec = sub.add_parser("decompose", help="isotypic decomposition of the quartic span")
    common(dec, CURVE_LEVELS, with_order=False)

    qc = sub.add_parser("qcheck", help="q-expansion identities for j and the hauptmoduln")
    common(qc, SERIES_LEVELS)

    smp = sub.add_parser("sample", help="sample a numeric locus point and test its symmetries")
    common(smp, CURVE_LEVELS, with_order=False, with_tau=True, with_tol=True)

    rall = sub.add_parser("report-all", help="every suite for one prime (or all of them)")
    common(rall, CURVE_LEVELS, with_tau=True, with_tol=True)
    return parser


def _gen_rows(args) -> tuple[list, int]:
    levels = [args.p] if args.p else list(CURVE_LEVELS)
    rows = []
    for p in levels:
        sys_ = generate_ideal(p)

        def count(sys_=sys_, p=p):
            want = _EXPECTED_COUNT[p]
            return _require(
                len(sys_) == want,
                f"{len(sys_)} distinct quartics from {sys_.raw_count} raw labels "
                f"over Q(zeta_{sys_.field.M})",
            )

        rows.append(_run_check(f"gen.p{p}.quartics", p, count))
    return rows, 0 if all(r.status != "fail" for r in rows) else 1


def _emit_polynomials(args) -> None:
    """gen's payload: the generators themselves, to stdout."""
    levels = [args.p] if args.p else list(CURVE_LEVELS)
    for p in levels:
        sys_ = generate_ideal(p)
        if args.json:
            print(json.dumps(sys_.to_json()))
        else:
            label = "quartic" if len(sys_) == 1 else "quartics"
            print(f"# p = {p}: {len(sys_)} {label} in {sys_.nvars} variables")
            for label, q in zip(sys_.labels, sys_.quartics):
                print(f"{label}: {q}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        rows: list = []
        if args.command == "gen":
            _emit_polynomials(args)
            rows, _ = _gen_rows(args)
            if args.out:
                _append_jsonl(args.out, rows)
            return 0 if all(r.status != "fail" for r in rows) else 1

        if args.command == "verify":
            levels = [args.p] if args.p else list(CURVE_LEVELS)
            suites = sorted(_VERIFY_SUITES) if args.suite == "all" else [args.suite]
            for p in levels:
                for name in suites:
                    rows.extend(_VERIFY_SUITES[name](p, args.order, args.tol))
        elif args.command == "decompose":
            levels = [args.p] if args.p else list(CURVE_LEVELS)
            for p in levels:
                rows.extend(_suite_decompose(p, 30, 1e-9))
        elif args.command == "qcheck":
            levels = [args.p] if args.p else list(SERIES_LEVELS)
            for p in levels:
                rows.extend(_suite_qcheck(p, args.order, 1e-9))
        elif args.command == "sample":
            levels = [args.p] if args.p else list(CURVE_LEVELS)
            for p in levels:
                rows.extend(_suite_sample(p, args.tau, args.tol))
        elif args.command == "report-all":
            if args.p:
                curve_levels = [args.p]
                series_levels = [args.p] if args.p in SERIES_LEVELS else []
            else:
                curve_levels = list(CURVE_LEVELS)
                series_levels = list(SERIES_LEVELS)
            for p in curve_levels:
                for name in sorted(_VERIFY_SUITES):
                    rows.extend(_VERIFY_SUITES[name](p, args.order, args.tol))
                rows.extend(_suite_sample(p, args.tau, args.tol))
            for p in series_levels:
                rows.extend(_suite_qcheck(p, args.order, args.tol))

        data = emit_report(rows, "json" if args.json else "text")
        sys.stdout.write(data.decode())
        if args.out:
            _append_jsonl(args.out, rows)
        return 0 if all(r.status != "fail" for r in rows) else 1
    except Exception as exc:  # internal inconsistency, not a check failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def _append_jsonl(path: str, rows) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for r in sorted(rows, key=lambda r: r.check_id):
            fh.write(json.dumps(r.to_json()) + "\n")


if __name__ == "__main__":
    sys.exit(main())
