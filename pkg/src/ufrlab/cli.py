"""Command-line entry point: ``ufrlab <command> ...``.

Exit codes: 0 on success or all checks passing, 1 when a check fails,
2 on usage errors and rings that do not build.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cache import ResultCache, cache_key
from .classify import RING_FLAGS, classify_poly_ring, classify_ring, report_json
from .dsl import GRAMMAR, RingSpecError
from .elements import classify_element
from .factor import atomic_factorizations_poly, is_irreducible_poly, probe_weakly_prime_lift, set_of_lengths_Xn
from .harness import CHECKS, Bounds, load_corpus, run_suite, select_checks
from .poly import Polynomial, classify_poly, is_unit
from .ring import RingBuildError, build_ring, compute_structure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

POLY_FORMAT = 'polynomials are written like "2X^3+X+1" or "(0,1)X+(1,0)", coefficients as element labels'


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _build(spec: str):
    return build_ring(spec.strip())


def _parse_poly(R, text: str) -> Polynomial:
    try:
        return Polynomial.parse(R, text)
    except ValueError as exc:
        raise UsageError(f"{exc}\n{POLY_FORMAT}") from exc


# ---------------------------------------------------------------- commands


def cmd_ring_describe(args, out) -> int:
    R = _build(args.spec)
    rep = compute_structure(R)
    if args.format == "json":
        out.write(json.dumps({"ring": R.name, **rep.as_dict(R)}, indent=2) + "\n")
        return EXIT_OK
    d = rep.as_dict(R)
    out.write(f"ring: {R.name}\n")
    out.write(f"size: {R.size}\n")
    out.write(f"characteristic: {R.characteristic}\n")
    for key in ("units", "zero_divisors", "nilradical", "idempotents"):
        out.write(f"{key.replace('_', ' ')}: {{{', '.join(d[key])}}}\n")
    for key in ("is_field", "is_domain", "is_local", "is_reduced", "is_indecomposable", "is_spir"):
        out.write(f"{key[3:]}: {_yes(d[key])}\n")
    comps = ", ".join(f"e={c['idempotent']} (size {c['size']})" for c in d["local_components"])
    out.write(f"local components: {comps}\n")
    return EXIT_OK


def cmd_ring_classify(args, out) -> int:
    R = _build(args.spec)
    ring_rep = classify_ring(R)
    poly_rep = classify_poly_ring(R)
    if args.format == "json":
        out.write(json.dumps({"ring": report_json(ring_rep), "polynomial_ring": poly_rep.as_dict()}, indent=2) + "\n")
        return EXIT_OK
    out.write(f"# {R.name}: ring flags are exact; R[X] flags carry their provenance\n")
    for k in RING_FLAGS:
        out.write(f"{k}: {_yes(getattr(ring_rep, k))}\n")
    for k, claim in poly_rep.claims.items():
        out.write(f"R[X] {k}: {_yes(claim.value)} ({claim.provenance})\n")
    return EXIT_OK


ELEMENT_FLAGS = (
    ("unit", "unit"),
    ("regular", "regular"),
    ("zero_divisor", "zero divisor"),
    ("nilpotent", "nilpotent"),
    ("idempotent", "idempotent"),
    ("presimplifiable_element", "presimplifiable"),
    ("irreducible", "irreducible"),
    ("strongly_irreducible", "strongly irreducible"),
    ("very_strongly_irreducible", "very strongly irreducible"),
    ("m_irreducible", "m-irreducible"),
    ("prime", "prime"),
    ("weakly_prime", "weakly prime"),
)


def cmd_classify(args, out) -> int:
    R = _build(args.spec)
    try:
        a = R.element(args.element)
    except ValueError:
        a = None
    if a is not None:
        cls = classify_element(a)
        out.write(f"# {R.label(a.index)} in {R.name} (exact)\n")
        for attr, name in ELEMENT_FLAGS:
            out.write(f"{name}: {_yes(getattr(cls, attr))}\n")
        return EXIT_OK
    f = _parse_poly(R, args.element)
    pc = classify_poly(f)
    out.write(f"# {f} in {R.name}[X]\n")
    for attr in ("unit", "regular", "zero_divisor", "nilpotent", "idempotent"):
        out.write(f"{attr.replace('_', ' ')}: {_yes(getattr(pc, attr))}\n")
    if pc.unit:
        return EXIT_OK
    for kind in ("irreducible", "strongly_irreducible", "very_strongly_irreducible", "m_irreducible"):
        v = is_irreducible_poly(f, args.deg_bound, kind=kind)
        tier = v.tier if v.bound is None else f"{v.tier}, bound {v.bound}"
        out.write(f"{kind.replace('_', ' ').replace('m irr', 'm-irr')}: {_yes(v.value)} ({tier})\n")
    return EXIT_OK


def factor_payload(f: Polynomial, deg_bound, len_cap, allow_zero: bool) -> dict:
    rep = atomic_factorizations_poly(f, deg_bound, len_cap, allow_zero=allow_zero)
    return {
        "subject": str(f),
        "tier": rep.tier,
        "deg_bound": rep.deg_bound,
        "len_cap": rep.len_cap,
        "truncated": rep.truncated,
        "factorizations": [
            {
                "unit": None if fac.unit is None else str(fac.unit),
                "factors": [str(g) for g in sorted(fac.factors, key=lambda g: (g.degree, g.coeffs))],
                "reduced": fac.reduced,
                "strongly_reduced": fac.strongly_reduced,
            }
            for fac in rep.factorizations
        ],
    }


def _paren(text: str) -> str:
    return f"({text})" if "+" in text[1:] else text


def cmd_factor(args, out) -> int:
    R = _build(args.spec)
    f = _parse_poly(R, args.poly)
    if is_unit(R, f.coeffs):
        raise UsageError(f"{f} is a unit in {R.name}[X]")
    if not f.coeffs and not args.allow_zero:
        raise UsageError("the zero polynomial has unbounded factorizations; pass --allow-zero with --len-cap")
    if args.deg_bound is not None and args.deg_bound < f.degree:
        raise UsageError(f"--deg-bound {args.deg_bound} is below deg f = {f.degree}")

    def compute():
        return factor_payload(f, args.deg_bound, args.len_cap, args.allow_zero)

    if args.no_cache:
        data = compute()
    else:
        key = cache_key(
            "factor", R.name, str(f), {"deg_bound": args.deg_bound, "len_cap": args.len_cap, "zero": args.allow_zero}
        )
        data = ResultCache(args.cache_dir).get_or_compute(key, compute)
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    note = ", truncated at len_cap" if data["truncated"] else ""
    out.write(f"# tier: {data['tier']}, deg_bound: {data['deg_bound']}, len_cap: {data['len_cap']}{note}\n")
    for fac in data["factorizations"]:
        parts = ([fac["unit"]] if fac["unit"] else []) + [_paren(g) for g in fac["factors"]]
        out.write(f"{data['subject']} = {' * '.join(parts)}\n")
    return EXIT_OK


def cmd_lengths(args, out) -> int:
    R = _build(args.spec)
    if args.n < 1:
        raise UsageError("n must be at least 1")
    out.write(f"{set_of_lengths_Xn(R, args.n)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.list:
        for name, (summary, _) in CHECKS.items():
            out.write(f"{name:<20} {summary}\n")
        return EXIT_OK
    requested = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else None
    try:
        names = select_checks(requested)
    except KeyError as exc:
        raise UsageError(f"unknown check {exc.args[0]!r}; run 'ufrlab verify --list'") from exc
    try:
        bounds = Bounds.parse(args.bounds)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        corpus = load_corpus(args.corpus)
    except OSError as exc:
        raise UsageError(f"cannot read corpus: {exc}") from exc
    report = run_suite(corpus, names, bounds, jobs=args.jobs)
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    if report.build_errors:
        return EXIT_USAGE
    return EXIT_FAIL if report.failures else EXIT_OK


def cmd_probe(args, out) -> int:
    R = _build(args.spec)
    rep = probe_weakly_prime_lift(R, args.deg_bound)
    data = rep.as_dict(R)
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    out.write(f"# bounded search over f, g of degree <= {args.deg_bound} in {R.name}[X]\n")
    if not data["elements"]:
        out.write("no weakly prime elements\n")
    for e in data["elements"]:
        w = f" f={e['witness'][0]}, g={e['witness'][1]}" if e["witness"] else ""
        out.write(f"{e['element']}: {e['result']}{w}\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ufrlab", description="Factorization in finite commutative rings and their polynomial rings.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    ring = sub.add_parser("ring", help="ring-level reports")
    ring_sub = ring.add_subparsers(dest="ring_command", parser_class=_Parser)
    ring_sub.required = True
    d = ring_sub.add_parser("describe", help="structure of a ring")
    d.add_argument("spec")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.set_defaults(func=cmd_ring_describe)
    c = ring_sub.add_parser("classify", help="unique-factorization flags of R and R[X]")
    c.add_argument("spec")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_ring_classify)

    c = sub.add_parser("classify", help="classify an element of R (or a polynomial of R[X])")
    c.add_argument("spec")
    c.add_argument("element")
    c.add_argument("--deg-bound", type=int, default=None)
    c.set_defaults(func=cmd_classify)

    f = sub.add_parser("factor", help="atomic factorizations of a polynomial")
    f.add_argument("spec")
    f.add_argument("poly")
    f.add_argument("--deg-bound", type=int, default=None)
    f.add_argument("--len-cap", type=int, default=None)
    f.add_argument("--allow-zero", action="store_true")
    f.add_argument("--format", choices=("text", "json"), default="text")
    f.add_argument("--cache-dir", default=None)
    f.add_argument("--no-cache", action="store_true")
    f.set_defaults(func=cmd_factor)

    ln = sub.add_parser("lengths", help="set of lengths of X^n")
    ln.add_argument("spec")
    ln.add_argument("n", type=int)
    ln.set_defaults(func=cmd_lengths)

    v = sub.add_parser("verify", help="run the theorem suite over a corpus")
    v.add_argument("--checks", default=None, help="comma-separated check ids (prefixes select families)")
    v.add_argument("--corpus", default="default", help="'default' or a file with one ring spec per line")
    v.add_argument("--bounds", default=None, help="key=value pairs, e.g. probe_deg=2,search_deg=3")
    v.add_argument("--out", default=None)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--list", action="store_true", help="list check ids and exit")
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("probe", help="bounded probes")
    pr_sub = pr.add_subparsers(dest="probe_command", parser_class=_Parser)
    pr_sub.required = True
    w = pr_sub.add_parser("weakly-prime", help="do weakly prime elements stay weakly prime in R[X]?")
    w.add_argument("spec")
    w.add_argument("--deg-bound", type=int, default=3)
    w.add_argument("--format", choices=("text", "json"), default="text")
    w.set_defaults(func=cmd_probe)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"ufrlab: error: {exc}\n\n{parser.format_usage()}\n{GRAMMAR}\n")
        return EXIT_USAGE
    except (RingSpecError, RingBuildError) as exc:
        sys.stderr.write(f"ufrlab: cannot build ring: {exc}\n\n{GRAMMAR}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
