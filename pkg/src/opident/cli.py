"""Command-line frontend: every checker behind one subcommand, with human or
JSON report output.

Exit codes: 0 when every asserted check passed, 1 when one failed, 2 for
usage, syntax, or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import identities, jetoracle, radon
from .diffalg import PRESETS, SignatureMismatch
from .parser import ElaborationError, ParseError, parse_operator
from .report import all_asserted_ok, reports_to_json


def _emit_reports(reports, args) -> int:
    if args.format == "json":
        text = reports_to_json(reports)
    else:
        lines = []
        for r in reports:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items())
            mark = {True: "ok", False: "FAILED", None: "info"}[r.ok]
            line = f"[{r.outcome:^7}] {r.check_id} ({params}) {mark}"
            if r.witness is not None:
                line += f"  witness: {r.witness}"
            lines.append(line)
        failed = sum(1 for r in reports if r.ok is False)
        lines.append(f"{len(reports)} checks, {failed} failed")
        text = "\n".join(lines)
    _write_text(text, args.out)
    return 0 if all_asserted_ok(reports) else 1


def _write_text(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# -- verify -----------------------------------------------------------------------

def _run_verify(args) -> int:
    name = args.checker
    n_max = args.n_max
    if name == "theorem1":
        reports = identities.check_theorem1(n_max)
    elif name == "theorem2":
        reports = identities.check_theorem2(n_max)
    elif name == "split":
        reports = [identities.check_split_cancellation(n) for n in range(1, n_max + 1, 2)]
    elif name == "decomposition":
        reports = [identities.check_decomposition(n) for n in range(1, n_max + 1)]
    elif name == "recurrence":
        reports = identities.check_recurrence(n_max)
    elif name == "factorize":
        reports = identities.check_factorization(n_max)
    elif name == "general":
        reports = [
            identities.check_general_theorem(n, m)
            for n in range(1, n_max + 1, 2)
            for m in range(0, args.m_max + 1, 2)
        ]
    elif name == "free-lemma":
        reports = identities.check_free_lemma(n_max)
    elif name == "gauge":
        reports = identities.check_gauge_equivalence(n_max)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(name)
    return _emit_reports(reports, args)


def _run_explore(args) -> int:
    reports = identities.explore_order(args.order, args.n_max)
    return _emit_reports(reports, args)


def _run_oracle(args) -> int:
    reports = jetoracle.agreement_reports(points=args.points)
    return _emit_reports(reports, args)


def _run_eval(args) -> int:
    sig = PRESETS[args.sig]
    op = parse_operator(args.expression, sig)
    if args.format == "json":
        text = json.dumps(
            {"signature": args.sig, "input": args.expression, "normal_form": str(op)},
            indent=2,
        )
    else:
        text = str(op)
    _write_text(text, args.out)
    return 0


# -- radon ------------------------------------------------------------------------

def _demo_phantom(args) -> radon.Phantom:
    return radon.demo_phantom(args.size, args.size, args.extent)


def _run_radon_project(args) -> int:
    phantom = _demo_phantom(args)
    sino = radon.radon_forward(phantom, args.angles, args.offsets, args.mu)
    _write_text(radon.sinogram_to_csv(sino), args.out)
    if args.phantom_out:
        _write_text(radon.phantom_to_csv(phantom), args.phantom_out)
    return 0


def _run_radon_moments(args) -> int:
    with open(args.input) as fh:
        sino = radon.sinogram_from_csv(fh.read())
    table = radon.moments_from_sinogram(sino, args.k_max)
    _write_text(table.to_json(), args.out)
    return 0


def _run_radon_demo(args) -> int:
    phantom = _demo_phantom(args)
    classical = radon.radon_forward(phantom, args.angles, args.offsets, mu=0.0)
    attenuated = radon.radon_forward(phantom, args.angles, args.offsets, mu=args.mu)
    reports = [
        radon.evenness_report(classical),
        radon.range_check(classical, args.k_max, phantom),
        radon.range_check(attenuated, args.k_max, phantom, baseline=classical),
    ]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        moments0 = radon.moments_from_sinogram(classical, args.k_max)
        moments_mu = radon.moments_from_sinogram(attenuated, args.k_max)
        artifacts = {
            "phantom.csv": radon.phantom_to_csv(phantom),
            "sinogram_mu0.csv": radon.sinogram_to_csv(classical),
            f"sinogram_mu{args.mu:g}.csv": radon.sinogram_to_csv(attenuated),
            "moments_mu0.json": moments0.to_json(),
            f"moments_mu{args.mu:g}.json": moments_mu.to_json(),
        }
        for name, text in artifacts.items():
            with open(os.path.join(args.out_dir, name), "w") as fh:
                fh.write(text if text.endswith("\n") else text + "\n")
        if not args.no_figures:
            from .figures import render_demo_figures

            render_demo_figures(
                phantom, classical, attenuated, moments0, moments_mu, args.out_dir
            )
    return _emit_reports(reports, args)


# -- argument parsing ----------------------------------------------------------------

def _add_output_options(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("human", "json"), default="human",
                   help="report rendering (default: human)")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write output to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="opident",
        description="Exact and numeric verification of the operator-binomial "
                    "identities, plus a Radon range-condition demo.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one exact symbolic checker")
    verify.add_argument(
        "checker",
        choices=("theorem1", "theorem2", "split", "decomposition", "recurrence",
                 "factorize", "general", "free-lemma", "gauge"),
    )
    verify.add_argument("--n-max", type=int, default=9, help="largest n to check")
    verify.add_argument("--m-max", type=int, default=4,
                        help="largest derivative order m (general only)")
    _add_output_options(verify)
    verify.set_defaults(func=_run_verify)

    explore = sub.add_parser(
        "explore", help="evaluate the identity over D^r u = L^r u, reporting outcomes"
    )
    explore.add_argument("--order", type=int, default=3, help="equation order r >= 3")
    explore.add_argument("--n-max", type=int, default=9)
    _add_output_options(explore)
    explore.set_defaults(func=_run_explore)

    oracle = sub.add_parser("oracle", help="numeric jet-oracle agreement suite")
    oracle.add_argument("--points", type=int, default=10,
                        help="sample points per instance (default 10)")
    _add_output_options(oracle)
    oracle.set_defaults(func=_run_oracle)

    ev = sub.add_parser("eval", help="parse an operator expression to normal form")
    ev.add_argument("expression")
    ev.add_argument("--sig", choices=sorted(PRESETS), default="ORDER2",
                    help="signature the generators live in (default ORDER2)")
    _add_output_options(ev)
    ev.set_defaults(func=_run_eval)

    rad = sub.add_parser("radon", help="Radon transform demo and tools")
    radsub = rad.add_subparsers(dest="radon_command", required=True)

    def _geometry(p):
        p.add_argument("--size", type=int, default=256, help="phantom grid size")
        p.add_argument("--extent", type=float, default=1.5)
        p.add_argument("--angles", type=int, default=360)
        p.add_argument("--offsets", type=int, default=363)
        p.add_argument("--mu", type=float, default=0.5, help="attenuation coefficient")

    demo = radsub.add_parser(
        "demo", help="evenness + moment range conditions, classical vs exponential"
    )
    _geometry(demo)
    demo.add_argument("--k-max", type=int, default=4)
    demo.add_argument("--out-dir", default=None,
                      help="write CSV grids, moment JSON, and figures here")
    demo.add_argument("--no-figures", action="store_true",
                      help="skip PNG rendering when --out-dir is given")
    _add_output_options(demo)
    demo.set_defaults(func=_run_radon_demo)

    project = radsub.add_parser("project", help="forward-project the demo phantom to CSV")
    _geometry(project)
    project.add_argument("--phantom-out", default=None,
                         help="also write the phantom grid as CSV")
    _add_output_options(project)
    project.set_defaults(func=_run_radon_project)

    moments = radsub.add_parser("moments", help="moment table of a sinogram CSV")
    moments.add_argument("--input", required=True, help="sinogram CSV path")
    moments.add_argument("--k-max", type=int, default=4)
    _add_output_options(moments)
    moments.set_defaults(func=_run_radon_moments)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, ElaborationError, SignatureMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
