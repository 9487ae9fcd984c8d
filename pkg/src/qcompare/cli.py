"""Command-line front end.

Subcommands: ``compare``, ``multiport``, ``oracle``, ``figure2``, ``figure4``,
``lockkey {simulate,entropy,attack-scan}``, ``pkd``.  Global flags ``--seed``,
``--out`` and ``--format {csv,json,svg}``.  Exit codes: 0 on success, 2 on
usage or validation errors, 3 on an internal invariant violation.

All output is deterministic for a fixed argument list: JSON is emitted with
sorted keys, CSV with dot decimals and LF line endings, and every stochastic
report records its seed.  SVG figures are rendered from the same row data
that the CSV writer receives; there is no second computation route.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import comparison, fock, lockkey, pkd
from .detection import DetectorModel
from .errors import InvariantError
from .svg import line_chart

SCHEMA = 1


def _parse_complex(text: str) -> complex:
    """Parse ``re,im`` (or a bare real) into a complex amplitude."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValueError(f"expected an amplitude as 're,im', got {text!r}")


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _csv_text(columns, rows, seed=None) -> str:
    lines = [f"# schema={SCHEMA}" + (f" seed={seed}" if seed is not None else "")]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, json_obj=None, csv_parts=None, svg_series=None, svg_labels=("", "", "")):
    """Write the requested format; ValueError when the command cannot provide it."""
    fmt = args.format
    if fmt == "json":
        if json_obj is None:
            raise ValueError("this command has no JSON output")
        _write(args, _json_text(json_obj))
    elif fmt == "csv":
        if csv_parts is None:
            raise ValueError("this command has no CSV output")
        columns, rows = csv_parts
        _write(args, _csv_text(columns, rows, seed=args.seed))
    elif fmt == "svg":
        if svg_series is None:
            raise ValueError("this command has no SVG output")
        title, x_label, y_label = svg_labels
        _write(args, line_chart(svg_series, title=title, x_label=x_label, y_label=y_label))
    else:  # pragma: no cover - argparse choices guard this
        raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_compare(args) -> int:
    alpha = _parse_complex(args.alpha)
    beta = _parse_complex(args.beta)
    report = comparison.compare_report([alpha, beta])
    obj = {
        "schema": SCHEMA,
        "alpha": [alpha.real, alpha.imag],
        "beta": [beta.real, beta.imag],
        "p_succ": report.p_succ_coherent,
        "p_asymm": report.p_succ_universal,
        "p_no_click": list(report.p_no_click),
        "p_succ_conjugate": comparison.p_success_conjugate(alpha, beta),
    }
    deltas = np.arange(0.0, args.sweep_max + args.sweep_step / 2, args.sweep_step)
    rows = [
        {
            "delta_abs": float(d),
            "p_succ": comparison.p_success_two(0.0, d),
            "p_asymm": comparison.p_success_universal([0.0, d]),
        }
        for d in deltas
    ]
    series = [
        ("p_succ", [r["delta_abs"] for r in rows], [r["p_succ"] for r in rows]),
        ("p_asymm", [r["delta_abs"] for r in rows], [r["p_asymm"] for r in rows]),
    ]
    _emit(args, json_obj=obj, csv_parts=(("delta_abs", "p_succ", "p_asymm"), rows),
          svg_series=series, svg_labels=("two-state comparison", "|alpha - beta|", "probability"))
    return 0


def _cmd_multiport(args) -> int:
    amps = [_parse_complex(a) for a in args.amps]
    pairwise, per_mode, overlap_product = comparison.multiport_success_forms(amps)
    obj = {
        "schema": SCHEMA,
        "amplitudes": [[a.real, a.imag] for a in amps],
        "p_succ": comparison.p_success_multiport(amps),
        "forms": {"pairwise": pairwise, "per_mode": per_mode, "overlap_product": overlap_product},
        "p_no_click": [float(p) for p in comparison.no_click_probabilities(amps)],
    }
    if len(amps) <= comparison.MAX_UNIVERSAL_MODES:
        amgm = comparison.verify_amgm_inequality(amps)
        obj["p_asymm"] = comparison.p_success_universal(amps)
        obj["failure_vs_symmetric"] = {"lhs": amgm.lhs, "rhs": amgm.rhs, "holds": amgm.holds}
    _emit(args, json_obj=obj)
    return 0


def _cmd_oracle(args) -> int:
    if args.xi1 is not None or args.xi2 is not None:
        if args.xi1 is None or args.xi2 is None:
            raise ValueError("squeezed mode needs both --xi1 and --xi2")
        p_odd = fock.odd_photon_probability(args.xi1, args.xi2, args.cutoff)
        obj = {
            "schema": SCHEMA,
            "mode": "squeezed",
            "xi1": args.xi1,
            "xi2": args.xi2,
            "cutoff": args.cutoff,
            "odd_photon_probability": p_odd,
        }
    else:
        if args.alpha is None or args.beta is None:
            raise ValueError("coherent mode needs --alpha and --beta")
        alpha = _parse_complex(args.alpha)
        beta = _parse_complex(args.beta)
        joint = fock.product_state(
            fock.coherent_fock(alpha, args.cutoff), fock.coherent_fock(beta, args.cutoff)
        )
        out = fock.apply_bs_fock(joint, args.transmittance)
        t, r = math.sqrt(args.transmittance), math.sqrt(1.0 - args.transmittance)
        gamma_a, gamma_b = t * alpha + r * beta, r * alpha - t * beta
        analytic = fock.product_state(
            fock.coherent_fock(gamma_a, args.cutoff), fock.coherent_fock(gamma_b, args.cutoff)
        )
        obj = {
            "schema": SCHEMA,
            "mode": "coherent",
            "cutoff": args.cutoff,
            "transmittance": args.transmittance,
            "gamma_a": [gamma_a.real, gamma_a.imag],
            "gamma_b": [gamma_b.real, gamma_b.imag],
            "fidelity_vs_analytic": fock.fidelity(out, analytic),
            "input_deficit": joint.deficit,
            "output_deficit": out.deficit,
        }
    _emit(args, json_obj=obj)
    return 0


def _cmd_figure2(args) -> int:
    if args.max <= 0 or args.step <= 0:
        raise ValueError("range and step must be positive")
    deltas = np.arange(0.0, args.max + args.step / 2, args.step)
    rows = [
        {
            "delta_abs": float(d),
            "p_succ": comparison.p_success_two(0.0, d),
            "p_asymm": comparison.p_success_universal([0.0, d]),
        }
        for d in deltas
    ]
    series = [
        ("p_succ", [r["delta_abs"] for r in rows], [r["p_succ"] for r in rows]),
        ("p_asymm", [r["delta_abs"] for r in rows], [r["p_asymm"] for r in rows]),
    ]
    obj = {"schema": SCHEMA, "rows": rows}
    _emit(args, json_obj=obj, csv_parts=(("delta_abs", "p_succ", "p_asymm"), rows),
          svg_series=series,
          svg_labels=("success probability vs amplitude difference", "|alpha - beta|", "probability"))
    return 0


def _cmd_figure4(args) -> int:
    n_list = [int(n) for n in args.N]
    if not n_list or any(n < 2 for n in n_list):
        raise ValueError("every N must be at least 2")
    grid = np.linspace(0.0, args.alpha_sq_max, args.points)
    rows = []
    for n in n_list:
        for a2 in grid:
            report = lockkey.holevo_entropy_finite(math.sqrt(a2), n)
            rows.append({"alpha_sq": float(a2), "N": n, "S_bits": report.bits,
                         "asymptote_bits": math.log2(n)})
    series = []
    for n in n_list:
        sub = [r for r in rows if r["N"] == n]
        series.append((f"N={n}", [r["alpha_sq"] for r in sub], [r["S_bits"] for r in sub]))
    obj = {"schema": SCHEMA, "rows": rows}
    _emit(args, json_obj=obj,
          csv_parts=(("alpha_sq", "N", "S_bits", "asymptote_bits"), rows),
          svg_series=series,
          svg_labels=("key-position entropy vs mean photon number", "|alpha|^2", "S (bits)"))
    return 0


def _detector_from(args) -> DetectorModel:
    return DetectorModel(
        efficiency=args.efficiency,
        dark_mean=args.dark_mean,
        number_resolving=not args.threshold_detectors,
    )


def _cmd_lockkey(args) -> int:
    if args.action == "simulate":
        key = lockkey.generate_key(args.M, args.N, args.amp, rng=args.seed)
        if args.attack == "key":
            candidate = key.amplitudes()
            analytic = 1.0
        elif args.attack == "vacuum":
            candidate = lockkey.attack_candidate(lockkey.AttackSpec("vacuum"), args.M)
            analytic = math.exp(-args.M * args.amp**2 / 2.0)
        else:
            spec = lockkey.AttackSpec("coherent", magnitude=args.beta)
            candidate = lockkey.attack_candidate(spec, args.M)
            analytic = lockkey.forgery_string_probability(
                lockkey.attack_pass_probability(args.amp, args.beta), args.M
            )
        stats = lockkey.lock_test_pass_rate(
            key, candidate, _detector_from(args), trials=args.trials, rng=args.seed + 1
        )
        obj = {
            "schema": SCHEMA,
            "seed": args.seed,
            "attack": args.attack,
            "M": args.M,
            "N": args.N,
            "amp": args.amp,
            "trials": args.trials,
            "pass_rate": stats.rate,
            "wilson_95": [stats.wilson_low, stats.wilson_high],
            "analytic_pass_probability": analytic,
        }
        _emit(args, json_obj=obj)
    elif args.action == "entropy":
        n_list = [int(n) for n in args.N]
        if args.alpha_sq is not None:
            results = [
                {"N": n, "alpha_sq": args.alpha_sq,
                 "S_bits": lockkey.holevo_entropy_finite(math.sqrt(args.alpha_sq), n).bits}
                for n in n_list
            ]
            _emit(args, json_obj={"schema": SCHEMA, "results": results})
        else:
            grid = np.linspace(0.0, args.alpha_sq_max, args.points)
            rows = [
                {"alpha_sq": float(a2), "N": n,
                 "S_bits": lockkey.holevo_entropy_finite(math.sqrt(a2), n).bits}
                for n in n_list
                for a2 in grid
            ]
            series = [
                (f"N={n}", [r["alpha_sq"] for r in rows if r["N"] == n],
                 [r["S_bits"] for r in rows if r["N"] == n])
                for n in n_list
            ]
            _emit(args, json_obj={"schema": SCHEMA, "rows": rows},
                  csv_parts=(("alpha_sq", "N", "S_bits"), rows),
                  svg_series=series,
                  svg_labels=("key-position entropy", "|alpha|^2", "S (bits)"))
    else:  # attack-scan
        beta_max = args.beta_max if args.beta_max is not None else 2.0 * args.amp + 5.0
        betas = np.arange(0.0, beta_max + args.step / 2, args.step)
        rows = [
            {"beta": float(b), "p_pass": lockkey.attack_pass_probability(args.amp, float(b))}
            for b in betas
        ]
        best = lockkey.optimal_coherent_attack(args.amp)
        obj = {
            "schema": SCHEMA,
            "amp": args.amp,
            "beta_star": best.beta_star,
            "p_star": best.p_star,
            "rows": rows,
        }
        series = [("p_pass", [r["beta"] for r in rows], [r["p_pass"] for r in rows])]
        _emit(args, json_obj=obj, csv_parts=(("beta", "p_pass"), rows),
              svg_series=series, svg_labels=("false-key pass probability", "|beta|", "p_pass"))
    return 0


def _cmd_pkd(args) -> int:
    if args.scheme == "center":
        summary, rows, events = pkd.run_center_protocol(
            args.M, args.N, args.amp, args.recipients, args.s, args.trials,
            args.adversary, rng=args.seed,
        )
    else:
        summary, rows, events = pkd.run_distributed_protocol(
            args.recipients, args.M, args.N, args.amp, args.s, args.trials,
            args.adversary, rng=args.seed,
        )
    obj = {
        "schema": SCHEMA,
        "seed": args.seed,
        "params": {
            "scheme": args.scheme,
            "recipients": args.recipients,
            "M": args.M,
            "N": args.N,
            "amp": args.amp,
            "s": args.s,
            "trials": args.trials,
            "adversary": args.adversary,
        },
        "summary": summary,
        "events": events,
    }
    columns = ("trial", "e_bob", "e_charlie", "verdict_bob", "verdict_charlie", "clicks")
    _emit(args, json_obj=obj, csv_parts=(columns, rows))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

# lets amplitude values like "-1,0" pass as arguments instead of option names
_NEGATIVE_AMPLITUDE = re.compile(r"^-\d+(\.\d*)?([,]\S*)?$|^-\.\d+([,]\S*)?$")


class _AmplitudeFriendlyParser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_AMPLITUDE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json", "svg"), default="json")

    parser = _AmplitudeFriendlyParser(prog="qcompare",
                                      description="linear-optical coherent-state comparison toolkit")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_AmplitudeFriendlyParser)

    p = sub.add_parser("compare", parents=[common],
                       help="two-state comparison report (csv/svg: sweep over |alpha-beta|)")
    p.add_argument("--alpha", required=True, help="first amplitude as re,im")
    p.add_argument("--beta", required=True, help="second amplitude as re,im")
    p.add_argument("--sweep-max", type=float, default=4.0)
    p.add_argument("--sweep-step", type=float, default=0.05)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("multiport", parents=[common], help="N-state comparison report")
    p.add_argument("--amps", nargs="+", required=True, help="amplitudes as re,im pairs")
    p.set_defaults(func=_cmd_multiport)

    p = sub.add_parser("oracle", parents=[common],
                       help="number-basis oracle checks (coherent or squeezed inputs)")
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--xi1", type=float, default=None)
    p.add_argument("--xi2", type=float, default=None)
    p.add_argument("--transmittance", type=float, default=0.5)
    p.add_argument("--cutoff", type=int, default=40)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("figure2", parents=[common],
                       help="success probabilities vs amplitude difference")
    p.add_argument("--max", type=float, default=4.0)
    p.add_argument("--step", type=float, default=0.05)
    p.set_defaults(func=_cmd_figure2)

    p = sub.add_parser("figure4", parents=[common],
                       help="key-position entropy vs mean photon number")
    p.add_argument("--N", nargs="+", default=[2, 3, 4, 5, 6])
    p.add_argument("--alpha-sq-max", type=float, default=25.0)
    p.add_argument("--points", type=int, default=51)
    p.set_defaults(func=_cmd_figure4)

    p = sub.add_parser("lockkey", parents=[common], help="lock-and-key analyses")
    action = p.add_subparsers(dest="action", required=True)

    ps = action.add_parser("simulate", parents=[common], help="Monte Carlo lock tests")
    ps.add_argument("--M", type=int, default=10)
    ps.add_argument("--N", type=int, default=8)
    ps.add_argument("--amp", type=float, default=1.0)
    ps.add_argument("--attack", choices=("key", "vacuum", "coherent"), default="vacuum")
    ps.add_argument("--beta", type=float, default=0.0, help="magnitude for --attack coherent")
    ps.add_argument("--trials", type=int, default=100_000)
    ps.add_argument("--efficiency", type=float, default=1.0)
    ps.add_argument("--dark-mean", type=float, default=0.0)
    ps.add_argument("--threshold-detectors", action="store_true")
    ps.set_defaults(func=_cmd_lockkey)

    pe = action.add_parser("entropy", parents=[common], help="information bound per key position")
    pe.add_argument("--N", nargs="+", default=[2, 3, 4, 5, 6])
    pe.add_argument("--alpha-sq", type=float, default=None)
    pe.add_argument("--alpha-sq-max", type=float, default=25.0)
    pe.add_argument("--points", type=int, default=51)
    pe.set_defaults(func=_cmd_lockkey)

    pa = action.add_parser("attack-scan", parents=[common], help="coherent false-key scan")
    pa.add_argument("--amp", type=float, required=True)
    pa.add_argument("--beta-max", type=float, default=None)
    pa.add_argument("--step", type=float, default=0.01)
    pa.set_defaults(func=_cmd_lockkey)

    p = sub.add_parser("pkd", parents=[common], help="public-key distribution simulation")
    p.add_argument("--scheme", choices=("center", "distributed"), default="center")
    p.add_argument("--recipients", type=int, default=2)
    p.add_argument("--M", type=int, default=10)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--amp", type=float, default=1.0)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--adversary",
                   choices=("none", "alice-overlap-half", "charlie-flip"), default="none")
    p.set_defaults(func=_cmd_pkd)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


def run() -> None:  # console entry point
    sys.exit(main())
