"""Command-line front end.

Subcommands: verify-rasa (grid sweep of the Bernstein-form inequality and
its order relations), cx-compare (compare two distribution files by a chosen
decision procedure), counterexample (reproduce and certify the four-atom
failure), hoeffding (binomial convex-concentration checks), psi-pattern (the
sign pattern separating mixture and pooled binomial masses).

Exit codes: 0 success / order holds; 1 verification or order failure;
2 invalid configuration or unparsable input; 3 method preconditions unmet.
Rationals cross this boundary as `p/q` strings, never as floats.  Reports
are byte-identical for a fixed configuration and seed; per-row wall times
are opt-in (`--timing`) because they would break that determinism.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import re
import sys
from fractions import Fraction

import click

from .counterexample import VerificationError, analyze_counterexample
from .cx_order import (
    StandingHypothesisError,
    cx_compare_oracle,
    levin_steckin_check,
    ohlin_check,
    szostok_decision,
)
from .distributions import (
    FormatError,
    ParameterError,
    as_rational,
    parse_distribution,
)
from .randomgen import random_equal_mean_pair, random_probability
from .rasa import psi_sign_pattern, verify_hoeffding
from .sweep import KNOWN_FUNCTION_GROUPS, RunConfig, run_sweep

OUT_DIR_ENV = "CONVEXORDER_OUT_DIR"

_RANGE_RE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


def _parse_range(text: str, name: str) -> tuple[int, ...]:
    match = _RANGE_RE.match(text.strip())
    if not match:
        raise click.UsageError(f"--{name} expects N or A..B, got {text!r}")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) else lo
    if hi < lo:
        raise click.UsageError(f"--{name} range is empty: {text!r}")
    return tuple(range(lo, hi + 1))


def _range_echo(values: tuple[int, ...]) -> str:
    return str(values[0]) if len(values) == 1 else f"{values[0]}..{values[-1]}"


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(payload: str, out_path: str | None) -> None:
    if out_path is None:
        click.echo(payload, nl=False)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)


def _json_payload(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_payload(rows: list[dict], columns: list[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


@click.group()
def main() -> None:
    """Exact convex-order decisions and inequality verification."""


@main.command("verify-rasa")
@click.option("--n", "n_range", required=True, help="Degree n or range A..B.")
@click.option("--m", "m_range", required=True, help="Variable count m or range A..B.")
@click.option("--denom", required=True, type=int, help="Grid denominator bound (>= 2).")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--jobs", default=1, type=int, show_default=True)
@click.option("--functions", default=",".join(KNOWN_FUNCTION_GROUPS), show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", default=None, help="Report path (stdout when omitted).")
@click.option("--timing", is_flag=True, help="Add per-row wall times (breaks byte determinism).")
def cmd_verify_rasa(n_range, m_range, denom, seed, jobs, functions, fmt, out, timing):
    """Sweep the inequality verifiers over a rational parameter grid.

    Exits 0 only if every order relation holds and every form value is
    nonnegative on the whole grid.
    """
    try:
        config = RunConfig(
            n_values=_parse_range(n_range, "n"),
            m_values=_parse_range(m_range, "m"),
            denominator=denom,
            seed=seed,
            jobs=jobs,
            functions=tuple(f.strip() for f in functions.split(",") if f.strip()),
            timing=timing,
            output_format=fmt,
            output_path=out,
        )
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from exc
    rows, ok = run_sweep(config)
    columns = ["n", "m", "xs", "verdict_a", "verdict_b", "verdict_c", "min_form", "ok"]
    if timing:
        columns.append("wall_ms")
    if fmt == "csv":
        payload = _csv_payload(rows, columns)
    else:
        payload = _json_payload(
            {
                "command": "verify-rasa",
                "n": _range_echo(config.n_values),
                "m": _range_echo(config.m_values),
                "denominator": config.denominator,
                "seed": config.seed,
                "functions": list(config.functions),
                "ok": ok,
                "rows": rows,
            }
        )
    _emit(payload, _resolve_out(out))
    if not ok:
        bad = next(row for row in rows if not row["ok"])
        click.echo(f"verification failed at n={bad['n']} m={bad['m']} xs={bad['xs']}", err=True)
        sys.exit(1)


@main.command("cx-compare")
@click.argument("file_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("file_b", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--method",
    type=click.Choice(["oracle", "ohlin", "szostok", "levin-steckin"]),
    default="oracle",
    show_default=True,
)
@click.option("--a", "lower", default=None, help="Left endpoint for interval methods.")
@click.option("--b", "upper", default=None, help="Right endpoint for interval methods.")
@click.option("--out", default=None)
def cmd_cx_compare(file_a, file_b, method, lower, upper, out):
    """Decide `lhs <=_cx rhs` for two distribution files.

    Exits 0 when the chosen method confirms the order, 1 when it does not,
    2 on parse failure, 3 when the method's preconditions are unmet.
    """
    try:
        with open(file_a, encoding="utf-8") as fa:
            lhs = parse_distribution(fa.read())
        with open(file_b, encoding="utf-8") as fb:
            rhs = parse_distribution(fb.read())
    except FormatError as exc:
        click.echo(f"cannot parse distribution: {exc}", err=True)
        sys.exit(2)

    try:
        a = as_rational(lower) if lower is not None else min(lhs.min_support, rhs.min_support)
        b = as_rational(upper) if upper is not None else max(lhs.max_support, rhs.max_support)
    except FormatError as exc:
        click.echo(f"invalid endpoint: {exc}", err=True)
        sys.exit(2)

    holds: bool
    try:
        if method == "oracle":
            verdict = cx_compare_oracle(lhs, rhs)
            report = verdict.to_json_dict()
            holds = verdict.holds
        elif method == "ohlin":
            if lhs.mean() != rhs.mean():
                click.echo("ohlin requires equal means", err=True)
                sys.exit(3)
            ohlin = ohlin_check(lhs, rhs)
            report = ohlin.to_json_dict()
            holds = ohlin.applies
        elif method == "levin-steckin":
            ls = levin_steckin_check(lhs, rhs, a, b)
            report = ls.to_json_dict()
            holds = ls.holds
        else:
            sz = szostok_decision(lhs, rhs, a, b)
            report = sz.to_json_dict()
            holds = sz.decision
    except StandingHypothesisError as exc:
        click.echo(f"standing hypotheses unmet: {exc}", err=True)
        sys.exit(3)
    except ParameterError as exc:
        click.echo(f"method preconditions unmet: {exc}", err=True)
        sys.exit(3)

    _emit(_json_payload({"method": method, **report}), _resolve_out(out))
    sys.exit(0 if holds else 1)


@main.command("counterexample")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--json", "force_json", is_flag=True, help="Alias for --format json.")
@click.option("--out", default=None)
@click.option("--scan", default=0, type=int, help="Also scan N random equal-mean pairs.")
@click.option("--seed", default=0, type=int, show_default=True)
def cmd_counterexample(fmt, force_json, out, scan, seed):
    """Reproduce the four-atom counterexample and certify every exact value."""
    if force_json:
        fmt = "json"
    try:
        report = analyze_counterexample()
    except VerificationError as exc:
        click.echo(f"counterexample verification failed: {exc}", err=True)
        sys.exit(1)
    payload_obj = report.to_json_dict()
    payload_obj["holds"] = report.oracle_verdict.holds
    if scan > 0:
        payload_obj["scan"] = _scan_for_violations(scan, seed)
    if fmt == "csv":
        flat = {
            "lhs": " ".join(f"{s}:{m}" for s, m in report.lhs.atoms),
            "rhs": " ".join(f"{s}:{m}" for s, m in report.rhs.atoms),
            "sign_change_points": ";".join(str(x) for x in report.sign_change_points),
            "areas": ";".join(str(a) for a in report.areas),
            "szostok_decision": report.szostok_decision,
            "holds": report.oracle_verdict.holds,
            "witness_function": report.witness_function.describe(),
        }
        payload = _csv_payload([flat], list(flat.keys()))
    else:
        payload = _json_payload(payload_obj)
    _emit(payload, _resolve_out(out))


def _scan_for_violations(count: int, seed: int) -> dict:
    rng = random.Random(seed)
    violations = []
    for _ in range(count):
        lhs, rhs = random_equal_mean_pair(rng, max_atoms=4)
        verdict = cx_compare_oracle(lhs, rhs)
        if not verdict.holds:
            violations.append(
                {
                    "lhs": [[str(s), str(m)] for s, m in lhs.atoms],
                    "rhs": [[str(s), str(m)] for s, m in rhs.atoms],
                    "witness": str(verdict.witness),
                }
            )
    return {
        "pairs": count,
        "violations": len(violations),
        "examples": violations[:5],
    }


@main.command("hoeffding")
@click.argument("ps", nargs=-1)
@click.option("--random", "random_count", default=0, type=int, help="Check N random instances.")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--n-max", default=8, type=int, show_default=True)
@click.option("--denom", default=20, type=int, show_default=True)
@click.option("--out", default=None)
def cmd_hoeffding(ps, random_count, seed, n_max, denom, out):
    """Check sums of independent Bernoulli draws against the pooled binomial.

    Pass explicit probabilities (`hoeffding 1/4 3/4`) or `--random N` for a
    seeded batch; exits 0 only if every instance satisfies the order.
    """
    instances: list[list[Fraction]] = []
    try:
        if ps:
            instances.append([as_rational(p) for p in ps])
        if random_count:
            if n_max < 1 or denom < 2:
                raise ParameterError("need --n-max >= 1 and --denom >= 2")
            rng = random.Random(seed)
            for _ in range(random_count):
                n = rng.randint(1, n_max)
                instances.append([random_probability(rng, denom) for _ in range(n)])
        if not instances:
            raise click.UsageError("pass probabilities or --random N")
        rows = []
        all_hold = True
        for inst in instances:
            verdict = verify_hoeffding(inst)
            all_hold = all_hold and verdict.holds
            rows.append({"ps": ";".join(str(p) for p in inst), "holds": verdict.holds})
    except FormatError as exc:
        click.echo(f"invalid probability: {exc}", err=True)
        sys.exit(2)
    except ParameterError as exc:
        click.echo(f"invalid probability: {exc}", err=True)
        sys.exit(2)
    _emit(
        _json_payload({"command": "hoeffding", "all_hold": all_hold, "instances": rows}),
        _resolve_out(out),
    )
    if not all_hold:
        sys.exit(1)


@main.command("psi-pattern")
@click.option("--n", required=True, type=int)
@click.argument("xs", nargs=-1, required=True)
@click.option("--out", default=None)
def cmd_psi_pattern(n, xs, out):
    """Sign pattern of the mass gap between mixture and pooled binomial.

    Exits 0 when the pattern has the expected +,-,+ shape with exactly two
    sign changes; 2 on invalid or degenerate input.
    """
    try:
        pattern = psi_sign_pattern(n, [as_rational(x) for x in xs])
    except (FormatError, ParameterError) as exc:
        click.echo(f"invalid input: {exc}", err=True)
        sys.exit(2)
    shape_ok = (
        pattern.change_count == 2
        and pattern.values[0] > 0
        and pattern.values[-1] > 0
    )
    _emit(
        _json_payload({"command": "psi-pattern", "n": n, **pattern.to_json_dict()}),
        _resolve_out(out),
    )
    if not shape_ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
