"""Command-line front end: ``compute``, ``verify``, ``fuzz`` and ``surgery``.

Exit codes: 0 when everything passes, 1 on a property failure, 2 on bad input.
Output depends only on the inputs, flags and seed.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import click

from .checks import CHECKS, FAIL, PASS, SKIPPED, Outcome
from .errors import HeegaardError, ParseError
from .hdg import format_hdg, parse_hdg
from .invariants import quantities
from .layout import validate_layout
from .moves import random_diagram
from . import surgery as surg

INPUT_ERROR = 2
PROPERTY_FAILURE = 1


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _plain(value):
    """Make a value JSON-ready, writing rationals as ``p/q`` strings."""
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _emit(ctx: click.Context, report: dict, text_lines: list[str]) -> None:
    if ctx.obj["json"]:
        click.echo(json.dumps(_plain(report), indent=2))
    else:
        for line in text_lines:
            click.echo(line)


def _aligned(pairs) -> list[str]:
    width = max(len(k) for k, _ in pairs)
    return [f"{k.ljust(width)}  {v}" for k, v in pairs]


def _input_error(where: str, err: Exception):
    if isinstance(err, ParseError) and err.line is not None:
        msg = f"{where}:{err.line}: {err.reason}"
    else:
        msg = f"{where}: {err}"
    click.echo(f"error: {msg}", err=True)
    sys.exit(INPUT_ERROR)


def _load_diagram(path: str):
    text = Path(path).read_text()
    try:
        return parse_hdg(text), text
    except HeegaardError as err:
        _input_error(path, err)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _common_options(f):
    """Global flags, also accepted after the subcommand name."""
    f = click.option("--threads", type=int, default=None, help="Worker processes for fuzzing.")(f)
    f = click.option("--seed", type=int, default=None, help="Base random seed.")(f)
    f = click.option("--json", "as_json", is_flag=True, default=None, help="JSON output.")(f)
    return f


def _settle(ctx, as_json, seed, threads):
    if as_json:
        ctx.obj["json"] = True
    if seed is not None:
        ctx.obj["seed"] = seed
    if threads is not None:
        ctx.obj["threads"] = threads


@click.group()
@click.option("--json", "as_json", is_flag=True, help="JSON output.")
@click.option("--seed", type=int, default=0, show_default=True, help="Base random seed.")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker processes for fuzzing.")
@click.pass_context
def main(ctx, as_json, seed, threads):
    """Invariants of decorated Heegaard diagrams and surgery formulas."""
    ctx.obj = {"json": as_json, "seed": seed, "threads": max(1, threads)}


# -- compute -----------------------------------------------------------------------


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_common_options
@click.pass_context
def compute(ctx, file, as_json, seed, threads):
    """Print genus, det, J, ell2, s_ell, e and theta_tilde of an HDG file."""
    _settle(ctx, as_json, seed, threads)
    D, text = _load_diagram(file)
    try:
        q = quantities(D)
    except HeegaardError as err:
        _input_error(file, err)
    J = [list(row) for row in D.J]
    report = {
        "command": "compute",
        "input_sha256": _digest(text),
        "genus": D.genus,
        "det": D.det,
        "J": J,
        "ell2": q.ell2,
        "s_ell": q.s_ell,
        "e": q.e,
        "theta_tilde": q.theta,
    }
    j_text = "; ".join(" ".join(rational_str(x) for x in row) for row in J)
    _emit(
        ctx,
        report,
        _aligned(
            [
                ("genus", str(D.genus)),
                ("det", str(D.det)),
                ("J", f"[{j_text}]"),
                ("ell2", rational_str(q.ell2)),
                ("s_ell", rational_str(q.s_ell)),
                ("e", rational_str(q.e)),
                ("theta_tilde", rational_str(q.theta)),
            ]
        ),
    )


# -- verify --------------------------------------------------------------------------


def _parse_checks(value: str) -> list[str]:
    names = [v.strip() for v in value.split(",") if v.strip()]
    unknown = [n for n in names if n not in CHECKS]
    if unknown or not names:
        raise click.BadParameter(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    return names


def _run_check(name: str, D, seed_text: str):
    rng = random.Random(seed_text)
    try:
        return CHECKS[name](D, rng)
    except HeegaardError as err:
        return Outcome(name, FAIL, {"error": f"{type(err).__name__}: {err}"})


@main.command()
@click.argument("file", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--fuzz", "use_fuzz", is_flag=True, help="Check generated diagrams instead of FILE.")
@click.option("--checks", "checks", default="w-change,m-change,square,twist", show_default=True)
@click.option("--iters", type=int, default=10, show_default=True)
@click.option("--steps", type=int, default=20, show_default=True, help="Moves per generated diagram.")
@click.option("--genus-max", type=int, default=3, show_default=True)
@_common_options
@click.pass_context
def verify(ctx, file, use_fuzz, checks, iters, steps, genus_max, as_json, seed, threads):
    """Run property checks on FILE or on generated diagrams; stop at the first failure."""
    _settle(ctx, as_json, seed, threads)
    names = _parse_checks(checks)
    if (file is None) == (not use_fuzz):
        click.echo("error: give exactly one of FILE or --fuzz", err=True)
        sys.exit(INPUT_ERROR)
    base = ctx.obj["seed"]
    fixed, digest = None, None
    if file is not None:
        fixed, text = _load_diagram(file)
        digest = _digest(text)
    counts = {n: {PASS: 0, SKIPPED: 0, FAIL: 0} for n in names}
    failure = None
    for it in range(iters):
        D = fixed if fixed is not None else random_diagram(base ^ it, steps, genus_max)
        for name in names:
            outcome = _run_check(name, D, f"{base}:{it}:{name}")
            counts[name][outcome.status] += 1
            if outcome.status == FAIL:
                failure = {
                    "iteration": it,
                    "check": name,
                    "detail": outcome.detail,
                    "reproducer": format_hdg(D),
                }
                break
        if failure:
            break
    status = {}
    for n in names:
        c = counts[n]
        status[n] = FAIL if c[FAIL] else (PASS if c[PASS] else SKIPPED)
    report = {
        "command": "verify",
        "input_sha256": digest,
        "seed": base,
        "iters": iters,
        "checks": {n: {"status": status[n], **counts[n]} for n in names},
        "failure": failure,
    }
    lines = [
        f"{n}: {status[n]} ({counts[n][PASS]} passed, {counts[n][SKIPPED]} skipped)" for n in names
    ]
    if failure:
        lines.append(f"first failure: {failure['check']} at iteration {failure['iteration']}")
        lines.append(json.dumps(_plain(failure["detail"]), sort_keys=True))
        lines.append("reproducer:")
        lines.extend(failure["reproducer"].rstrip("\n").splitlines())
    _emit(ctx, report, lines)
    sys.exit(PROPERTY_FAILURE if failure else 0)


# -- fuzz --------------------------------------------------------------------------------


def _fuzz_one(args):
    index, seed, steps, genus_max, names = args
    D = random_diagram(seed, steps, genus_max)
    failed = {}
    theta = None
    try:
        validate_layout(D)
        theta = quantities(D).theta
        if theta != 0:
            failed["theta"] = {"theta_tilde": rational_str(theta)}
    except HeegaardError as err:
        failed["validate"] = {"error": str(err)}
    if not failed:
        for name in names:
            outcome = _run_check(name, D, f"{seed}:{name}")
            if outcome.status == FAIL:
                failed[name] = _plain(outcome.detail)
    return {
        "index": index,
        "seed": seed,
        "genus": D.genus,
        "crossings": len(D.loc),
        "theta_tilde": rational_str(theta) if theta is not None else None,
        "status": FAIL if failed else PASS,
        "failed": failed,
        "hdg": format_hdg(D) if failed else None,
    }


def _write_report(rows, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "fuzz.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "seed", "genus", "crossings", "theta_tilde", "status", "failed"])
        for r in rows:
            writer.writerow(
                [r["index"], r["seed"], r["genus"], r["crossings"], r["theta_tilde"], r["status"],
                 ";".join(sorted(r["failed"]))]
            )
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for status, colour in ((PASS, "tab:blue"), (FAIL, "tab:red")):
        pts = [(r["index"], r["crossings"]) for r in rows if r["status"] == status]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=12, color=colour, label=status)
    ax.set_xlabel("diagram index")
    ax.set_ylabel("crossings")
    ax.set_title("fuzzed diagrams")
    ax.legend()
    fig.tight_layout()
    fig.savefig(directory / "fuzz.png", dpi=100, metadata={"Software": None})
    plt.close(fig)


@main.command()
@click.option("--steps", type=int, default=30, show_default=True)
@click.option("--genus-max", type=int, default=3, show_default=True)
@click.option("--count", type=int, default=20, show_default=True)
@click.option("--checks", "checks", default=",".join(CHECKS), show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="fuzz-failures",
              show_default=True, help="Directory for failing HDG reproducers.")
@click.option("--report", "report_dir", type=click.Path(file_okay=False), default=None,
              help="Write fuzz.csv and fuzz.png into this directory.")
@_common_options
@click.pass_context
def fuzz(ctx, steps, genus_max, count, checks, out_dir, report_dir, as_json, seed, threads):
    """Generate random diagrams of the 3-sphere and check every property on each."""
    _settle(ctx, as_json, seed, threads)
    names = _parse_checks(checks)
    base = ctx.obj["seed"]
    jobs = [(k, base ^ k, steps, genus_max, names) for k in range(count)]
    if ctx.obj["threads"] > 1:
        with ProcessPoolExecutor(max_workers=ctx.obj["threads"]) as pool:
            rows = list(pool.map(_fuzz_one, jobs))
    else:
        rows = [_fuzz_one(j) for j in jobs]
    failures = [r for r in rows if r["status"] == FAIL]
    written = []
    if failures:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in failures:
            path = out / f"fuzz-{r['seed']}.hdg"
            header = f"# failed: {', '.join(sorted(r['failed']))}\n"
            path.write_text(header + r["hdg"])
            written.append(str(path))
    if report_dir:
        _write_report(rows, Path(report_dir))
    report = {
        "command": "fuzz",
        "seed": base,
        "steps": steps,
        "count": count,
        "passed": count - len(failures),
        "failed": len(failures),
        "failures": [
            {"seed": r["seed"], "failed": r["failed"], "reproducer": r["hdg"]} for r in failures
        ],
        "reproducer_files": written,
    }
    lines = [f"{count - len(failures)}/{count} diagrams passed"]
    for r, path in zip(failures, written):
        lines.append(f"seed {r['seed']}: failed {', '.join(sorted(r['failed']))} -> {path}")
    _emit(ctx, report, lines)
    sys.exit(PROPERTY_FAILURE if failures else 0)


# -- surgery ------------------------------------------------------------------------------


@main.command()
@click.option("--linking-matrix", "matrix_file", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", type=int, default=1, show_default=True, help="Surgery coefficient 1/n.")
@click.option("--emit", type=click.Choice(["alexander", "lambda", "all"]), default="all",
              show_default=True)
@_common_options
@click.pass_context
def surgery(ctx, matrix_file, n, emit, as_json, seed, threads):
    """Casson surgery quantities from a Seifert linking matrix."""
    _settle(ctx, as_json, seed, threads)
    if n == 0:
        click.echo("error: --n must be nonzero", err=True)
        sys.exit(INPUT_ERROR)
    try:
        S = surg.parse_linking_matrix(Path(matrix_file).read_text())
    except HeegaardError as err:
        _input_error(matrix_file, err)
    report = {"g": S.genus}
    lines = [("g", str(S.genus))]
    if emit in ("lambda", "all"):
        lam = surg.lambda_prime(S)
        report["lambda_prime"] = lam
        lines.append(("lambda_prime", str(lam)))
    if emit in ("alexander", "all"):
        poly = surg.alexander(S)
        report["alexander"] = {str(k): c for k, c in poly.coeffs}
        lines.append(("alexander", str(poly)))
    if emit in ("lambda", "all"):
        half = surg.delta_second_derivative_at_one(S)
        delta = surg.casson_surgery_delta(S, n)
        report["delta_second_half"] = half
        report["surgery_delta"] = delta
        lines.append(("delta_second_half", rational_str(half)))
        lines.append(("surgery_delta", str(delta)))
    _emit(ctx, report, _aligned(lines))


if __name__ == "__main__":  # pragma: no cover
    main()
