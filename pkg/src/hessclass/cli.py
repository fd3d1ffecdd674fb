"""``hess`` command-line front end.

Exit codes: 0 success, 1 failed check or internal error, 2 invalid input,
3 a Groebner budget ran out before every check finished.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from .classes import compute_class
from .hessideal import Operator, fulton_ideal, hess_ideal_I, hess_ideal_J, phi_image
from .perms import HessFn, build_wh, essential_set, rank_matrix
from .schubert import grothendieck_expand, schubert_expand
from .suites import LEVELS, SuiteOptions, default_hs, plan, report_json, run_suite

EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT = 1, 2, 3


class HessParam(click.ParamType):
    name = "h"

    def convert(self, value, param, ctx):
        if isinstance(value, HessFn):
            return value
        try:
            return HessFn.parse(value)
        except ValueError as exc:
            self.fail(f"invalid Hessenberg function {value!r}: {exc}", param, ctx)


HESS = HessParam()
FORMATS = click.Choice(["text", "json", "latex"])


def _guard(fn):
    """Map unexpected exceptions to exit code 1; usage errors keep click's code 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException):
            raise
        except Exception as exc:  # noqa: BLE001
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_FAIL)

    return wrapper


def _operator(text: str, n: int) -> Operator:
    try:
        return Operator.parse(text, n)
    except (ValueError, OSError) as exc:
        raise click.BadParameter(str(exc), param_hint="--op") from exc


def _dump(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=False))


@click.group()
@click.version_option(package_name="artifact", prog_name="hess")
def cli():
    """Classes of regular Hessenberg varieties in the flag variety."""


@cli.command("class")
@click.option("--h", "h", type=HESS, required=True, help="Hessenberg function, e.g. 2,3,4,4.")
@click.option("--theory", type=click.Choice(["cohomology", "ktheory"]), default="cohomology")
@click.option("--convention", type=click.Choice(["standard", "modified"]), default="standard")
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.option("--basis", type=click.Choice(["monomial", "schubert"]), default="monomial",
              help="schubert: coefficients in the Schubert (or Grothendieck) basis.")
@_guard
def class_cmd(h, theory, convention, fmt, basis):
    """Print the class of Y_{X,h} for regular X."""
    f = compute_class(h, theory, convention)
    if basis == "monomial":
        if fmt == "json":
            _dump({"h": list(h.h), "theory": theory, "convention": convention,
                   "basis": basis, "text": str(f), "polynomial": f.to_json()})
        else:
            click.echo(f.to_latex() if fmt == "latex" else str(f))
        return
    if theory == "cohomology":
        coeffs, symbol = schubert_expand(f, h.n), r"\mathfrak{S}"
    else:
        coeffs, symbol = grothendieck_expand(f, h.n, convention), r"\mathfrak{G}"
        if convention == "modified":
            symbol = r"\hat{\mathfrak{G}}"
    rows = sorted((str(w), int(c)) for w, c in coeffs.items() if c)
    if fmt == "json":
        _dump({"h": list(h.h), "theory": theory, "convention": convention, "basis": basis,
               "coefficients": dict(rows)})
    elif fmt == "latex":
        click.echo(" + ".join(f"{c if c != 1 else ''}{symbol}_{{{w}}}" for w, c in rows).replace("+ -", "- ") or "0")
    else:
        for w, c in rows:
            click.echo(f"{w} {c}")


@cli.command("wperm")
@click.option("--h", "h", type=HESS, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_guard
def wperm_cmd(h, fmt):
    """Show w_h, its length, essential set and rank data."""
    w = build_wh(h)
    r = rank_matrix(w)
    ess = essential_set(w)
    ranks = [{"cell": [i, j], "rank": r[i - 1][j - 1]} for i, j in ess]
    if fmt == "json":
        _dump({"h": list(h.h), "w_h": str(w), "oneline": w.to_json(), "length": w.length,
               "codim": h.codim(), "essential_set": ranks, "rank_matrix": r})
        return
    click.echo(f"w_h = {w}")
    click.echo(f"length = {w.length}")
    click.echo("essential set = " + (" ".join(f"({i},{j})" for i, j in ess) or "{}"))
    for item in ranks:
        i, j = item["cell"]
        click.echo(f"  r[{i},{j}] = {item['rank']}")


@cli.command("ideal")
@click.option("--h", "h", type=HESS, required=True)
@click.option("--which", type=click.Choice(["J", "I", "fulton", "phi"]), default="J")
@click.option("--op", "op", default="nilpotent", show_default=True,
              help="nilpotent | semisimple | semisimple:a,b,.. | file:path")
@click.option("--format", "fmt", type=FORMATS, default="text")
@_guard
def ideal_cmd(h, which, op, fmt):
    """List generators of J_{X,h}, I_{X,H_h}, I_{w_h} or phi(I_{w_h})."""
    if which == "fulton":
        ideal = fulton_ideal(build_wh(h), letter="y")
    else:
        X = _operator(op, h.n)
        ideal = {"J": hess_ideal_J, "I": hess_ideal_I, "phi": phi_image}[which](X, h)
    if fmt == "json":
        _dump(ideal.to_json())
        return
    for g in ideal.gens:
        click.echo(g.to_latex() if fmt == "latex" else str(g))


def _default_budget() -> float:
    raw = os.environ.get("HESS_TIME_BUDGET")
    if raw is None:
        return 60.0
    try:
        return float(raw)
    except ValueError:
        raise click.BadParameter(f"HESS_TIME_BUDGET must be a number, got {raw!r}")


@cli.command("verify")
@click.option("--n", "n", type=click.IntRange(1, 8), default=None, help="Size; all h of this size.")
@click.option("--all-h", is_flag=True, help="Run every Hessenberg function of size --n (default when --h is absent).")
@click.option("--h", "h", type=HESS, default=None, help="A single Hessenberg function.")
@click.option("--level", "levels", multiple=True, default=("all",),
              type=click.Choice(list(LEVELS) + ["all"]))
@click.option("--op", "op", default="nilpotent", show_default=True)
@click.option("--budget", type=float, default=None,
              help="Groebner budget per run in seconds [HESS_TIME_BUDGET, else 60].")
@click.option("--max-n", type=int, default=3, show_default=True, help="Largest n for Groebner-backed checks.")
@click.option("--saturate", is_flag=True, help="Class oracle on (J : det^inf); useful from n = 4.")
@click.option("--series-degree", type=int, default=6, show_default=True)
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="json")
@click.option("--timings", is_flag=True, help="Include wall-clock seconds (output is then not reproducible).")
@_guard
def verify_cmd(n, all_h, h, levels, op, budget, max_n, saturate, series_degree, jobs, fmt, timings):
    """Run verification suites and print per-check verdicts."""
    if h is not None and (n is not None and n != h.n):
        raise click.BadParameter(f"--n {n} disagrees with len(h) = {h.n}", param_hint="--n")
    if h is not None and all_h:
        raise click.UsageError("--h and --all-h are mutually exclusive")
    hs = [h] if h is not None else default_hs(n or 3)
    size = h.n if h is not None else (n or 3)
    chosen = list(LEVELS) if "all" in levels else list(dict.fromkeys(levels))
    if any(lv not in ("plucker", "length", "independence") for lv in chosen):
        _operator(op, size)
    budget = budget if budget is not None else _default_budget()
    opts = SuiteOptions(budget=budget, max_n=max_n, series_degree=series_degree, saturate=saturate)
    results = run_suite(plan(chosen, hs, op), opts, jobs)
    config = {"n": size, "h": [list(x.h) for x in hs], "levels": chosen, "operator": op,
              "budget": budget, "max_n": max_n, "saturate": saturate, "series_degree": series_degree}
    report = report_json(results, config, timings)
    if fmt == "json":
        _dump(report)
    else:
        for job in report["jobs"]:
            hs_txt = ",".join(map(str, job["h"])) if job["h"] else "-"
            for v in job["verdicts"]:
                extra = f" ({v['seconds']}s)" if timings else ""
                click.echo(f"{v['status']:7} {job['level']:12} h={hs_txt:10} op={job['operator']:10} {v['name']}{extra}")
        s = report["summary"]
        click.echo(f"summary: {s['pass']} pass, {s['fail']} fail, {s['timeout']} timeout")
    if report["status"] == "fail":
        sys.exit(EXIT_FAIL)
    if report["status"] == "timeout":
        sys.exit(EXIT_TIMEOUT)


def main(argv=None):
    cli.main(args=argv, prog_name="hess")


if __name__ == "__main__":
    main()
