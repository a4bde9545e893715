"""Command-line front end: ``sumscore table|solve|contrib|score|simulate``.

Exit codes: 0 success, 1 usage, 2 validation, 3 I/O.  Every failure prints a
single ``<kind>-error: <reason>`` line on stderr.
"""
from __future__ import annotations

import json
import sys

import click

from .calibration import DECIMALS, calibrate, calibration_table
from .design import QuestionnaireDesign, audit_design, score_sheet
from .errors import SumScoreError
from .formats import load_design, read_responses, scores_to_csv
from .moments import DEFAULT_MAX_K, MIN_K
from .simulate import SimulationConfig, Uniform, Weighted, convergence_sweep, run_simulation

EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 1, 2, 3


def _fail(kind: str, code: int, message) -> None:
    click.echo(f"{kind}-error: {' '.join(str(message).split())}", err=True)
    sys.exit(code)


class _Group(click.Group):
    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            return super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as e:
            _fail("usage", EXIT_USAGE, e.format_message())
        except click.Abort:
            _fail("usage", EXIT_USAGE, "aborted")
        except SumScoreError as e:
            _fail("validation", EXIT_VALIDATION, e)
        except OSError as e:
            _fail("io", EXIT_IO, e)


def _fmt(x: float) -> str:
    return f"{x:.{DECIMALS}f}"


def _aligned(header, rows) -> str:
    widths = [max(len(h), *(len(r[j]) for r in rows)) if rows else len(h)
              for j, h in enumerate(header)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += [" | ".join([r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])])
              for r in rows]
    return "\n".join(lines) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


FORMAT = click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
                      default="text", show_default=True)
K_TYPE = click.IntRange(MIN_K, DEFAULT_MAX_K)


@click.group(cls=_Group)
@click.version_option(package_name="artifact")
def cli():
    """Calibrate and score sums of dichotomous and same-scale Likert items."""


@cli.command()
@click.option("--kmin", type=K_TYPE, default=3, show_default=True)
@click.option("--kmax", type=K_TYPE, default=10, show_default=True)
@FORMAT
def table(kmin, kmax, fmt):
    """Optimal range, exact and suggested dichotomous upper value per k."""
    if kmin > kmax:
        raise click.UsageError(f"--kmin ({kmin}) must not exceed --kmax ({kmax})")
    rows = calibration_table(kmin, kmax)
    if fmt == "json":
        click.echo(_dump([r.as_dict() for r in rows]), nl=False)
    elif fmt == "csv":
        out = ["scale,range,upper_value,suggested_value"]
        out += [f"{r.k},{_fmt(r.optimal_range)},{_fmt(r.exact_upper)},{r.suggested_upper}"
                for r in rows]
        click.echo("\n".join(out))
    else:
        click.echo(_aligned(
            ["Scale", "Range", "Upper Value", "Suggested Value"],
            [[str(r.k), _fmt(r.optimal_range), _fmt(r.exact_upper), str(r.suggested_upper)]
             for r in rows],
        ), nl=False)


@cli.command()
@click.option("--k", "k", type=K_TYPE, required=True, help="Likert scale length.")
@FORMAT
def solve(k, fmt):
    """Solve for the dichotomous upper value giving every item an equal share."""
    r = calibrate(k)
    if fmt == "json":
        click.echo(_dump(r.as_dict()), nl=False)
    elif fmt == "csv":
        click.echo("scale,range,upper_value,suggested_value")
        click.echo(f"{r.k},{_fmt(r.optimal_range)},{_fmt(r.exact_upper)},{r.suggested_upper}")
    else:
        click.echo(f"k = {r.k}")
        click.echo(f"optimal range   {_fmt(r.optimal_range)}")
        click.echo(f"exact upper     {_fmt(r.exact_upper)}")
        click.echo(f"suggested upper {r.suggested_upper}")


@cli.command()
@click.option("--n1", type=click.IntRange(0), required=True, help="Number of dichotomous items.")
@click.option("--n2", type=click.IntRange(0), required=True, help="Number of Likert items.")
@click.option("--k", "k", type=K_TYPE, required=True, help="Likert scale length.")
@click.option("--upper", type=int, help="Dichotomous upper value [default: suggested].")
@FORMAT
def contrib(n1, n2, k, upper, fmt):
    """Variance share of each item kind in the sum score."""
    if n1 + n2 < 1:
        raise click.UsageError("need at least one item (--n1 + --n2 >= 1)")
    if upper is not None and upper < 2:
        raise click.UsageError("--upper must be >= 2")
    design = QuestionnaireDesign.from_counts(n1, n2, k, upper)
    audit = audit_design(design, k)
    if audit.flagged:
        click.echo(f"warning: {audit.message}", err=True)
    if fmt == "json":
        doc = {"n1": n1, "n2": n2, "k": k, "upper": design.upper, **audit.as_dict()}
        click.echo(_dump(doc), nl=False)
        return
    kinds = []
    for kind, count in (("dichotomous", n1), ("likert", n2)):
        if count:
            it = next(i for i in audit.report.items if i.kind == kind)
            kinds.append([kind, str(count), _fmt(float(it.variance)), _fmt(it.contribution),
                          _fmt(it.ideal), _fmt(it.deviation)])
    header = ["kind", "count", "variance", "contribution", "ideal", "deviation"]
    if fmt == "csv":
        click.echo("\n".join(",".join(r) for r in [header] + kinds))
    else:
        click.echo(_aligned(header, kinds), nl=False)
        click.echo(f"total variance {_fmt(float(audit.report.total_variance))}")
        if audit.calibration is not None:
            click.echo(f"suggested upper {audit.calibration.suggested_upper}")


@cli.command()
@click.option("--design", "design_path", type=click.Path(dir_okay=False), required=True)
@click.option("--responses", "responses_path", type=click.Path(dir_okay=False), required=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def score(design_path, responses_path, out_path, fmt):
    """Sum recoded answers per respondent."""
    design = load_design(design_path)
    sheet = read_responses(responses_path)
    scores = score_sheet(design, sheet)
    if fmt == "json":
        text = _dump([{"respondent_id": r, "score": s} for r, s in scores])
    else:
        text = scores_to_csv(scores)
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _parse_sizes(ctx, param, value):
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter("expected comma-separated integers") from None


@cli.command()
@click.option("--design", "design_path", type=click.Path(dir_okay=False),
              help="Design JSON; otherwise built from --n1/--n2/--k/--upper.")
@click.option("--n1", type=click.IntRange(0), default=2, show_default=True)
@click.option("--n2", type=click.IntRange(0), default=8, show_default=True)
@click.option("--k", "k", type=K_TYPE, default=5, show_default=True)
@click.option("--upper", type=click.IntRange(2), help="[default: suggested for k]")
@click.option("--n", "n", type=click.IntRange(2), default=1_000_000, show_default=True,
              help="Number of simulated respondents.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), required=True)
@click.option("--weights", "weights_path", type=click.Path(dir_okay=False),
              help="JSON object {item_id: [p_low, ..., p_high]} for a non-uniform scenario.")
@click.option("--sweep", callback=_parse_sizes, help="Comma-separated sample sizes; overrides --n.")
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def simulate(design_path, n1, n2, k, upper, n, seed, weights_path, sweep, workers, fmt):
    """Monte Carlo check of the analytic variance shares."""
    if design_path:
        design = load_design(design_path)
    else:
        if n1 + n2 < 1:
            raise click.UsageError("need at least one item (--n1 + --n2 >= 1)")
        design = QuestionnaireDesign.from_counts(n1, n2, k, upper)
    scenario = Uniform()
    if weights_path:
        with open(weights_path) as fh:
            try:
                scenario = Weighted(json.load(fh))
            except json.JSONDecodeError as e:
                raise click.UsageError(f"{weights_path}: not valid JSON ({e.msg})") from None
    config = SimulationConfig(design, n if not sweep else max(2, sweep[0]), seed, scenario)
    reports = convergence_sweep(config, sweep, workers) if sweep else [run_simulation(config, workers)]
    if fmt == "json":
        docs = [r.as_dict() for r in reports]
        click.echo(_dump(docs if sweep else docs[0]), nl=False)
        return
    for rep in reports:
        click.echo(f"seed {rep.seed}  respondents {rep.respondents}  scenario {rep.scenario}")
        rows = [[it.item_id, _fmt(it.empirical_variance), _fmt(it.empirical_contribution),
                 _fmt(it.analytic_contribution), _fmt(it.abs_error)] for it in rep.items]
        click.echo(_aligned(["item", "variance", "empirical", "analytic", "abs error"], rows), nl=False)
        click.echo(f"sum variance {_fmt(rep.sum_variance)}  "
                   f"sum of item variances {_fmt(rep.item_variance_total)}")
        click.echo(f"max abs error {_fmt(rep.max_abs_error)}")


def main():
    cli()


if __name__ == "__main__":
    main()
