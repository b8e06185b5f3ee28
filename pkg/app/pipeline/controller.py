import sys
from typing import Dict, Optional

import click
from tabulate import tabulate

# --- User-Editable Controller Configuration ---
TABLE_FORMAT = "simple"
MAX_DETAIL_WIDTH = 100

# --- Exit codes (stable contract for CI) ---
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

from app.pipeline.steps import run
from src.models.schemas import Report, RunRequest
from src.utils import config
from src.utils.errors import HookdualError
from src.utils.file_io import save_json_file
from src.walgebra.duality import FAIL


def _clip(text: Optional[str]) -> str:
    if not text:
        return ""
    return text if len(text) <= MAX_DETAIL_WIDTH else text[:MAX_DETAIL_WIDTH - 3] + "..."


def print_report(report: Report):
    rows = [[c.status, c.name, _clip(c.detail)] for c in report.checks]
    if rows:
        print(tabulate(rows, headers=["status", "check", "detail"], tablefmt=TABLE_FORMAT))
    scalars = [[key, value] for key, value in sorted(report.results.items())
               if isinstance(value, (str, int, float, bool)) or value is None]
    if scalars:
        print()
        print(tabulate(scalars, headers=["result", "value"], tablefmt=TABLE_FORMAT))
    print(f"\nSTATUS: {report.status}  ({len(report.checks)} checks, {report.elapsed_seconds}s)")


def execute(command: str, params: Dict, json_path: Optional[str], use_cache: bool = True):
    """Builds the request, runs it and exits with the report's code; HookdualError is a usage error."""
    request = RunRequest(command=command, params={k: v for k, v in params.items() if v is not None},
                         use_cache=use_cache)
    try:
        report = run(request)
    except HookdualError as e:
        click.echo(f"ERROR: {e}", err=True)
        sys.exit(EXIT_USAGE)
    print_report(report)
    if json_path:
        if not save_json_file(json_path, report.model_dump(), "report"):
            sys.exit(EXIT_USAGE)
        print(f"Report written to {json_path}")
    sys.exit(EXIT_FAIL if report.status == FAIL else EXIT_PASS)


json_option = click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None,
                           help="Write the report as JSON to this path.")
cache_option = click.option("--no-cache", is_flag=True, default=False, help="Ignore cached passing reports.")


@click.group()
def hookdual():
    """Exact checks of the hook-type W-superalgebra duality."""


@hookdual.command("algebra-info")
@click.option("--algebra", required=True, help="gl1, sl2, so5, sp4, osp12 ... or sl(M|N), osp(M|2N).")
@click.option("--form", default=None, help="Form normalization: kappa0, tr, 1/2tr, str, -str, 1/2str.")
@json_option
@cache_option
def algebra_info(algebra, form, json_path, no_cache):
    execute("algebra-info", {"algebra": algebra, "form": form}, json_path, not no_cache)


@hookdual.command("char")
@click.option("--algebra", required=True)
@click.option("--lambda", "lam", default="", help="Fundamental coordinates, e.g. '1,0'.")
@click.option("--mu", default=None, help="Second weight for the tensor product decomposition.")
@click.option("--order", default=None, help="Also print ch V^k_lambda up to q^order (half-integers allowed).")
@click.option("--level", default=None, help="Level expression in k; symbolic k by default.")
@json_option
@cache_option
def char(algebra, lam, mu, order, level, json_path, no_cache):
    execute("char", {"algebra": algebra, "lambda": lam, "mu": mu, "order": order, "level": level},
            json_path, not no_cache)


@hookdual.command("kernel")
@click.option("--algebra", required=True)
@click.option("--n", type=int, required=True)
@click.option("--order", default=None, help="Also compute the kernel character up to q^order.")
@click.option("--weight-bound", type=int, default=0, help="Largest |lambda| summed; 0 derives it from the order.")
@json_option
@cache_option
def kernel(algebra, n, order, weight_bound, json_path, no_cache):
    execute("kernel", {"algebra": algebra, "n": n, "order": order, "weight_bound": weight_bound},
            json_path, not no_cache)


@hookdual.group("duality")
def duality():
    """Level maps and the main theorem for X+ / Y-."""


@duality.command("levels")
@click.option("--X", "X", required=True, type=click.Choice(["A", "B", "C", "D", "O"], case_sensitive=False))
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@json_option
@cache_option
def duality_levels(X, n, m, json_path, no_cache):
    execute("duality-levels", {"X": X.upper(), "n": n, "m": m}, json_path, not no_cache)


@duality.command("verify")
@click.option("--X", "X", required=True, type=click.Choice(["A", "B", "C", "D", "O"], case_sensitive=False))
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--order", default="2", help="Truncation in powers of q (half-integers allowed).")
@click.option("--r", default=None, help="Override r_X (falsification control).")
@json_option
@cache_option
def duality_verify(X, n, m, order, r, json_path, no_cache):
    execute("duality-verify", {"X": X.upper(), "n": n, "m": m, "order": order, "r": r}, json_path, not no_cache)


@hookdual.command("semicoh")
@click.option("--algebra", required=True, help="gl1, sl2, so3, sp2 or osp12.")
@click.option("--lambda", "lam", default="")
@click.option("--mu", default="")
@click.option("--maxweight", type=int, default=2)
@click.option("--filtrations", is_flag=True, default=False, help="Also compare the F and G first pages.")
@json_option
@cache_option
def semicoh(algebra, lam, mu, maxweight, filtrations, json_path, no_cache):
    execute("semicoh", {"algebra": algebra, "lambda": lam, "mu": mu, "maxweight": maxweight,
                        "filtrations": filtrations or None}, json_path, not no_cache)


@hookdual.command("ce-verify")
@click.option("--algebra", required=True)
@click.option("--lambda", "lam", default="")
@click.option("--max-degree", type=int, default=2)
@click.option("--depth", type=int, default=0, help="Also compute H_n(L^- g, V^k_lambda) to this weight.")
@json_option
@cache_option
def ce_verify(algebra, lam, max_degree, depth, json_path, no_cache):
    execute("ce-verify", {"algebra": algebra, "lambda": lam, "max_degree": max_degree, "depth": depth or None},
            json_path, not no_cache)


@hookdual.command("ep-check")
@click.option("--algebra", required=True)
@click.option("--lambda", "lam", default="")
@click.option("--mu", default="")
@click.option("--maxweight", type=int, default=3)
@click.option("--cohomology", is_flag=True, default=False, help="Compare with the slice cohomology as well.")
@json_option
@cache_option
def ep_check(algebra, lam, mu, maxweight, cohomology, json_path, no_cache):
    execute("ep-check", {"algebra": algebra, "lambda": lam, "mu": mu, "maxweight": maxweight,
                         "cohomology": cohomology or None}, json_path, not no_cache)


@hookdual.command("tables")
@click.option("--n", type=int, default=1)
@click.option("--m", type=int, default=1)
@click.option("--tables", "tables_file", type=click.Path(dir_okay=False), default=None,
              help="Validate this hook table file instead of the bundled one.")
@json_option
def tables(n, m, tables_file, json_path):
    execute("tables", {"n": n, "m": m, "tables_file": tables_file}, json_path, use_cache=False)


@hookdual.command("suite")
@click.option("--profile", type=click.Choice(["fast", "full"]), default="fast")
@click.option("--tables", "tables_file", type=click.Path(dir_okay=False), default=None)
@json_option
@cache_option
def suite(profile, tables_file, json_path, no_cache):
    if json_path is None:
        json_path = str(config.get_run_output_dir(config.OUTPUT_DIR, "suite", profile) / "suite_report.json")
    execute("suite", {"profile": profile, "tables_file": tables_file}, json_path, not no_cache)


# The request tags double as top-level aliases.
hookdual.add_command(duality_levels, "duality-levels")
hookdual.add_command(duality_verify, "duality-verify")

if __name__ == "__main__":
    hookdual()
