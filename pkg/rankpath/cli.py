"""
Command-line interface: verify, map, series, enumerate, trajectory

Exit status is 0 when every check passes, 1 when a counterexample is found
and 2 on usage or input errors.  With --format json every result is one JSON
object per line on stdout with sorted keys; logs go to stderr.
"""

import functools
import json
import logging

import click
from colorama import Fore, Style
from colorama import init as colorama_init

from rankpath import __version__, identities, maps, oracle
from rankpath.config import load_settings
from rankpath.errors import RankPathError
from rankpath.logging_setup import configure_logging
from rankpath.partitions import parse_constraint
from rankpath.qseries import QTPoly, TruncatedSeries, product_exponents

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

# option flag -> catalog parameter name
PARAM_OPTIONS = (
    ("--m", "m"),
    ("--n", "n"),
    ("--ell", "ell"),
    ("--N", "N"),
    ("--r", "r"),
    ("--M", "M"),
    ("--D", "D"),
    ("--a", "a"),
    ("--b", "b"),
    ("--i", "i"),
    ("--k", "k"),
)


def _dest(name):
    return f"p_{name}" if name in ("N", "M") else f"p_{name.lower()}"


def param_options(value_type, help_text):
    def decorate(fn):
        for flag, name in reversed(PARAM_OPTIONS):
            fn = click.option(flag, _dest(name), type=value_type, default=None, help=f"{help_text} {name}")(fn)
        return fn

    return decorate


def collect_params(kwargs):
    """Pop the parameter options out of kwargs into {catalog name: value}"""
    params = {}
    for _, name in PARAM_OPTIONS:
        value = kwargs.pop(_dest(name), None)
        if value is not None:
            params[name] = value
    return params


def run_options(fn):
    fn = click.option("--format", "output_format", type=click.Choice(["text", "json"]), default=None,
                      help="Output format (env RANKPATH_FORMAT)")(fn)
    fn = click.option("--cap", type=int, default=None, help="Enumeration cap (env RANKPATH_CAP)")(fn)
    fn = click.option("--jobs", type=int, default=None, help="Worker processes (env RANKPATH_JOBS)")(fn)
    return fn


def _settings(ctx, output_format=None, cap=None, jobs=None):
    return ctx.obj.override(output_format=output_format, cap=cap, jobs=jobs)


def handle_errors(fn):
    """Turn RankPathError into a message on stderr and exit status 2"""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except RankPathError as e:
            logger.warning(f"rejected input: {e}")
            click.echo(f"Error ({e.kind}): {e}", err=True)
            click.get_current_context().exit(EXIT_USAGE)

    return wrapper


def emit_json(payload):
    click.echo(json.dumps(payload, sort_keys=True))


def _color(text, color):
    return f"{color}{text}{Style.RESET_ALL}"


@click.group()
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default=None)
@click.option("--cap", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (env RANKPATH_LOG_LEVEL)")
@click.version_option(__version__, prog_name="rankpath")
@click.pass_context
def main(ctx, output_format, cap, jobs, log_level):
    """Exact generating functions for partitions with constrained successive ranks"""
    try:
        settings = load_settings().override(output_format=output_format, cap=cap, jobs=jobs, log_level=log_level)
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    configure_logging(settings.log_level)
    colorama_init()
    ctx.obj = settings


# ---------------------------------------------------------------- verify


def _print_report(report, settings):
    if settings.output_format == "json":
        emit_json(report.to_json())
        return
    checked = len(report.cells)
    passed = checked - len(report.failures)
    status = _color("PASS", Fore.GREEN) if report.passed else _color("FAIL", Fore.RED)
    click.echo(
        f"{status} {report.identity}: {passed}/{checked} cells"
        f" ({report.skipped} out of range) in {report.seconds:.2f}s"
    )
    cx = report.counterexample
    if cx is not None:
        cell = ", ".join(f"{k}={v}" for k, v in cx.params.items())
        click.echo(f"  counterexample at {cell}")
        click.echo(f"    formula: {cx.left_text}")
        click.echo(f"    oracle:  {cx.right_text}")


@main.command()
@click.argument("identity")
@param_options(str, "Range a..b, a,b,c or a for")
@run_options
@click.pass_context
@handle_errors
def verify(ctx, identity, output_format, cap, jobs, **kwargs):
    """Check a catalogued identity over a parameter grid ('all' runs the whole catalog)

    Without range options each identity runs its default grid, sized for a
    quick check. Pass wider ranges for a full run; the acceptance sweeps take
    m and n up to 7.
    """
    settings = _settings(ctx, output_format, cap, jobs)
    overrides = collect_params(kwargs)
    names = sorted(identities.CATALOG) if identity == "all" else [identity]
    all_passed = True
    for name in names:
        report = identities.verify(name, overrides if identity != "all" else None, settings.jobs, settings.cap)
        _print_report(report, settings)
        all_passed = all_passed and report.passed
    ctx.exit(EXIT_OK if all_passed else EXIT_MISMATCH)


@main.command("identities")
@run_options
@click.pass_context
@handle_errors
def list_identities(ctx, output_format, cap, jobs):
    """List the identity catalog"""
    settings = _settings(ctx, output_format, cap, jobs)
    for entry in identities.list_identities():
        if settings.output_format == "json":
            emit_json(entry)
        else:
            grid = " ".join(f"--{k} {v}" for k, v in entry["grid"].items())
            click.echo(f"{entry['name']:<24} {grid:<40} {entry['description']}")


# ---------------------------------------------------------------- map


@main.command("map")
@click.argument("name", type=click.Choice(sorted(maps.MAPS)))
@click.option("--input", "raw_input", required=True, help="JSON partition, boxed partition or step word")
@click.option("--ell", type=int, default=None)
@click.option("--round-trip", is_flag=True, help="Also apply the inverse map and report whether the input returns")
@run_options
@click.pass_context
@handle_errors
def map_cmd(ctx, name, raw_input, ell, round_trip, output_format, cap, jobs):
    """Apply a bijection and print the image with its statistics"""
    settings = _settings(ctx, output_format, cap, jobs)
    result = maps.apply_map(name, raw_input, ell, round_trip)
    if settings.output_format == "json":
        emit_json(result)
    else:
        output = result["output"]
        click.echo(output if isinstance(output, str) else json.dumps(output, sort_keys=True))
        for key, value in sorted(result["stats"].items()):
            click.echo(f"  {key}: {json.dumps(value, sort_keys=True)}")
        if round_trip:
            click.echo(f"round trip: {'ok' if result['round_trip'] else 'FAILED'}")
    if round_trip and not result["round_trip"]:
        ctx.exit(EXIT_MISMATCH)


# ---------------------------------------------------------------- series


def _cap_t(value, t_max):
    if t_max is None:
        return value
    if isinstance(value, QTPoly):
        return QTPoly({i: p for i, p in value.terms.items() if i <= t_max})
    if isinstance(value, TruncatedSeries) and "t" in value.variables:
        idx = value.variables.index("t")
        kept = {e: c for e, c in value.coeffs.items() if e[idx] <= t_max}
        return TruncatedSeries(value.variables, value.order, kept)
    return value


@main.command()
@click.argument("formula")
@param_options(int, "Value of")
@click.option("--t-max", type=int, default=None, help="Drop powers of t above this")
@click.option("--t1", is_flag=True, help="Specialize t = 1")
@click.option("--exponents", is_flag=True, help="Print the product exponents s_1..s_D instead")
@run_options
@click.pass_context
@handle_errors
def series(ctx, formula, t_max, t1, exponents, output_format, cap, jobs, **kwargs):
    """Expand a named closed form (limits need --D)"""
    settings = _settings(ctx, output_format, cap, jobs)
    params = collect_params(kwargs)
    D = params.pop("D", None)
    value = identities.evaluate_formula(formula, D, **params)
    if t1:
        value = identities.specialize_t1(value)
    value = _cap_t(value, t_max)
    if exponents:
        order = D if D is not None else getattr(value, "order", None)
        if order is None:
            raise click.UsageError("--exponents needs --D")
        s = list(product_exponents(value, order))
        if settings.output_format == "json":
            emit_json({"formula": formula, "D": order, "exponents": s})
        else:
            click.echo(" ".join(str(x) for x in s))
        return
    if settings.output_format == "json":
        emit_json({"formula": formula, "params": params, "D": D, "value": identities.to_json_value(value)})
    else:
        click.echo(str(value))


# ---------------------------------------------------------------- enumerate

FAMILIES = ("box", "partitions", "up-to", "paths")


def build_family(family, m, n, N, max_parts, rank, valleys, above, below, parts_not):
    if family == "box":
        spec = oracle.PartitionsInBox(_require(m, "--m"), _require(n, "--n"))
    elif family == "partitions":
        spec = oracle.PartitionsOfN(_require(N, "--N"))
    elif family == "up-to":
        spec = oracle.PartitionsUpTo(_require(N, "--N"), max_parts)
    else:
        spec = oracle.PathsInGrid(_require(m, "--m"), _require(n, "--n"))
    if rank:
        spec = oracle.RankFiltered(spec, parse_constraint(rank))
    if parts_not:
        try:
            forbidden = frozenset(int(p) for p in parts_not.split(",") if p)
        except ValueError as e:
            raise click.BadParameter(
                f"expected comma-separated integers, got {parts_not!r}", param_hint="--parts-not"
            ) from e
        spec = oracle.PartsFiltered(spec, forbidden=forbidden)
    if valleys:
        spec = oracle.ValleyFiltered(spec, parse_constraint(valleys))
    if above is not None:
        spec = oracle.AboveLine(spec, above)
    if below is not None:
        spec = oracle.AboveLine(spec, below, complement=True)
    return spec


def _require(value, flag):
    if value is None:
        raise click.UsageError(f"This family needs {flag}")
    return value


@main.command("enumerate")
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--m", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--N", "big_n", type=int, default=None)
@click.option("--max-parts", type=int, default=None)
@click.option("--rank", default=None, help="Rank constraint: >=b, <=b, [lo,hi] or {v,...}")
@click.option("--valleys", default=None, help="Valley-height constraint, same syntax")
@click.option("--above", type=int, default=None, help="Keep paths staying weakly above y = ELL")
@click.option("--below", type=int, default=None, help="Keep paths dipping below y = ELL")
@click.option("--parts-not", default=None, help="Comma-separated forbidden parts")
@click.option("--gf", "tstat", type=click.Choice(oracle.TSTATS), default=None,
              help="Print the generating function with t marking this statistic")
@click.option("--count", "only_count", is_flag=True)
@run_options
@click.pass_context
@handle_errors
def enumerate_cmd(ctx, family, m, n, big_n, max_parts, rank, valleys, above, below, parts_not, tstat,
                  only_count, output_format, cap, jobs):
    """List a finite family in lexicographic order"""
    settings = _settings(ctx, output_format, cap, jobs)
    spec = build_family(family, m, n, big_n, max_parts, rank, valleys, above, below, parts_not)
    as_json = settings.output_format == "json"
    if only_count:
        total = oracle.count(spec, settings.cap)
        if as_json:
            emit_json({"count": total})
        else:
            click.echo(total)
        return
    if tstat:
        value = oracle.gf(spec, tstat, settings.cap)
        if as_json:
            emit_json({"gf": value.to_json(), "tstat": tstat})
        else:
            click.echo(str(value))
        return
    for obj in oracle.enumerate_family(spec, settings.cap):
        if as_json:
            emit_json({"object": maps.render(obj), "stats": maps.stats_of(obj)})
        else:
            click.echo(str(obj))


# ---------------------------------------------------------------- trajectory


@main.command()
@click.option("--input", "raw_input", required=True, help='{"parts": [...], "m": m, "n": n}')
@click.option("--ell", type=int, required=True)
@run_options
@click.pass_context
@handle_errors
def trajectory(ctx, raw_input, ell, output_format, cap, jobs):
    """Iterate f ell times, printing every intermediate partition"""
    settings = _settings(ctx, output_format, cap, jobs)
    image, states = maps.trajectory(raw_input, ell)
    if settings.output_format == "json":
        for state in states:
            emit_json(state)
        emit_json({"image": image.to_json()})
        return
    click.echo(f"{'partition':<24} {'tau':>4} {'i':>3} {'d':>3} {'dr':>3} {'area':>5}")
    for state in states:
        tau = "inf" if state["tau"] is None else state["tau"]
        i = "-" if state["i"] is None else state["i"]
        parts = "(" + ",".join(str(p) for p in state["partition"]) + ")"
        click.echo(f"{parts:<24} {tau:>4} {i:>3} {state['d']:>3} {state['dr']:>3} {state['area']:>5}")
    click.echo(f"image in the {image.m}x{image.n} box: {json.dumps(image.to_json(), sort_keys=True)}")


if __name__ == "__main__":
    main()
