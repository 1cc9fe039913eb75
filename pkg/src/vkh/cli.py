"""Command line interface: ``vkh <command> FILE``.

Exit status is 0 on success, 1 when a check finds a mismatch or an
obstruction, and 2 on bad input (including exceeded state budgets).
"""

from __future__ import annotations

import json
import sys
from functools import wraps

import click

from vkh.analysis import classicality_check, kh_doubled
from vkh.atoms import atom_report
from vkh.cover import double_cover
from vkh.diagram.cable import cable
from vkh.diagram.codes import load_diagrams, serialize_diagram
from vkh.errors import NoRoot, VkhError
from vkh.fuzz import FuzzConfig, invariance_fuzz
from vkh.khovanov.homology import tensor_sqrt
from vkh.khovanov.local import kh_table
from vkh.polynomial import parse_poincare
from vkh.state_sum import A_CIRCLE, bracket, jhat, jones_x, kauffman_a

FIELDS = click.Choice(["z2", "q"], case_sensitive=False)


def _reports_errors(fn):
    @wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (VkhError, ValueError, OSError) as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(2)
    return run


def _diagrams(path: str) -> list:
    ds = load_diagrams(path)
    if not ds:
        raise ValueError(f"{path} contains no diagram")
    return ds


def _single(path: str):
    ds = _diagrams(path)
    if len(ds) != 1:
        raise ValueError(f"{path} holds {len(ds)} diagrams; this command takes exactly one")
    return ds[0]


def _each(path: str, show):
    ds = _diagrams(path)
    for k, d in enumerate(ds):
        if len(ds) > 1:
            click.echo(f"# diagram {k + 1}")
        click.echo(show(d))


def _write(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Invariants of virtual links: brackets, Khovanov homology, atoms and covers."""


@main.command("bracket")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--variable", type=click.Choice(["q", "a"]), default="q", show_default=True)
@_reports_errors
def bracket_cmd(file, variable):
    """State-sum bracket of each diagram."""
    _each(file, lambda d: str(bracket(d) if variable == "q" else kauffman_a(d)))


@main.command("jones")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--normalized", is_flag=True, help="Divide out one unknot factor.")
@click.option("--variable", type=click.Choice(["q", "a"]), default="q", show_default=True)
@_reports_errors
def jones_cmd(file, normalized, variable):
    """Writhe-normalized Jones polynomial."""
    def show(d):
        if variable == "q":
            return str(jhat(d, normalized))
        x = jones_x(d)
        return str(x if normalized else x * A_CIRCLE)
    _each(file, show)


@main.command("homology")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--field", type=FIELDS, default="z2", show_default=True)
@click.option("--doubled", "k", type=int, default=None, help="Use the K-strand cable (K even).")
@click.option("--cover", is_flag=True, help="Use the orienting double cover.")
@click.option("--method", type=click.Choice(["auto", "cube", "scan"]), default="auto", show_default=True)
@click.option("--json", "as_json", is_flag=True)
@_reports_errors
def homology_cmd(file, field, k, cover, method, as_json):
    """Khovanov homology as a Betti table and Poincare polynomial."""
    if k is not None and cover:
        raise ValueError("--doubled and --cover are exclusive")

    def show(d):
        if k is not None:
            table = kh_doubled(d, k, field)
        elif cover:
            table = kh_table(double_cover(d), field, method)
        else:
            table = kh_table(d, field, method)
        return table.to_json() if as_json else table.tsv()
    _each(file, show)


@main.command("atom")
@click.argument("file", type=click.Path(dir_okay=False))
@_reports_errors
def atom_cmd(file):
    """Orientability, Euler characteristic, genus and goodness of the atom."""
    _each(file, lambda d: json.dumps(atom_report(d).as_dict()))


@main.command("cover")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.option("--seed", type=int, default=None, help="Random spanning tree seed.")
@_reports_errors
def cover_cmd(file, output, seed):
    """Orienting double cover as diagram JSON."""
    _write(serialize_diagram(double_cover(_single(file), seed=seed), indent=2), output)


@main.command("cable")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("-n", "k", type=int, required=True, help="Number of strands.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@_reports_errors
def cable_cmd(file, k, output):
    """Blackboard-framed K-strand cable as diagram JSON."""
    _write(serialize_diagram(cable(_single(file), k), indent=2), output)


@main.command("sqrt-poincare")
@click.argument("polyfile", type=click.Path(dir_okay=False))
@_reports_errors
def sqrt_cmd(polyfile):
    """Tensor square root of a Poincare polynomial in t and q."""
    with open(polyfile) as fh:
        p = parse_poincare(fh.read())
    try:
        click.echo(f"P(t,q) = {tensor_sqrt(p)}")
    except NoRoot as err:
        click.echo(f"no root: {err}")
        sys.exit(1)


@main.command("classical-check")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--field", type=FIELDS, default="z2", show_default=True)
@_reports_errors
def classical_cmd(file, field):
    """Search for an obstruction to being classical."""
    obstructed = False
    for d in _diagrams(file):
        v = classicality_check(d, field)
        obstructed |= v.obstructed
        click.echo(json.dumps(v.as_dict()))
    sys.exit(1 if obstructed else 0)


@main.command("fuzz")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--iters", type=int, default=100, show_default=True)
@click.option("--max-crossings", type=int, default=8, show_default=True)
@click.option("--max-moves", type=int, default=6, show_default=True)
@click.option("--moves", default=None, help="Comma list: R1,R1sq,R2,R3,V, all or framed.")
@click.option("--invariants", default="jhat,kh_z2", show_default=True)
@click.option("--fields", default="z2", show_default=True)
@click.option("--json", "as_json", is_flag=True)
@_reports_errors
def fuzz_cmd(seed, iters, max_crossings, max_moves, moves, invariants, fields, as_json):
    """Check invariance under random move sequences."""
    cfg = FuzzConfig(
        moves=moves, max_crossings=max_crossings, iterations=iters, seed=seed,
        invariants=tuple(s for s in invariants.split(",") if s), max_moves=max_moves,
        fields=tuple(s for s in fields.split(",") if s),
    )
    report = invariance_fuzz(cfg)
    click.echo(report.to_json() if as_json else report.summary())
    if not as_json:
        for m in report.mismatches:
            click.echo(f"mismatch {m.invariant} at iteration {m.iteration} (seed {m.seed}): "
                       f"{m.value_before} != {m.value_after}")
    sys.exit(0 if report.ok else 1)
