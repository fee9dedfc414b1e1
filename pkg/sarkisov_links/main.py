#!/usr/bin/env python3
import dataclasses
import logging
import sys
from pathlib import Path

import click
from colorama import Fore, Style, init
from dotenv import load_dotenv

from .ambient_catalog import AmbientCatalog
from .constants import DEFAULT_AMBIENT_LABEL, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK, MIN_SECANT_DEGREE
from .divisor_lattice import BlowupSetup, parse_divisor, triple_product
from .engine_config import EngineConfig
from .errors import SarkisovError
from .k3_lattice import K3LatticeData, is_free_kH_minus_C, is_nef_kH_minus_C
from .link_classifier import ClassifierOptions, LinkVerdict, classify
from .reports import (
    catalog_to_text,
    classification_record,
    render_classification_text,
    scan_row,
    scan_to_csv,
    to_json,
)
from .scan_manager import OUTPUT_FORMATS, ScanManager, ScanRequest
from .secant_calculus import quadrisecant_count

init(autoreset=True)

logger = logging.getLogger(__name__)


class ExitCodeGroup(click.Group):
    """Command group whose commands return their exit code; usage errors exit with 1."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            rv = super().main(*args, **kwargs)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_ERROR)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_ERROR)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def _error(message: str) -> int:
    click.echo(f"{Fore.RED}Error: {message}{Style.RESET_ALL}", err=True)
    return EXIT_ERROR


def _bounds_options(func):
    """Diophantine and partner-search bounds shared by classify and scan."""
    options = [
        click.option("--box", type=click.IntRange(min=1), default=None, help="Partner and point-type search box |x|,|y|"),
        click.option("--modulus-max", type=click.IntRange(min=2), default=None, help="Largest modulus for congruence sweeps"),
        click.option("--search-box", type=click.IntRange(min=1), default=None, help="Witness search box for representability"),
        click.option("--no-k3-hypothesis", is_flag=True, help="Do not assume the curve lies on a Picard-rank-2 quartic K3"),
        click.option("--catalog", "catalog_file", type=click.Path(dir_okay=False), default=None, help="Ambient catalog file"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _build_options(config: EngineConfig, box, modulus_max, search_box, no_k3_hypothesis, catalog_file) -> ClassifierOptions:
    if catalog_file:
        config.set("catalog_file", catalog_file)
    problems = config.validate()
    if problems:
        raise click.UsageError("invalid configuration: " + "; ".join(problems))

    options = config.classifier_options()
    overrides = {}
    if box is not None:
        overrides["partner_box"] = box
    if modulus_max is not None:
        overrides["modulus_sweep_max"] = modulus_max
    if search_box is not None:
        overrides["search_box"] = search_box
    if no_k3_hypothesis:
        overrides["k3_hypothesis"] = False
    return dataclasses.replace(options, **overrides)


@click.group(cls=ExitCodeGroup)
@click.option("--verbose", "-v", is_flag=True, help="Log search details")
@click.option("--config", "config_file", default=None, help="Path to a JSON configuration file")
@click.pass_context
def cli(ctx, verbose, config_file):
    """Classify Sarkisov links of blowups of rank-one Fano threefolds along curves."""
    load_dotenv()
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = EngineConfig(config_file)


@cli.command("classify")
@click.option("-d", "--degree", type=click.IntRange(min=MIN_SECANT_DEGREE), required=True, help="Degree of the curve")
@click.option("-g", "--genus", type=click.IntRange(min=0), required=True, help="Genus of the curve")
@click.option("--ambient", default=DEFAULT_AMBIENT_LABEL, help="Ambient label from the catalog")
@click.option("--format", "output_format", type=click.Choice(["text", "json", "csv"]), default="text")
@_bounds_options
@click.pass_obj
def classify_command(config, degree, genus, ambient, output_format, box, modulus_max, search_box, no_k3_hypothesis, catalog_file):
    """Classify the link starting from Bl_C(ambient) for a curve of degree d and genus g."""
    try:
        options = _build_options(config, box, modulus_max, search_box, no_k3_hypothesis, catalog_file)
        setup = BlowupSetup(options.resolved_catalog().get(ambient), degree, genus)
        result = classify(setup, options)
    except SarkisovError as e:
        return _error(str(e))

    if output_format == "json":
        click.echo(to_json(classification_record(result)))
    elif output_format == "csv":
        click.echo(scan_to_csv([scan_row(result)]), nl=False)
    else:
        click.echo(render_classification_text(result))
        colour = Fore.GREEN if result.verdict.is_conclusive else Fore.YELLOW
        click.echo(f"{colour}{result.verdict.label}{Style.RESET_ALL}", err=True)

    return EXIT_INCONCLUSIVE if result.verdict == LinkVerdict.INCONCLUSIVE else EXIT_OK


@cli.command("scan")
@click.option("--d-min", type=int, default=5, help="Smallest curve degree")
@click.option("--d-max", type=int, required=True, help="Largest curve degree")
@click.option("--g-min", type=int, default=0, help="Smallest curve genus")
@click.option("--g-max", type=int, required=True, help="Largest curve genus")
@click.option("--ambient", default=DEFAULT_AMBIENT_LABEL, help="Ambient label from the catalog")
@click.option("--format", "output_format", type=click.Choice(list(OUTPUT_FORMATS)), default="csv")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Parallel workers for the scan")
@click.option("--output", "output_path", type=click.Path(dir_okay=False), default=None, help="Write the table to a file")
@_bounds_options
@click.pass_obj
def scan_command(config, d_min, d_max, g_min, g_max, ambient, output_format, workers, output_path, box, modulus_max, search_box, no_k3_hypothesis, catalog_file):
    """Classify every (d, g) in a grid and print one row per cell."""
    try:
        request = ScanRequest(d_min, d_max, g_min, g_max, ambient, output_format)
        options = _build_options(config, box, modulus_max, search_box, no_k3_hypothesis, catalog_file)
        ambient_fano = options.resolved_catalog().get(ambient)
        manager = ScanManager(options, workers or config.get("workers", 1))
        rows = manager.run(request, ambient_fano)
        text = manager.render(request, ambient_fano, rows)
    except SarkisovError as e:
        return _error(str(e))

    if output_path:
        try:
            Path(output_path).write_text(text if text.endswith("\n") else text + "\n")
        except OSError as e:
            return _error(f"cannot write {output_path}: {e}")
        click.echo(f"{Fore.GREEN}✓ Wrote {len(rows)} rows to {output_path}{Style.RESET_ALL}", err=True)
    else:
        click.echo(text, nl=not text.endswith("\n"))
    return EXIT_OK


@cli.command("k3")
@click.option("--n", "n", type=int, default=2, help="H_S^2 = 2n")
@click.option("--d", "d", type=int, required=True, help="C.H_S")
@click.option("--g", "g", type=int, required=True, help="Genus of C")
@click.option("--k", "k", type=int, default=4, help="Test kH_S - C")
def k3_command(n, d, g, k):
    """Nef and free tests for kH_S - C on a rank-2 K3 lattice."""
    try:
        lattice = K3LatticeData(n, d, g)
        nef = is_nef_kH_minus_C(lattice, k)
        free = is_free_kH_minus_C(lattice, k)
    except ValueError as e:
        return _error(str(e))

    click.echo(f"nef: {'yes' if nef else 'no'}, free: {'yes' if free else 'no'}")
    logger.debug("nef: %s; free: %s", nef.reason, free.reason)
    return EXIT_OK


@cli.command("secants")
@click.option("--d", "d", type=int, required=True, help="Degree of the curve")
@click.option("--g", "g", type=int, required=True, help="Genus of the curve")
def secants_command(d, g):
    """Number of quadrisecant lines of a general space curve."""
    try:
        click.echo(str(quadrisecant_count(d, g)))
    except SarkisovError as e:
        return _error(str(e))
    return EXIT_OK


@cli.command("triple")
@click.argument("first")
@click.argument("second")
@click.argument("third")
@click.option("--d", "d", type=int, required=True, help="Degree of the curve")
@click.option("--g", "g", type=int, required=True, help="Genus of the curve")
@click.option("--ambient", default=DEFAULT_AMBIENT_LABEL, help="Ambient label from the catalog")
@click.pass_obj
def triple_command(config, first, second, third, d, g, ambient):
    """Triple product D1.D2.D3 on Bl_C(ambient) for classes written like 4H-1E."""
    try:
        setup = BlowupSetup(config.load_catalog().get(ambient), d, g)
        classes = [parse_divisor(text) for text in (first, second, third)]
        click.echo(str(triple_product(*classes, setup)))
    except (SarkisovError, ValueError) as e:
        return _error(str(e))
    return EXIT_OK


@cli.command("catalog")
@click.option("--raw", is_flag=True, help="Print in catalog file format")
@click.option("--catalog", "catalog_file", type=click.Path(dir_okay=False), default=None, help="Ambient catalog file")
@click.pass_obj
def catalog_command(config, raw, catalog_file):
    """List the active ambient catalog."""
    try:
        catalog = AmbientCatalog.from_file(catalog_file) if catalog_file else config.load_catalog()
    except SarkisovError as e:
        return _error(str(e))
    click.echo(catalog.to_text() if raw else catalog_to_text(catalog), nl=not raw)
    return EXIT_OK


if __name__ == "__main__":
    cli()
