import json
import logging
from pathlib import Path
from typing import Optional

import click

from treecode import __version__
from treecode.barcode import (
    barcode_inversion_vector,
    permutation_type,
    standard_barcode,
)
from treecode.cli_functions import (
    build_sampler,
    configure_logging,
    exactly_one,
    get_config,
    is_barcode,
    parse_overrides,
    parse_permutation,
    reports_errors,
    resolve_barcode_or_permutation,
)
from treecode.config import CONFIG_TEMPLATE_YAML
from treecode.constants import DEFAULT_CONFIG_FILE, TREECODE_CONFIG
from treecode.formats import (
    LabelledMergeTreeDocument,
    MergeTreeDocument,
    open_input,
    open_output,
    parse_newick,
    read_barcode,
    read_merge_tree,
    to_newick,
    write_barcode,
    write_document,
    write_merge_tree,
)
from treecode.formats.documents import parse_document
from treecode.formats.tables import (
    curves_frame,
    distribution_frame,
    histogram_frame,
    write_frame,
)
from treecode.mergetree import (
    canonical_code,
    combinatorially_equivalent,
    elder_rule,
    standardize,
)
from treecode.partition_lattice import (
    MaximalChain,
    chain_to_tree,
    count_maximal_chains,
    enumerate_maximal_chains,
    tree_to_chain,
)
from treecode.permkit import cycle_notation, left_inversion_vector
from treecode.phylo import (
    count_phylo_classes,
    eta_brute_force,
    eta_lower_bound,
    h_delta,
    t_delta,
)
from treecode.realization import enumerate_realizations, trn, trn_of_barcode
from treecode.stats import (
    chi_square_statistic,
    empirical_log_trn,
    expected_log_trn,
    kth_moment,
    mean,
    null_curves,
    pushforward_histogram,
    sample_barcodes,
    second_moment,
    trn_distribution,
    variance,
)
from treecode.utils import CliContext

logger = logging.getLogger(__name__)

SCHEMES = click.Choice(["conditioned", "separated"])

input_option = click.option(
    "-i",
    "--in",
    "input_path",
    type=str,
    default="-",
    show_default=True,
    help="Input file or fsspec URL, `-` for stdin",
)
output_option = click.option(
    "-o",
    "--out",
    "output_path",
    type=str,
    default="-",
    show_default=True,
    help="Output file or fsspec URL, `-` for stdout",
)
perm_option = click.option(
    "-p",
    "--perm",
    callback=parse_permutation,
    help="Permutation in 1-indexed image notation, e.g. 3,2,1,4",
)
barcode_input_option = click.option(
    "-i",
    "--in",
    "input_path",
    type=str,
    default=None,
    help="Barcode JSON file, `-` for stdin",
)


def sampling_options(func):
    for option in reversed(
        [
            click.option("--scheme", type=SCHEMES, default="conditioned", show_default=True),
            click.option("-n", "--n", "n", type=click.IntRange(min=1), required=True),
            click.option("--seed", type=int, help="Root seed, defaults to sampling.seed"),
            click.option("--trials", type=click.IntRange(min=1), help="Defaults to sampling.trials"),
            click.option("--jobs", type=click.IntRange(min=1), help="Worker processes"),
            click.option("--chunk-size", type=click.IntRange(min=1), help="Trials per random stream"),
            click.option("--birth-low", type=float),
            click.option("--birth-high", type=float),
            click.option("--death-low", type=float, help="Separated scheme only"),
            click.option("--death-high", type=float),
        ]
    ):
        func = option(func)
    return func


@click.group("treecode", context_settings=dict(help_option_names=["-h", "--help"]))
@click.version_option(__version__, prog_name="treecode")
@click.option(
    "-c",
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help=f"Configuration file. Defaults to env `{TREECODE_CONFIG}`, then ./{DEFAULT_CONFIG_FILE}",
)
@click.option(
    "-s",
    "--set",
    "overrides",
    multiple=True,
    metavar="KEY=VALUE",
    callback=parse_overrides,
    help="Override a configuration key, e.g. `sampling.seed=7`. Can be repeated",
)
@click.option("-v", "--verbose", is_flag=True, default=False, help="Debug logging on stderr")
@click.pass_context
def commands(ctx, config_path: Optional[str], overrides, verbose: bool):
    """Merge trees, barcodes and tree realization numbers"""
    configure_logging(verbose)
    ctx.obj = CliContext(config=None, config_path=config_path, overrides=overrides)


@commands.command()
@click.option("--seed", type=int, default=0, show_default=True, help="Root seed of the sampler")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--force", is_flag=True, default=False, help="Overwrite an existing file")
def init(seed: int, jobs: int, force: bool):
    """
    Creates a treecode.yml configuration in the current directory
    """
    target_path = Path.cwd().joinpath(DEFAULT_CONFIG_FILE)
    if target_path.exists() and not force:
        raise click.UsageError(f"{target_path} already exists, use --force to overwrite it")
    target_path.write_text(CONFIG_TEMPLATE_YAML.format(seed=seed, jobs=jobs) + "\n")
    click.echo(f"Configuration generated in {target_path}")


@commands.command("perm-type")
@barcode_input_option
@click.option("--cycles", is_flag=True, default=False, help="Print in cycle notation")
@reports_errors
def perm_type(input_path: Optional[str], cycles: bool):
    """Prints the permutation type of a barcode"""
    with open_input(input_path or "-") as stream:
        barcode = read_barcode(stream)
    sigma = permutation_type(barcode)
    click.echo(cycle_notation(sigma) if cycles else str(sigma))


@commands.command("inv-vector")
@perm_option
@barcode_input_option
@reports_errors
def inv_vector(perm, input_path: Optional[str]):
    """Prints the left inversion vector of a permutation or a barcode"""
    source = resolve_barcode_or_permutation(perm, input_path)
    vector = barcode_inversion_vector(source) if is_barcode(source) else left_inversion_vector(source)
    click.echo(str(vector))


@commands.command("trn")
@perm_option
@barcode_input_option
@reports_errors
def trn_command(perm, input_path: Optional[str]):
    """Prints the tree realization number of a permutation or a barcode"""
    source = resolve_barcode_or_permutation(perm, input_path)
    click.echo(str(trn_of_barcode(source) if is_barcode(source) else trn(source)))


@commands.command("enumerate")
@perm_option
@barcode_input_option
@output_option
@click.option("--start", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--stop", type=click.IntRange(min=0), default=None, help="Exclusive end index")
@reports_errors
def enumerate_command(perm, input_path: Optional[str], output_path: str, start: int, stop: Optional[int]):
    """
    Streams every merge tree realizing a barcode as newline-delimited JSON.
    With --perm the standard barcode of the permutation is used.
    """
    source = resolve_barcode_or_permutation(perm, input_path)
    barcode = source if is_barcode(source) else standard_barcode(source)
    with open_output(output_path) as out:
        for tree in enumerate_realizations(barcode, start, stop):
            write_merge_tree(tree, out)


@commands.command()
@input_option
@output_option
@reports_errors
def elder(input_path: str, output_path: str):
    """Computes the barcode of a merge tree with the Elder rule"""
    with open_input(input_path) as stream:
        tree = read_merge_tree(stream)
    with open_output(output_path) as out:
        write_barcode(elder_rule(tree), out)


@commands.command("standardize")
@input_option
@output_option
@reports_errors
def standardize_command(input_path: str, output_path: str):
    """Replaces merge tree heights by birth and death ranks"""
    with open_input(input_path) as stream:
        tree = read_merge_tree(stream)
    with open_output(output_path) as out:
        write_merge_tree(standardize(tree), out)


@commands.command()
@click.argument("first", type=str)
@click.argument("second", type=str)
@reports_errors
def equiv(first: str, second: str):
    """Prints true when two merge trees are combinatorially equivalent"""
    trees = []
    for path in (first, second):
        with open_input(path) as stream:
            trees.append(read_merge_tree(stream))
    logger.debug("Codes: %s and %s", canonical_code(trees[0]), canonical_code(trees[1]))
    click.echo(json.dumps(combinatorially_equivalent(*trees)))


@commands.command()
@click.option("-n", "--n", "n", type=click.IntRange(min=0), help="Ground set is {0, ..., n}")
@click.option("--count", "mode", flag_value="count", help="Print the number of maximal chains")
@click.option("--list", "mode", flag_value="list", help="Print every maximal chain")
@click.option("--to-tree", "mode", flag_value="to-tree", help="Read a chain, write its merge tree")
@click.option("--from-tree", "mode", flag_value="from-tree", help="Read a standard tree, write its chain")
@input_option
@output_option
@reports_errors
def chains(n: Optional[int], mode: Optional[str], input_path: str, output_path: str):
    """
    Maximal chains of the partition lattice, one partition per line (`0|1,2`);
    chains in a list are separated by blank lines
    """
    if mode is None:
        raise click.UsageError("Specify one of --count, --list, --to-tree, --from-tree")
    if mode in ("count", "list") and n is None:
        raise click.UsageError(f"--{mode} needs --n")
    with open_output(output_path) as out:
        if mode == "count":
            out.write(f"{count_maximal_chains(n)}\n")
        elif mode == "list":
            for chain in enumerate_maximal_chains(n):
                out.write(f"{chain}\n\n")
        elif mode == "to-tree":
            with open_input(input_path) as stream:
                chain = MaximalChain.parse(stream.read().splitlines())
            write_merge_tree(chain_to_tree(chain), out)
        else:
            with open_input(input_path) as stream:
                tree = read_merge_tree(stream)
            out.write(f"{tree_to_chain(tree)}\n")


@commands.command()
@click.option("-n", "--n", "n", type=click.IntRange(min=1), required=True)
@output_option
@click.pass_obj
@reports_errors
def dist(ctx: CliContext, n: int, output_path: str):
    """Writes the exact distribution of realization numbers over S_n as CSV"""
    limit = get_config(ctx).limits.max_distribution_n
    with open_output(output_path) as out:
        write_frame(distribution_frame(trn_distribution(n, limit)), out)


@commands.command()
@click.option("-n", "--n", "n", type=click.IntRange(min=1), required=True)
@click.option("-k", "--k", "k", type=click.IntRange(min=0), help="Also print the k-th moment")
@reports_errors
def moments(n: int, k: Optional[int]):
    """Prints exact moments of the realization number over S_n as JSON"""
    result = {
        "n": n,
        "mean": str(mean(n)),
        "second_moment": str(second_moment(n)),
        "variance": str(variance(n)),
    }
    if k is not None:
        result["k"] = k
        result["kth_moment"] = str(kth_moment(n, k))
    click.echo(json.dumps(result))


@commands.command()
@click.option("-n", "--n", "n", type=click.IntRange(min=1), required=True)
@reports_errors
def explog(n: int):
    """Prints the expected log realization number over S_n"""
    click.echo(repr(expected_log_trn(n)))


@commands.command()
@sampling_options
@output_option
@click.pass_obj
@reports_errors
def sample(
    ctx: CliContext, scheme: str, n: int, seed, trials, jobs, chunk_size, output_path: str, **intervals
):
    """Streams random strict barcodes as newline-delimited JSON"""
    sampler = build_sampler(ctx, scheme, seed, chunk_size, **intervals)
    config = get_config(ctx).sampling
    with open_output(output_path) as out:
        for barcode in sample_barcodes(sampler, n, trials or config.trials, jobs or config.jobs):
            write_barcode(barcode, out)


@commands.command()
@sampling_options
@output_option
@click.option("--chi-square", is_flag=True, default=False, help="Print the statistic vs uniform on stderr")
@click.pass_obj
@reports_errors
def hist(
    ctx: CliContext,
    scheme: str,
    n: int,
    seed,
    trials,
    jobs,
    chunk_size,
    output_path: str,
    chi_square: bool,
    **intervals,
):
    """Writes the histogram of permutation types of random barcodes as CSV"""
    sampler = build_sampler(ctx, scheme, seed, chunk_size, **intervals)
    config = get_config(ctx).sampling
    histogram = pushforward_histogram(sampler, n, trials or config.trials, jobs or config.jobs)
    with open_output(output_path) as out:
        write_frame(histogram_frame(histogram), out)
    if chi_square:
        click.echo(
            click.style(f"chi-square vs uniform: {chi_square_statistic(histogram, n):.4f}", fg="green"),
            err=True,
        )


@commands.command()
@click.option("--count", "count_leaves", type=click.IntRange(min=2), help="Number of leaves")
@click.option("--eta", is_flag=True, default=False, help="Exact eta of a Newick tree")
@click.option("--eta-bound", is_flag=True, default=False, help="Lower bound on eta of a Newick tree")
@click.option("--h-delta", "h_delta_height", type=float, help="Metric Newick tree to labelled merge tree")
@click.option("--t-delta", "t_delta_height", type=float, help="Merge tree JSON to metric Newick tree")
@input_option
@output_option
@click.pass_obj
@reports_errors
def phylo(
    ctx: CliContext,
    count_leaves: Optional[int],
    eta: bool,
    eta_bound: bool,
    h_delta_height: Optional[float],
    t_delta_height: Optional[float],
    input_path: str,
    output_path: str,
):
    """Phylogenetic trees: class counts, eta, and the maps to and from merge trees"""
    mode = exactly_one(
        count=count_leaves, eta=eta, eta_bound=eta_bound, h_delta=h_delta_height, t_delta=t_delta_height
    )
    with open_output(output_path) as out:
        if mode == "count":
            out.write(f"{count_phylo_classes(count_leaves)}\n")
            return
        with open_input(input_path) as stream:
            text = stream.read()
        if mode == "t_delta":
            tree = parse_document(MergeTreeDocument, text).to_tree()
            out.write(to_newick(t_delta(tree, t_delta_height)) + "\n")
        elif mode == "h_delta":
            labelled = h_delta(parse_newick(text), h_delta_height)
            write_document(LabelledMergeTreeDocument.from_labelled(labelled), out)
        elif mode == "eta":
            limit = get_config(ctx).limits.max_eta_internal_nodes
            out.write(f"{eta_brute_force(parse_newick(text), limit)}\n")
        else:
            out.write(f"{eta_lower_bound(parse_newick(text))}\n")


@commands.command()
@click.option("--max-n", type=click.IntRange(min=1), help="Defaults to curves.max_n")
@click.option(
    "--empirical-max-n",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="Add the sampled conditioned-scheme curve for n up to this value",
)
@click.option("--trials", type=click.IntRange(min=1), help="Defaults to curves.empirical_trials")
@click.option("--seed", type=int, help="Defaults to sampling.seed")
@click.option("--jobs", type=click.IntRange(min=1), help="Worker processes")
@output_option
@click.pass_obj
@reports_errors
def curves(
    ctx: CliContext,
    max_n: Optional[int],
    empirical_max_n: int,
    trials: Optional[int],
    seed: Optional[int],
    jobs: Optional[int],
    output_path: str,
):
    """Writes the uniform-null curves of log realization numbers as CSV"""
    config = get_config(ctx)
    max_n = max_n or config.curves.max_n
    frame = null_curves(max_n)
    empirical = None
    if empirical_max_n:
        sampler = build_sampler(ctx, "conditioned", seed, None)
        trials = trials or config.curves.empirical_trials
        empirical = {
            n: empirical_log_trn(sampler, n, trials, jobs or config.sampling.jobs)
            for n in range(1, min(empirical_max_n, max_n) + 1)
        }
    with open_output(output_path) as out:
        write_frame(curves_frame(frame, empirical), out)
