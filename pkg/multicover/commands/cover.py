import click

from multicover import pipeline, serializer
from multicover.commands import coverage_fraction_option, emit, make_config, output_option, with_stats
from multicover.cover import BASELINES


@click.command('cover')
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@coverage_fraction_option
@click.option('--baseline', type=click.Choice(BASELINES), default=None, help='Covering strategy.')
@output_option
@with_stats
def command(graph_file, coverage_fraction, baseline, output, stats_json, stats_csv):
    """Cover the edges of a mutex graph with multicliques."""
    config = make_config('cover', coverage_fraction=coverage_fraction, baseline=baseline, output=output,
                         stats_json=stats_json, stats_csv=stats_csv)
    g = pipeline.load_graph(graph_file)
    covering = pipeline.cover(g, config)
    _, stats = pipeline.encode_covering(covering)
    emit(serializer.write_covering(covering), config.output)
    pipeline.write_stats(stats, config)
