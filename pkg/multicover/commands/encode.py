import click

from multicover import encode, pipeline, serializer
from multicover.commands import coverage_fraction_option, emit, make_config, output_option, with_stats
from multicover.cover import BASELINES


@click.command('encode')
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--covering', 'covering_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Encode this covering instead of computing one.')
@coverage_fraction_option
@click.option('--baseline', type=click.Choice(BASELINES), default=None, help='Covering strategy.')
@output_option
@with_stats
def command(graph_file, covering_file, coverage_fraction, baseline, output, stats_json, stats_csv):
    """Compile a covering of a mutex graph into ASP constraints."""
    config = make_config('encode', coverage_fraction=coverage_fraction, baseline=baseline, output=output,
                         stats_json=stats_json, stats_csv=stats_csv)
    g = pipeline.load_graph(graph_file)
    if covering_file:
        covering = serializer.read_covering(pipeline.read_text(covering_file), g, source=covering_file,
                                            strategy=config.baseline)
    else:
        covering = pipeline.cover(g, config)
    rules, stats = pipeline.encode_covering(covering)
    emit(encode.program_text(rules), config.output)
    pipeline.write_stats(stats, config)
