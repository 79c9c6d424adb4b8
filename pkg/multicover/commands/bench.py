import click

from multicover import pipeline, serializer
from multicover.commands import emit, make_config, neededness_option, output_option


@click.command('bench')
@click.argument('instance_list', type=click.Path(exists=True, dir_okay=False))
@click.option('--jobs', type=int, default=None, help='Number of worker processes.')
@neededness_option
@output_option
def command(instance_list, jobs, neededness, output):
    """Tabulate encoding sizes for a list of instances."""
    config = make_config('bench', jobs=jobs, neededness=neededness, output=output)
    rows = pipeline.bench(instance_list, config)
    emit(serializer.bench_csv(rows), config.output)
