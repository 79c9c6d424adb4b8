import click
import pydantic

from multicover import pipeline, schemas


def make_config(command: str, **options) -> schemas.RunConfig:
    try:
        return schemas.RunConfig(command=command, **{k: v for k, v in options.items() if v is not None})
    except pydantic.ValidationError as e:
        problems = '; '.join(f'{".".join(map(str, error["loc"]))}: {error["msg"]}' for error in e.errors())
        raise click.UsageError(problems)


def emit(text: str, output: str | None):
    if output:
        pipeline.write_text(output, text)
    else:
        click.echo(text, nl=False)


coverage_fraction_option = click.option(
    '--coverage-fraction', type=float, default=None,
    help='Stop once this fraction of the mutex edges is covered.',
)
output_option = click.option('-o', '--output', type=click.Path(dir_okay=False), default=None,
                             help='Write to this file instead of standard output.')
stats_options = [
    click.option('--stats-json', type=click.Path(dir_okay=False), default=None, help='Write encoding stats as JSON.'),
    click.option('--stats-csv', type=click.Path(dir_okay=False), default=None, help='Write encoding stats as CSV.'),
]
neededness_option = click.option('--neededness/--no-neededness', default=False,
                                 help='Prune fluents and actions that cannot contribute to the goal.')


def with_stats(f):
    for option in reversed(stats_options):
        f = option(f)
    return f
