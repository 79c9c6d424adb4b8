import click

from multicover import pipeline, serializer
from multicover.commands import emit, make_config, neededness_option, output_option


@click.command('mutexgraph')
@click.argument('domain_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('problem_file', type=click.Path(exists=True, dir_okay=False))
@neededness_option
@click.option('--all-fluents', is_flag=True, default=False, help='Keep fluents without mutexes as vertices.')
@click.option('--pairs-json', type=click.Path(dir_okay=False), default=None,
              help='Also write the mutex pairs as a JSON list.')
@output_option
def command(domain_file, problem_file, neededness, all_fluents, pairs_json, output):
    """Compute the eventual fluent-mutex graph of a PDDL problem."""
    config = make_config('mutexgraph', neededness=neededness, all_fluents=all_fluents, output=output)
    p = pipeline.load_problem(domain_file, problem_file, config.neededness)
    g, pairs = pipeline.compute_mutexes(p, all_fluents=config.all_fluents)
    emit(serializer.write_graph(g), config.output)
    if pairs_json:
        pipeline.write_text(pairs_json, serializer.mutex_pairs_json(pairs))
