import click

from multicover import pipeline, serializer
from multicover.commands import coverage_fraction_option, emit, make_config, neededness_option, output_option


@click.command('plan')
@click.argument('domain_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('problem_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--solver', 'solver_cmd', default=None, help='Solver command, called as "<command> <file>".')
@click.option('--max-makespan', type=int, default=None, help='Give up after this makespan.')
@click.option('--naive', is_flag=True, default=False,
              help='Use pairwise action and fluent mutex constraints instead of the compact encodings.')
@coverage_fraction_option
@neededness_option
@output_option
def command(domain_file, problem_file, solver_cmd, max_makespan, naive, coverage_fraction, neededness, output):
    """Find a plan by solving the ASP encoding at increasing makespans."""
    config = make_config('plan', solver_cmd=solver_cmd, max_makespan=max_makespan, naive=naive,
                         coverage_fraction=coverage_fraction, neededness=neededness, output=output)
    p = pipeline.load_problem(domain_file, problem_file, config.neededness)
    plan = pipeline.plan(p, config)
    emit(serializer.write_plan(plan), config.output)
