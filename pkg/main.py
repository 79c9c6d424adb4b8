import logging
import sys

import click

from core import status
from core.config import settings
from core.exceptions import ToolkitException
from multicover.commands import bench, cover, encode, mutexgraph, plan


def configure_logging(verbosity: int):
    level = {0: settings.LOG_LEVEL.upper(), 1: 'INFO'}.get(verbosity, 'DEBUG')
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)


def get_application():
    @click.group(name=settings.PROJECT_NAME)
    @click.version_option(settings.PROJECT_VERSION)
    @click.option('-v', '--verbose', count=True, help='Raise log level to INFO (-v) or DEBUG (-vv).')
    def _app(verbose):
        """Compact mutex encodings for ASP planning."""
        configure_logging(verbose)

    _app.add_command(cover.command)
    _app.add_command(encode.command)
    _app.add_command(mutexgraph.command)
    _app.add_command(plan.command)
    _app.add_command(bench.command)

    return _app


app = get_application()


def main(args: list[str] | None = None) -> int:
    try:
        result = app.main(args=args, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo('Aborted.', err=True)
        return status.EXIT_1_USAGE
    except click.ClickException as e:
        e.show()
        return status.EXIT_1_USAGE
    except ToolkitException as e:
        click.echo(f'error: {e.detail}', err=True)
        return e.status_code
    # --help and --version return their exit code instead of raising
    return result if isinstance(result, int) else status.EXIT_0_OK


if __name__ == '__main__':
    sys.exit(main())
