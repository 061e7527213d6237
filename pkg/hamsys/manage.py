#!/usr/bin/env python
"""hamsys command-line utility."""
import logging.config
import sys

from hamsys import settings


def main(argv=None):
    """Run a hamsys subcommand."""
    logging.config.dictConfig(settings.LOGGING)
    from hamsys.reports.commands import execute

    return execute(argv)


if __name__ == '__main__':
    sys.exit(main())
