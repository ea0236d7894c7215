"""Package logger; the CLI picks its level from the -v count"""
import logging
import sys

logger = logging.getLogger("fanodefect")

LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

def level_for(verbosity: int) -> int:
    return LEVELS[max(0, min(verbosity, len(LEVELS) - 1))]

def configure(verbosity: int = 0, stream=None):
    logging.basicConfig(level=level_for(verbosity), stream=stream or sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
