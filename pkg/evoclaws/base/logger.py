"""Logger for evoclaws components"""

import sys
import copy
import logging
import termcolor

FORMAT = '%(levelname)-.1s:{context}:[%(filename).3s:%(funcName).3s:%(lineno)3d]:%(message)s'


def set_logger(context: str, verbose: bool = False) -> logging.Logger:
    """Return colored logger with specified context name and debug=verbose.
    Records go to stderr so that reports on stdout stay machine-readable."""
    logger = logging.getLogger('evoclaws.%s' % context)
    logger.propagate = False
    level = logging.DEBUG if verbose else logging.INFO
    logger.setLevel(level)

    if not logger.handlers:
        formatter = ColoredFormatter(FORMAT.format(context=context),
                                     datefmt='%m-%d %H:%M:%S')
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    for handler in logger.handlers:
        handler.setLevel(level)

    return logger


class ColoredFormatter(logging.Formatter):
    """Format log levels with color"""
    MAPPING = {
        'DEBUG': dict(color='green', on_color=None),
        'INFO': dict(color='cyan', on_color=None),
        'WARNING': dict(color='yellow', on_color=None),
        'ERROR': dict(color='grey', on_color='on_red'),
        'CRITICAL': dict(color='grey', on_color='on_blue'),
    }

    def format(self, record):
        """Add log ansi colors"""
        crecord = copy.copy(record)
        seq = self.MAPPING.get(crecord.levelname, self.MAPPING['INFO'])
        crecord.msg = termcolor.colored(str(crecord.msg), **seq)
        return super().format(crecord)
