#!/usr/bin/env python

# Copyright (c) 2020 - for information on the respective copyright owner
# see the NOTICE file and/or the repository.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# logging setup

import os
import logging

try:
    import coloredlogs
    coloredlogs.DEFAULT_LEVEL_STYLES["critical"]["color"] = "white"
    coloredlogs.DEFAULT_LEVEL_STYLES["critical"]["background"] = "red"
except ImportError:
    coloredlogs = None

__logger_name = "hybrid_hydrogen"
__logger_logdir = os.path.expandvars("$HOME/.hybrid_hydrogen")
__logger_filename = os.path.join(__logger_logdir, f"{__logger_name}.log")

__basic_format = "%(asctime)s %(levelname)s | %(filename)s, %(funcName)s:%(lineno)d | %(message)s"
__colored_format = "%(asctime)s %(filename)s %(lineno)d %(levelname)s %(message)s"
__terminal_format = "[%(levelname)s] %(filename)s:%(lineno)d | %(message)s"


def configure_logger(level="INFO", fmt=None, logfile=True):
    """Configure the package logger for command line use.

    Log records go to a file in $HOME/.hybrid_hydrogen and, colored if
    coloredlogs is available, to the terminal.

    Args:
        level (str, optional): logging level. Defaults to "INFO".
        fmt (str, optional): file message format. Defaults to None, which uses the basic format.
        logfile (bool, optional): also write to the log file. Defaults to True.

    Returns:
        logging.Logger: the package logger.
    """
    logger = get_logger()
    if fmt is None:
        fmt = __basic_format

    if logfile:
        os.makedirs(__logger_logdir, exist_ok=True)
        add_file_handler(logger, level=level, fmt=fmt)

    if coloredlogs is not None:
        coloredlogs.install(level=level, logger=logger, datefmt="%H:%M:%S", fmt=__colored_format)
    else:
        add_stream_handler(logger, level=level)

    set_level(logger, level)
    return logger


def get_logger():
    "Return the package logger"
    return logging.getLogger(__logger_name)


def _get_level_enum(level):
    if isinstance(level, int):
        return level
    return getattr(logging, level.upper())


def add_file_handler(logger, filename=__logger_filename, level="DEBUG", fmt=None):
    """Add a file handler to logger, lowering the logger level if it would block the handler"""
    file_logging_level = _get_level_enum(level)
    if logger.level == logging.NOTSET or logger.level > file_logging_level:
        logger.setLevel(file_logging_level)

    file_handler = logging.FileHandler(filename)
    set_level(file_handler, level=level)
    file_handler.setFormatter(logging.Formatter(fmt or __basic_format))
    logger.addHandler(file_handler)


def add_stream_handler(logger, level="DEBUG"):
    """Explicitly force logging to the terminal (in addition to other logging, e.g. to file)"""
    stream_logging_level = _get_level_enum(level)
    if logger.level == logging.NOTSET or logger.level > stream_logging_level:
        logger.setLevel(stream_logging_level)

    stream_handler = logging.StreamHandler()
    set_level(stream_handler, level=level)
    stream_handler.setFormatter(logging.Formatter(__terminal_format))
    logger.addHandler(stream_handler)


def set_level(logger, level="debug"):
    """Set the log level of a logger or handler from a string.

    This is useful in combination with command line arguments."""
    if isinstance(level, int):
        logger.setLevel(level)
        return

    name = level.lower()
    if name in ("warn", "warning"):
        logger.setLevel(logging.WARNING)
    elif name == "disable":
        logger.setLevel(logging.CRITICAL + 1)
    elif name in ("debug", "info", "error", "critical"):
        logger.setLevel(getattr(logging, name.upper()))
    else:
        get_logger().warning(f'unsupported level "{level}"')
