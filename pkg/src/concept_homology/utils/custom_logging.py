import logging
import os
import sys

from loguru import logger

from ..core.config import LOG_ENV, resolve_log_level

loglevel_mapping = {
    50: "CRITICAL",
    40: "ERROR",
    30: "WARNING",
    20: "INFO",
    10: "DEBUG",
    0: "NOTSET",
}


class InterceptHandler(logging.Handler):
    """Route stdlib logging records (numpy, scipy, pandas) into loguru."""

    def emit(self, record):
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = loglevel_mapping[record.levelno]

        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


class CustomizeLogger:
    @classmethod
    def make_logger(cls, config) -> None:
        """Configure loguru from the ``log`` section of the configuration.

        CONCEPT_HOMOLOGY_LOG (error, warn, info, debug) overrides the
        configured level.
        """
        level = resolve_log_level(
            os.getenv(LOG_ENV), default=str(config.get("level", "WARNING")).upper()
        )
        file_path = config.get("file")
        abs_filepath = os.path.join(os.getcwd(), file_path) if file_path else None
        cls.customize_logging(
            filepath=abs_filepath,
            level=level,
            retention=config.get("retention", "5 days"),
            rotation=config.get("rotation", "10 MB"),
            format=config.get("format", "<level>{level: <8}</level> - {message}"),
        )

    @classmethod
    def customize_logging(
        cls,
        filepath: str | None,
        level: str,
        rotation: str,
        retention: str,
        format: str,
    ) -> None:
        logger.remove()

        # stdout carries command output, so the console sink is stderr
        logger.add(
            sys.stderr,
            backtrace=False,
            level=level.upper(),
            format=format,
        )
        if filepath:
            logger.add(
                filepath,
                rotation=rotation,
                retention=retention,
                enqueue=True,
                backtrace=True,
                level=level.upper(),
                format=format,
            )

        logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
