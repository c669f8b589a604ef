# monitoring/logger.py
import logging
import sys
from datetime import datetime, timezone

import structlog

logger = structlog.get_logger("workbench")


def configure_logging(level: str = "INFO", fmt: str = "console", stream=sys.stderr) -> None:
    """Route structlog output to `stream`, rendered for a console or as JSON lines"""
    numeric = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(level=numeric, stream=stream, format="%(message)s", force=True)
    renderer = structlog.processors.JSONRenderer() if fmt == "json" else structlog.dev.ConsoleRenderer(colors=False)
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.PrintLoggerFactory(file=stream),
        cache_logger_on_first_use=False,
    )


def log_query(kind, verdict, latency, **context):
    logger.info(
        "query_answered",
        timestamp=datetime.now(timezone.utc).isoformat(),
        kind=kind,
        verdict=verdict,
        latency_ms=latency,
        **context,
    )


def log_sweep(mode, seeds, results, latency):
    logger.info(
        "sweep_completed",
        timestamp=datetime.now(timezone.utc).isoformat(),
        mode=mode,
        seeds=seeds,
        results=results,
        latency_ms=latency,
    )
