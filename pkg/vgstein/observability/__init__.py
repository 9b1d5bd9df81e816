from .logging import VgLogger, configure_logging, get_logger

__all__ = [
    "get_logger",
    "configure_logging",
    "VgLogger",
]
