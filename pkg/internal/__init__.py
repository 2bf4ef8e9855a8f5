"""internal package for search plumbing and shared helpers"""

from . import budget, errors, utils

__all__ = ["budget", "errors", "utils"]
