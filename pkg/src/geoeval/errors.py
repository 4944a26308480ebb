"""Shared exception type for data and validation failures."""


class GeoEvalError(Exception):
    """Raised on invalid inputs, malformed files, or contract violations.

    The CLI maps this to exit code 1; usage errors exit with 2.
    """
