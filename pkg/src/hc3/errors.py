"""Exception types raised by the solvers."""


class HC3Error(Exception):
    """Base class for every error raised by this package."""


class GridTooSmallError(HC3Error, ValueError):
    """The truncated domain or the resolution cannot hold the requested state."""


class BracketError(HC3Error):
    """A minimum or a root was not found inside the search interval."""


class ConvergenceError(HC3Error):
    """An iterative solver stopped before meeting its tolerance."""
