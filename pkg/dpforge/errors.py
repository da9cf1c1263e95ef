"""
Exception hierarchy for dpforge.

Algorithmic outcomes (a failed Havel-Hakimi run, a graph that is not
distance preserving) are returned as values; these exceptions are reserved
for bad input and broken preconditions.
"""


class DpForgeError(Exception):
    """Base class for every error raised by dpforge."""


class GraphError(DpForgeError, ValueError):
    """Invalid vertex ids, self-loops, asymmetric adjacency or missing edges."""


class FormatError(DpForgeError, ValueError):
    """Malformed graph6, edge-list or certificate text."""


class CertificateError(DpForgeError, ValueError):
    """A certificate that does not cover every order with a subset of the right size."""


class InadmissiblePairError(DpForgeError, ValueError):
    """Raised when a regular dp graph is requested for a pair outside the admissible range."""

    def __init__(self, n: int, r: int):
        self.n = n
        self.r = r
        super().__init__(f"(n={n}, r={r}) is inadmissible: need r >= 3, n >= r+1, and n even when r is odd")


class ConfigError(DpForgeError):
    """Invalid configuration values from a file, the environment or flags."""
