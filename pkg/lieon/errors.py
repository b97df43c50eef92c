"""Exceptions raised by the lieon library layer.

The CLI turns these into ``error_message``/``exit_code`` result dicts; the
library itself never prints.
"""


class LieonError(ValueError):
    """Base class for every domain error raised by lieon."""


class DimensionMismatch(LieonError):
    pass


class IndexOutOfRange(LieonError):
    pass


class GradeError(LieonError):
    pass


class NotJacobi(LieonError):
    pass


class AlreadyUnimodular(LieonError):
    pass


class InvalidQuadruple(LieonError):
    pass


class SubspaceError(LieonError):
    """An ideal, subalgebra, dressing split or involution failed verification."""


class NotSolvable(LieonError):
    pass


class IncompatibleFamily(LieonError):
    pass


class NotACluster(LieonError):
    pass


class GuardExceeded(LieonError):
    pass


class InvalidSpec(LieonError):
    pass


class DocumentError(LieonError):
    """Malformed JSON document on the wire."""
