"""Exception hierarchy. Everything here maps to CLI exit code 2."""


class DramalyzeError(Exception):
    """Base class for data and validation failures."""


class InputError(DramalyzeError):
    """Unreadable or malformed input file."""


class ValidationError(DramalyzeError):
    """A documented precondition or contract was violated."""


class ConsistencyError(ValidationError):
    """Cross-references inside an assembled report disagree."""
