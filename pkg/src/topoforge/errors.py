"""Exception taxonomy shared by every module.

Three failure categories map onto the CLI exit-code contract:
input/precondition/resource problems are usage errors (exit 2), while a
CertificationError means a machine-checked law failed on concrete data
(exit 1).
"""


class InputError(ValueError):
    """Malformed or mismatched input (wrong universe, non-open set, bad document)."""


class PreconditionError(InputError):
    """An operation's stated precondition does not hold for the given arguments."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a configured size cap."""


class CertificationError(AssertionError):
    """A double-route check or certified invariant failed; indicates a real violation."""
