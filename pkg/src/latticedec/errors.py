"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: validation problems are 2, domain
problems are 3 and a failed property (e.g. a non-closed input) is 1.
"""


class LatticeDECError(Exception):
    """Base class for all library errors."""


class ConfigurationError(LatticeDECError, ValueError):
    """Invalid ring specification (bad modulus, negative tolerance, unknown kind)."""


class ValidationError(LatticeDECError, ValueError):
    """A value does not satisfy the invariants of its type."""


class FormatError(ValidationError):
    """A serialized ring element or document could not be parsed."""


class CompatibilityError(ValidationError):
    """Operands live on different boxes, rings or dimensions."""


class RingMismatchError(LatticeDECError, TypeError):
    """An element of one ring was handed to another ring."""


class DomainError(LatticeDECError, ValueError):
    """An operation is not defined on the given domain or degree."""


class EmptyDomainError(DomainError):
    """A difference was requested along an axis of extent 1."""


class OutOfDomainError(DomainError):
    """A cell or point lies outside the box where a form is known."""


class DegreeError(DomainError):
    """A form or chain has a degree the operation does not accept."""


class NotClosedError(LatticeDECError, ValueError):
    """The input form is not closed, so no potential exists.

    Attributes:
        component: multi-index of the first nonzero component of the derivative.
        point: 1-based lattice point where it is nonzero.
        value: the offending value.
    """

    def __init__(self, component, point, value):
        self.component = tuple(component)
        self.point = tuple(point)
        self.value = value
        idx = ",".join(map(str, self.component))
        super().__init__(
            f"form is not closed: derivative component {{{idx}}} is {value} at {self.point}"
        )


class ResourceError(LatticeDECError, RuntimeError):
    """A brute-force computation was asked to exceed its size cap."""
