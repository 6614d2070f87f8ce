"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: SchemaError and exact input-validation
failures -> 2, ConeTooLarge -> 3, NumericDomainError subclasses -> 4.
"""


class HodgeChartsError(Exception):
    """Base class for all library errors."""


class SchemaError(HodgeChartsError):
    """Malformed or inconsistent input data (JSON schema level)."""


class ConeTooLarge(HodgeChartsError):
    """Number of cone generators exceeds the enumeration cap."""


class NotNilpotent(HodgeChartsError):
    """A matrix required to be nilpotent is not."""


class NotInvariant(HodgeChartsError):
    """A map does not carry the given domain subspace into the codomain."""


class NotFiltrationCompatible(HodgeChartsError):
    """A map does not shift the filtration steps as required."""


class InvalidSplit(HodgeChartsError):
    """The support subset passed along with S is not the one S determines."""


class SeparationFailure(HodgeChartsError):
    """Two chart strata could not be separated by a vanishing pattern."""


class IncidenceError(HodgeChartsError):
    """Inconsistent incidence data in a normal-crossing configuration."""


class NotAComplex(HodgeChartsError):
    """A composition that must vanish is nonzero."""


class Disconnected(HodgeChartsError):
    """A dual graph required to be connected is not."""


class NumericDomainError(HodgeChartsError):
    """Base class for floating-point domain failures (CLI exit 4)."""


class NotPolarized(NumericDomainError):
    """A flag fails the positivity test of a polarized Hodge structure."""


class PoorFit(NumericDomainError):
    """An asymptotic fit exceeds the residual threshold."""


class PZero(NumericDomainError):
    """The solvable-parameter system degenerates (p(y) = 0)."""


class NotInDomain(NumericDomainError):
    """A point fails the open-domain inequalities of a parameter solve."""


class SampleInconsistent(NumericDomainError):
    """Exact and sampled data disagree about a quantity that must vanish."""
