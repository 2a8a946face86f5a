"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A sampler or law was given parameters outside its admissible set."""


class DomainError(ValueError):
    """An evaluation point lies outside the domain of the function."""


class UnknownSuiteError(ValueError):
    """An unrecognized verification suite name."""
