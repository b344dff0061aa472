"""Exception hierarchy shared by all jampose modules."""


class JamposeError(Exception):
    """Base class for every error raised by this package."""


class InvalidDirectionError(JamposeError, ValueError):
    """A vector that must be a unit direction is not."""


class DegenerateGeometryError(JamposeError, ValueError):
    """Colocated points or parallel directions make a quantity undefined."""


class StrategyInapplicableError(JamposeError, ValueError):
    """The requested strategy does not apply to the scenario (e.g. N != 2)."""


class InfeasibleOrientationError(JamposeError, ValueError):
    """No admissible roll/pitch realizes the required antenna axis."""


class ConfigurationError(JamposeError, ValueError):
    """Invalid solver configuration, search box or grid request."""


class ScenarioValidationError(JamposeError, ValueError):
    """A scenario violates one of its invariants or cannot be parsed."""
