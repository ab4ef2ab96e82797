"""Exception types shared across the package."""


class ScenarioError(ValueError):
    """Malformed, inconsistent, or unknown scenario input."""


class EigensolverError(RuntimeError):
    """Dense eigensolver failed to converge or produced an unpaired spectrum."""


class PredictionUnavailableError(RuntimeError):
    """No consensus-point prediction can be produced for this input."""


class InternalConsistencyError(RuntimeError):
    """A structural self-check failed; indicates a bug, not bad user input."""
