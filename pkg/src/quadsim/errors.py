"""Exception types shared across the package."""


class QuadsimError(Exception):
    """Base class for all quadsim errors."""


class ConfigurationError(QuadsimError):
    """Bad circuit/source configuration (empty registry, unknown option...)."""


class ModeError(QuadsimError):
    """Reference to a mode that is not in the state's registry."""


class ParameterError(QuadsimError):
    """Element or analysis parameter out of its valid range."""


class DegenerateStateError(QuadsimError):
    """Operation undefined on a (near-)zero state."""


class EncodingError(QuadsimError):
    """State is not a valid single-photon quadbit over the codec's modes."""


class PreconditionError(QuadsimError):
    """Circuit input does not satisfy the builder's documented precondition."""


class PartitionError(QuadsimError):
    """Invalid bipartition for an entanglement report."""


class ResourceLimitError(QuadsimError):
    """Photon number exceeds the configured simulation cap."""
