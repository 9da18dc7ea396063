"""Exception types shared across the engine."""


class EngineError(Exception):
    """Domain-level failure; the CLI maps these to exit code 1."""


class FactorMismatchError(EngineError):
    """Cross-factor product or automorphism application."""


class SystemMismatchError(EngineError):
    """Operands belong to different factor systems."""


class OracleUnavailableError(EngineError):
    """Finite enumeration requested but an infinite factor is present."""


class AlreadyBaseError(EngineError):
    """Reduction step requested at the minimal volume."""


class NonSplittingError(EngineError):
    """The conjugated factors do not generate the whole group."""


class NotAStabilizerError(EngineError):
    """Automorphism does not stabilize the requested vertex class."""

    def __init__(self, slot: int, message: str | None = None):
        self.slot = slot
        super().__init__(message or f"not a stabilizer: slot {slot} obstructs")


class SchemaError(Exception):
    """Malformed external input; the CLI maps these to exit code 2."""
