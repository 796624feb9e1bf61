"""Named error kinds.  The CLI maps every subclass of MixMultError to exit code 2."""


class MixMultError(Exception):
    kind = "Error"


class NotMPrimary(MixMultError):
    kind = "NotMPrimary"


class LengthOverflow(MixMultError):
    kind = "LengthOverflow"


class StabilityFailure(MixMultError):
    kind = "StabilityFailure"


class GenericityFailure(MixMultError):
    kind = "GenericityFailure"


class FieldArtifact(GenericityFailure):
    """Prime-field and rational runs disagree."""

    kind = "GenericityFailure/FieldArtifact"


class HypothesisViolated(MixMultError):
    kind = "HypothesisViolated"


class UnsupportedInput(MixMultError):
    kind = "UnsupportedInput"


class NotSystemOfParameters(MixMultError):
    kind = "NotSystemOfParameters"


class DegreeMismatch(MixMultError):
    kind = "DegreeMismatch"


class HeightUndefined(MixMultError):
    kind = "HeightUndefined"


class ParseError(MixMultError):
    kind = "ParseError"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
