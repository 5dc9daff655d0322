"""Exception and warning types raised by the model."""


class ModelError(ValueError):
    """Base class for invalid inputs to the channel model."""


class DomainRangeError(ModelError):
    """An input lies outside the frequency band the model is specified for."""


class EnvironmentOutOfRange(ModelError):
    pass


class InvalidMixingRatio(ModelError):
    pass


class InvalidFrequency(ModelError):
    pass


class NegativeDistance(ModelError):
    pass


class InvalidGeometry(ModelError):
    pass


class InvalidGrid(ModelError):
    pass


class FrequencyOutOfValidityRange(DomainRangeError):
    pass


class BandOutOfRange(DomainRangeError):
    pass


class ParseError(ModelError):
    pass


class UnitError(ParseError):
    pass


class MissingMetadata(ModelError):
    pass


class ValidityRangeWarning(UserWarning):
    """Evaluation outside 100-450 GHz, where the fitted lines lose accuracy."""
