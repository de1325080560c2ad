"""Exception hierarchy shared by every itlab module."""


class ITLabError(ValueError):
    """Base class for invalid input or infeasible requests."""


class NegativeProbability(ITLabError):
    pass


class SumNotOne(ITLabError):
    pass


class DuplicateLabel(ITLabError):
    pass


class NonPositiveProbability(ITLabError):
    pass


class ZeroStates(ITLabError):
    pass


class NotNormalized(ITLabError):
    pass


class NegativeEntry(ITLabError):
    pass


class ColumnSumNotOne(ITLabError):
    pass


class SpaceMismatch(ITLabError):
    pass


class ZeroMarginal(ITLabError):
    pass


class SizeCapExceeded(ITLabError):
    pass


class TrailingBits(ITLabError):
    """Bit string ended in the middle of a codeword."""


class UnknownSymbol(ITLabError):
    pass


class OutOfRange(ITLabError):
    pass


class EvenRepetition(ITLabError):
    """Majority decoding is undefined for an even number of repeats."""


class SearchSpaceTooLarge(ITLabError):
    pass


class UnknownFigure(ITLabError):
    pass
