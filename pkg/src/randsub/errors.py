"""Exception hierarchy shared by every module."""


class RandsubError(Exception):
    """Base class for all library errors."""


class InvalidDefinition(RandsubError, ValueError):
    pass


class EmptyAlphabet(InvalidDefinition):
    def __init__(self):
        super().__init__("alphabet must contain at least one letter")


class DuplicateSymbol(InvalidDefinition):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"letter {symbol!r} appears more than once in the alphabet")


class UnknownSymbol(InvalidDefinition):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"symbol {symbol!r} is not in the alphabet")


class EmptyRuleSet(InvalidDefinition):
    def __init__(self, letter):
        self.letter = letter
        super().__init__(f"letter {letter!r} has no realisations")


class EmptyRuleWord(InvalidDefinition):
    def __init__(self, letter):
        self.letter = letter
        super().__init__(f"letter {letter!r} has an empty realisation")


class NotCompatible(RandsubError):
    def __init__(self, letter=None):
        self.letter = letter
        msg = "substitution is not compatible"
        if letter is not None:
            msg += f" (realisations of {letter!r} differ in letter counts)"
        super().__init__(msg)


class NotPrimitive(RandsubError):
    def __init__(self, what="substitution matrix"):
        super().__init__(f"{what} is not primitive")


class BudgetExceeded(RandsubError):
    def __init__(self, bound, what="enumeration"):
        self.bound = bound
        super().__init__(
            f"{what} exceeded the size budget of {bound} "
            "(raise it with RANDSUB_BUDGET or a budget argument)"
        )


class LengthExceedsTable(RandsubError):
    def __init__(self, length, max_length):
        self.length = length
        self.max_length = max_length
        super().__init__(f"word length {length} exceeds table length {max_length}")


class TableTooSmall(RandsubError):
    def __init__(self, needed, max_length):
        self.needed = needed
        self.max_length = max_length
        super().__init__(
            f"operation needs legal words of length {needed}, table only holds {max_length}"
        )


class NotLegal(RandsubError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"{word!r} is not a legal word")


class IndexOutOfRange(RandsubError, IndexError):
    pass


class NotTwoLetter(RandsubError):
    def __init__(self, size):
        super().__init__(f"expected a two-letter alphabet, got {size} letters")


class NotPeriodic(RandsubError):
    pass


class NotDeterministic(RandsubError):
    def __init__(self, letter):
        super().__init__(f"letter {letter!r} has more than one realisation")


class EmptySpectrum(RandsubError):
    pass


class WindowExceedsBound(RandsubError):
    def __init__(self, upper, bound):
        super().__init__(f"window end {upper} exceeds the spectrum completeness bound {bound}")


class MixedLengthFields(RandsubError, ValueError):
    pass


class FixtureMissing(RandsubError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"fixture {name!r} not found")
