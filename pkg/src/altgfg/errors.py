"""Exceptions raised by the library."""


class AutomatonError(Exception):
    """Base class for all library errors."""


class InitialRemoved(AutomatonError):
    pass


class NotParity(AutomatonError):
    pass


class TooManyColors(AutomatonError):
    pass


class TooLarge(AutomatonError):
    pass


class UnknownLetter(AutomatonError):
    pass


class LabelMismatch(AutomatonError):
    pass


class NotNondeterministic(AutomatonError):
    pass


class NotDeterministic(AutomatonError):
    pass


class NotBuchi(AutomatonError):
    pass


class NotNCW(AutomatonError):
    pass


class NotNBW(AutomatonError):
    pass


class EmptyAfterRestriction(AutomatonError):
    pass


class NotGFG(AutomatonError):
    pass


class AlphabetMismatch(AutomatonError):
    pass


class BaseNotGFG(AutomatonError):
    pass


class BadAlphabet(AutomatonError):
    pass
