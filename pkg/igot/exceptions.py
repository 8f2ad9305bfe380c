from typing import Any

__all__ = ['IgotException', 'InputError', 'InvariantViolationError', 'PreconditionError']


class IgotException(Exception):
    ' Base for exceptions raised by this package. The code is the process exit code. '

    def __init__(self, code: int, message: str = '', data: Any = None, *args: object) -> None:
        super().__init__(message, *args)
        self.code = code
        self.data = data

    def __int__(self): return self.code


class InputError(IgotException):
    ' Exception raised for unreadable or malformed inputs and bad configuration. '

    def __init__(self, message: str = 'Input error', *args: object) -> None:
        super().__init__(2, message, *args)


class InvariantViolationError(IgotException):
    ' Exception raised when an internal invariant does not hold. '

    def __init__(self, message: str = 'Invariant violation', *args: object) -> None:
        super().__init__(3, message, *args)


class PreconditionError(InputError, ValueError):
    ' Exception raised when an operation is called with arguments outside its domain. '
