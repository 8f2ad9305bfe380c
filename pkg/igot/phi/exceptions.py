from pathlib import Path
from typing import Union

from ..exceptions import InputError, InvariantViolationError


class AnnotationError(InputError, ValueError):
    ' Raised for unparsable annotation lines or scores outside [1, 5]. '

    def __init__(self, path: Union[str, Path], line: int, message: str):
        super().__init__(f'Invalid annotation "{path}" line {line}: {message}')
        self.path = path
        self.line = line


class ShapeMismatchError(InvariantViolationError, ValueError):
    def __init__(self, name: str, expected, actual):
        super().__init__(f'Shape mismatch for parameter "{name}": expected {expected}, found {actual}')
        self.name = name


class PhiModelFormatError(InputError, ValueError):
    def __init__(self, path: Union[str, Path], message: str):
        super().__init__(f'Malformed phi model file "{path}": {message}')
        self.path = path
