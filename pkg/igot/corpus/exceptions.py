from pathlib import Path

from ..exceptions import InputError


class CorpusFileNotFoundError(InputError, FileNotFoundError):
    def __init__(self, path: Path):
        super().__init__(f'Corpus file not found: "{path}"')
        self.path = path


class CorpusEncodingError(InputError, ValueError):
    def __init__(self, path: Path, offset: int, reason: str = 'invalid utf-8'):
        super().__init__(f'Corpus file "{path}" is not valid UTF-8 at byte offset {offset}: {reason}')
        self.path = path
        self.offset = offset
