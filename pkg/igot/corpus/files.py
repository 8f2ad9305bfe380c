import glob
import logging
from pathlib import Path
from typing import Iterable, List, Union

from .exceptions import CorpusFileNotFoundError

log = logging.getLogger(__name__)

__all__ = ['resolve_corpus_paths']

_GLOB_CHARS = '*?['


def resolve_corpus_paths(paths: Iterable[Union[str, Path]], pattern: str = '**/*.txt') -> List[Path]:
    """ Expands command line corpus arguments into a list of files.

    Files are kept, directories are searched recursively with `pattern`
    and arguments containing glob characters are expanded.

    Args:
        paths (Iterable[str | Path]): Files, directories or glob patterns.
        pattern (str, optional): Glob used inside directories. Defaults to '**/*.txt'.

    Returns:
        List[Path]: Sorted files without duplicates.

    Raises:
        CorpusFileNotFoundError: If a literal path does not exist.
    """
    files = set()
    for arg in paths:
        path = Path(arg).expanduser()
        if path.is_dir():
            matches = [p for p in path.glob(pattern) if p.is_file()]
            log.debug('Directory "%s" matched %i files', path, len(matches))
            files.update(matches)
        elif path.is_file():
            files.add(path)
        elif any(char in str(arg) for char in _GLOB_CHARS):
            files.update(Path(p) for p in glob.glob(str(path), recursive=True) if Path(p).is_file())
        else:
            raise CorpusFileNotFoundError(path)
    return sorted(files)
