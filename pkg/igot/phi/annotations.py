''' Human scores of candidate words from 1 (useless as a token) to 5 (ideal token). '''
from __future__ import annotations

import logging
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import List, Union

from ..exceptions import PreconditionError
from .exceptions import AnnotationError

log = logging.getLogger(__name__)

__all__ = ['AnnotatedWord', 'load_annotations', 'write_annotations', 'MIN_SCORE', 'MAX_SCORE']

MIN_SCORE = 1.0
MAX_SCORE = 5.0


@dataclass(frozen=True)
class AnnotatedWord:
    word: str
    score: float

    def __post_init__(self):
        if not MIN_SCORE <= self.score <= MAX_SCORE:
            raise PreconditionError(f'Score of "{self.word}" must be in [{MIN_SCORE:g}, {MAX_SCORE:g}], got {self.score}.')


def load_annotations(path: Union[str, Path]) -> List[AnnotatedWord]:
    ''' Reads tab separated "word<TAB>score" lines.

    Empty lines and lines starting with "#" are ignored, as is a leading
    "word<TAB>score" header.

    Raises:
        AnnotationError: If a line is malformed or a score is outside [1, 5].
    '''
    annotations: List[AnnotatedWord] = []
    lines = Path(path).read_text(encoding='utf-8').splitlines()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith('#'):
            continue
        fields = line.split('\t')
        if len(fields) != 2 or not fields[0]:
            raise AnnotationError(path, lineno, 'Expected "word<TAB>score".')
        if lineno == 1 and fields == ['word', 'score']:
            continue
        try:
            score = Decimal(fields[1].strip())
        except InvalidOperation:
            raise AnnotationError(path, lineno, f'Score "{fields[1]}" is not a decimal number.')
        try:
            annotations.append(AnnotatedWord(fields[0], float(score)))
        except PreconditionError as err:
            raise AnnotationError(path, lineno, str(err)) from err
    log.info('Loaded %i annotated words from "%s"', len(annotations), path)
    return annotations


def write_annotations(annotations: List[AnnotatedWord], path: Union[str, Path]):
    lines = ['word\tscore'] + [f'{item.word}\t{item.score:g}' for item in annotations]
    Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')
