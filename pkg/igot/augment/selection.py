import enum
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

from ..exceptions import InputError, InvariantViolationError

log = logging.getLogger(__name__)

__all__ = ['SelectionKind', 'Selection', 'SelectionFormatError']


class SelectionFormatError(InputError, ValueError):
    def __init__(self, path: Union[str, Path], message: str):
        super().__init__(f'Malformed selection file "{path}": {message}')
        self.path = path


class SelectionKind(enum.Enum):
    ' How the words of a selection were chosen. '
    THRESHOLD = 'igot'
    HEURISTIC = 'igot-tau'


@dataclass(frozen=True)
class Selection:
    ''' Ranked candidate words together with the threshold that produced them.

    Entries are (word, score) pairs, unique by word and ordered by descending
    score. The score is the gain for threshold selections and the heuristic
    score for heuristic selections.
    '''
    kind: SelectionKind
    threshold: float
    entries: Tuple[Tuple[str, float], ...] = ()

    def __post_init__(self):
        words = [word for word, _ in self.entries]
        if len(set(words)) != len(words):
            raise InvariantViolationError('Selection entries are not unique.')
        scores = [score for _, score in self.entries]
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise InvariantViolationError('Selection entries are not ordered by descending score.')

    @property
    def words(self) -> List[str]:
        return [word for word, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def top(self, n: int) -> 'Selection':
        ' The first n entries. '
        return Selection(self.kind, self.threshold, self.entries[:n])

    def to_json(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'threshold': self.threshold,
            'entries': [{'word': word, 'score': score} for word, score in self.entries],
        }

    @staticmethod
    def from_json(data: Dict[str, Any]) -> 'Selection':
        return Selection(
            kind=SelectionKind(data['kind']),
            threshold=float(data['threshold']),
            entries=tuple((str(entry['word']), float(entry['score'])) for entry in data['entries']))

    def save(self, path: Union[str, Path]):
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + '\n', encoding='utf-8')

    @staticmethod
    def load(path: Union[str, Path]) -> 'Selection':
        ''' Loads a selection file.

        Raises:
            SelectionFormatError: If the file is not a valid selection.
        '''
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
            selection = Selection.from_json(data)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise SelectionFormatError(path, str(err)) from err
        except InvariantViolationError as err:
            raise SelectionFormatError(path, str(err)) from err
        if math.isnan(selection.threshold):
            raise SelectionFormatError(path, 'Threshold is not a number.')
        log.debug('Loaded %s selection with %i entries from "%s"', selection.kind.value, len(selection), path)
        return selection
