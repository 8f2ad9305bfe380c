from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

import numpy as np

from ..augment.selection import Selection
from ..exceptions import InvariantViolationError, PreconditionError
from ..gain import GainTable

__all__ = ['Histogram', 'gain_histogram', 'histogram_comparison', 'selected_gains', 'write_histograms_csv']


@dataclass(frozen=True)
class Histogram:
    bin_edges: Tuple[float, ...]
    counts: Tuple[int, ...]
    label: str = ''
    mean: float = 0.0

    def __post_init__(self):
        if len(self.counts) != len(self.bin_edges) - 1:
            raise InvariantViolationError('Histogram needs exactly one more edge than bins.')
        if any(a >= b for a, b in zip(self.bin_edges, self.bin_edges[1:])):
            raise InvariantViolationError('Histogram edges are not strictly ascending.')

    @property
    def total(self) -> int:
        return sum(self.counts)

    def rows(self) -> Iterable[Tuple[float, float, int]]:
        ' (bin_start, bin_end, count) of every bin. '
        return zip(self.bin_edges, self.bin_edges[1:], self.counts)


def selected_gains(selection: Selection, table: GainTable) -> np.ndarray:
    ''' Gains of the selected words in selection order.

    Raises:
        PreconditionError: If a selected word is not in the table.
    '''
    missing = [word for word in selection.words if table.get(word) is None]
    if missing:
        raise PreconditionError(
            f'{len(missing)} selected words are not in the gain table, first "{missing[0]}".')
    return np.array([table.get(word).gain for word in selection.words], dtype=np.float64)


def gain_histogram(selection: Selection, table: GainTable, bins: int = 10, label: str = '') -> Histogram:
    ''' Histogram of the gains of the selected words.

    Bins have equal width and cover [0, max gain of the table], or [0, 1] if
    every gain of the table is zero.

    Raises:
        PreconditionError: If bins is less than 1, the table is empty or a
            selected word is not in the table.
    '''
    if bins < 1:
        raise PreconditionError(f'Number of bins must be at least 1, got {bins}.')
    if not len(table):
        raise PreconditionError('Histogram of an empty gain table is undefined.')
    gains = selected_gains(selection, table)
    edges = np.linspace(0.0, table.max_gain or 1.0, bins + 1)
    counts, _ = np.histogram(gains, bins=edges)
    if int(counts.sum()) != gains.size:
        raise InvariantViolationError(f'Histogram holds {int(counts.sum())} of {gains.size} gains.')
    return Histogram(
        bin_edges=tuple(float(edge) for edge in edges),
        counts=tuple(int(count) for count in counts),
        label=label or selection.kind.value,
        mean=float(gains.mean()) if gains.size else 0.0)


def histogram_comparison(selections: Dict[str, Selection], table: GainTable, bins: int = 10) -> List[Histogram]:
    ' One histogram per labeled selection over shared bins. '
    return [gain_histogram(selection, table, bins, label) for label, selection in selections.items()]


def write_histograms_csv(histograms: Iterable[Histogram], path: Union[str, Path]):
    lines = ['label,bin_start,bin_end,count']
    for histogram in histograms:
        lines.extend(
            f'{histogram.label},{start:.9f},{end:.9f},{count}'
            for start, end, count in histogram.rows())
    Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')
