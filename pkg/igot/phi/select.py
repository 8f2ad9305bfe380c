import logging
from typing import List, Optional

import numpy as np

from ..augment.selection import Selection, SelectionKind
from ..exceptions import PreconditionError
from ..gain import GainTable, WordRecord
from .features import FeatureModel
from .model import PhiModel, phi_predict

log = logging.getLogger(__name__)

__all__ = ['select_heuristic', 'score_percentile', 'score_table']


def _candidates(table: GainTable, candidates: Optional[Selection]) -> List[WordRecord]:
    if candidates is None:
        return list(table.records)
    allowed = set(candidates.words)
    return [record for record in table.records if record.word in allowed]


def score_table(table: GainTable, model: PhiModel, candidates: Optional[Selection] = None) -> np.ndarray:
    ' Heuristic score of every table record, restricted to the candidates if given. '
    records = _candidates(table, candidates)
    return phi_predict(model, FeatureModel(table).transform(records)) if records else np.zeros(0)


def select_heuristic(
        table: GainTable,
        model: PhiModel,
        epsilon_prime: float,
        candidates: Optional[Selection] = None) -> Selection:
    ''' Selects every word whose heuristic score is strictly greater than epsilon_prime.

    Parameters:
        table: Gain table. Also supplies the feature normalization.
        model: Heuristic scorer.
        epsilon_prime: Score threshold.
        candidates: If given, only words of this selection are considered.

    Returns:
        Heuristic selection ordered by descending score, ties by word.
    '''
    records = _candidates(table, candidates)
    scores = score_table(table, model, candidates)
    entries = sorted(
        ((record.word, float(score)) for record, score in zip(records, scores) if score > epsilon_prime),
        key=lambda entry: (-entry[1], entry[0]))
    log.debug('Heuristic threshold %f selects %i of %i words', epsilon_prime, len(entries), len(records))
    return Selection(SelectionKind.HEURISTIC, float(epsilon_prime), tuple(entries))


def score_percentile(
        table: GainTable,
        model: PhiModel,
        q: float,
        candidates: Optional[Selection] = None) -> float:
    ''' The q-th percentile of the heuristic scores, used as epsilon_prime.

    Raises:
        PreconditionError: If q is outside [0, 100] or there is nothing to score.
    '''
    if not 0 <= q <= 100:
        raise PreconditionError(f'Percentile must be in [0, 100], got {q}.')
    scores = score_table(table, model, candidates)
    if not scores.size:
        raise PreconditionError('Percentile of an empty score set is undefined.')
    return float(np.percentile(scores, q))
