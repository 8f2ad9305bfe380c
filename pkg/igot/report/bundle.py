''' Report directory with every analysis artifact. '''
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..augment import SavingsStats, Selection
from ..gain import GainTable, write_gain_table
from ..lm import ComparisonStats, TrainReport, timing_summary
from .histogram import Histogram, write_histograms_csv

log = logging.getLogger(__name__)

__all__ = ['bundle_report', 'write_json', 'REPORT_FILES', 'LM_REPORT_FILES']

REPORT_FILES = (
    'gain_table.tsv', 'selections.json', 'savings.json', 'histograms.csv',
    'train_reports.json', 'comparison.json', 'timing.json', 'summary.txt',
)
LM_REPORT_FILES = ('train_reports.json', 'comparison.json', 'timing.json')


def write_json(data: Any, path: Union[str, Path]):
    ' Pretty printed UTF-8 JSON with sorted keys. '
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n', encoding='utf-8')


def _summary(
        table: GainTable,
        selections: Dict[str, Selection],
        histograms: List[Histogram],
        savings: Optional[SavingsStats],
        train_reports: Optional[Dict[str, TrainReport]],
        comparison: Optional[ComparisonStats],
        analysis: Dict[str, Any]) -> str:
    lines = ['Gain table', f'  words: {len(table)}', f'  max gain: {table.max_gain:.6f} nats']
    for key in sorted(analysis):
        lines.append(f'  {key}: {analysis[key]}')
    lines.append('Selections')
    means = {histogram.label: histogram.mean for histogram in histograms}
    for label, selection in selections.items():
        lines.append(
            f'  {label}: {len(selection)} words, kind {selection.kind.value}, '
            f'threshold {selection.threshold:g}, mean gain {means.get(label, 0.0):.6f}')
    if savings is not None:
        lines.extend([
            'Token savings',
            f'  base tokens: {savings.base_tokens}',
            f'  augmented tokens: {savings.augmented_tokens}',
            f'  saved: {savings.saved_tokens} ({savings.saved_pct:.4f}%)',
        ])
    else:
        lines.append('Token savings: not computed')
    if train_reports:
        lines.append('Language model')
        for label, report in train_reports.items():
            lines.append(
                f'  {label}: {report.tokens_processed} tokens, '
                f'loss {report.initial_loss:.4f} -> {report.final_moving_average:.4f}')
        if comparison is not None:
            lines.extend([
                f'  tokens delta: {comparison.tokens_delta_pct:.2f}%',
                f'  loss delta: {comparison.loss_delta_pct:.2f}%',
            ])
        lines.append('  wall-clock times: timing.json')
    else:
        lines.append('Language model: not run')
    return '\n'.join(lines) + '\n'


def bundle_report(
        out_dir: Union[str, Path],
        table: GainTable,
        selections: Dict[str, Selection],
        histograms: List[Histogram],
        savings: Optional[SavingsStats] = None,
        train_reports: Optional[Dict[str, TrainReport]] = None,
        comparison: Optional[ComparisonStats] = None,
        analysis: Optional[Dict[str, Any]] = None) -> List[Path]:
    ''' Writes the report files to out_dir.

    The language model files are omitted if no train reports are given.
    Identical inputs produce byte identical files. Wall-clock times only
    appear in timing.json.

    Parameters:
        out_dir: Report directory. Created if missing.
        table: Gain table.
        selections: Selections by label.
        histograms: Gain histograms of the selections.
        savings: Token savings of the augmented tokenizer.
        train_reports: Language model runs by label.
        comparison: Comparison of the language model runs.
        analysis: Additional scalar diagnostics for the summary.

    Returns:
        Paths of the written files.

    Raises:
        OSError: If the directory or a file can not be written.
    '''
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    path = out_dir / 'gain_table.tsv'
    write_gain_table(table, path)
    written.append(path)

    path = out_dir / 'selections.json'
    write_json({label: selection.to_json() for label, selection in selections.items()}, path)
    written.append(path)

    path = out_dir / 'savings.json'
    write_json(savings.to_json() if savings is not None else {}, path)
    written.append(path)

    path = out_dir / 'histograms.csv'
    write_histograms_csv(histograms, path)
    written.append(path)

    if train_reports:
        path = out_dir / 'train_reports.json'
        write_json({label: report.to_json(timing=False) for label, report in train_reports.items()}, path)
        written.append(path)
        if comparison is not None:
            path = out_dir / 'comparison.json'
            write_json(comparison.to_json(), path)
            written.append(path)
        path = out_dir / 'timing.json'
        write_json(timing_summary(train_reports, comparison), path)
        written.append(path)
    else:
        log.warning('No language model reports found, the report omits the training sections.')
        for name in LM_REPORT_FILES:
            # stale files of an earlier run would contradict the summary
            (out_dir / name).unlink(missing_ok=True)

    path = out_dir / 'summary.txt'
    path.write_text(
        _summary(table, selections, histograms, savings, train_reports, comparison, analysis or {}),
        encoding='utf-8')
    written.append(path)
    log.info('Wrote %i report files to "%s"', len(written), out_dir)
    return written
