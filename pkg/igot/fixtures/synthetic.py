''' Seeded generators of the bundled corpora.

The general corpus is plain English prose built from `GENERAL_WORDS` with a
few numbers. It trains the baseline tokenizer. The domain corpus imitates EDA
tool documentation: the same prose mixed with tool names and design terms
(`DOMAIN_TERMS`), configuration identifiers and cell names (`IDENTIFIERS`)
and many numeric values. The last domain document is a glossary that
contains every annotated word at least once.
'''
import logging
from pathlib import Path
from typing import Dict, List, Union

import numpy as np

from ..phi import AnnotatedWord, write_annotations
from ..tokenizer import save
from .figure_one import figure_one_tokenizer

log = logging.getLogger(__name__)

__all__ = [
    'GENERAL_WORDS', 'DOMAIN_TERMS', 'IDENTIFIERS', 'ANNOTATED_NUMBERS',
    'general_corpus_texts', 'domain_corpus_texts', 'glossary_text', 'fixture_annotations', 'write_fixtures',
]

GENERAL_WORDS = (
    'the', 'of', 'and', 'to', 'in', 'is', 'it', 'that', 'for', 'on', 'with', 'as', 'be', 'this', 'by',
    'are', 'from', 'at', 'or', 'an', 'was', 'can', 'which', 'will', 'all', 'each', 'more', 'when',
    'we', 'you', 'they', 'one', 'two', 'three', 'first', 'second', 'then', 'after', 'before', 'into',
    'use', 'used', 'using', 'run', 'runs', 'running', 'step', 'steps', 'flow', 'file', 'files', 'output',
    'input', 'result', 'results', 'report', 'reports', 'value', 'values', 'default', 'set', 'sets',
    'time', 'timing', 'area', 'power', 'design', 'designs', 'tool', 'tools', 'open', 'source', 'chip',
    'chips', 'block', 'blocks', 'layer', 'layers', 'metal', 'wire', 'wires', 'clock', 'clocks', 'signal',
    'signals', 'check', 'checks', 'rule', 'rules', 'final', 'stage', 'stages', 'support', 'supports',
    'example', 'examples', 'option', 'options', 'variable', 'variables', 'script', 'scripts', 'command',
    'commands', 'directory', 'path', 'paths', 'version', 'user', 'users', 'project', 'projects', 'new',
    'old', 'large', 'small', 'high', 'low', 'fast', 'slow', 'good', 'better', 'best', 'simple', 'complex',
    'should', 'must', 'may', 'might', 'could', 'would', 'also', 'only', 'very', 'much', 'many', 'some',
    'other', 'these', 'those', 'there', 'here', 'where', 'how', 'what', 'why', 'who', 'not', 'no', 'yes',
    'make', 'makes', 'made', 'take', 'takes', 'give', 'gives', 'show', 'shows', 'find', 'finds', 'keep',
    'change', 'changes', 'number', 'numbers', 'total', 'size', 'sizes', 'level', 'levels', 'point',
    'points', 'line', 'lines', 'page', 'pages', 'section', 'table', 'figure', 'list', 'lists', 'order',
    'introduce', 'explain', 'describe', 'provide', 'provides', 'produce', 'produces', 'generate',
    'generates', 'create', 'creates', 'build', 'builds', 'test', 'tests', 'measure', 'measures',
    'improve', 'improves', 'reduce', 'reduces', 'increase', 'increases', 'common', 'special', 'general',
    'specific', 'important', 'possible', 'available', 'required', 'optional', 'current', 'previous',
    'next', 'last', 'early', 'late', 'same', 'different', 'similar', 'following', 'given', 'known',
)

DOMAIN_TERMS = (
    'OpenLane', 'OpenROAD', 'Yosys', 'KLayout', 'Netgen', 'OpenSTA', 'TritonRoute', 'RePlAce', 'FastRoute',
    'OpenDB', 'Qflow', 'Verilator', 'GTKWave', 'SkyWater', 'Caravel', 'Efabless', 'OpenRAM', 'OpenPhySyn',
    'TritonCTS', 'PDNGen', 'ioPlacer', 'TritonMacroPlacer', 'CVC', 'Magic', 'SPEF', 'LEF', 'DEF', 'GDSII',
    'Liberty', 'SystemVerilog', 'EDA', 'netlist', 'netlists', 'floorplanning', 'floorplan', 'tapeout',
    'synthesizable', 'standardcell', 'macrocell', 'antenna', 'parasitics', 'hierarchical', 'flattening',
    'legalization', 'detailedrouting', 'globalrouting', 'clocktree', 'powergrid', 'decap', 'tapcell',
    'fillcell', 'welltap', 'slew', 'setup', 'hold', 'skew', 'placer', 'router', 'Openlane', 'PDK',
)

IDENTIFIERS = (
    'sky130A_sky130_fd_sc_hd_config', 'sky130_fd_sc_hd__inv_2', 'sky130_fd_sc_hd__nand2_1',
    'sky130_fd_sc_hd__dfxtp_4', 'sky130_fd_sc_hd__buf_8', 'sky130_fd_sc_hd__decap_12',
    'sky130_fd_sc_hd__tapvpwrvgnd_1', 'sky130_fd_sc_hd__fill_1', 'sky130_fd_sc_hs__mux2_1',
    'sky130_fd_pr__nfet_01v8', 'FP_CORE_UTIL', 'PL_TARGET_DENSITY', 'CLOCK_PERIOD', 'SYNTH_STRATEGY',
    'ROUTING_CORES', 'FP_PDN_VPITCH', 'FP_PDN_HPITCH', 'GLB_RT_ADJUSTMENT', 'DESIGN_NAME', 'VERILOG_FILES',
    'CLOCK_PORT', 'RUN_KLAYOUT_DRC', 'FP_SIZING', 'DIE_AREA', 'PL_BASIC_PLACEMENT', 'CELL_PAD',
    'SYNTH_MAX_FANOUT', 'RUN_CVC', 'MAGIC_DRC_USE_GDS', 'LVS_CONNECT_BY_LABEL', 'QUIT_ON_TIMING_VIOLATIONS',
    'gpio_control_block', 'user_project_wrapper', 'mgmt_core_wrapper', 'wb_clk_i', 'la_data_in',
    'io_oeb', 'vccd1', 'vssd1', 'config.tcl',
)

# Numbers that occur in the annotation file.
ANNOTATED_NUMBERS = (
    '0.25', '1.8', '130', '2.5', '45', '3.3', '0.01', '10.0', '55', '0.65', '128', '1.2', '24', '0.5',
    '100', '7.5', '12', '0.75', '64', '5.0',
)


def _number(rng: np.random.Generator) -> str:
    if rng.random() < 0.5:
        return str(int(rng.integers(0, 1000)))
    return f'{int(rng.integers(0, 100))}.{int(rng.integers(0, 100)):02d}'


def _sentence(rng: np.random.Generator, probabilities: np.ndarray) -> str:
    ''' One sentence. Categories are general word, domain term, identifier and number. '''
    length = int(rng.integers(8, 17))
    categories = rng.choice(4, size=length, p=probabilities)
    words: List[str] = []
    for position, category in enumerate(categories):
        if category == 0:
            word = GENERAL_WORDS[int(rng.integers(len(GENERAL_WORDS)))]
            if position == 0:
                word = word.capitalize()
        elif category == 1:
            word = DOMAIN_TERMS[int(rng.integers(len(DOMAIN_TERMS)))]
        elif category == 2:
            word = IDENTIFIERS[int(rng.integers(len(IDENTIFIERS)))]
        else:
            word = _number(rng)
        if position < length - 1 and rng.random() < 0.08:
            word += ','
        words.append(word)
    return ' '.join(words) + '.'


def _document(rng: np.random.Generator, probabilities: np.ndarray, chars: int) -> str:
    paragraphs: List[str] = []
    size = 0
    while size < chars:
        paragraph = ' '.join(_sentence(rng, probabilities) for _ in range(int(rng.integers(4, 9))))
        paragraphs.append(paragraph)
        size += len(paragraph) + 2
    return '\n\n'.join(paragraphs) + '\n'


def general_corpus_texts(seed: int = 0, num_documents: int = 4, document_chars: int = 50_000) -> List[str]:
    ' English prose with a few numbers and none of the domain words. '
    rng = np.random.default_rng(seed)
    probabilities = np.array([0.95, 0.0, 0.0, 0.05])
    return [_document(rng, probabilities, document_chars) for _ in range(num_documents)]


def glossary_text() -> str:
    ' A document that mentions every annotated word. '
    lines = ['Glossary', '']
    for item in fixture_annotations():
        lines.append(f'{item.word}: the {item.word} value is used in the flow.')
    return '\n'.join(lines) + '\n'


def domain_corpus_texts(seed: int = 1, num_documents: int = 16, document_chars: int = 64_000) -> List[str]:
    ''' Identifier rich EDA documentation, about one megabyte with the defaults.

    The glossary is appended as the last document.
    '''
    rng = np.random.default_rng(seed)
    probabilities = np.array([0.6, 0.15, 0.1, 0.15])
    texts = [_document(rng, probabilities, document_chars) for _ in range(num_documents)]
    texts.append(glossary_text())
    return texts


def fixture_annotations() -> List[AnnotatedWord]:
    ''' Scores of the bundled annotation set.

    Domain terms score 4 or 5, identifiers and numbers 1 or 2 and plain
    English words 2.
    '''
    annotations = [AnnotatedWord(term, 4.0 + i % 2) for i, term in enumerate(DOMAIN_TERMS)]
    annotations.extend(AnnotatedWord(name, 1.0 + i % 2) for i, name in enumerate(IDENTIFIERS))
    annotations.extend(AnnotatedWord(number, 1.0 + i % 2) for i, number in enumerate(ANNOTATED_NUMBERS))
    annotations.extend(AnnotatedWord(word, 2.0) for word in GENERAL_WORDS[::6])
    return annotations


def write_fixtures(out_dir: Union[str, Path], seed: int = 0) -> Dict[str, Path]:
    ''' Writes the bundled corpora, annotations and the demonstration tokenizer.

    Returns:
        Paths of the written files and directories by name.
    '''
    out_dir = Path(out_dir)
    domain_dir = out_dir / 'domain'
    domain_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        'general': out_dir / 'general.txt',
        'domain': domain_dir,
        'annotations': out_dir / 'annotations.tsv',
        'figure_one_tokenizer': out_dir / 'figure_one_tokenizer.json',
    }
    paths['general'].write_text('\n\n'.join(general_corpus_texts(seed)), encoding='utf-8')
    for index, text in enumerate(domain_corpus_texts(seed + 1)):
        (domain_dir / f'doc{index:02d}.txt').write_text(text, encoding='utf-8')
    write_annotations(fixture_annotations(), paths['annotations'])
    save(figure_one_tokenizer(), paths['figure_one_tokenizer'])
    log.info('Wrote fixtures to "%s"', out_dir)
    return paths
