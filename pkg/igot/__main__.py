''' Entry point of the command line interface.

Each subcommand runs one stage of the tokenizer adaptation pipeline:
analyze, select, train-phi, augment, lm, report, demo and fixtures.
Exit codes are 0 on success, 2 for input and configuration errors and 3 for
internal invariant violations.
'''
import logging
import sys
from argparse import ArgumentParser
from typing import List, Optional

from .cli import COMMANDS, RunConfig
from .exceptions import InputError, InvariantViolationError

log = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 2
EXIT_INVARIANT_VIOLATION = 3


def _common_arguments() -> ArgumentParser:
    ' Flags accepted by every subcommand. All default to None so that only explicit flags override the config file. '
    parser = ArgumentParser(add_help=False)
    parser.add_argument('--config', '-c', help='JSON run configuration. Explicit flags take precedence.')
    parser.add_argument('--out', '-o', help='Output directory. Defaults to $IGOT_OUTPUT_ROOT or "igot-out".')
    parser.add_argument('--corpus', nargs='+', help='Corpus files, directories or glob patterns.')
    parser.add_argument('--pattern', help='Glob pattern for files in corpus directories.')
    parser.add_argument('--general-corpus', nargs='+', help='Corpus that trains the baseline tokenizer.')
    parser.add_argument('--tokenizer', help='Baseline tokenizer file.')
    parser.add_argument('--train-size', type=int, help='Train a baseline tokenizer with this vocabulary size.')
    parser.add_argument('--augmented-tokenizer', help='Augmented tokenizer file.')
    parser.add_argument('--alpha', type=int, help='Context size in words.')
    parser.add_argument('--epsilon', type=float, help='Gain threshold in nats.')
    parser.add_argument('--mode', choices=['threshold', 'heuristic'], help='Selection mode.')
    parser.add_argument('--epsilon-prime', type=float, help='Heuristic score threshold.')
    parser.add_argument('--percentile', type=float, help='Use this percentile of the heuristic scores as threshold.')
    parser.add_argument('--cap', type=int, help='Maximum number of selected words to add.')
    parser.add_argument('--gain-table', help='Gain table file.')
    parser.add_argument('--selection', help='Selection file.')
    parser.add_argument('--annotations', help='Annotation file with "word<TAB>score" lines.')
    parser.add_argument('--phi-model', help='Heuristic scorer file.')
    parser.add_argument('--hidden', type=int, help='Hidden width of the heuristic scorer.')
    parser.add_argument('--ridge-lambda', type=float, help='Ridge penalty of the heuristic scorer.')
    parser.add_argument('--phi-epochs', type=int, help='Training epochs of the heuristic scorer.')
    parser.add_argument('--phi-lr', type=float, help='Learning rate of the heuristic scorer.')
    parser.add_argument('--lm-epochs', type=int, help='Language model training epochs.')
    parser.add_argument('--lm-lr', type=float, help='Language model learning rate.')
    parser.add_argument('--context', type=int, help='Language model context length in tokens.')
    parser.add_argument('--dim', type=int, help='Language model embedding width.')
    parser.add_argument('--window', type=int, help='Language model training window in tokens.')
    parser.add_argument('--mask-mode', choices=['clm', 'dap'], help='Loss positions of a training window.')
    parser.add_argument('--seed', type=int, help='Random seed.')
    parser.add_argument('--text', help='Text for the demo command.')
    parser.add_argument('--bins', type=int, help='Number of histogram bins.')
    parser.add_argument('--num-jobs', '-j', type=int, help='Number of worker processes.')
    parser.add_argument(
        '--show-progress', '-p', action='store_true', default=None,
        help='Enables printing of progress bars to stderr.')
    parser.add_argument(
        '--loglevel', '-l', choices=['error', 'warning', 'info', 'debug'], default='warning', help='Logger loglevel.')
    parser.add_argument('--logfile', '-L', help='Path to a logfile. Defaults to stderr.')
    return parser


def make_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='igot', description=__doc__.splitlines()[0])
    try:
        import pkg_resources
        version = pkg_resources.require('igot')[0].version
    except Exception:
        version = 'undefined'
    parser.add_argument('--version', '-V', action='version', version=version)
    common = _common_arguments()
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser(
        'analyze', parents=[common], help='Build or load the baseline tokenizer and write the gain table.')
    subparsers.add_parser(
        'select', parents=[common], help='Select words by gain threshold or by heuristic score.')
    subparsers.add_parser(
        'train-phi', parents=[common], help='Train the heuristic scorer on annotated words.')
    subparsers.add_parser(
        'augment', parents=[common], help='Extend the tokenizer with the selection and report token savings.')
    subparsers.add_parser(
        'lm', parents=[common], help='Train language models with both tokenizers and compare the runs.')
    subparsers.add_parser(
        'report', parents=[common], help='Bundle all stage outputs into a report directory.')
    subparsers.add_parser(
        'demo', parents=[common], help='Show the tokens of a text under both tokenizers.')
    subparsers.add_parser(
        'fixtures', parents=[common], help='Write the bundled synthetic corpora and annotations.')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = vars(make_parser().parse_args(argv))
    command = args.pop('command')
    config_path = args.pop('config')
    loglevel = args.pop('loglevel')
    logfile = args.pop('logfile')
    logging.basicConfig(filename=logfile, level=getattr(logging, loglevel.upper()))
    try:
        config = RunConfig.load(config_path) if config_path else RunConfig()
        config = config.merge({**args, 'command': command})
        log.debug('Running "%s" with %s', command, config)
        COMMANDS[command](config)
    except InputError as err:
        log.error('%s', err)
        print(f'error: {err}', file=sys.stderr)
        return int(err)
    except OSError as err:
        log.error('%s', err)
        print(f'error: {err}', file=sys.stderr)
        return EXIT_INPUT_ERROR
    except InvariantViolationError as err:
        log.exception('Invariant violation')
        print(f'internal error: {err}', file=sys.stderr)
        return EXIT_INVARIANT_VIOLATION
    except Exception as err:
        log.exception('Unexpected error')
        print(f'internal error: {err}', file=sys.stderr)
        return EXIT_INVARIANT_VIOLATION
    return EXIT_SUCCESS


def console_main():
    sys.exit(main())


if __name__ == '__main__':
    console_main()
