import doctest

import igot.corpus.corpus
import igot.gain.gain
import igot.lm.model
import igot.lm.training
import igot.report.demo
import igot.tokenizer.escapes

MODULES = (
    igot.corpus.corpus,
    igot.gain.gain,
    igot.lm.model,
    igot.lm.training,
    igot.report.demo,
    igot.tokenizer.escapes,
)


def load_tests(loader, tests, ignore):
    for module in MODULES:
        tests.addTests(doctest.DocTestSuite(module, optionflags=doctest.NORMALIZE_WHITESPACE))
    return tests
