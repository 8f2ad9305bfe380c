from unittest import TestCase

from igot.corpus import (Corpus, CorpusEncodingError, CorpusFileNotFoundError, WordCounts, load_corpus, normalize,
                         pre_tokenize, resolve_corpus_paths, word_counts, word_spans)
from igot.exceptions import InputError

from .mock import MockCorpusDirectory


class TestPreTokenize(TestCase):
    def test_sentence(self):
        self.assertListEqual(
            pre_tokenize('Introduce OpenLane, an EDA tool'),
            ['Introduce', 'OpenLane', 'an', 'EDA', 'tool'])

    def test_identifier(self):
        self.assertListEqual(
            pre_tokenize('sky130A_sky130_fd_sc_hd_config'),
            ['sky130A_sky130_fd_sc_hd_config'])

    def test_whitespace_only(self):
        self.assertListEqual(pre_tokenize('   '), [])
        self.assertListEqual(pre_tokenize(''), [])

    def test_punctuation(self):
        self.assertListEqual(
            pre_tokenize('("FP_CORE_UTIL" = 0.45). place-and-route, 3.3V...'),
            ['FP_CORE_UTIL', '0.45', 'place-and-route', '3.3V'])
        self.assertListEqual(pre_tokenize('_hidden_ -- ...'), ['hidden'])

    def test_trailing_combining_marks(self):
        namaste = 'नमस्ते'
        duniya = 'दुनिया'
        kitaben = 'किताबें'
        self.assertListEqual(pre_tokenize(f'{namaste} {duniya}, {kitaben}.'), [namaste, duniya, kitaben])
        self.assertListEqual(pre_tokenize('café! x̣́'), ['café', 'x̣́'])
        self.assertListEqual(list(word_spans('café!')), [(0, 5)])
        self.assertListEqual(pre_tokenize('́ a'), ['a'])

    def test_idempotent(self):
        text = 'The "OpenROAD" flow: sky130_fd_sc_hd__inv_2, 12.5% and config.tcl! _x_ Größe.'
        for word in pre_tokenize(text):
            self.assertListEqual(pre_tokenize(word), [word])


class TestCorpus(TestCase):
    def setUp(self):
        self.files = MockCorpusDirectory()
        self.files.setup()

    def tearDown(self):
        self.files.cleanup()

    def test_load_single_file(self):
        path = self.files.write('a.txt', 'OpenLane is an EDA tool')
        corpus = load_corpus([path])
        self.assertEqual(len(corpus), 1)
        self.assertEqual(corpus.total_words, 5)

    def test_load_empty_file(self):
        corpus = load_corpus([self.files.write('empty.txt')])
        self.assertEqual(len(corpus), 1)
        self.assertEqual(corpus.total_words, 0)

    def test_load_additive(self):
        corpus = load_corpus([self.files.write('a.txt', 'a b'), self.files.write('b.txt', 'c')])
        self.assertEqual(corpus.total_words, 3)

    def test_normalization(self):
        path = self.files.root / 'crlf.txt'
        path.write_bytes('Café line\r\nnext\rlast'.encode('utf-8'))
        corpus = load_corpus([path])
        self.assertEqual(corpus.documents[0], 'Café line\nnext\nlast')
        self.assertEqual(normalize('OpenLane'), 'OpenLane')

    def test_missing_file(self):
        with self.assertRaises(CorpusFileNotFoundError) as context:
            load_corpus([self.files.root / 'missing.txt'])
        self.assertIn('missing.txt', str(context.exception))
        self.assertIsInstance(context.exception, InputError)
        self.assertEqual(int(context.exception), 2)

    def test_invalid_utf8(self):
        path = self.files.root / 'latin1.txt'
        path.write_bytes(b'abc \xff def')
        with self.assertRaises(CorpusEncodingError) as context:
            load_corpus([path])
        self.assertEqual(context.exception.offset, 4)

    def test_concatenation_sums_counts(self):
        a = Corpus.from_texts(['a b a', 'OpenLane'])
        b = Corpus.from_texts(['b c'])
        joined = a + b
        self.assertEqual(joined.total_words, a.total_words + b.total_words)
        self.assertEqual(word_counts(joined), word_counts(a) + word_counts(b))


class TestWordCounts(TestCase):
    def test_counts(self):
        self.assertDictEqual(dict(word_counts(Corpus.from_texts(['a b a']))), {'a': 2, 'b': 1})
        self.assertDictEqual(dict(word_counts(Corpus.from_texts(['']))), {})
        self.assertDictEqual(
            dict(word_counts(Corpus.from_texts(['OpenLane OpenLane tool']))),
            {'OpenLane': 2, 'tool': 1})

    def test_order_insensitive(self):
        texts = ['a b c', 'c d', 'a a e']
        self.assertEqual(
            word_counts(Corpus.from_texts(texts)),
            word_counts(Corpus.from_texts(reversed(texts))))

    def test_total_matches_corpus(self):
        corpus = Corpus.from_texts(['Introduce OpenLane, an EDA tool.', 'x_1 y-2 z.3'])
        self.assertEqual(word_counts(corpus).total, corpus.total_words)

    def test_merge_commutative_associative(self):
        a = WordCounts({'a': 1, 'b': 2})
        b = WordCounts({'b': 1, 'c': 5})
        c = WordCounts({'a': 3})
        self.assertEqual(a + b, b + a)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual(dict(a + b + c), {'a': 4, 'b': 3, 'c': 5})

    def test_parallel_counts(self):
        corpus = Corpus.from_texts(['a b', 'b c', 'c d', 'd e'] * 3)
        self.assertEqual(word_counts(corpus, num_jobs=2), word_counts(corpus))

    def test_most_common(self):
        counts = WordCounts({'b': 2, 'a': 2, 'c': 3})
        self.assertListEqual(counts.most_common(), [('c', 3), ('a', 2), ('b', 2)])
        self.assertListEqual(counts.most_common(1), [('c', 3)])


class TestResolveCorpusPaths(TestCase):
    def setUp(self):
        self.files = MockCorpusDirectory()
        self.files.setup()
        self.a = self.files.write('docs/a.txt', 'a')
        self.b = self.files.write('docs/sub/b.txt', 'b')
        self.c = self.files.write('docs/c.md', 'c')

    def tearDown(self):
        self.files.cleanup()

    def test_directory(self):
        self.assertListEqual(resolve_corpus_paths([self.files.root / 'docs']), [self.a, self.b])

    def test_pattern(self):
        self.assertListEqual(resolve_corpus_paths([self.files.root / 'docs'], pattern='*.md'), [self.c])

    def test_glob_and_duplicates(self):
        paths = resolve_corpus_paths([str(self.files.root / 'docs' / '*.txt'), self.a])
        self.assertListEqual(paths, [self.a])

    def test_missing(self):
        with self.assertRaises(CorpusFileNotFoundError):
            resolve_corpus_paths([self.files.root / 'nothing.txt'])
