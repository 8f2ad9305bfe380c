from .corpus import Corpus, WordCounts, load_corpus, normalize, pre_tokenize, word_counts, word_spans
from .exceptions import CorpusEncodingError, CorpusFileNotFoundError
from .files import resolve_corpus_paths
