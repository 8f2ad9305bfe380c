from .figure_one import DOMAIN_TERMS as FIGURE_ONE_TERMS
from .figure_one import SENTENCE as FIGURE_ONE_SENTENCE
from .figure_one import figure_one_augmented, figure_one_tokenizer
from .synthetic import (ANNOTATED_NUMBERS, DOMAIN_TERMS, GENERAL_WORDS, IDENTIFIERS, domain_corpus_texts,
                        fixture_annotations, general_corpus_texts, glossary_text, write_fixtures)
