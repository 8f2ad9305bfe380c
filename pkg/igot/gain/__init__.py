from .exceptions import GainTableFormatError
from .gain import (NATS_PER_BIT, bigram_counts, conditional_entropy, context_gain,
                   subtoken_count, window_gains, word_gain)
from .table import GainTable, WordRecord, build_gain_table, load_gain_table, select_threshold, write_gain_table
