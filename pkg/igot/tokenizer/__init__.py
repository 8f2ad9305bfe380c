from .bpe import BYTE_TOKENS, MergeRule, Tokenizer, Vocab, decode, encode, train_bpe
from .escapes import escape_token, unescape_token
from .exceptions import EscapeError, TokenIdError, TokenizerFormatError
from .serialization import fingerprint, from_json, load, save, to_json
