from ..exceptions import InputError


class CorpusTooSmallError(InputError, ValueError):
    def __init__(self, tokens: int, required: int):
        super().__init__(f'Corpus encodes to {tokens} tokens, at least {required} are required.')
        self.tokens = tokens
        self.required = required
