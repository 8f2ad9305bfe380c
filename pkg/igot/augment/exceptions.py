from ..exceptions import InvariantViolationError


class EmbeddingPlanError(InvariantViolationError):
    ' Raised when an added token has no baseline subtokens to initialize it from. '

    def __init__(self, token: str, message: str = 'has an empty baseline encoding'):
        super().__init__(f'Added token "{token}" {message}')
        self.token = token
