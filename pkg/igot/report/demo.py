from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Dict, List

from ..tokenizer import Tokenizer

__all__ = ['DemoOutput', 'render_demo', 'reduction_pct', 'VISIBLE_SPACE']

VISIBLE_SPACE = '␣'


def reduction_pct(base: int, augmented: int) -> float:
    ''' 100 * (base - augmented) / base rounded half up to 2 decimals. 0 for base 0.

    >>> reduction_pct(13, 8)
    38.46
    >>> reduction_pct(0, 0)
    0.0
    '''
    if base <= 0:
        return 0.0
    value = Decimal(100 * (base - augmented)) / Decimal(base)
    return float(value.quantize(Decimal('0.01'), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class DemoOutput:
    text: str
    base_tokens: List[str]
    augmented_tokens: List[str]

    @property
    def base_count(self) -> int:
        return len(self.base_tokens)

    @property
    def augmented_count(self) -> int:
        return len(self.augmented_tokens)

    @property
    def reduction_pct(self) -> float:
        return reduction_pct(self.base_count, self.augmented_count)

    def to_json(self) -> Dict[str, Any]:
        return {
            'text': self.text,
            'base': {'tokens': self.base_tokens, 'count': self.base_count},
            'augmented': {'tokens': self.augmented_tokens, 'count': self.augmented_count},
            'reduction_pct': self.reduction_pct,
        }

    def to_text(self) -> str:
        ' Both token lists on aligned lines followed by the counts. '
        width = len('augmented')
        return '\n'.join([
            f'{"base":<{width}} | ' + ' | '.join(self.base_tokens),
            f'{"augmented":<{width}} | ' + ' | '.join(self.augmented_tokens),
            f'{self.base_count} -> {self.augmented_count} tokens, {self.reduction_pct:.2f}% reduction',
        ])


def render_demo(base: Tokenizer, augmented: Tokenizer, text: str) -> DemoOutput:
    ''' Tokens of text under both tokenizers. Spaces are shown as a visible space. '''
    return DemoOutput(
        text=text,
        base_tokens=base.tokens(base.encode(text), visible_space=VISIBLE_SPACE),
        augmented_tokens=augmented.tokens(augmented.encode(text), visible_space=VISIBLE_SPACE))
