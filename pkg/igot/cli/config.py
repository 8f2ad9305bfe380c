''' Run configuration shared by all subcommands.

Values are resolved with increasing precedence from the defaults of
`RunConfig`, a JSON config file and explicit command line flags. The
effective configuration is written next to the outputs of every command so
that `--config run_config.json` replays the stage.
'''
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from ..exceptions import InputError

__all__ = ['RunConfig', 'ConfigError', 'OUTPUT_ROOT_VARIABLE', 'default_output_root']

OUTPUT_ROOT_VARIABLE = 'IGOT_OUTPUT_ROOT'


def default_output_root() -> str:
    return os.environ.get(OUTPUT_ROOT_VARIABLE) or 'igot-out'


class ConfigError(InputError, ValueError):
    pass


@dataclass
class RunConfig:
    command: str = ''
    corpus: List[str] = field(default_factory=list)
    pattern: str = '**/*.txt'
    general_corpus: List[str] = field(default_factory=list)
    tokenizer: Optional[str] = None
    train_size: Optional[int] = None
    augmented_tokenizer: Optional[str] = None
    alpha: int = 8
    epsilon: float = 0.0
    mode: Literal['threshold', 'heuristic'] = 'threshold'
    epsilon_prime: Optional[float] = None
    percentile: Optional[float] = None
    cap: Optional[int] = None
    gain_table: Optional[str] = None
    selection: Optional[str] = None
    annotations: Optional[str] = None
    phi_model: Optional[str] = None
    hidden: int = 16
    ridge_lambda: float = 1e-4
    phi_epochs: int = 2000
    phi_lr: float = 1e-3
    lm_epochs: int = 3
    lm_lr: float = 0.01
    context: int = 8
    dim: int = 32
    window: int = 32
    mask_mode: Literal['clm', 'dap'] = 'clm'
    seed: int = 0
    text: Optional[str] = None
    bins: int = 10
    num_jobs: int = 1
    show_progress: bool = False
    out: str = field(default_factory=default_output_root)

    @staticmethod
    def field_names() -> List[str]:
        return [f.name for f in dataclasses.fields(RunConfig)]

    @staticmethod
    def from_json(obj: Dict[str, Any]) -> RunConfig:
        ''' Creates a config from a JSON object. Missing fields keep their defaults.

        Raises:
            ConfigError: If the object has unknown fields or values of the wrong type.
        '''
        if not isinstance(obj, dict):
            raise ConfigError('The configuration must be a JSON object.')
        unknown = sorted(set(obj) - set(RunConfig.field_names()))
        if unknown:
            raise ConfigError(f'Unknown configuration fields: {", ".join(unknown)}')
        return RunConfig().merge(obj)

    @staticmethod
    def load(path: Union[str, Path]) -> RunConfig:
        path = Path(path)
        try:
            obj = json.loads(path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as err:
            raise ConfigError(f'Invalid configuration file "{path}" line {err.lineno}: {err.msg}') from err
        return RunConfig.from_json(obj)

    def merge(self, overrides: Dict[str, Any]) -> RunConfig:
        ' Returns a copy with every override that is not None applied. '
        values = dataclasses.asdict(self)
        for name, value in overrides.items():
            if value is not None and name in values:
                values[name] = value
        config = RunConfig(**values)
        config.validate()
        return config

    def validate(self):
        ' Checks types of the fields and the value domains that do not depend on the command. '
        try:
            self.corpus = [str(path) for path in self.corpus]
            self.general_corpus = [str(path) for path in self.general_corpus]
            for name in ('train_size', 'cap'):
                if getattr(self, name) is not None:
                    setattr(self, name, int(getattr(self, name)))
            for name in ('epsilon_prime', 'percentile'):
                if getattr(self, name) is not None:
                    setattr(self, name, float(getattr(self, name)))
            for name in ('alpha', 'hidden', 'phi_epochs', 'lm_epochs', 'context', 'dim', 'window', 'seed', 'bins', 'num_jobs'):
                setattr(self, name, int(getattr(self, name)))
            for name in ('epsilon', 'ridge_lambda', 'phi_lr', 'lm_lr'):
                setattr(self, name, float(getattr(self, name)))
        except (TypeError, ValueError) as err:
            raise ConfigError(f'Invalid configuration value: {err}') from err
        if self.mode not in ('threshold', 'heuristic'):
            raise ConfigError(f'Unknown selection mode "{self.mode}".')
        if self.mask_mode not in ('clm', 'dap'):
            raise ConfigError(f'Unknown mask mode "{self.mask_mode}".')
        if self.num_jobs < 1:
            raise ConfigError('The number of jobs must be at least 1.')

    def to_json(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def save(self, path: Union[str, Path]):
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + '\n', encoding='utf-8')

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def input_path(self, value: Optional[str], default_name: str) -> Path:
        ' An explicitly configured input or the file handed over in the output directory. '
        return Path(value) if value else self.out_dir / default_name
