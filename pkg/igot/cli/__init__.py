from .commands import COMMANDS, analyze, augment, demo, fixtures, lm, report, select, train_phi_cmd
from .config import ConfigError, RunConfig, default_output_root
