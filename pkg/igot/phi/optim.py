''' Adam optimizer over named numpy parameters. '''
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

import numpy as np

from .exceptions import ShapeMismatchError

__all__ = ['AdamState', 'adam_step', 'Params']

Params = Dict[str, np.ndarray]


@dataclass(frozen=True)
class AdamState:
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps_hat: float = 1e-8
    t: int = 0
    m: Params = field(default_factory=dict)
    v: Params = field(default_factory=dict)


def _check_shapes(params: Params, grads: Params, state: AdamState):
    if set(params) != set(grads):
        raise ShapeMismatchError('<names>', sorted(params), sorted(grads))
    for name, value in params.items():
        shape = np.shape(value)
        if np.shape(grads[name]) != shape:
            raise ShapeMismatchError(name, shape, np.shape(grads[name]))
        for moments in (state.m, state.v):
            if name in moments and np.shape(moments[name]) != shape:
                raise ShapeMismatchError(name, shape, np.shape(moments[name]))


def adam_step(state: AdamState, params: Params, grads: Params) -> Tuple[Params, AdamState]:
    ''' Applies one bias corrected Adam update.

    Neither the parameters nor the state are modified in place.

    Parameters:
        state: Optimizer state. Missing moments are initialized with zeros.
        params: Parameters by name.
        grads: Gradients with the same names and shapes as params.

    Returns:
        Updated parameters and the next optimizer state.

    Raises:
        ShapeMismatchError: If names or shapes of params, grads and moments differ.
    '''
    _check_shapes(params, grads, state)
    t = state.t + 1
    m: Params = {}
    v: Params = {}
    updated: Params = {}
    for name, value in params.items():
        grad = np.asarray(grads[name], dtype=np.float64)
        m[name] = state.beta1 * state.m.get(name, np.zeros_like(grad)) + (1 - state.beta1) * grad
        v[name] = state.beta2 * state.v.get(name, np.zeros_like(grad)) + (1 - state.beta2) * grad ** 2
        m_hat = m[name] / (1 - state.beta1 ** t)
        v_hat = v[name] / (1 - state.beta2 ** t)
        updated[name] = value - state.lr * m_hat / (np.sqrt(v_hat) + state.eps_hat)
    return updated, replace(state, t=t, m=m, v=v)
