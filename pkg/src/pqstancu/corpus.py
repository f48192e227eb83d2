"""Named built-in test functions shared by the CLI, the lab and the tests."""
from __future__ import annotations

from typing import Dict, List

import numpy as np

from .basis import FunctionHandle
from .pq_core import ParameterError

__all__ = ["BUILTINS", "CORPUS_NAMES", "SMOOTH_CORPUS", "get", "monomial", "resolve"]


def monomial(i: int) -> FunctionHandle:
    """e_i(t) = t^i, i = 0, 1, 2."""
    if i == 0:
        return FunctionHandle("e0", lambda t: np.ones_like(t), deriv=lambda t: np.zeros_like(t))
    if i == 1:
        return FunctionHandle("e1", lambda t: t, deriv=lambda t: np.ones_like(t), lip_spec=(1.0, 1.0))
    if i == 2:
        return FunctionHandle("e2", lambda t: t * t, deriv=lambda t: 2.0 * t)
    raise ParameterError(f"monomial order {i} not supported")


BUILTINS: Dict[str, FunctionHandle] = {
    "sin_pi": FunctionHandle(
        "sin_pi",
        lambda t: np.sin(np.pi * t),
        deriv=lambda t: np.pi * np.cos(np.pi * t),
        lip_spec=(np.pi, 1.0),
        description="sin(pi t)",
    ),
    "exp_neg": FunctionHandle(
        "exp_neg",
        lambda t: np.exp(-t),
        deriv=lambda t: -np.exp(-t),
        lip_spec=(1.0, 1.0),
        description="exp(-t)",
    ),
    "square": FunctionHandle("square", lambda t: t * t, deriv=lambda t: 2.0 * t, description="t^2"),
    # no derivative: kink at 1/2
    "abs_half": FunctionHandle(
        "abs_half", lambda t: np.abs(t - 0.5), lip_spec=(1.0, 1.0), description="|t - 1/2|"
    ),
    # derivative unbounded at 0
    "sqrt": FunctionHandle(
        "sqrt", lambda t: np.sqrt(np.maximum(t, 0.0)), lip_spec=(1.0, 0.5), description="sqrt(t)"
    ),
    "const1": FunctionHandle(
        "const1", lambda t: np.ones_like(t), deriv=lambda t: np.zeros_like(t), description="1"
    ),
    "identity": FunctionHandle(
        "identity", lambda t: t, deriv=lambda t: np.ones_like(t), lip_spec=(1.0, 1.0), description="t"
    ),
}

CORPUS_NAMES: List[str] = ["sin_pi", "exp_neg", "square", "abs_half", "sqrt"]
SMOOTH_CORPUS: List[str] = ["sin_pi", "exp_neg", "square"]


def get(name: str) -> FunctionHandle:
    try:
        return BUILTINS[name]
    except KeyError:
        raise ParameterError(
            f"unknown function {name!r}; built-ins are {', '.join(sorted(BUILTINS))}"
        ) from None


def resolve(names) -> List[FunctionHandle]:
    return [get(n) for n in names]
