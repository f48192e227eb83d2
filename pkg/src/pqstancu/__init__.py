"""(p,q)-Stancu-Schurer operators: evaluation, moments, moduli and error bounds."""
from ._kernels import BACKEND
from .basis import (
    DomainError,
    FunctionHandle,
    OperatorConfig,
    apply_bernstein_schurer,
    apply_stancu_schurer,
    basis_weight,
    basis_weights,
    node,
    nodes,
)
from .pq_core import ParameterError, PQPair, pq_binomial, pq_factorial, pq_int

__version__ = "0.1.0"
