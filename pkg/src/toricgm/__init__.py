"""Exact toric algebra for discrete exponential and graphical models.

Everything is exact-rational except where a numeric routine is explicitly
documented (iterative scaling, limit-sequence construction).  All public
values are immutable after construction and all operations are pure
functions, so concurrent use from multiple threads is safe.
"""

__version__ = "0.1.0"

from .factorization import Verdict, classify, limit_sequence  # noqa: E402,F401
from .graphs import UndirectedGraph, binary_graph, build_graph_matrix  # noqa: E402,F401
from .models import (Distribution, ModelMatrix, StateSpace,  # noqa: E402,F401
                     VariableSpec, build_loglinear_matrix, monomial_map)
from .orders import TermOrder  # noqa: E402,F401
from .polynomials import Binomial, Polynomial, buchberger  # noqa: E402,F401
from .toric import ToricBasis, compute_toric_basis  # noqa: E402,F401
