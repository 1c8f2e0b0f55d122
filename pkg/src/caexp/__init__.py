"""Simulation and analysis toolkit for cellular automata over Z, Z^2 and
free groups, with exact oracles and bounded searches for expansivity-style
properties of the example families."""

from .alphabet import Bits, Cyclic, Pair, Product
from .config import Configuration, random_config
from .engine import FrontSeries, TracePrefix, fronts, iterate, product, step, trace
from .errors import ResourceLimitError, UsageError
from .lattice import Z, Z2, FreeLattice, branch_of, free, lattice_by_kind
from .rules import (LayeredFlipRule, LinearRule, MultRule, ProductRule, Rule,
                    SecondOrderInverseRule, SecondOrderRule, TableRule,
                    identity_rule)

__version__ = "0.1.0"

__all__ = [
    "Bits", "Cyclic", "Pair", "Product",
    "Configuration", "random_config",
    "FrontSeries", "TracePrefix", "fronts", "iterate", "product", "step", "trace",
    "ResourceLimitError", "UsageError",
    "Z", "Z2", "FreeLattice", "branch_of", "free", "lattice_by_kind",
    "LayeredFlipRule", "LinearRule", "MultRule", "ProductRule", "Rule",
    "SecondOrderInverseRule", "SecondOrderRule", "TableRule", "identity_rule",
    "__version__",
]
