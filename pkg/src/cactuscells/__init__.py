"""Exact Kazhdan-Lusztig cell computations and the cactus group action.

Computes, over any finite Coxeter group at desk scale and with arbitrary
positive (possibly unequal) weight functions: the Kazhdan-Lusztig basis,
structure constants, left/right/two-sided cells, Lusztig's a-function and
the Duflo set, the involutions of cells induced by longest elements of
parabolic subgroups together with their sign maps, and the resulting
two-sided action of the cactus group on W.  Everything is exact integer
arithmetic; every structural statement is verifiable through the reporting
APIs and the CLI.
"""

from .ordgroup import (
    GroupAlgebraElement,
    OrderedAbelianGroup,
    bar_fixed_completion,
    skew_split,
)
from .coxeter import (
    CoxeterElement,
    CoxeterSystem,
    ParabolicData,
    WeightFunction,
    diagram_automorphisms,
    get_system,
    named_system,
    system_from_config,
    weights_from_config,
)

__version__ = "0.1.0"

__all__ = [
    "GroupAlgebraElement",
    "OrderedAbelianGroup",
    "bar_fixed_completion",
    "skew_split",
    "CoxeterElement",
    "CoxeterSystem",
    "ParabolicData",
    "WeightFunction",
    "diagram_automorphisms",
    "get_system",
    "named_system",
    "system_from_config",
    "weights_from_config",
    "__version__",
]
