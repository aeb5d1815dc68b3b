"""Min-cost popular matchings in capacitated one-sided preference instances."""

from ._core import (
    PopmatchError,
    augment,
    generate_gadget,
    is_popular,
    solve,
    solve_1in3,
)

__all__ = [
    "PopmatchError",
    "augment",
    "generate_gadget",
    "is_popular",
    "solve",
    "solve_1in3",
]
