"""Verification toolkit for primitive solvable covers of curves.

Modules: ``perm`` (permutations), ``group`` (exhaustive permutation groups),
``affine`` (affine groups and the primitive solvable census), ``hurwitz``
(branch bounds and dimension counts), ``monodromy`` (tuple enumeration),
``surface`` (intersection numbers on E^(2)), ``cli``.
"""

from .perm import CycleType, Permutation, parse_permutation, format_permutation
from .group import PermGroup

__all__ = ["CycleType", "Permutation", "PermGroup", "parse_permutation", "format_permutation"]
__version__ = "0.1.0"
