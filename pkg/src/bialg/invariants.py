"""Invariants M^g = {m : x.m = 0 for all x} of tensor powers of the adjoint module."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .lie import LieAlgebra, adjoint_action_matrix
from .linalg import Subspace, identity, is_zero_vector, nullspace
from .tensors import TensorError, act2, act3

__all__ = ["InvariantBasis", "nullspace", "invariant_subspace", "is_invariant"]


@dataclass(frozen=True)
class InvariantBasis:
    power: int
    space: Subspace

    @property
    def vectors(self) -> List[List[Fraction]]:
        return [list(v) for v in self.space.basis]

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, t: Sequence[Fraction]) -> bool:
        return self.space.contains(t)


def invariant_subspace(g: LieAlgebra, power: int) -> InvariantBasis:
    e = identity(g.dim)
    stacked = [row for i in range(g.dim) for row in adjoint_action_matrix(g, e[i], power)]
    return InvariantBasis(power, nullspace(stacked, g.dim**power))


def is_invariant(g: LieAlgebra, t: Sequence[Fraction]) -> bool:
    """Direct test x.t = 0 for every basis vector x."""
    n = g.dim
    e = identity(n)
    if len(t) == n:
        from .lie import bracket

        return all(is_zero_vector(bracket(g, x, t)) for x in e)
    if len(t) == n * n:
        return all(is_zero_vector(act2(g, x, t)) for x in e)
    if len(t) == n**3:
        return all(is_zero_vector(act3(g, x, t)) for x in e)
    raise TensorError(f"length {len(t)} is not a tensor power of dimension {n}")
