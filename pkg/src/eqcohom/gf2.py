"""GF(2) linear algebra on int bitmasks."""

from __future__ import annotations

from typing import Iterable, List, Optional, Tuple


class XorBasis:
    """Echelonized span of bit vectors, tracking expressing combinations.

    Vectors are Python ints (bit i = coordinate i).  Each added vector
    carries a combination tag; reductions accumulate tags so that
    membership queries also return which added vectors express the query.
    """

    __slots__ = ("pivots", "count")

    def __init__(self):
        self.pivots: dict = {}  # leading bit -> (vector, combination)
        self.count = 0

    def _reduce(self, vec: int, combo: int) -> Tuple[int, int]:
        while vec:
            lead = vec.bit_length() - 1
            if lead not in self.pivots:
                break
            pvec, pcombo = self.pivots[lead]
            vec ^= pvec
            combo ^= pcombo
        return vec, combo

    def add(self, vec: int) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        tag = 1 << self.count
        self.count += 1
        vec, combo = self._reduce(vec, tag)
        if vec == 0:
            return False
        self.pivots[vec.bit_length() - 1] = (vec, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, target: int) -> Optional[int]:
        """Combination bitmask expressing target, or None if outside the span."""
        vec, combo = self._reduce(target, 0)
        return combo if vec == 0 else None


def rank(vectors: Iterable[int]) -> int:
    basis = XorBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank


def solve_subset(vectors: List[int], target: int) -> Optional[List[int]]:
    """0/1 coefficients c with xor(c_i * vectors[i]) == target, else None."""
    basis = XorBasis()
    for v in vectors:
        basis.add(v)
    combo = basis.solve(target)
    if combo is None:
        return None
    return [(combo >> i) & 1 for i in range(len(vectors))]
