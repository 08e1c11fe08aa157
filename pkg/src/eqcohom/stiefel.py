"""Frame-manifold cohomology for the maximal twisted frame count.

For p >= 2 the frame count is q = floor(p/2) and the basis classes are
indexed by subsets of {p-q, ..., p-1}; the empty subset is the unit,
written [0].  For p > 2 the product is the pullback along the injection
into the rotation-group algebra, which sends [S] to the basis class of
S.  On disjoint subsets this is the union rule [S]*[T] = [S u T]; on
overlapping subsets it is usually zero, except that when p = 2 mod 4 the
square of the middle class [p/2] picks up rho times [p-1] (the oracle
value of the corresponding rotation-group square).  p = 2 is the
(1,1)-sphere, where the generator squares to rho times itself.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .coeff import BiDegree, CoeffElement, ONE, RHO
from .grading import FreeModule
from .rotation import RotElement, Sequence_, check_p, sequence_degree, so_mul
from .sparse import ModuleElement


def frame_count(p: int) -> int:
    return check_p(p) // 2


def frame_index_range(p: int) -> range:
    q = frame_count(p)
    return range(p - q, p)


def as_frame_subset(indices: Sequence[int], p: int) -> Sequence_:
    seq = tuple(sorted(indices, reverse=True))
    lo = p - frame_count(p)
    for i in seq:
        if not lo <= i < p:
            raise ValueError(f"index {i} outside [{lo},{p}) for frame classes")
    if len(set(seq)) != len(seq):
        raise ValueError(f"repeated index in frame class {seq}")
    return seq


def bracket_label(seq: Sequence_) -> str:
    # displayed in increasing order; stored decreasing like admissible sequences
    if not seq:
        return "[0]"
    return "[" + ",".join(str(i) for i in sorted(seq)) + "]"


def stiefel_basis(p: int) -> List[Tuple[Sequence_, BiDegree]]:
    """The 2^q basis classes with their bidegrees, ordered by bidegree."""
    check_p(p)
    indices = list(frame_index_range(p))
    out = []
    for mask in range(1 << len(indices)):
        seq = tuple(sorted((indices[k] for k in range(len(indices)) if mask >> k & 1), reverse=True))
        out.append((seq, sequence_degree(seq)))
    out.sort(key=lambda item: (item[1], item[0]))
    return out


def stiefel_module(p: int) -> FreeModule:
    return FreeModule(tuple((bracket_label(s), d) for s, d in stiefel_basis(p)))


class StiefelElement(ModuleElement):
    """M2-combination of frame basis classes for a fixed p."""

    __slots__ = ("p",)

    def __init__(self, p: int, terms: dict):
        check_p(p)
        self.p = p
        for seq in terms:
            as_frame_subset(seq, p)
        super().__init__(terms)

    @classmethod
    def _unchecked(cls, p: int, terms: dict) -> "StiefelElement":
        elt = cls.__new__(cls)
        elt.p = p
        elt.terms = {k: c for k, c in terms.items() if c}
        return elt

    @classmethod
    def unit(cls, p: int) -> "StiefelElement":
        return cls(p, {(): ONE})

    @classmethod
    def basis_class(cls, p: int, indices: Sequence[int]) -> "StiefelElement":
        return cls(p, {as_frame_subset(indices, p): ONE})

    def _meta(self):
        return self.p

    def _unit_args(self):
        return (self.p,)

    def _with_terms(self, terms: dict) -> "StiefelElement":
        return StiefelElement._unchecked(self.p, terms)

    def _check_compatible(self, other: "StiefelElement") -> None:
        if self.p != other.p:
            raise ValueError(f"p mismatch: {self.p} vs {other.p}")

    def _key_degree(self, key: Sequence_) -> BiDegree:
        return sequence_degree(key)

    def __mul__(self, other):
        if not isinstance(other, StiefelElement):
            return NotImplemented
        return stiefel_mul(self.p, self, other)

    def sorted_keys(self) -> List[Sequence_]:
        return sorted(self.terms, key=lambda s: (sequence_degree(s), s))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for seq in self.sorted_keys():
            c = self.terms[seq]
            prefix = "" if c == ONE else (f"({c.expr()})*" if len(c.support) > 1 else f"{c.expr()}*")
            parts.append(prefix + bracket_label(seq))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"StiefelElement(p={self.p}, {self})"


def stiefel_mul(p: int, x: StiefelElement, y: StiefelElement) -> StiefelElement:
    """Pullback of the rotation-group product for p > 2; sphere rule for p = 2."""
    if x.p != p or y.p != p:
        raise ValueError(f"p mismatch: {x.p}, {y.p} in stiefel_mul({p})")
    if p == 2:
        acc: dict = {}
        for s, cs in x.terms.items():
            for t, ct in y.terms.items():
                c = cs * ct
                if not c:
                    continue
                if s and t:
                    # V_1 of the twisted plane is the (1,1)-sphere: [1]^2 = rho*[1]
                    seq: Sequence_ = (1,)
                    c = RHO * c
                    if not c:
                        continue
                else:
                    seq = s or t
                prev = acc.get(seq)
                acc[seq] = prev + c if prev is not None else c
        return StiefelElement._unchecked(p, acc)
    product = so_mul(p, pi_star(p, x), pi_star(p, y))
    lo = p - frame_count(p)
    for seq in product.terms:
        if seq and seq[-1] < lo:
            raise RuntimeError(
                f"product left the frame-class span at {seq}; "
                "this indicates an internal inconsistency"
            )
    return StiefelElement._unchecked(p, dict(product.terms))


def pi_star(p: int, x: StiefelElement) -> RotElement:
    """Injection into the rotation-group algebra: [S] goes to the class of S."""
    if p <= 2:
        raise ValueError("pi_star requires p > 2; p = 2 is handled as a sphere")
    if x.p != p:
        raise ValueError(f"element has p={x.p}, expected {p}")
    return RotElement(p, dict(x.terms))
