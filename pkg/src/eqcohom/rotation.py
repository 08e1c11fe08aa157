"""The cohomology algebra of the rotation group with half-twisted involution.

For p >= 2 (and the weight forced to floor(p/2)), the module has one free
generator per admissible sequence, a strictly decreasing tuple of indices
from {1, ..., p-1}; the empty tuple is the unit class.  Multiplication is
*defined* through the comparison map omega into the tensor product of
twisted projective algebras (ambients p-1 down to 1): products are
computed there and re-expressed in the basis images by Z/2 elimination.
The closed-form presentation is a separate, checked claim
(``check_presentation``), never an input to the arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import (
    BiDegree,
    CoeffElement,
    ONE,
    RHO,
    TAU,
    ZERO,
    coeff_of,
    monomial_at,
)
from .gf2 import XorBasis
from .grading import FreeModule
from .projective import ProjMonomial, TensorElement, UNIT_PROJ, tensor_mul
from .sparse import ModuleElement

Sequence_ = Tuple[int, ...]  # strictly decreasing admissible index tuple


def check_p(p: int) -> int:
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"need an integer p >= 2, got {p!r}")
    return p


def as_admissible(indices: Sequence[int], p: int) -> Sequence_:
    """Normalize an index collection to a strictly decreasing tuple."""
    seq = tuple(sorted(indices, reverse=True))
    for i in seq:
        if not 0 < i < p:
            raise ValueError(f"index {i} outside (0,{p}) in admissible sequence")
    if len(set(seq)) != len(seq):
        raise ValueError(f"repeated index in admissible sequence {seq}")
    return seq


_SEQ_DEGREE_CACHE: Dict[Sequence_, BiDegree] = {}


def sequence_degree(seq: Sequence_) -> BiDegree:
    d = _SEQ_DEGREE_CACHE.get(seq)
    if d is None:
        d = BiDegree(sum(seq), sum((i + 1) // 2 for i in seq))
        _SEQ_DEGREE_CACHE[seq] = d
    return d


def sequence_label(seq: Sequence_) -> str:
    if not seq:
        return "B[0]"
    return "B[" + ",".join(str(i) for i in seq) + "]"


def admissible_sequences(p: int) -> List[Sequence_]:
    """All 2^(p-1) admissible sequences, ordered by bidegree then indices."""
    check_p(p)
    seqs = []
    for mask in range(1 << (p - 1)):
        seq = tuple(i for i in range(p - 1, 0, -1) if mask >> (i - 1) & 1)
        seqs.append(seq)
    seqs.sort(key=lambda s: (sequence_degree(s), s))
    return seqs


def so_generators(p: int) -> FreeModule:
    """Free-module generators, one per admissible sequence."""
    return FreeModule(
        tuple((sequence_label(s), sequence_degree(s)) for s in admissible_sequences(p))
    )


def exponent_bound(i: int, p: int) -> int:
    """Smallest power of 2 with i * 2^k >= p, for 2 <= i < p."""
    check_p(p)
    if not 2 <= i < p:
        raise ValueError(f"index {i} outside [2,{p})")
    n = 1
    while i * n < p:
        n *= 2
    return n


def omega_factors(p: int) -> Tuple[int, ...]:
    """Tensor factor ambients, largest first."""
    return tuple(range(p - 1, 0, -1))


class RotElement(ModuleElement):
    """M2-combination of admissible basis classes of a fixed p."""

    __slots__ = ("p",)

    def __init__(self, p: int, terms: dict):
        check_p(p)
        self.p = p
        for seq in terms:
            as_admissible(seq, p)
        super().__init__(terms)

    @classmethod
    def _unchecked(cls, p: int, terms: dict) -> "RotElement":
        elt = cls.__new__(cls)
        elt.p = p
        elt.terms = {k: c for k, c in terms.items() if c}
        return elt

    @classmethod
    def unit(cls, p: int) -> "RotElement":
        return cls(p, {(): ONE})

    @classmethod
    def generator(cls, p: int, i: int) -> "RotElement":
        if not 0 < i < p:
            raise ValueError(f"no generator B{i} for p={p}")
        return cls(p, {(i,): ONE})

    @classmethod
    def basis_class(cls, p: int, indices: Sequence[int]) -> "RotElement":
        return cls(p, {as_admissible(indices, p): ONE})

    def _meta(self):
        return self.p

    def _unit_args(self):
        return (self.p,)

    def _with_terms(self, terms: dict) -> "RotElement":
        return RotElement._unchecked(self.p, terms)

    def _check_compatible(self, other: "RotElement") -> None:
        if self.p != other.p:
            raise ValueError(f"p mismatch: {self.p} vs {other.p}")

    def _key_degree(self, key: Sequence_) -> BiDegree:
        return sequence_degree(key)

    def __mul__(self, other):
        if not isinstance(other, RotElement):
            return NotImplemented
        return so_mul(self.p, self, other)

    def sorted_keys(self) -> List[Sequence_]:
        return sorted(self.terms, key=lambda s: (sequence_degree(s), s))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for seq in self.sorted_keys():
            c = self.terms[seq]
            prefix = "" if c == ONE else (f"({c.expr()})*" if len(c.support) > 1 else f"{c.expr()}*")
            parts.append(prefix + sequence_label(seq))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RotElement(p={self.p}, {self})"


# ---------------------------------------------------------------------------
# The omega oracle


class _SoRing:
    """Cached basis images and per-bidegree expansion systems for one p."""

    def __init__(self, p: int):
        self.p = p
        self.factors = omega_factors(p)
        self.basis = admissible_sequences(p)
        self._gen_images: Dict[int, TensorElement] = {}
        self._images: Dict[Sequence_, TensorElement] = {}
        self._systems: Dict[BiDegree, "_Expansion"] = {}
        self._products: Dict[Tuple[Sequence_, Sequence_], Dict[Sequence_, CoeffElement]] = {}

    def generator_image(self, i: int) -> TensorElement:
        cached = self._gen_images.get(i)
        if cached is not None:
            return cached
        if i % 2:
            mono = ProjMonomial(1, (i - 1) // 2)
        else:
            mono = ProjMonomial(0, i // 2)
        terms = {}
        for pos, ambient in enumerate(self.factors):
            if ambient < i or not mono.fits(ambient):
                continue
            key = tuple(mono if k == pos else UNIT_PROJ for k in range(len(self.factors)))
            terms[key] = ONE
        image = TensorElement(self.factors, terms)
        self._gen_images[i] = image
        return image

    def image(self, seq: Sequence_) -> TensorElement:
        cached = self._images.get(seq)
        if cached is not None:
            return cached
        image = TensorElement.unit(self.factors)
        for i in seq:
            image = tensor_mul(image, self.generator_image(i))
        self._images[seq] = image
        return image

    def expansion(self, d: BiDegree) -> "_Expansion":
        cached = self._systems.get(d)
        if cached is None:
            cached = _Expansion(self, d)
            self._systems[d] = cached
        return cached

    def pair_product(
        self,
        left: Sequence_,
        right: Sequence_,
        tensor: Optional[TensorElement] = None,
    ) -> Dict[Sequence_, CoeffElement]:
        """Structure constants of a basis pair; ``tensor`` may supply the
        already-computed product of the two omega images."""
        if not left:
            return {right: ONE}
        if not right:
            return {left: ONE}
        key = (left, right) if left <= right else (right, left)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        product = tensor if tensor is not None else tensor_mul(self.image(left), self.image(right))
        if not product:
            result: Dict[Sequence_, CoeffElement] = {}
        else:
            d = sequence_degree(left) + sequence_degree(right)
            result = self.expansion(d).expand(product)
        self._products[key] = result
        return result


class _Expansion:
    """Z/2 elimination data for one target bidegree of one ring."""

    def __init__(self, ring: _SoRing, d: BiDegree):
        self.d = d
        entries = []
        for seq in ring.basis:
            mono = monomial_at(d - sequence_degree(seq))
            if mono is None:
                continue
            scaled = ring.image(seq).scale(coeff_of(mono))
            if scaled:
                entries.append((seq, mono, scaled))
        self.index: Dict = {}
        for _, _, scaled in entries:
            for t in scaled.terms:
                self.index.setdefault(t, None)
        for bit, t in enumerate(sorted(self.index)):
            self.index[t] = bit
        self.solver = XorBasis()
        self.entries = entries
        for _, _, scaled in entries:
            self.solver.add(self._vec(scaled))

    def _vec(self, elt: TensorElement) -> Optional[int]:
        vec = 0
        for t in elt.terms:
            bit = self.index.get(t)
            if bit is None:
                return None
            vec |= 1 << bit
        return vec

    def expand(self, target: TensorElement) -> Dict[Sequence_, CoeffElement]:
        vec = self._vec(target)
        combo = self.solver.solve(vec) if vec is not None else None
        if combo is None:
            raise NotInImageError(
                f"element of bidegree {self.d} is outside the span of the basis images; "
                "this indicates an internal inconsistency"
            )
        result = {}
        for slot, (seq, mono, _) in enumerate(self.entries):
            if combo >> slot & 1:
                result[seq] = coeff_of(mono)
        return result


class NotInImageError(RuntimeError):
    """An oracle product failed to land in the span of the basis images."""


_RINGS: Dict[int, _SoRing] = {}


def _ring(p: int) -> _SoRing:
    # benign race: concurrent first builds compute identical tables
    ring = _RINGS.get(p)
    if ring is None:
        ring = _SoRing(check_p(p))
        _RINGS[p] = ring
    return ring


def omega_star(p: int, x: RotElement) -> TensorElement:
    """Image in the tensor product of projective algebras."""
    ring = _ring(p)
    if x.p != p:
        raise ValueError(f"element has p={x.p}, expected {p}")
    acc: dict = {}
    for seq, c in x.terms.items():
        for t, ci in ring.image(seq).terms.items():
            coeff = c * ci
            if not coeff:
                continue
            prev = acc.get(t)
            acc[t] = prev + coeff if prev is not None else coeff
    return TensorElement._unchecked(ring.factors, acc)


def so_mul(p: int, x: RotElement, y: RotElement) -> RotElement:
    """Oracle product: multiply omega images, re-expand in the basis."""
    if x.p != p or y.p != p:
        raise ValueError(f"p mismatch: {x.p}, {y.p} in so_mul({p})")
    ring = _ring(p)
    acc: dict = {}
    for left, cl in x.terms.items():
        for right, cr in y.terms.items():
            c = cl * cr
            if not c:
                continue
            for seq, ck in ring.pair_product(left, right).items():
                coeff = c * ck
                if not coeff:
                    continue
                prev = acc.get(seq)
                acc[seq] = prev + coeff if prev is not None else coeff
    return RotElement._unchecked(p, acc)


# ---------------------------------------------------------------------------
# Presentation audit


@dataclass
class RelationCheck:
    relation: str
    claimed: RotElement
    computed: RotElement
    match: bool


@dataclass
class PresentationReport:
    p: int
    rows: List[RelationCheck] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(row.match for row in self.rows)

    def mismatches(self) -> List[RelationCheck]:
        return [row for row in self.rows if not row.match]

    def to_text(self) -> str:
        lines = [f"presentation audit for p={self.p}:"]
        for row in self.rows:
            status = "ok" if row.match else "DIFFERS"
            line = f"  {row.relation} = {row.claimed}   [{status}]"
            if not row.match:
                line += f"  computed: {row.computed}"
            lines.append(line)
        verdict = "all relations hold" if self.all_match else (
            f"{len(self.mismatches())} relation(s) differ from the closed form"
        )
        lines.append(f"  => {verdict}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "all_match": self.all_match,
            "relations": [
                {
                    "relation": row.relation,
                    "claimed": str(row.claimed),
                    "computed": str(row.computed),
                    "match": row.match,
                }
                for row in self.rows
            ],
        }


DEFAULT_MAX_P = 8


def check_presentation(p: int, max_p: int = DEFAULT_MAX_P) -> PresentationReport:
    """Compare oracle squares and power relations with the closed form.

    The claimed relations are: B1^2 = rho*B1 + tau*B2 (B2 read as 0 when
    p = 2); for i >= 2, Bi^2 = B(2i) when 2i < p and 0 otherwise; and
    Bi^n = 0 for n the smallest power of 2 with i*n >= p.  The computed
    column always comes from the oracle product, so disagreements are
    reported rather than assumed away.
    """
    check_p(p)
    if p > max_p:
        raise ValueError(f"p={p} exceeds the configured maximum {max_p}")
    report = PresentationReport(p)

    def record(relation: str, claimed: RotElement, computed: RotElement) -> None:
        report.rows.append(RelationCheck(relation, claimed, computed, claimed == computed))

    zero = RotElement(p, {})
    b1 = RotElement.generator(p, 1)
    claimed_sq = RHO * b1
    if p > 2:
        claimed_sq = claimed_sq + TAU * RotElement.generator(p, 2)
    record("B1^2", claimed_sq, so_mul(p, b1, b1))

    for i in range(2, p):
        gen = RotElement.generator(p, i)
        claimed = RotElement.generator(p, 2 * i) if 2 * i < p else zero
        record(f"B{i}^2", claimed, so_mul(p, gen, gen))
        n = exponent_bound(i, p)
        if n != 2:
            power = gen
            e = n
            while e > 1:
                power = so_mul(p, power, power)
                e //= 2
            record(f"B{i}^{n}", zero, power)
    return report
