"""The forgetful comparison with singular Z/2 cohomology.

The forgetful map psi specializes coefficients: tau goes to 1, rho and
the whole bottom cone go to 0, and free-module generators map to
classical basis classes in their topological degree.  Two independent
bookkeeping routes are kept deliberately separate: generator counting
(``psi_image_poincare``) and product-formula expansion
(``classical_poincare``).  ``les_exactness_check`` verifies, bidegree by
bidegree, that the image of multiplication by rho is exactly the kernel
of psi on explicit Z/2 bases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from . import rotation, stiefel
from .coeff import (
    BiDegree,
    CoeffElement,
    ConeMonomial,
    DegreeLike,
    RHO_MONO,
    as_bidegree,
    dim_at,
    monomial_at,
    mul_monomials,
)
from .gf2 import rank
from .grading import FreeModule, SphereElement, Window
from .projective import ProjElement, TensorElement, tensor_monomial_label
from .rotation import RotElement
from .stiefel import StiefelElement


def psi_coeff(m: ConeMonomial) -> int:
    """Forgetful image of a cone monomial: tau powers survive, all else dies."""
    if m.bottom or m.a > 0:
        return 0
    return 1


def psi_bit(c: CoeffElement) -> int:
    """Forgetful image of an M2 element (all surviving terms land in degree 0)."""
    return sum(psi_coeff(m) for m in c.support) % 2


class ClassicalElement:
    """Z/2 sum of classical basis classes (label, topological degree)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[str, int]] = ()):
        acc: set = set()
        for t in terms:
            acc.symmetric_difference_update((tuple(t),))
        self.terms = frozenset(acc)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassicalElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "ClassicalElement") -> "ClassicalElement":
        return ClassicalElement(self.terms ^ other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(label for label, _ in sorted(self.terms, key=lambda t: (t[1], t[0])))

    def __repr__(self) -> str:
        return f"ClassicalElement({self})"


def _classical_items(x) -> List[Tuple[str, int, CoeffElement]]:
    """(label, topological degree, coefficient) triples of a supported element."""
    if isinstance(x, CoeffElement):
        return [("1", 0, x)]
    if isinstance(x, SphereElement):
        return [("1", 0, x.c_one), ("x", x.dim.p, x.c_gen)]
    if isinstance(x, ProjElement):
        return [(m.label(x.ambient), m.degree.p, c) for m, c in x.terms.items()]
    if isinstance(x, TensorElement):
        return [
            (tensor_monomial_label(t, x.factors), sum(m.degree.p for m in t), c)
            for t, c in x.terms.items()
        ]
    if isinstance(x, RotElement):
        return [(rotation.sequence_label(s), sum(s), c) for s, c in x.terms.items()]
    if isinstance(x, StiefelElement):
        return [(stiefel.bracket_label(s), sum(s), c) for s, c in x.terms.items()]
    raise TypeError(f"no forgetful image defined for {type(x).__name__}")


def psi_element(x) -> ClassicalElement:
    """Forgetful image: specialize each coefficient, keep generator labels."""
    out: set = set()
    for label, deg, c in _classical_items(x):
        if psi_bit(c):
            out.symmetric_difference_update(((label, deg),))
    return ClassicalElement(out)


# ---------------------------------------------------------------------------
# Poincare polynomial oracles


class PoincarePolynomial:
    """Finitely supported generating function with natural coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Dict[int, int]] = None):
        self.coeffs = {d: c for d, c in (coeffs or {}).items() if c}
        if any(c < 0 for c in self.coeffs.values()):
            raise ValueError("negative coefficient in a Poincare polynomial")

    @classmethod
    def product_of_one_plus(cls, exponents: Iterable[int]) -> "PoincarePolynomial":
        """Expand the product of (1 + t^i) over the given exponents."""
        coeffs = {0: 1}
        for i in exponents:
            nxt = dict(coeffs)
            for d, c in coeffs.items():
                nxt[d + i] = nxt.get(d + i, 0) + c
            coeffs = nxt
        return cls(coeffs)

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "PoincarePolynomial":
        coeffs: Dict[int, int] = {}
        for d in degrees:
            coeffs[d] = coeffs.get(d, 0) + 1
        return cls(coeffs)

    def coefficient(self, d: int) -> int:
        return self.coeffs.get(d, 0)

    def total(self) -> int:
        """Value at t = 1."""
        return sum(self.coeffs.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, PoincarePolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            if d == 0:
                parts.append(str(c))
                continue
            t = "t" if d == 1 else f"t^{d}"
            parts.append(t if c == 1 else f"{c}*{t}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PoincarePolynomial({self})"


def _space_exponents(kind: str, p: int) -> range:
    rotation.check_p(p)
    if kind == "so":
        return range(1, p)
    if kind == "stiefel":
        return stiefel.frame_index_range(p)
    raise ValueError(f"unknown space kind {kind!r} (want 'so' or 'stiefel')")


def classical_poincare(kind: str, p: int) -> PoincarePolynomial:
    """Classical Z/2 Betti generating function: product of (1 + t^i)."""
    return PoincarePolynomial.product_of_one_plus(_space_exponents(kind, p))


def psi_image_poincare(kind: str, p: int) -> PoincarePolynomial:
    """Generator count per topological degree of the free equivariant module."""
    if kind == "so":
        module = rotation.so_generators(p)
    elif kind == "stiefel":
        module = stiefel.stiefel_module(p)
    else:
        raise ValueError(f"unknown space kind {kind!r} (want 'so' or 'stiefel')")
    return PoincarePolynomial.from_degrees(d.p for d in module.degrees())


def remark_deviation_report() -> dict:
    """The p=4 forgetful-image presentation does not have total dimension 8.

    The literal truncated-polynomial presentation on the degree-1 and
    degree-3 generators (cube and square zero) has total dimension 6,
    while the forgetful image of the free module is 8-dimensional and the
    cube of the degree-1 generator survives; the product formula is
    treated as ground truth and the discrepancy is flagged.
    """
    expected = classical_poincare("so", 4)
    image = psi_image_poincare("so", 4)
    b1 = RotElement.generator(4, 1)
    cube = rotation.so_mul(4, rotation.so_mul(4, b1, b1), b1)
    return {
        "space": "so:4",
        "claimed_presentation_total_dim": 6,
        "psi_image_total_dim": image.total(),
        "classical_total_dim": expected.total(),
        "psi_b1_cubed": str(psi_element(cube)),
        "psi_b1_cubed_nonzero": bool(psi_element(cube)),
        "flagged": image.total() != 6,
    }


# ---------------------------------------------------------------------------
# Exactness of (multiplication by rho, psi) on explicit bases


@dataclass
class LesFailure:
    p: int
    q: int
    im_dim: int
    ker_dim: int


@dataclass
class LesReport:
    space: str
    window: Window
    checked: List[BiDegree] = field(default_factory=list)
    failures: List[LesFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "space": self.space,
            "checked": [{"p": d.p, "q": d.q} for d in self.checked],
            "failures": [
                {"p": f.p, "q": f.q, "im_dim": f.im_dim, "ker_dim": f.ker_dim}
                for f in self.failures
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def _bidegree_basis(module: FreeModule, d: BiDegree) -> List[Tuple[int, ConeMonomial]]:
    """(generator index, cone monomial) pairs spanning the group at d."""
    out = []
    for gi, (_, gd) in enumerate(module.generators):
        mono = monomial_at(d - gd)
        if mono is not None:
            out.append((gi, mono))
    return out


def les_exactness_check(space: str, module: FreeModule, window: Window) -> LesReport:
    """Check im(rho .) == ker(psi) at every bidegree of the window.

    At each (p, q) the map rho: (p,q) -> (p+1,q+1) and the forgetful map
    psi: (p+1,q+1) -> classical degree p+1 are written as Z/2 matrices on
    the explicit monomial-times-generator bases; the check asserts both
    the containment of the image in the kernel and equality of
    dimensions.
    """
    p0, p1, q0, q1 = window
    report = LesReport(space, window)
    for q in range(q0, q1 + 1):
        for p in range(p0, p1 + 1):
            d = BiDegree(p, q)
            report.checked.append(d)
            dom = _bidegree_basis(module, d)
            mid = _bidegree_basis(module, d + (1, 1))
            mid_index = {key: bit for bit, key in enumerate(mid)}
            classical = [gi for gi, (_, gd) in enumerate(module.generators) if gd.p == p + 1]
            classical_index = {gi: bit for bit, gi in enumerate(classical)}

            rho_vectors = []
            for gi, mono in dom:
                image = mul_monomials(RHO_MONO, mono)
                vec = 0
                if image is not None:
                    vec = 1 << mid_index[(gi, image)]
                rho_vectors.append(vec)

            psi_vectors = []
            for gi, mono in mid:
                vec = 0
                if psi_coeff(mono) and gi in classical_index:
                    vec = 1 << classical_index[gi]
                psi_vectors.append(vec)

            im_dim = rank(rho_vectors)
            ker_dim = len(mid) - rank(psi_vectors)

            contained = True
            for vec in rho_vectors:
                psi_image = 0
                for bit, psi_vec in enumerate(psi_vectors):
                    if vec >> bit & 1:
                        psi_image ^= psi_vec
                if psi_image:
                    contained = False
                    break

            if im_dim != ker_dim or not contained:
                report.failures.append(LesFailure(p, q, im_dim, ker_dim))
    return report


def standard_window(module: FreeModule) -> Window:
    """Window spanning the generator degrees with room on every side."""
    degs = module.degrees()
    p_min = min(d.p for d in degs)
    p_max = max(d.p for d in degs)
    q_min = min(d.q for d in degs)
    q_max = max(d.q for d in degs)
    return (p_min - 3, p_max + 3, q_min - 4, q_max + 4)
