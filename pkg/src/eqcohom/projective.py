"""Twisted projective space algebras and their tensor products.

The algebra of the n-th twisted projective space is generated by a in
bidegree (1,1) and b in (2,1) with a^2 rewritten to rho*a + tau*b
(a^2 = rho*a when n = 1).  The normal-form basis is a^eps b^j with
eps + 2j <= n; monomials violating that bound are zero.  The ambient
math.inf selects the untruncated algebra.

Tensor products over M2 are taken componentwise (characteristic 2, so
no sign bookkeeping), and ``expand_in_basis`` solves for coordinates of
a homogeneous element against a homogeneous basis by Gaussian
elimination over Z/2, one bidegree at a time.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .coeff import (
    BiDegree,
    CoeffElement,
    ConeMonomial,
    ONE,
    ZERO,
    coeff_of,
    monomial_at,
)
from .gf2 import XorBasis
from .sparse import ModuleElement

Ambient = Union[int, float]  # an integer >= 1, or math.inf

INFINITE = math.inf


def check_ambient(n: Ambient) -> Ambient:
    if n == INFINITE:
        return n
    if isinstance(n, int) and not isinstance(n, bool) and n >= 1:
        return n
    raise ValueError(f"invalid projective-space ambient {n!r} (need an int >= 1 or inf)")


class ProjMonomial(NamedTuple):
    """a^eps b^j, of bidegree (eps + 2j, eps + j)."""

    eps: int
    j: int

    @property
    def degree(self) -> BiDegree:
        return BiDegree(self.eps + 2 * self.j, self.eps + self.j)

    def fits(self, ambient: Ambient) -> bool:
        return self.eps + 2 * self.j <= ambient

    def label(self, ambient: Ambient = INFINITE) -> str:
        suffix = "" if ambient == INFINITE else str(ambient)
        parts = []
        if self.eps:
            parts.append(f"a{suffix}")
        if self.j == 1:
            parts.append(f"b{suffix}")
        elif self.j > 1:
            parts.append(f"b{suffix}^{self.j}")
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        return self.label()


UNIT_PROJ = ProjMonomial(0, 0)


def rp_basis(n: Ambient):
    """Normal-form monomials of the ambient-n algebra, ordered by degree.

    Finite n gives the list of the n + 1 monomials; math.inf gives an
    endless iterator.
    """
    check_ambient(n)
    if n == INFINITE:
        return _rp_basis_iter()
    return [ProjMonomial(k % 2, k // 2) for k in range(n + 1)]


def _rp_basis_iter() -> Iterator[ProjMonomial]:
    for k in itertools.count():
        yield ProjMonomial(k % 2, k // 2)


_MONO_MUL_CACHE: dict = {}
_MONO_MUL_MONOS: dict = {}


def _mono_mul(n: Ambient, x: ProjMonomial, y: ProjMonomial) -> Tuple[Tuple[ProjMonomial, int, int], ...]:
    """Normal form of x*y in ambient n as (monomial, rho-, tau-exponent) triples."""
    key = (n, x, y)
    cached = _MONO_MUL_CACHE.get(key)
    if cached is not None:
        return cached
    eps = x.eps + y.eps
    j = x.j + y.j
    if eps <= 1:
        raw = [(ProjMonomial(eps, j), 0, 0)]
    elif n == 1:
        raw = [(ProjMonomial(1, j), 1, 0)]
    else:
        raw = [(ProjMonomial(1, j), 1, 0), (ProjMonomial(0, j + 1), 0, 1)]
    result = tuple(entry for entry in raw if entry[0].fits(n))
    _MONO_MUL_CACHE[key] = result
    _MONO_MUL_MONOS[key] = tuple(entry[0] for entry in result)
    return result


def _mono_mul_monos(n: Ambient, x: ProjMonomial, y: ProjMonomial) -> Tuple[ProjMonomial, ...]:
    """Like _mono_mul but only the normal-form monomials."""
    key = (n, x, y)
    cached = _MONO_MUL_MONOS.get(key)
    if cached is None:
        _mono_mul(n, x, y)
        cached = _MONO_MUL_MONOS[key]
    return cached


class ProjElement(ModuleElement):
    """Element of the ambient-n projective algebra."""

    __slots__ = ("ambient",)

    def __init__(self, ambient: Ambient, terms: dict):
        check_ambient(ambient)
        for m in terms:
            if not m.fits(ambient):
                raise ValueError(f"monomial {m.label(ambient)} exceeds ambient {ambient}")
        self.ambient = ambient
        super().__init__(terms)

    @classmethod
    def _unchecked(cls, ambient: Ambient, terms: dict) -> "ProjElement":
        elt = cls.__new__(cls)
        elt.ambient = ambient
        elt.terms = {k: c for k, c in terms.items() if c}
        return elt

    @classmethod
    def unit(cls, ambient: Ambient) -> "ProjElement":
        return cls(ambient, {UNIT_PROJ: ONE})

    @classmethod
    def monomial(cls, ambient: Ambient, m: ProjMonomial) -> "ProjElement":
        return cls(ambient, {m: ONE})

    @classmethod
    def gen_a(cls, ambient: Ambient) -> "ProjElement":
        return cls.monomial(ambient, ProjMonomial(1, 0))

    @classmethod
    def gen_b(cls, ambient: Ambient) -> "ProjElement":
        if ambient == 1:
            raise ValueError("the ambient-1 algebra has no b generator")
        return cls.monomial(ambient, ProjMonomial(0, 1))

    def _meta(self):
        return self.ambient

    def _unit_args(self):
        return (self.ambient,)

    def _with_terms(self, terms: dict) -> "ProjElement":
        return ProjElement._unchecked(self.ambient, terms)

    def _check_compatible(self, other: "ProjElement") -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def _key_degree(self, key: ProjMonomial) -> BiDegree:
        return key.degree

    def __mul__(self, other):
        if not isinstance(other, ProjElement):
            return NotImplemented
        return rp_mul(self.ambient, self, other)

    def truncate(self, ambient: Ambient) -> "ProjElement":
        """Image under the quotient to a smaller ambient."""
        return ProjElement(ambient, {m: c for m, c in self.terms.items() if m.fits(ambient)})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.degree, m)):
            c = self.terms[m]
            parts.append(_coeff_prefix(c) + m.label(self.ambient))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ProjElement({self.ambient}, {self})"


def _coeff_prefix(c: CoeffElement) -> str:
    if c == ONE:
        return ""
    body = c.expr()
    if len(c.support) > 1:
        body = f"({body})"
    return body + "*"


def rp_mul(n: Ambient, x: ProjElement, y: ProjElement) -> ProjElement:
    """Bilinear product reduced to normal form in ambient n."""
    check_ambient(n)
    if x.ambient != n or y.ambient != n:
        raise ValueError(f"ambient mismatch: {x.ambient}, {y.ambient} in rp_mul({n})")
    acc: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            base = c1 * c2
            if not base:
                continue
            for m, da, db in _mono_mul(n, m1, m2):
                c = base * coeff_of(ConeMonomial(False, da, db)) if da or db else base
                if not c:
                    continue
                prev = acc.get(m)
                acc[m] = prev + c if prev is not None else c
    return ProjElement._unchecked(n, acc)


# ---------------------------------------------------------------------------
# Tensor algebras

TensorMonomial = Tuple[ProjMonomial, ...]

_TENSOR_DEGREE_CACHE: dict = {}


def tensor_monomial_degree(t: TensorMonomial) -> BiDegree:
    d = _TENSOR_DEGREE_CACHE.get(t)
    if d is None:
        p = q = 0
        for m in t:
            p += m.eps + 2 * m.j
            q += m.eps + m.j
        d = BiDegree(p, q)
        _TENSOR_DEGREE_CACHE[t] = d
    return d


def tensor_monomial_label(t: TensorMonomial, factors: Sequence[Ambient]) -> str:
    """Interface form: per-factor monomials joined by '|'."""
    return "|".join(m.label(n) for m, n in zip(t, factors))


class TensorElement(ModuleElement):
    """Element of a tensor product of projective algebras."""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[Ambient], terms: dict):
        self.factors = tuple(factors)
        for n in self.factors:
            check_ambient(n)
        for t in terms:
            if len(t) != len(self.factors):
                raise ValueError(f"monomial arity {len(t)} != {len(self.factors)} factors")
            for m, n in zip(t, self.factors):
                if not m.fits(n):
                    raise ValueError(f"factor monomial {m} exceeds ambient {n}")
        super().__init__(terms)

    @classmethod
    def _unchecked(cls, factors: tuple, terms: dict) -> "TensorElement":
        elt = cls.__new__(cls)
        elt.factors = factors
        elt.terms = {k: c for k, c in terms.items() if c}
        return elt

    @classmethod
    def unit(cls, factors: Sequence[Ambient]) -> "TensorElement":
        return cls(factors, {tuple(UNIT_PROJ for _ in factors): ONE})

    @classmethod
    def monomial(cls, factors: Sequence[Ambient], t: TensorMonomial) -> "TensorElement":
        return cls(factors, {tuple(t): ONE})

    @classmethod
    def generator(cls, factors: Sequence[Ambient], position: int, m: ProjMonomial) -> "TensorElement":
        t = tuple(m if i == position else UNIT_PROJ for i in range(len(factors)))
        return cls(factors, {t: ONE})

    def _meta(self):
        return self.factors

    def _unit_args(self):
        return (self.factors,)

    def _with_terms(self, terms: dict) -> "TensorElement":
        return TensorElement._unchecked(self.factors, terms)

    def _check_compatible(self, other: "TensorElement") -> None:
        if self.factors != other.factors:
            raise ValueError(f"factor mismatch: {self.factors} vs {other.factors}")

    def _key_degree(self, key: TensorMonomial) -> BiDegree:
        return tensor_monomial_degree(key)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return tensor_mul(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in sorted(self.terms, key=lambda t: (tensor_monomial_degree(t), t)):
            c = self.terms[t]
            parts.append(_coeff_prefix(c) + tensor_monomial_label(t, self.factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TensorElement({self.factors}, {self})"


def _homogeneous_top_monos(elt: TensorElement):
    """(degree, [monomials]) when homogeneous with single top-cone
    coefficients per term, else None.  Enables the parity fast path."""
    degree = None
    monos = []
    for t, c in elt.terms.items():
        support = c.support
        if len(support) != 1:
            return None
        m = next(iter(support))
        if m.bottom:
            return None
        d = tensor_monomial_degree(t) + m.degree
        if degree is None:
            degree = d
        elif degree != d:
            return None
        monos.append(t)
    if degree is None:
        return None
    return degree, monos


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    """Componentwise product with M2 coefficients multiplied through."""
    if x.factors != y.factors:
        raise ValueError(f"factor mismatch: {x.factors} vs {y.factors}")
    factors = x.factors
    fx = _homogeneous_top_monos(x)
    fy = _homogeneous_top_monos(y)
    if fx is not None and fy is not None:
        return _tensor_mul_fast(factors, fx, fy)
    acc: dict = {}
    for t1, c1 in x.terms.items():
        for t2, c2 in y.terms.items():
            base = c1 * c2
            if not base:
                continue
            parts = []
            dead = False
            for n, m1, m2 in zip(factors, t1, t2):
                alts = _mono_mul(n, m1, m2)
                if not alts:
                    dead = True
                    break
                parts.append(alts)
            if dead:
                continue
            for combo in itertools.product(*parts):
                da = db = 0
                for _, ea, eb in combo:
                    da += ea
                    db += eb
                coeff = base * coeff_of(ConeMonomial(False, da, db)) if da or db else base
                if not coeff:
                    continue
                mono = tuple(m for m, _, _ in combo)
                prev = acc.get(mono)
                acc[mono] = prev + coeff if prev is not None else coeff
    return TensorElement._unchecked(factors, acc)


def _tensor_mul_fast(factors, fx, fy) -> TensorElement:
    """Parity product for homogeneous inputs with forced coefficients.

    Distinct output monomials of a homogeneous product carry the unique
    cone monomial of the complementary bidegree, so only the mod-2 count
    of each produced tensor monomial matters.
    """
    dx, xs = fx
    dy, ys = fy
    total = dx + dy
    positions = range(len(factors))
    toggle: set = set()
    for t1 in xs:
        for t2 in ys:
            parts = []
            dead = False
            for k in positions:
                alts = _mono_mul_monos(factors[k], t1[k], t2[k])
                if not alts:
                    dead = True
                    break
                parts.append(alts)
            if dead:
                continue
            if all(len(p) == 1 for p in parts):
                toggle.symmetric_difference_update((tuple(p[0] for p in parts),))
            else:
                for combo in itertools.product(*parts):
                    toggle.symmetric_difference_update((combo,))
    terms = {}
    for t in toggle:
        mono = monomial_at(total - tensor_monomial_degree(t))
        terms[t] = coeff_of(mono)
    return TensorElement._unchecked(tuple(factors), terms)


# ---------------------------------------------------------------------------
# Per-bidegree linear expansion


def expand_in_basis(
    factors: Sequence[Ambient],
    basis: Sequence[TensorElement],
    target: TensorElement,
) -> Optional[List[CoeffElement]]:
    """Coordinates c_i in M2 with sum(c_i * basis_i) == target, else None.

    The target and every basis element must be homogeneous.  Coordinates
    are found by Z/2 elimination in the span of pairs (cone monomial,
    tensor monomial) of the target bidegree; each candidate coordinate is
    forced up to the single cone monomial of the right bidegree, so the
    system is genuinely over Z/2.  Returns None when the target is not in
    the M2-span of the basis.
    """
    factors = tuple(factors)
    if target.factors != factors:
        raise ValueError("target factors do not match")
    for elt in basis:
        if elt.factors != factors:
            raise ValueError("basis factors do not match")
    if not target:
        return [ZERO for _ in basis]
    d = target.degree()  # raises on inhomogeneous input

    candidates: List[Optional[Tuple[CoeffElement, TensorElement]]] = []
    for elt in basis:
        if not elt:
            candidates.append(None)
            continue
        di = elt.degree()
        mono = monomial_at(d - di)
        if mono is None:
            candidates.append(None)
            continue
        coeff = coeff_of(mono)
        scaled = elt.scale(coeff)
        candidates.append((coeff, scaled) if scaled else None)

    index: dict = {}
    for entry in candidates:
        if entry is None:
            continue
        for t in entry[1].terms:
            index.setdefault(t, None)
    for t in target.terms:
        index.setdefault(t, None)
    for bit, t in enumerate(sorted(index)):
        index[t] = bit

    def to_vec(elt: TensorElement) -> int:
        vec = 0
        for t in elt.terms:
            vec |= 1 << index[t]
        return vec

    solver = XorBasis()
    positions = []
    for i, entry in enumerate(candidates):
        if entry is None:
            continue
        positions.append(i)
        solver.add(to_vec(entry[1]))
    combo = solver.solve(to_vec(target))
    if combo is None:
        return None
    coords: List[CoeffElement] = [ZERO] * len(basis)
    for slot, i in enumerate(positions):
        if combo >> slot & 1:
            coords[i] = candidates[i][0]  # type: ignore[index]
    return coords
