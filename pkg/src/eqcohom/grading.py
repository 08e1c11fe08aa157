"""Free-module bookkeeping over the point ring.

Free modules are generator lists with bidegrees; Betti numbers at a
bidegree count monomial-times-generator contributions via the two-cone
dimension function.  Comparisons use generator-degree multisets, so
labels are display metadata only.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .coeff import BiDegree, CoeffElement, DegreeLike, ONE, RHO, ZERO, as_bidegree, dim_at

Generator = Tuple[str, BiDegree]


@dataclass(frozen=True)
class FreeModule:
    """A free M2-module given by its list of (label, bidegree) generators."""

    generators: Tuple[Generator, ...]

    def __post_init__(self):
        labels = [g[0] for g in self.generators]
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise ValueError(f"duplicate generator labels: {dupes}")

    @classmethod
    def of(cls, degrees: Iterable[DegreeLike], prefix: str = "g") -> "FreeModule":
        gens = tuple(
            (f"{prefix}{i}", as_bidegree(d)) for i, d in enumerate(degrees)
        )
        return cls(gens)

    def degrees(self) -> List[BiDegree]:
        return [d for _, d in self.generators]

    def degree_multiset(self) -> Counter:
        return Counter(self.degrees())

    def __len__(self) -> int:
        return len(self.generators)


POINT_MODULE = FreeModule((("1", BiDegree(0, 0)),))


def betti(module: FreeModule, d: DegreeLike) -> int:
    """Z/2 dimension contributed by all generators at bidegree d."""
    d = as_bidegree(d)
    return sum(dim_at(d - gd) for _, gd in module.generators)


def tensor_module(left: FreeModule, right: FreeModule) -> FreeModule:
    """Generators are pairwise degree sums with concatenated labels."""
    gens = []
    seen = set()
    for la, da in left.generators:
        for lb, db in right.generators:
            label = f"{la}*{lb}"
            while label in seen:
                label += "'"
            seen.add(label)
            gens.append((label, da + db))
    return FreeModule(tuple(gens))


def sphere_product_module(dims: Sequence[DegreeLike]) -> FreeModule:
    """Free module of a product of spheres: one generator per subset."""
    dims = [as_bidegree(d) for d in dims]
    gens = []
    for mask in range(1 << len(dims)):
        total = BiDegree(0, 0)
        parts = []
        for i, d in enumerate(dims):
            if mask >> i & 1:
                total = total + d
                parts.append(f"x{i + 1}")
        gens.append(("*".join(parts) or "1", total))
    return FreeModule(tuple(gens))


def module_iso_check(left: FreeModule, right: FreeModule) -> bool:
    """Equality of generator-degree multisets (labels ignored)."""
    return left.degree_multiset() == right.degree_multiset()


def sphere_module(dim: DegreeLike) -> FreeModule:
    dim = as_bidegree(dim)
    return FreeModule((("1", BiDegree(0, 0)), ("x", dim)))


# ---------------------------------------------------------------------------
# Sphere algebras


class SphereElement:
    """c0 * 1 + c1 * x in the two-generator sphere algebra."""

    __slots__ = ("dim", "c_one", "c_gen")

    def __init__(self, dim: DegreeLike, c_one: CoeffElement, c_gen: CoeffElement):
        self.dim = as_bidegree(dim)
        self.c_one = c_one
        self.c_gen = c_gen

    @classmethod
    def unit(cls, dim: DegreeLike) -> "SphereElement":
        return cls(dim, ONE, ZERO)

    @classmethod
    def generator(cls, dim: DegreeLike) -> "SphereElement":
        return cls(dim, ZERO, ONE)

    def __bool__(self) -> bool:
        return bool(self.c_one) or bool(self.c_gen)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SphereElement)
            and self.dim == other.dim
            and self.c_one == other.c_one
            and self.c_gen == other.c_gen
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.c_one, self.c_gen))

    def __add__(self, other: "SphereElement") -> "SphereElement":
        self._check(other)
        return SphereElement(self.dim, self.c_one + other.c_one, self.c_gen + other.c_gen)

    def scale(self, coeff: CoeffElement) -> "SphereElement":
        return SphereElement(self.dim, coeff * self.c_one, coeff * self.c_gen)

    def __rmul__(self, other):
        if isinstance(other, CoeffElement):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other: "SphereElement") -> "SphereElement":
        self._check(other)
        return sphere_mul(self.dim, self, other)

    def __pow__(self, n: int) -> "SphereElement":
        result = SphereElement.unit(self.dim)
        for _ in range(n):
            result = result * self
        return result

    def _check(self, other: "SphereElement") -> None:
        if self.dim != other.dim:
            raise ValueError(f"sphere dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        return f"SphereElement({self.dim}, {self.c_one!r}, {self.c_gen!r})"


def sphere_mul(dim: DegreeLike, x: SphereElement, y: SphereElement) -> SphereElement:
    """Product in the sphere algebra: x^2 = rho*x for dim (1,1), else x^2 = 0."""
    dim = as_bidegree(dim)
    if dim == BiDegree(0, 0):
        raise ValueError("sphere dimension (0,0) is not a sphere algebra")
    if x.dim != dim or y.dim != dim:
        raise ValueError("elements do not live on the requested sphere")
    c_one = x.c_one * y.c_one
    c_gen = x.c_one * y.c_gen + x.c_gen * y.c_one
    square = x.c_gen * y.c_gen
    if square and dim == BiDegree(1, 1):
        c_gen = c_gen + RHO * square
    return SphereElement(dim, c_one, c_gen)


# ---------------------------------------------------------------------------
# Betti tables

Window = Tuple[int, int, int, int]  # p0, p1, q0, q1, all inclusive


@dataclass
class BettiTable:
    """Dimensions of a free module over an inclusive bidegree window."""

    space: str
    window: Window
    entries: dict

    @classmethod
    def of_module(cls, space: str, module: FreeModule, window: Window) -> "BettiTable":
        p0, p1, q0, q1 = window
        if p0 > p1 or q0 > q1:
            raise ValueError(f"empty window {window}")
        entries = {}
        for q in range(q0, q1 + 1):
            for p in range(p0, p1 + 1):
                entries[BiDegree(p, q)] = betti(module, (p, q))
        return cls(space, window, entries)

    def dim(self, d: DegreeLike) -> int:
        return self.entries[as_bidegree(d)]

    def to_csv(self) -> str:
        p0, p1, q0, q1 = self.window
        lines = ["q\\p," + ",".join(str(p) for p in range(p0, p1 + 1))]
        for q in range(q1, q0 - 1, -1):
            row = [str(q)] + [str(self.entries[BiDegree(p, q)]) for p in range(p0, p1 + 1)]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        p0, p1, q0, q1 = self.window
        entries = []
        for q in range(q1, q0 - 1, -1):
            for p in range(p0, p1 + 1):
                entries.append({"p": p, "q": q, "dim": self.entries[BiDegree(p, q)]})
        return {"space": self.space, "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"

    def to_ascii(self) -> str:
        p0, p1, q0, q1 = self.window
        width = max(
            2,
            max(len(str(v)) for v in self.entries.values()),
            max(len(str(p)) for p in (p0, p1)),
            max(len(str(q)) for q in (q0, q1)),
        )
        lines = []
        for q in range(q1, q0 - 1, -1):
            cells = []
            for p in range(p0, p1 + 1):
                v = self.entries[BiDegree(p, q)]
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(f"{str(q).rjust(4)} |" + " ".join(cells))
        lines.append("     +" + "-" * ((width + 1) * (p1 - p0 + 1)))
        lines.append("  q/p " + " ".join(str(p).rjust(width) for p in range(p0, p1 + 1)))
        return "\n".join(lines) + "\n"
