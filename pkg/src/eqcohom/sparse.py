"""Shared behavior for sparse M2-linear combinations of basis keys."""

from __future__ import annotations

from typing import Optional

from .coeff import BiDegree, CoeffElement, ZERO


class ModuleElement:
    """Formal sum  sum_k c_k * k  with c_k in M2 and hashable keys k.

    Subclasses store ambient metadata, implement ``_with_terms`` /
    ``_check_compatible`` and define their own multiplication.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: c for k, c in terms.items() if c}

    def _with_terms(self, terms: dict) -> "ModuleElement":
        raise NotImplementedError

    def _check_compatible(self, other: "ModuleElement") -> None:
        raise NotImplementedError

    def _key_degree(self, key) -> BiDegree:
        raise NotImplementedError

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self._meta() == other._meta()
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((type(self), self._meta(), frozenset(self.terms.items())))

    def _meta(self):
        return None

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            prev = merged.get(k)
            merged[k] = prev + c if prev is not None else c
        return self._with_terms(merged)

    def scale(self, coeff: CoeffElement) -> "ModuleElement":
        if not coeff:
            return self._with_terms({})
        return self._with_terms({k: coeff * c for k, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, CoeffElement):
            return self.scale(other)
        return NotImplemented

    def coefficient(self, key) -> CoeffElement:
        return self.terms.get(key, ZERO)

    def degree(self) -> Optional[BiDegree]:
        """Common bidegree of all terms; None for zero; raises if mixed."""
        deg = None
        for k, c in self.terms.items():
            for m in c.support:
                d = self._key_degree(k) + m.degree
                if deg is None:
                    deg = d
                elif deg != d:
                    raise ValueError(f"inhomogeneous element: {self!r}")
        return deg

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.__class__.unit(*self._unit_args())  # type: ignore[attr-defined]
        base = self
        e = n
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _unit_args(self) -> tuple:
        raise NotImplementedError
