"""Space selectors: element construction, token resolution, serialization.

A Space knows how to build the unit element, resolve generator tokens
from the parser, and serialize elements back to parseable expressions.
Selectors: "pt", "sphere:p,q", "rp:n" (n an integer or "inf"), "so:p",
"stiefel:p", "tensor:n1,n2,...".
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from . import rotation, stiefel
from .coeff import BiDegree, CoeffElement, ONE, as_bidegree
from .grading import FreeModule, POINT_MODULE, SphereElement, sphere_module
from .parser import Token, UnknownGeneratorError, evaluate, parse_expr
from .projective import (
    INFINITE,
    ProjElement,
    TensorElement,
    check_ambient,
)
from .rotation import RotElement
from .stiefel import StiefelElement


def _coeff_body(c: CoeffElement) -> str:
    body = c.expr()
    return f"({body})" if len(c.support) > 1 else body


def _term_expr(coeff: CoeffElement, label: str) -> str:
    if label == "1":
        return _coeff_body(coeff)
    if coeff == ONE:
        return label
    return f"{_coeff_body(coeff)}*{label}"


class Space:
    name = "space"

    def unit(self):
        raise NotImplementedError

    def atom(self, tok: Token):
        raise UnknownGeneratorError(tok.text, self.name, tok.pos)

    def element_expr(self, x) -> str:
        raise NotImplementedError

    def free_module(self) -> Optional[FreeModule]:
        return None

    def parse(self, text: str):
        return evaluate(parse_expr(text), self)

    def __str__(self) -> str:
        return self.name


class PointSpace(Space):
    name = "pt"

    def unit(self) -> CoeffElement:
        return ONE

    def element_expr(self, x: CoeffElement) -> str:
        return x.expr()

    def free_module(self) -> FreeModule:
        return POINT_MODULE


class SphereSpace(Space):
    def __init__(self, dim):
        self.dim = as_bidegree(dim)
        if self.dim == BiDegree(0, 0):
            raise ValueError("sphere dimension (0,0) is not supported")
        self.name = f"sphere:{self.dim.p},{self.dim.q}"

    def unit(self) -> SphereElement:
        return SphereElement.unit(self.dim)

    def atom(self, tok: Token) -> SphereElement:
        if tok.kind == "NAME" and tok.value == "x":
            return SphereElement.generator(self.dim)
        if tok.kind == "PGEN" and tok.value == ("a", None) and self.dim == BiDegree(1, 1):
            return SphereElement.generator(self.dim)
        raise UnknownGeneratorError(tok.text, self.name, tok.pos)

    def element_expr(self, x: SphereElement) -> str:
        parts = []
        if x.c_one:
            parts.append(_term_expr(x.c_one, "1"))
        if x.c_gen:
            parts.append(_term_expr(x.c_gen, "x"))
        return " + ".join(parts) or "0"

    def free_module(self) -> FreeModule:
        return sphere_module(self.dim)


class RpSpace(Space):
    def __init__(self, ambient):
        check_ambient(ambient)
        self.ambient = ambient
        self.name = "rp:inf" if ambient == INFINITE else f"rp:{ambient}"

    def unit(self) -> ProjElement:
        return ProjElement.unit(self.ambient)

    def atom(self, tok: Token) -> ProjElement:
        if tok.kind != "PGEN":
            raise UnknownGeneratorError(tok.text, self.name, tok.pos)
        letter, index = tok.value
        if index is not None and index != self.ambient:
            raise UnknownGeneratorError(tok.text, self.name, tok.pos)
        if letter == "a":
            return ProjElement.gen_a(self.ambient)
        if self.ambient == 1:
            raise UnknownGeneratorError(tok.text, self.name, tok.pos)
        return ProjElement.gen_b(self.ambient)

    def element_expr(self, x: ProjElement) -> str:
        if not x.terms:
            return "0"
        parts = []
        for m in sorted(x.terms, key=lambda m: (m.degree, m)):
            parts.append(_term_expr(x.terms[m], m.label(x.ambient)))
        return " + ".join(parts)

    def free_module(self) -> Optional[FreeModule]:
        if self.ambient == INFINITE:
            return None
        from .projective import rp_basis

        return FreeModule(
            tuple((m.label(self.ambient), m.degree) for m in rp_basis(self.ambient))
        )


class TensorSpace(Space):
    def __init__(self, factors: Sequence):
        self.factors = tuple(factors)
        for n in self.factors:
            check_ambient(n)
        if not self.factors:
            raise ValueError("tensor space needs at least one factor")
        names = ["inf" if n == INFINITE else str(n) for n in self.factors]
        self.name = "tensor:" + ",".join(names)

    def unit(self) -> TensorElement:
        return TensorElement.unit(self.factors)

    def atom(self, tok: Token) -> TensorElement:
        if tok.kind != "PGEN":
            raise UnknownGeneratorError(tok.text, self.name, tok.pos)
        letter, index = tok.value
        if index is None:
            if len(self.factors) != 1:
                raise UnknownGeneratorError(tok.text, self.name, tok.pos)
            position = 0
        else:
            try:
                position = self.factors.index(index)
            except ValueError:
                raise UnknownGeneratorError(tok.text, self.name, tok.pos) from None
        ambient = self.factors[position]
        from .projective import ProjMonomial

        if letter == "a":
            mono = ProjMonomial(1, 0)
        else:
            if ambient == 1:
                raise UnknownGeneratorError(tok.text, self.name, tok.pos)
            mono = ProjMonomial(0, 1)
        return TensorElement.generator(self.factors, position, mono)

    def element_expr(self, x: TensorElement) -> str:
        if not x.terms:
            return "0"
        from .projective import tensor_monomial_degree

        parts = []
        for t in sorted(x.terms, key=lambda t: (tensor_monomial_degree(t), t)):
            labels = [m.label(n) for m, n in zip(t, x.factors) if m != (0, 0)]
            parts.append(_term_expr(x.terms[t], "*".join(labels) or "1"))
        return " + ".join(parts)

    def free_module(self) -> Optional[FreeModule]:
        if any(n == INFINITE for n in self.factors):
            return None
        from .grading import tensor_module
        from .projective import rp_basis

        module = FreeModule((("1", BiDegree(0, 0)),))
        for n in self.factors:
            module = tensor_module(
                module,
                FreeModule(tuple((m.label(n), m.degree) for m in rp_basis(n))),
            )
        return module


class SoSpace(Space):
    def __init__(self, p: int):
        rotation.check_p(p)
        self.p = p
        self.name = f"so:{p}"

    def unit(self) -> RotElement:
        return RotElement.unit(self.p)

    def atom(self, tok: Token) -> RotElement:
        if tok.kind == "BGEN":
            if 0 < tok.value < self.p:
                return RotElement.generator(self.p, tok.value)
            raise UnknownGeneratorError(tok.text, self.name, tok.pos)
        if tok.kind == "BCLASS":
            try:
                return RotElement.basis_class(self.p, tok.value)
            except ValueError:
                raise UnknownGeneratorError(tok.text, self.name, tok.pos) from None
        raise UnknownGeneratorError(tok.text, self.name, tok.pos)

    def element_expr(self, x: RotElement) -> str:
        if not x.terms:
            return "0"
        return " + ".join(
            _term_expr(x.terms[s], rotation.sequence_label(s)) for s in x.sorted_keys()
        )

    def free_module(self) -> FreeModule:
        return rotation.so_generators(self.p)

    def omega_space(self) -> TensorSpace:
        return TensorSpace(rotation.omega_factors(self.p))


class StiefelSpace(Space):
    def __init__(self, p: int):
        rotation.check_p(p)
        self.p = p
        self.name = f"stiefel:{p}"

    def unit(self) -> StiefelElement:
        return StiefelElement.unit(self.p)

    def atom(self, tok: Token) -> StiefelElement:
        if tok.kind == "FRAME":
            try:
                return StiefelElement.basis_class(self.p, tok.value)
            except ValueError:
                raise UnknownGeneratorError(tok.text, self.name, tok.pos) from None
        raise UnknownGeneratorError(tok.text, self.name, tok.pos)

    def element_expr(self, x: StiefelElement) -> str:
        if not x.terms:
            return "0"
        return " + ".join(
            _term_expr(x.terms[s], stiefel.bracket_label(s)) for s in x.sorted_keys()
        )

    def free_module(self) -> FreeModule:
        return stiefel.stiefel_module(self.p)


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"invalid {what}: {text!r}") from None


def get_space(selector: str) -> Space:
    """Resolve a selector string like "pt", "rp:3" or "so:5" to a Space."""
    selector = selector.strip()
    if selector == "pt":
        return PointSpace()
    if ":" not in selector:
        raise ValueError(f"invalid space selector {selector!r}")
    kind, _, arg = selector.partition(":")
    if kind == "rp":
        if arg == "inf":
            return RpSpace(INFINITE)
        return RpSpace(_parse_int(arg, "ambient"))
    if kind == "so":
        return SoSpace(_parse_int(arg, "p"))
    if kind in ("stiefel", "v"):
        return StiefelSpace(_parse_int(arg, "p"))
    if kind == "sphere":
        parts = arg.split(",")
        if len(parts) != 2:
            raise ValueError(f"sphere selector needs p,q: {selector!r}")
        return SphereSpace((_parse_int(parts[0], "p"), _parse_int(parts[1], "q")))
    if kind == "tensor":
        factors: List = []
        for part in arg.split(","):
            part = part.strip()
            factors.append(INFINITE if part == "inf" else _parse_int(part, "factor"))
        return TensorSpace(factors)
    raise ValueError(f"invalid space selector {selector!r}")
