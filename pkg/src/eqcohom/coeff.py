"""Exact arithmetic in the bigraded Z/2 cohomology ring of a point.

The ring, called M2 throughout this package, is graded by pairs
(p, q) = (topological degree, weight).  It consists of two cones of
one-dimensional Z/2 groups:

* a *top cone*, the polynomial algebra on rho in bidegree (1, 1) and
  tau in bidegree (0, 1), so rho^a tau^b sits at (a, a + b);
* a *bottom cone* generated by theta in bidegree (0, -2), which is
  infinitely divisible by both rho and tau: theta/(rho^a tau^b) sits
  at (-a, -a - b - 2).

Every bidegree supports at most one monomial, so an element of M2 is a
finite set of cone monomials and homogeneous elements have at most one
term.  Products of two bottom-cone monomials vanish; this is the single
named rule BOTTOM_TIMES_BOTTOM_IS_ZERO so it can be revisited in one
place.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Union


class BiDegree(NamedTuple):
    """A pair (topological degree, weight) with componentwise addition."""

    p: int
    q: int

    def __add__(self, other) -> "BiDegree":
        return BiDegree(self.p + other[0], self.q + other[1])

    def __sub__(self, other) -> "BiDegree":
        return BiDegree(self.p - other[0], self.q - other[1])

    def __neg__(self) -> "BiDegree":
        return BiDegree(-self.p, -self.q)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


DegreeLike = Union[BiDegree, tuple]


def as_bidegree(d: DegreeLike) -> BiDegree:
    if isinstance(d, BiDegree):
        return d
    return BiDegree(int(d[0]), int(d[1]))


# Products of two bottom-cone classes are taken to be zero.  The bidegree
# of such a product always lies in the bottom cone, so this is not forced
# by degree reasoning alone; it is validated indirectly by the exactness
# checker in eqcohom.forgetful.
BOTTOM_TIMES_BOTTOM_IS_ZERO = True


class ConeMonomial(NamedTuple):
    """rho^a tau^b (bottom=False) or theta/(rho^a tau^b) (bottom=True)."""

    bottom: bool
    a: int
    b: int

    @classmethod
    def top(cls, a: int, b: int) -> "ConeMonomial":
        if a < 0 or b < 0:
            raise ValueError(f"negative exponents in top monomial ({a},{b})")
        return cls(False, a, b)

    @classmethod
    def bot(cls, a: int, b: int) -> "ConeMonomial":
        if a < 0 or b < 0:
            raise ValueError(f"negative exponents in bottom monomial ({a},{b})")
        return cls(True, a, b)

    @property
    def degree(self) -> BiDegree:
        if self.bottom:
            return BiDegree(-self.a, -self.a - self.b - 2)
        return BiDegree(self.a, self.a + self.b)

    def _top_str(self, sep: str) -> str:
        parts = []
        if self.a == 1:
            parts.append("r")
        elif self.a > 1:
            parts.append(f"r^{self.a}")
        if self.b == 1:
            parts.append("t")
        elif self.b > 1:
            parts.append(f"t^{self.b}")
        return sep.join(parts)

    def __str__(self) -> str:
        """Display form: "r t^2", "th/(r t^2)", "1"."""
        return self._render(" ")

    def expr(self) -> str:
        """Expression form accepted by the parser: "r*t^2", "th/(r*t^2)"."""
        return self._render("*")

    def _render(self, sep: str) -> str:
        if self.bottom:
            inner = self._top_str(sep)
            return f"th/({inner})" if inner else "th"
        return self._top_str(sep) or "1"


ONE_MONO = ConeMonomial.top(0, 0)
RHO_MONO = ConeMonomial.top(1, 0)
TAU_MONO = ConeMonomial.top(0, 1)
THETA_MONO = ConeMonomial.bot(0, 0)


def dim_at(d: DegreeLike) -> int:
    """Z/2 dimension of M2 in bidegree d (0 or 1)."""
    p, q = as_bidegree(d)
    if p >= 0 and q >= p:
        return 1
    if p <= 0 and q <= p - 2:
        return 1
    return 0


def orbit_dim_at(d: DegreeLike) -> int:
    """Z/2 dimension of the free-orbit ring Z/2[t, t^-1] in bidegree d."""
    p, _q = as_bidegree(d)
    return 1 if p == 0 else 0


def monomial_at(d: DegreeLike) -> Optional[ConeMonomial]:
    """The unique monomial in bidegree d, or None when the group is zero."""
    p, q = as_bidegree(d)
    if p >= 0 and q >= p:
        return ConeMonomial.top(p, q - p)
    if p <= 0 and q <= p - 2:
        return ConeMonomial.bot(-p, -q + p - 2)
    return None


_MUL_CACHE: dict = {}


def mul_monomials(x: ConeMonomial, y: ConeMonomial) -> Optional[ConeMonomial]:
    """Product of two monomials, or None when it is zero."""
    key = (x, y)
    try:
        return _MUL_CACHE[key]
    except KeyError:
        pass
    if not x.bottom and not y.bottom:
        result: Optional[ConeMonomial] = ConeMonomial(False, x.a + y.a, x.b + y.b)
    elif x.bottom and y.bottom:
        # the BOTTOM_TIMES_BOTTOM_IS_ZERO rule
        result = None
    else:
        top, bot = (y, x) if x.bottom else (x, y)
        if bot.a >= top.a and bot.b >= top.b:
            result = ConeMonomial(True, bot.a - top.a, bot.b - top.b)
        else:
            result = None
    _MUL_CACHE[key] = result
    return result


class CoeffElement:
    """A Z/2 formal sum of cone monomials.

    Distinct monomials live in distinct bidegrees, so a homogeneous
    nonzero element has exactly one monomial in its support.
    """

    __slots__ = ("support",)

    def __init__(self, monomials: Iterable[ConeMonomial] = ()):
        acc: set = set()
        for m in monomials:
            acc.symmetric_difference_update((m,))
        self.support = frozenset(acc)

    @staticmethod
    def _raw(support: frozenset) -> "CoeffElement":
        # internal: support already duplicate-free
        elt = CoeffElement.__new__(CoeffElement)
        elt.support = support
        return elt

    def monomials(self) -> list:
        return sorted(self.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffElement) and self.support == other.support

    def __hash__(self) -> int:
        return hash(self.support)

    def __add__(self, other: "CoeffElement") -> "CoeffElement":
        return CoeffElement._raw(self.support ^ other.support)

    def __mul__(self, other):
        if not isinstance(other, CoeffElement):
            return NotImplemented
        a, b = self.support, other.support
        if len(a) == 1 and len(b) == 1:
            prod = mul_monomials(next(iter(a)), next(iter(b)))
            return ZERO if prod is None else coeff_of(prod)
        acc: set = set()
        for m in a:
            for n in b:
                prod = mul_monomials(m, n)
                if prod is not None:
                    acc.symmetric_difference_update((prod,))
        return CoeffElement._raw(frozenset(acc))

    def scale(self, other: "CoeffElement") -> "CoeffElement":
        return self * other

    def __pow__(self, n: int) -> "CoeffElement":
        if n < 0:
            raise ValueError("negative exponent")
        result = CoeffElement([ONE_MONO])
        for _ in range(n):
            result = result * self
        return result

    def degree(self) -> Optional[BiDegree]:
        """Bidegree of a homogeneous element; None for zero."""
        if not self.support:
            return None
        if len(self.support) > 1:
            raise ValueError(f"inhomogeneous coefficient: {self}")
        return next(iter(self.support)).degree

    def is_homogeneous(self) -> bool:
        return len(self.support) <= 1

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(str(m) for m in self.monomials())

    def expr(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(m.expr() for m in self.monomials())

    def __repr__(self) -> str:
        return f"CoeffElement({self})"


ZERO = CoeffElement()
ONE = CoeffElement([ONE_MONO])
RHO = CoeffElement([RHO_MONO])
TAU = CoeffElement([TAU_MONO])
THETA = CoeffElement([THETA_MONO])

_SINGLETONS: dict = {ONE_MONO: ONE, RHO_MONO: RHO, TAU_MONO: TAU, THETA_MONO: THETA}


def coeff_of(m: ConeMonomial) -> CoeffElement:
    """The (cached) element with a single monomial."""
    elt = _SINGLETONS.get(m)
    if elt is None:
        elt = CoeffElement._raw(frozenset((m,)))
        _SINGLETONS[m] = elt
    return elt


def coeff_mul(x: CoeffElement, y: CoeffElement) -> CoeffElement:
    """Product in M2 (bilinear extension of the monomial rules)."""
    return x * y
