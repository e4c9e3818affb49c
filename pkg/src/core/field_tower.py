"""
Exact arithmetic in the base field and its square-root towers.

The base field is Q(i)(h), rational functions in h with Gaussian-rational
coefficients, used as a computable model of C((h)). Towers adjoin iterated
square roots of three kinds:

* ``sqrt_h`` with square h,
* ``root4_h`` with square ``sqrt_h``,
* ``sqrt_<p>`` with square the rational prime p.

Constant roots are complex numbers, so in the C((h)) model every Galois
element fixes them and they count as part of the base field K. Only the
h-roots move under Galois action.

A `FieldElement` is stored as a map from square-free generator monomials
(frozensets of generator names) to base-field coefficients. Base-field
coefficients are sympy ``FracElement`` values in ``BASE_FIELD``, kept in
canonical reduced form, so equality and hashing are structural.
"""

import logging
import re
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from sympy import Expr, I, Integer, Symbol, factorint, integer_nthroot
from sympy import root as sympy_root
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.fields import FracElement, field

from src.exceptions import (
    AutomorphismTowerMismatch,
    DivisionByZero,
    FieldParseError,
    MixedTowerElement,
    NoConsistentExtension,
    NotConstructivelyRepresentable,
    NotInBaseField,
    ZeroElement,
)

logger = logging.getLogger(__name__)

BASE_FIELD, _H = field("h", QQ_I)
HBAR_SYMBOL = Symbol("h")

SQRT_H = "sqrt_h"
ROOT4_H = "root4_h"

Monomial = FrozenSet[str]
Scalar = Union[int, Fraction, "FieldElement"]

_EMPTY: Monomial = frozenset()


class SquareClass(str, Enum):
    """Square classes of C((h))^* modulo squares."""

    ONE = "one"
    HBAR = "hbar"


@dataclass(frozen=True)
class Generator:
    """A tower generator: a fixed square root of a lower-tower element."""

    name: str
    sort_key: Tuple[int, int]
    valuation: Fraction
    constant: bool
    level: int


# --- Generator registry ---

_REGISTRY_LOCK = threading.Lock()
_GENERATORS: Dict[str, Generator] = {}
_SQUARES: Dict[str, "FieldElement"] = {}


def _register(generator: Generator, square: "FieldElement") -> None:
    with _REGISTRY_LOCK:
        if generator.name not in _GENERATORS:
            _GENERATORS[generator.name] = generator
            _SQUARES[generator.name] = square


def constant_root(p: int) -> str:
    """Returns the generator name of sqrt(p) for a rational prime p."""
    name = f"sqrt_{p}"
    if name not in _GENERATORS:
        _register(
            Generator(name, (2, p), Fraction(0), constant=True, level=1),
            FieldElement.from_int(p),
        )
    return name


def get_generator(name: str) -> Generator:
    if name not in _GENERATORS:
        match = re.fullmatch(r"sqrt_(\d+)", name)
        if not match or len(factorint(int(match.group(1)))) != 1:
            raise FieldParseError(f"Unknown tower generator '{name}'.")
        constant_root(int(match.group(1)))
    return _GENERATORS[name]


def generator_square(name: str) -> "FieldElement":
    get_generator(name)
    return _SQUARES[name]


def _sorted_names(names: Iterable[str]) -> List[str]:
    return sorted(names, key=lambda n: get_generator(n).sort_key)


# --- Base field helpers ---


def _qq(q: Fraction):
    return QQ(q.numerator, q.denominator)


def _gaussian(re_part: Fraction, im_part: Fraction = Fraction(0)):
    return QQ_I(_qq(re_part), _qq(im_part))


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _base_const(c) -> FracElement:
    return BASE_FIELD.ground_new(c)


def _poly_order(poly) -> int:
    """Order of vanishing at h = 0 of a nonzero polynomial."""
    return min(monom[0] for monom in poly.keys())


def _base_order(value: FracElement) -> int:
    return _poly_order(value.numer) - _poly_order(value.denom)


def _poly_coeffs(poly) -> Dict[int, object]:
    return {monom[0]: coeff for monom, coeff in poly.items()}


# --- FieldElement ---


class FieldElement:
    """An exact element of a square-root tower over Q(i)(h)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, FracElement]] = None) -> None:
        cleaned: Dict[Monomial, FracElement] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff.numer:
                    cleaned[frozenset(mono)] = coeff
        self._terms = cleaned
        self._hash: Optional[int] = None

    # -- constructors --

    @classmethod
    def from_base(cls, value: FracElement) -> "FieldElement":
        return cls({_EMPTY: value})

    @classmethod
    def from_int(cls, n: int) -> "FieldElement":
        return cls({_EMPTY: BASE_FIELD(n)})

    @classmethod
    def from_fraction(cls, q: Fraction) -> "FieldElement":
        return cls({_EMPTY: _base_const(_gaussian(q))})

    @classmethod
    def gaussian(
        cls, re_part: Fraction, im_part: Fraction = Fraction(0)
    ) -> "FieldElement":
        value = _gaussian(Fraction(re_part), Fraction(im_part))
        return cls({_EMPTY: _base_const(value)})

    @classmethod
    def hbar(cls, exponent: int = 1) -> "FieldElement":
        return cls({_EMPTY: _H**exponent})

    @classmethod
    def generator(cls, name: str) -> "FieldElement":
        get_generator(name)
        return cls({frozenset([name]): BASE_FIELD.one})

    @classmethod
    def hbar_power(cls, exponent: Fraction) -> "FieldElement":
        """h raised to a multiple of 1/4, using the h-root generators."""
        exponent = Fraction(exponent)
        quarters = exponent * 4
        if quarters.denominator != 1:
            raise NotConstructivelyRepresentable(
                f"h^{exponent} needs a root of h deeper than the fourth root."
            )
        whole, rest = divmod(int(quarters), 4)
        names = []
        if rest & 2:
            names.append(SQRT_H)
        if rest & 1:
            names.append(ROOT4_H)
        return cls({frozenset(names): _H**whole if whole >= 0 else 1 / _H ** (-whole)})

    @classmethod
    def from_expr(cls, expr: Expr) -> "FieldElement":
        """Converts a sympy expression in h and I into a base-field element."""
        try:
            return cls.from_base(BASE_FIELD.from_expr(expr))
        except (ValueError, TypeError) as exc:
            raise FieldParseError(f"Not a rational function in h: {expr}") from exc

    @staticmethod
    def coerce(value: Scalar) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, int):
            return _from_int_cached(value)
        if isinstance(value, Fraction):
            return FieldElement.from_fraction(value)
        raise TypeError(f"Cannot interpret {type(value).__name__} as a field element")

    # -- inspection --

    @property
    def terms(self) -> Mapping[Monomial, FracElement]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def generators(self) -> FrozenSet[str]:
        names: set = set()
        for mono in self._terms:
            names.update(mono)
        return frozenset(names)

    def moving_generators(self) -> FrozenSet[str]:
        """Generators not fixed by the Galois group (the h-roots)."""
        return frozenset(n for n in self.generators() if not get_generator(n).constant)

    def is_base(self) -> bool:
        """True when the element lies in K, i.e. uses no h-root generator."""
        return not self.moving_generators()

    def is_pure_base(self) -> bool:
        """True when the element lies in Q(i)(h) itself."""
        return all(not mono for mono in self._terms)

    def base_value(self) -> FracElement:
        if not self.is_pure_base():
            raise NotInBaseField(f"{self} has tower coordinates.")
        return self._terms.get(_EMPTY, BASE_FIELD.zero)

    def constant_value(self):
        """The Gaussian-rational value of a constant element, else None."""
        if not self.is_pure_base():
            return None
        value = self.base_value()
        if not value.numer:
            return QQ_I.zero
        if not (value.numer.is_ground and value.denom.is_ground):
            return None
        return value.numer.LC / value.denom.LC

    def is_rational(self) -> bool:
        constant = self.constant_value()
        return constant is not None and constant.y == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise NotInBaseField(f"{self} is not a rational number.")
        return _to_fraction(self.constant_value().x)

    def split(self, name: str) -> Tuple["FieldElement", "FieldElement"]:
        """Writes self = x + y*g with x, y free of the generator g."""
        with_g: Dict[Monomial, FracElement] = {}
        without_g: Dict[Monomial, FracElement] = {}
        for mono, coeff in self._terms.items():
            if name in mono:
                with_g[mono - {name}] = coeff
            else:
                without_g[mono] = coeff
        return FieldElement(without_g), FieldElement(with_g)

    # -- arithmetic --

    def __add__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms[mono] + coeff if mono in terms else coeff
        return FieldElement(terms)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return FieldElement.coerce(other) - self

    def __mul__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1 and _EMPTY in other._terms:
            scale = other._terms[_EMPTY]
            return FieldElement({m: c * scale for m, c in self._terms.items()})
        if len(self._terms) == 1 and _EMPTY in self._terms:
            scale = self._terms[_EMPTY]
            return FieldElement({m: c * scale for m, c in other._terms.items()})
        acc: Dict[Monomial, FracElement] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                coeff = c1 * c2
                for mono, factor in _monomial_product(m1, m2)._terms.items():
                    value = coeff * factor
                    acc[mono] = acc[mono] + value if mono in acc else value
        return FieldElement(acc)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self._terms:
            raise DivisionByZero("Division by the zero field element.")
        numerator = ONE
        current = self
        while True:
            names = current.generators()
            if not names:
                break
            top = max(
                names,
                key=lambda n: (get_generator(n).level, get_generator(n).sort_key),
            )
            x, y = current.split(top)
            conj = x - y * FieldElement.generator(top)
            numerator = numerator * conj
            current = x * x - y * y * generator_square(top)
            if current.is_zero():
                raise DivisionByZero(f"Tower generator {top} is dependent.")
        return numerator * FieldElement.from_base(1 / current.base_value())

    def __truediv__(self, other: Scalar) -> "FieldElement":
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        return FieldElement.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison --

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = FieldElement.coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- text --

    def to_text(self) -> str:
        return format_element(self)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement('{format_element(self)}')"

    def to_sympy(self) -> Expr:
        """An independent symbolic form with h-roots as radicals."""
        total = Integer(0)
        for mono, coeff in self._terms.items():
            term = coeff.as_expr()
            for name in mono:
                term = term * _generator_expr(name)
            total = total + term
        return total


def _generator_expr(name: str) -> Expr:
    if name == SQRT_H:
        return sympy_root(HBAR_SYMBOL, 2)
    if name == ROOT4_H:
        return sympy_root(HBAR_SYMBOL, 4)
    return sympy_root(Integer(int(name.split("_")[1])), 2)


@lru_cache(maxsize=256)
def _from_int_cached(n: int) -> FieldElement:
    return FieldElement.from_int(n)


ZERO = FieldElement()
ONE = FieldElement.from_int(1)


@lru_cache(maxsize=None)
def _monomial_product(m1: Monomial, m2: Monomial) -> FieldElement:
    shared = m1 & m2
    result = FieldElement({m1 ^ m2: BASE_FIELD.one})
    for name in _sorted_names(shared):
        result = result * generator_square(name)
    return result


_register(
    Generator(SQRT_H, (0, 2), Fraction(1, 2), constant=False, level=1),
    FieldElement.hbar(),
)
_register(
    Generator(ROOT4_H, (0, 4), Fraction(1, 4), constant=False, level=2),
    FieldElement.generator(SQRT_H),
)

SQRT_HBAR = FieldElement.generator(SQRT_H)
ROOT4_HBAR = FieldElement.generator(ROOT4_H)
IMAG_UNIT = FieldElement.gaussian(Fraction(0), Fraction(1))


# --- Valuation and squares ---


def valuation(a: FieldElement) -> Fraction:
    """Order of vanishing at h = 0, fractional when h-roots contribute."""
    if a.is_zero():
        raise ZeroElement("The zero element has no valuation.")
    orders = []
    for mono, coeff in a.terms.items():
        shift = sum((get_generator(n).valuation for n in mono), Fraction(0))
        orders.append(_base_order(coeff) + shift)
    # Distinct h-root monomials have distinct fractional parts and constant
    # roots are linearly independent over Q(i), so leading terms cannot cancel.
    return min(orders)


def leading_monomial(a: FieldElement) -> Tuple[Monomial, FracElement]:
    """The unique term of a single-term element."""
    if a.is_zero():
        raise ZeroElement("The zero element has no leading monomial.")
    if len(a.terms) != 1:
        raise MixedTowerElement(f"{a} is not a single tower monomial.")
    ((mono, coeff),) = a.terms.items()
    return mono, coeff


def _require_base(a: FieldElement) -> None:
    if a.is_zero():
        raise ZeroElement("Square classes are defined for nonzero elements only.")
    if not a.is_base():
        raise NotInBaseField(f"{a} does not lie in the base field.")


def is_square_semantic(a: FieldElement) -> bool:
    """Squareness in C((h)): the valuation is even."""
    _require_base(a)
    v = valuation(a)
    return v.denominator == 1 and v.numerator % 2 == 0


def square_class(a: FieldElement) -> SquareClass:
    return SquareClass.ONE if is_square_semantic(a) else SquareClass.HBAR


# --- Constructive square roots ---


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num, exact_num = integer_nthroot(q.numerator, 2)
    den, exact_den = integer_nthroot(q.denominator, 2)
    if exact_num and exact_den:
        return Fraction(int(num), int(den))
    return None


def _gaussian_sqrt(c) -> Optional[Tuple[Fraction, Fraction]]:
    """Square root inside Q(i), if there is one."""
    x, y = _to_fraction(c.x), _to_fraction(c.y)
    modulus = _rational_sqrt(x * x + y * y)
    if modulus is None:
        return None
    a = _rational_sqrt((x + modulus) / 2)
    b = _rational_sqrt((modulus - x) / 2)
    if a is None or b is None:
        return None
    if a != 0:
        return a, y / (2 * a)
    return Fraction(0), b


def _real_constant_sqrt(q: Fraction) -> FieldElement:
    """sqrt(q) for rational q, adjoining sqrt_p generators for odd primes powers."""
    if q == 0:
        return ZERO
    sign = IMAG_UNIT if q < 0 else ONE
    q = abs(q)
    radicand = q.numerator * q.denominator
    outside = Fraction(1, q.denominator)
    names = []
    for prime, power in sorted(factorint(radicand).items()):
        outside *= Fraction(prime) ** (power // 2)
        if power % 2:
            names.append(constant_root(int(prime)))
    return sign * FieldElement.from_fraction(outside) * FieldElement(
        {frozenset(names): BASE_FIELD.one}
    )


def constant_sqrt(c) -> FieldElement:
    """Square root of a Gaussian-rational constant, adjoining constant roots."""
    exact = _gaussian_sqrt(c)
    if exact is not None:
        return FieldElement.gaussian(*exact)
    x, y = _to_fraction(c.x), _to_fraction(c.y)
    if y == 0:
        return _real_constant_sqrt(x)
    if x == 0:
        # sqrt(i*y) = (1 + i)/2 * sqrt(2*y)
        half_one_plus_i = FieldElement.gaussian(Fraction(1, 2), Fraction(1, 2))
        return half_one_plus_i * _real_constant_sqrt(2 * y)
    raise NotConstructivelyRepresentable(
        f"No constructive square root of the constant {c}.", element=str(c)
    )


def _unit_poly_sqrt(poly):
    """Square root of a polynomial with constant term 1, or None."""
    coeffs = _poly_coeffs(poly)
    degree = max(coeffs)
    if degree % 2:
        return None
    ring = poly.ring
    half = degree // 2
    domain = ring.domain
    s = [domain.one]
    for k in range(1, half + 1):
        acc = coeffs.get(k, domain.zero)
        for j in range(1, k):
            acc -= s[j] * s[k - j]
        s.append(acc / domain.convert(2))
    candidate = ring({(k,): c for k, c in enumerate(s) if c})
    return candidate if candidate**2 == poly else None


def base_sqrt(value: FracElement) -> FieldElement:
    """
    Square root of a nonzero base-field element, adjoining sqrt_h and constant
    roots as needed.

    Raises:
        NotConstructivelyRepresentable: if the unit part is not a perfect
            square of rational functions (e.g. 1 + h).
    """
    if not value.numer:
        raise ZeroElement("Square root of zero requested.")
    ring = BASE_FIELD.ring
    numer, denom = value.numer, value.denom
    order_n, order_d = _poly_order(numer), _poly_order(denom)
    shift_n = ring({(order_n,): ring.domain.one})
    shift_d = ring({(order_d,): ring.domain.one})
    unit_n = numer.quo(shift_n)
    unit_d = denom.quo(shift_d)
    lead_n = _poly_coeffs(unit_n)[0]
    lead_d = _poly_coeffs(unit_d)[0]
    root_n = _unit_poly_sqrt(unit_n.quo_ground(lead_n))
    root_d = _unit_poly_sqrt(unit_d.quo_ground(lead_d))
    if root_n is None or root_d is None:
        raise NotConstructivelyRepresentable(
            f"{FieldElement.from_base(value)} has no square root in a finite tower.",
            element=str(value.as_expr()),
        )
    unit_root = FieldElement.from_base(BASE_FIELD.new(root_n, root_d))
    constant = constant_sqrt(lead_n / lead_d)
    shift = FieldElement.hbar_power(Fraction(order_n - order_d, 2))
    return constant * unit_root * shift


def sqrt_witness(
    a: Scalar, tower: Optional["Tower"] = None
) -> Tuple[FieldElement, "Tower"]:
    """
    Returns w with w*w == a together with a tower containing w and the input tower.

    Supported radicands are elements of K and elements f*sqrt_h with f in
    Q(i)(h); anything else needs a deeper or non-quadratic tower.
    """
    a = FieldElement.coerce(a)
    if a.is_zero():
        raise ZeroElement("Square root of zero requested.")
    names = a.generators()
    if not names:
        root_value = base_sqrt(a.base_value())
    elif names == {SQRT_H} and len(a.terms) == 1:
        (coeff,) = a.terms.values()
        root_value = base_sqrt(coeff) * ROOT4_HBAR
    else:
        raise NotConstructivelyRepresentable(
            f"Square root of {a} is outside the supported towers.", element=str(a)
        )
    if root_value * root_value != a:
        raise NotConstructivelyRepresentable(f"Square root check failed for {a}.")
    extended = tower_of([root_value]).union(tower or Tower(()))
    logger.debug(f"sqrt_witness({a}) = {root_value} in tower {extended.generators}")
    return root_value, extended

# --- Towers and Galois action ---


@dataclass(frozen=True)
class Tower:
    """An ordered set of tower generators, closed under defining squares."""

    generators: Tuple[str, ...]

    def union(self, other: "Tower") -> "Tower":
        return _closed_tower(set(self.generators) | set(other.generators))

    def moving(self) -> Tuple[str, ...]:
        return tuple(n for n in self.generators if not get_generator(n).constant)

    def contains(self, a: FieldElement) -> bool:
        return a.generators() <= set(self.generators)


def _closed_tower(names: Iterable[str]) -> Tower:
    closed = set(names)
    pending = list(closed)
    while pending:
        name = pending.pop()
        for below in generator_square(name).generators():
            if below not in closed:
                closed.add(below)
                pending.append(below)
    return Tower(tuple(_sorted_names(closed)))


def tower_of(elements: Iterable[Scalar]) -> Tower:
    """The smallest tower containing every given element."""
    names: set = set()
    for element in elements:
        if isinstance(element, FieldElement):
            names.update(element.generators())
    return _closed_tower(names)


@dataclass(frozen=True)
class GaloisElement:
    """
    An automorphism of a tower over C((h)): each h-root generator g maps to
    i**k * g, stored as the pairs (g, k mod 4). Constant roots are fixed.
    """

    phases: Tuple[Tuple[str, int], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> "GaloisElement":
        ordered = sorted(
            mapping.items(), key=lambda item: get_generator(item[0]).sort_key
        )
        return cls(tuple((n, k % 4) for n, k in ordered))

    def as_dict(self) -> Dict[str, int]:
        return dict(self.phases)

    def is_identity(self) -> bool:
        return all(k == 0 for _, k in self.phases)

    def describe(self) -> str:
        if self.is_identity():
            return "id"
        units = {0: "", 1: "i*", 2: "-", 3: "-i*"}
        return ", ".join(f"{n}->{units[k]}{n}" for n, k in self.phases if k)


IDENTITY = GaloisElement(())
SIGMA0 = GaloisElement.from_mapping({SQRT_H: 2})

_PHASE_UNITS = {
    0: FieldElement.from_int(1),
    1: IMAG_UNIT,
    2: FieldElement.from_int(-1),
    3: -IMAG_UNIT,
}


def apply_automorphism(sigma: GaloisElement, a: Scalar) -> FieldElement:
    a = FieldElement.coerce(a)
    phases = sigma.as_dict()
    missing = a.moving_generators() - phases.keys()
    if missing:
        raise AutomorphismTowerMismatch(
            f"Automorphism {sigma.describe()} is not defined on {sorted(missing)}."
        )
    result = ZERO
    for mono, coeff in a.terms.items():
        k = sum(phases.get(n, 0) for n in mono) % 4
        result = result + _PHASE_UNITS[k] * FieldElement({mono: coeff})
    return result


def _square_phase(name: str, phases: Mapping[str, int]) -> Optional[int]:
    """Phase of sigma(g^2)/g^2, or None when the square is not a monomial."""
    square = generator_square(name)
    k = 0
    for mono in square.terms:
        for n in mono:
            if n not in phases:
                return None
            k += phases[n]
    return k % 4


def extend_automorphism(sigma: GaloisElement, tower: Tower) -> List[GaloisElement]:
    """
    All extensions of sigma to the moving generators of the tower.

    Each new generator g may map to u*g with u in {1, -1, i, -i}, subject to
    u**2 * g**2 == sigma(g**2).
    """
    known = sigma.as_dict()
    for name, k in known.items():
        expected = _square_phase(name, known)
        if expected is not None and (2 * k) % 4 != expected:
            raise NoConsistentExtension(
                f"Automorphism {sigma.describe()} does not respect "
                f"the square of {name}."
            )
    pending = [n for n in tower.moving() if n not in known]
    pending.sort(key=lambda n: get_generator(n).level)
    results: List[Dict[str, int]] = [dict(known)]
    for name in pending:
        extended: List[Dict[str, int]] = []
        for partial in results:
            target = _square_phase(name, partial)
            if target is None:
                continue
            for k in range(4):
                if (2 * k) % 4 == target:
                    extended.append({**partial, name: k})
        results = extended
    results = [
        r
        for r in results
        if all(
            _square_phase(n, r) is None or (2 * k) % 4 == _square_phase(n, r)
            for n, k in r.items()
        )
    ]
    if not results:
        raise NoConsistentExtension(
            f"No extension of {sigma.describe()} to tower {tower.generators}."
        )
    return [GaloisElement.from_mapping(r) for r in results]


def galois_group(tower: Tower) -> List[GaloisElement]:
    """Automorphisms of the tower fixing K, identity first."""
    return extend_automorphism(IDENTITY, tower)


def galois_group_over_sqrt_h(tower: Tower) -> List[GaloisElement]:
    """Automorphisms fixing K[sqrt_h] pointwise."""
    if SQRT_H not in tower.generators:
        return galois_group(tower)
    return extend_automorphism(GaloisElement.from_mapping({SQRT_H: 0}), tower)


def sigma0_on(tower: Tower) -> GaloisElement:
    """The canonical extension of sigma0 (sqrt_h -> -sqrt_h) to the tower."""
    extensions = extend_automorphism(SIGMA0, tower.union(Tower((SQRT_H,))))
    return extensions[0]


# --- Textual form ---

_TERM_RE = re.compile(r"\{([^{}]*)\}((?:\*[a-z0-9_]+)*)")
_SAFE_EXPR_RE = re.compile(r"^[0-9hI+\-*/() .]*$")


def format_element(a: Scalar) -> str:
    """
    Canonical text: terms ``{<rational function>}*<generator>...`` joined by
    `` + ``, ordered by generator monomial. Zero is ``0``.
    """
    a = FieldElement.coerce(a)
    if a.is_zero():
        return "0"
    rendered = []
    ordered = sorted(
        a.terms.items(),
        key=lambda item: [get_generator(n).sort_key for n in _sorted_names(item[0])],
    )
    for mono, coeff in ordered:
        text = "{" + str(coeff.as_expr()) + "}"
        for name in _sorted_names(mono):
            text += f"*{name}"
        rendered.append(text)
    return " + ".join(rendered)


def parse_element(text: str) -> FieldElement:
    """Parses the canonical text form; also accepts a bare rational function."""
    text = text.strip()
    if not text:
        raise FieldParseError("Empty field element text.")
    if "{" not in text:
        return FieldElement.from_base(_parse_base(text))
    position = 0
    result = ZERO
    for match in _TERM_RE.finditer(text):
        gap = text[position : match.start()].strip()
        if gap not in ("", "+"):
            raise FieldParseError(f"Unexpected text '{gap}' in '{text}'.")
        names = [n for n in match.group(2).split("*") if n]
        for name in names:
            get_generator(name)
        result = result + FieldElement({frozenset(names): _parse_base(match.group(1))})
        position = match.end()
    if text[position:].strip():
        raise FieldParseError(f"Trailing text in '{text}'.")
    return result


def _parse_base(text: str) -> FracElement:
    if not _SAFE_EXPR_RE.match(text):
        raise FieldParseError(f"Illegal characters in '{text}'.")
    try:
        expr = parse_expr(text, local_dict={"h": HBAR_SYMBOL, "I": I})
        return BASE_FIELD.from_expr(expr)
    except Exception as exc:  # sympy raises a wide range of parse errors
        raise FieldParseError(f"Cannot parse '{text}': {exc}") from exc


def scalar_is_zero(value: Scalar) -> bool:
    if isinstance(value, FieldElement):
        return value.is_zero()
    return value == 0
