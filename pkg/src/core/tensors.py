"""Sparse tensors in g (x) g and g (x) g (x) g over a fixed basis."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from src.core.field_tower import Scalar, format_element, scalar_is_zero
from src.core.matrices import normalize

Element = Dict[int, Scalar]


def clean(coefficients: Mapping) -> Dict:
    return {k: normalize(v) for k, v in coefficients.items() if not scalar_is_zero(v)}


def element_add(
    x: Mapping[int, Scalar], y: Mapping[int, Scalar], c: Scalar = 1
) -> Element:
    """x + c*y."""
    result = dict(x)
    for k, v in y.items():
        result[k] = result.get(k, 0) + c * v
    return clean(result)


def element_scale(c: Scalar, x: Mapping[int, Scalar]) -> Element:
    return clean({k: c * v for k, v in x.items()})


@dataclass(frozen=True)
class RTensor:
    """A finite sum of c_ab * x_a (x) x_b; indices refer to the algebra basis."""

    coefficients: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)

    @classmethod
    def build(cls, coefficients: Mapping[Tuple[int, int], Scalar]) -> "RTensor":
        return cls(clean(coefficients))

    @classmethod
    def product(cls, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> "RTensor":
        """x (x) y for algebra elements in coordinates."""
        return cls.build(
            {(a, b): ca * cb for a, ca in x.items() for b, cb in y.items()}
        )

    @classmethod
    def wedge(cls, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> "RTensor":
        """x ^ y = x (x) y - y (x) x."""
        return cls.product(x, y) - cls.product(y, x)

    def items(self) -> Iterable[Tuple[Tuple[int, int], Scalar]]:
        return self.coefficients.items()

    def __add__(self, other: "RTensor") -> "RTensor":
        merged: Dict[Tuple[int, int], Scalar] = dict(self.coefficients)
        for key, value in other.coefficients.items():
            merged[key] = merged.get(key, 0) + value
        return RTensor.build(merged)

    def __sub__(self, other: "RTensor") -> "RTensor":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "RTensor":
        return RTensor.build({k: c * v for k, v in self.coefficients.items()})

    def transpose(self) -> "RTensor":
        """The flip r^21."""
        return RTensor.build({(b, a): v for (a, b), v in self.coefficients.items()})

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RTensor):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients.items()))

    def restrict(self, indices: Sequence[int]) -> "RTensor":
        """Keeps the terms whose legs both lie in `indices`."""
        keep = set(indices)
        return RTensor.build(
            {
                (a, b): v
                for (a, b), v in self.coefficients.items()
                if a in keep and b in keep
            }
        )

    def to_entries(self, labels: Sequence[str]) -> List[Tuple[str, str, str]]:
        """Sparse (label, label, coefficient text) triples in index order."""
        return [
            (labels[a], labels[b], format_element(v))
            for (a, b), v in sorted(self.coefficients.items())
        ]


@dataclass(frozen=True)
class Tensor3:
    """A finite sum in g (x) g (x) g, used for the Yang-Baxter residual."""

    coefficients: Mapping[Tuple[int, int, int], Scalar] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.coefficients

    def support_size(self) -> int:
        return len(self.coefficients)

    def to_entries(self, labels: Sequence[str], limit: int = 10) -> List[str]:
        return [
            f"{labels[a]} (x) {labels[b]} (x) {labels[c]}: {format_element(v)}"
            for (a, b, c), v in sorted(self.coefficients.items())[:limit]
        ]
