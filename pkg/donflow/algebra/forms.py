"""Differential forms on a single oriented Euclidean ℝ⁴, batched.

A :class:`KForm` holds its coefficients component-first: shape
``(rank, *batch)``. Every operation here is pointwise and broadcasts over the
trailing batch axes, so a single value and a whole grid field go through the
same code path.
"""
from __future__ import annotations
import dataclasses
from dataclasses import dataclass
from typing import Any, TypeVar

import numpy as np

from ..exceptions import DegreeError, FieldMismatchError
from . import tables
from .tables import DIM, RANKS

F = TypeVar("F", bound="KForm")


@dataclass(frozen=True, eq=False)
class KForm:
    """A k-form with coefficients in the lexicographic coordinate basis.

    Attributes:
        degree (int): The form degree k, between 0 and 4.
        coefficients (np.ndarray): Array of shape ``(rank, *batch)``. A 4-form
            stores the scalar μ of μ·dvol.
    """

    degree: int
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= DIM:
            raise DegreeError(self.degree, "0..4")
        coefficients = np.asarray(self.coefficients, dtype=float)
        if coefficients.ndim == 0 or coefficients.shape[0] != RANKS[self.degree]:
            raise FieldMismatchError(
                f"{RANKS[self.degree]} coefficients for degree {self.degree}",
                f"array of shape {coefficients.shape}",
            )
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def batch_shape(self) -> tuple[int, ...]:
        """Shape of the trailing batch axes."""
        return self.coefficients.shape[1:]

    def with_coefficients(self: F, degree: int, coefficients: np.ndarray) -> F:
        """Build a form of the same kind (value or field) with new data."""
        return dataclasses.replace(self, degree=degree, coefficients=coefficients)

    def domain(self) -> Any:
        """Identifier of where the form lives; fields override this with their grid."""
        return None

    def scaled(self: F, factor: Any) -> F:
        """Multiply by a scalar or by a batch-shaped scalar array."""
        factor = np.asarray(factor, dtype=float)
        return self.with_coefficients(self.degree, self.coefficients * factor[None])

    def _check_same(self, other: KForm) -> None:
        if other.degree != self.degree:
            raise FieldMismatchError(f"degree {self.degree}", f"degree {other.degree}")
        if self.domain() is not None and other.domain() is not None:
            if self.domain() != other.domain():
                raise FieldMismatchError(self.domain(), other.domain())

    def __add__(self: F, other: KForm) -> F:
        self._check_same(other)
        carrier = carrier_of(self, other)
        return carrier.with_coefficients(
            self.degree, self.coefficients + other.coefficients
        )

    def __sub__(self: F, other: KForm) -> F:
        self._check_same(other)
        carrier = carrier_of(self, other)
        return carrier.with_coefficients(
            self.degree, self.coefficients - other.coefficients
        )

    def __neg__(self: F) -> F:
        return self.with_coefficients(self.degree, -self.coefficients)

    def __mul__(self: F, factor: Any) -> F:
        return self.scaled(factor)

    __rmul__ = __mul__

    def __truediv__(self: F, factor: Any) -> F:
        return self.scaled(1.0 / np.asarray(factor, dtype=float))

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(degree={self.degree}, "
            f"batch_shape={self.batch_shape})"
        )


def carrier_of(*forms: KForm) -> KForm:
    """Pick the operand whose kind (value or field) the result should take.

    Raises:
        FieldMismatchError: If two operands are fields on different grids.
    """
    known = [form.domain() for form in forms if form.domain() is not None]
    for domain in known[1:]:
        if domain != known[0]:
            raise FieldMismatchError(known[0], domain)
    return max(forms, key=lambda form: (form.domain() is not None, len(form.batch_shape)))


def basis_form(degree: int, index: int) -> KForm:
    """The basis element number ``index`` of Λ^degree."""
    coefficients = np.zeros(RANKS[degree])
    coefficients[index] = 1.0
    return KForm(degree, coefficients)


def monomial(*indices: int) -> KForm:
    """The form dx^{i₁}∧…∧dx^{i_k} for 1-based indices, e.g. ``monomial(1, 3)``."""
    zero_based = tuple(i - 1 for i in indices)
    sign = tables.permutation_sign(zero_based)
    ordered = tuple(sorted(zero_based))
    form = basis_form(len(indices), tables.BASIS[len(indices)].index(ordered))
    return form.scaled(sign)


def volume_form() -> KForm:
    """dvol = dx¹∧dx²∧dx³∧dx⁴."""
    return KForm(4, np.ones(1))


def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product a∧b.

    Args:
        a (KForm): A j-form.
        b (KForm): A k-form.

    Returns:
        KForm: The (j+k)-form a∧b.

    Raises:
        DegreeError: If j + k > 4.
    """
    if a.degree + b.degree > DIM:
        raise DegreeError(a.degree + b.degree, "j + k <= 4")
    table = tables.wedge_table(a.degree, b.degree)
    coefficients = np.einsum("cab,a...,b...->c...", table, a.coefficients, b.coefficients)
    return carrier_of(a, b).with_coefficients(a.degree + b.degree, coefficients)


def top_coefficient(form: KForm) -> np.ndarray:
    """The scalar μ of a 4-form μ·dvol, with the batch shape."""
    if form.degree != DIM:
        raise DegreeError(form.degree, "4")
    return form.coefficients[0]


def wedge_scalar(a: KForm, b: KForm) -> np.ndarray:
    """(a∧b)/dvol for complementary degrees."""
    return top_coefficient(wedge(a, b))


def star(a: KForm) -> KForm:
    """Background Hodge star, fixed by β∧*β = |β|² dvol."""
    coefficients = np.einsum("ca,a...->c...", tables.star_table(a.degree), a.coefficients)
    return a.with_coefficients(DIM - a.degree, coefficients)


def inner(a: KForm, b: KForm) -> np.ndarray:
    """Pointwise background inner product ⟨a, b⟩ (the basis is orthonormal)."""
    if a.degree != b.degree:
        raise FieldMismatchError(f"degree {a.degree}", f"degree {b.degree}")
    return np.sum(a.coefficients * b.coefficients, axis=0)


def norm_squared(a: KForm) -> np.ndarray:
    """Pointwise |a|²."""
    return inner(a, a)


def sd_split(a: KForm) -> tuple[KForm, KForm]:
    """Split a 2-form into self-dual and anti-self-dual parts.

    Args:
        a (KForm): A 2-form.

    Returns:
        tuple[KForm, KForm]: ``(a⁺, a⁻)`` with a = a⁺ + a⁻ and *a± = ±a±.
    """
    if a.degree != 2:
        raise DegreeError(a.degree, "2")
    dual = star(a)
    return (a + dual).scaled(0.5), (a - dual).scaled(0.5)


def self_dual_part(a: KForm) -> KForm:
    """a⁺ = (a + *a)/2."""
    return sd_split(a)[0]


def two_form_matrix(a: KForm) -> np.ndarray:
    """Antisymmetric matrix P of a 2-form, with a(X, Y) = Xᵀ P Y.

    Returns:
        np.ndarray: Array of shape ``(4, 4, *batch)``.
    """
    if a.degree != 2:
        raise DegreeError(a.degree, "2")
    matrix = np.zeros((DIM, DIM) + a.batch_shape)
    for index, (i, j) in enumerate(tables.BASIS[2]):
        matrix[i, j] = a.coefficients[index]
        matrix[j, i] = -a.coefficients[index]
    return matrix


def matrix_to_two_form(matrix: np.ndarray) -> KForm:
    """Inverse of :func:`two_form_matrix` (uses the upper triangle)."""
    return KForm(2, np.stack([matrix[i, j] for i, j in tables.BASIS[2]]))


def two_form_evaluate(a: KForm, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """a(X, Y) for vectors stored component-first."""
    return np.einsum("a...,ab...,b...->...", x, two_form_matrix(a), y)
