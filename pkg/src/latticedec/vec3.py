"""Gradient, curl and divergence of lattice fields in three variables.

All three operators are the exterior derivative in disguise. Vector fields
are read as forms through two dictionaries:

* 1-forms: ``(b1, b2, b3) <-> b1 dx1 + b2 dx2 + b3 dx3``
* 2-forms: ``(a1, a2, a3) <-> a1 dx2∧dx3 - a2 dx1∧dx3 + a3 dx1∧dx2``

The minus sign on the middle 2-form component makes ``D`` of a 1-form read
back as the usual curl, and ``D`` of a 2-form as the usual divergence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CompatibilityError, ValidationError
from .forms import Box, GridForm, _build, _freeze, exterior_derivative
from .poincare import solve_potential
from .ring import Ring


@dataclass(frozen=True, eq=False)
class VectorField3:
    """Three scalar grids on one 3-dimensional box."""

    ring: Ring
    box: Box
    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray

    @classmethod
    def make(cls, ring: Ring, box, a1, a2, a3) -> "VectorField3":
        if not isinstance(box, Box):
            box = Box(tuple(box))
        if box.dimension != 3:
            raise ValidationError(f"vector fields need a 3-dimensional box, got {box.extents}")
        comps = []
        for name, values in zip(("a1", "a2", "a3"), (a1, a2, a3)):
            arr = ring.asarray(values)
            if arr.shape != box.extents:
                raise ValidationError(f"{name} has shape {arr.shape}, expected {box.extents}")
            comps.append(_freeze(arr))
        return cls(ring, box, *comps)

    @classmethod
    def from_functions(cls, ring: Ring, box, f1, f2, f3) -> "VectorField3":
        if not isinstance(box, Box):
            box = Box(tuple(box))
        grids = []
        for fn in (f1, f2, f3):
            arr = np.empty(box.extents, dtype=object)
            for p in box.points():
                arr[tuple(a - 1 for a in p)] = fn(*p)
            grids.append(arr)
        return cls.make(ring, box, *grids)

    @property
    def comps(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.a1, self.a2, self.a3)

    def __eq__(self, other):
        if not isinstance(other, VectorField3):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.box == other.box
            and all(self.ring.arrays_equal(x, y) for x, y in zip(self.comps, other.comps))
        )

    __hash__ = None

    def restrict(self, box: Box) -> "VectorField3":
        window = tuple(slice(0, n) for n in box.extents)
        return VectorField3.make(self.ring, box, *(c[window] for c in self.comps))

    def is_zero(self) -> bool:
        return all(self.ring.array_is_zero(c) for c in self.comps)


def _field(ring, box, a1, a2, a3) -> VectorField3:
    return VectorField3(ring, box, *(_freeze(ring.normalize(np.asarray(c))) for c in (a1, a2, a3)))


def _require3(form: GridForm):
    if form.dimension != 3:
        raise CompatibilityError(f"expected a form on a 3-dimensional box, got {form.box.extents}")


def to_one_form(b: VectorField3) -> GridForm:
    return _build(b.ring, b.box, 1, {(1,): b.a1, (2,): b.a2, (3,): b.a3})


def from_one_form(form: GridForm) -> VectorField3:
    _require3(form)
    c = form.components
    return _field(form.ring, form.box, c[(1,)], c[(2,)], c[(3,)])


def to_two_form(a: VectorField3) -> GridForm:
    return _build(a.ring, a.box, 2, {(1, 2): a.a3, (1, 3): -a.a2, (2, 3): a.a1})


def from_two_form(form: GridForm) -> VectorField3:
    _require3(form)
    c = form.components
    return _field(form.ring, form.box, c[(2, 3)], -c[(1, 3)], c[(1, 2)])


def grad(f: GridForm) -> VectorField3:
    """``(∂1 f, ∂2 f, ∂3 f)`` on the shrunken box."""
    _require3(f)
    return from_one_form(exterior_derivative(f))


def curl(b: VectorField3) -> VectorField3:
    """``(∂2 b3 - ∂3 b2, ∂3 b1 - ∂1 b3, ∂1 b2 - ∂2 b1)`` on the shrunken box."""
    return from_two_form(exterior_derivative(to_one_form(b)))


def div(a: VectorField3) -> GridForm:
    """``∂1 a1 + ∂2 a2 + ∂3 a3`` as a 0-form on the shrunken box."""
    top = exterior_derivative(to_two_form(a))
    return _build(a.ring, top.box, 0, {(): top.components[(1, 2, 3)]})


def scalar_potential3(a: VectorField3) -> GridForm:
    """A 0-form ``b`` with ``grad b = a`` on the shrunken box.

    Raises NotClosedError when some ``∂j a_i != ∂i a_j``; its ``component``
    attribute is the offending pair ``(i, j)``.
    """
    return solve_potential(to_one_form(a)).potential


def vector_potential3(a: VectorField3) -> VectorField3:
    """A field ``b`` with ``curl b = a`` on the shrunken box.

    Raises NotClosedError at the first point where ``div a`` is nonzero.
    """
    return from_one_form(solve_potential(to_two_form(a)).potential)

