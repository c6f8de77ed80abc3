"""Cubical chains, the boundary map and the integral pairing.

A cell ``[a : e_{l_1}, ..., e_{l_q}]`` is a base point plus a strictly
increasing set of unit directions. Cells carry absolute coordinates and are
not tied to any box; a box only matters when a chain is paired with a form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import CompatibilityError, DegreeError, OutOfDomainError, ValidationError
from .forms import GridForm, exterior_derivative, sign_s
from .ring import Ring


class Cell(NamedTuple):
    base: tuple[int, ...]
    dirs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.dirs)

    def __str__(self):
        dirs = ", ".join(f"e{l}" for l in self.dirs)
        return f"[{self.base}: {dirs}]" if dirs else f"[{self.base}]"


def cell(base: Sequence[int], dirs: Iterable[int] = ()) -> Cell:
    """Build a cell, checking the base is in the positive lattice and the
    directions are strictly increasing in ``1..d``."""
    base = tuple(int(a) for a in base)
    dirs = tuple(int(l) for l in dirs)
    d = len(base)
    if d == 0 or any(a < 1 for a in base):
        raise ValidationError(f"cell base {base} must have positive coordinates")
    if any(l < 1 or l > d for l in dirs) or any(x >= y for x, y in zip(dirs, dirs[1:])):
        raise ValidationError(f"cell directions {dirs} must increase strictly within 1..{d}")
    return Cell(base, dirs)


@dataclass(frozen=True, eq=False)
class Chain:
    """Finite ring-linear combination of cells of one degree.

    ``terms`` is a tuple of ``(cell, coefficient)`` pairs sorted by cell with
    no zero coefficients, so two equal chains have identical ``terms``.
    """

    ring: Ring
    dimension: int
    degree: int
    terms: tuple[tuple[Cell, object], ...]

    @classmethod
    def from_terms(cls, ring: Ring, dimension: int, degree: int, terms) -> "Chain":
        """Collect ``(cell, coeff)`` pairs, summing repeats and dropping zeros.

        ``terms`` may also be a mapping from cells to coefficients.
        """
        if not 0 <= degree <= dimension:
            raise ValidationError(f"chain degree {degree} outside [0, {dimension}]")
        if hasattr(terms, "items"):
            terms = terms.items()
        acc: dict[Cell, object] = {}
        for c, r in terms:
            if not isinstance(c, Cell):
                c = cell(*c)
            if len(c.base) != dimension or c.degree != degree:
                raise ValidationError(f"cell {c} does not have dimension {dimension}, degree {degree}")
            r = ring.coerce(r)
            acc[c] = ring.add(acc[c], r) if c in acc else r
        kept = tuple(sorted((c, r) for c, r in acc.items() if not ring.is_zero(r)))
        return cls(ring, dimension, degree, kept)

    @classmethod
    def zero(cls, ring: Ring, dimension: int, degree: int) -> "Chain":
        return cls(ring, dimension, degree, ())

    @classmethod
    def of(cls, ring: Ring, c: Cell, coeff=1) -> "Chain":
        return cls.from_terms(ring, len(c.base), c.degree, [(c, coeff)])

    def coefficient(self, c: Cell):
        for other, r in self.terms:
            if other == c:
                return r
        return self.ring.zero

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if (self.ring, self.dimension, self.degree) != (other.ring, other.dimension, other.degree):
            return False
        if len(self.terms) != len(other.terms):
            return False
        return all(
            c1 == c2 and self.ring.eq(r1, r2)
            for (c1, r1), (c2, r2) in zip(self.terms, other.terms)
        )

    __hash__ = None

    def _check(self, other: "Chain"):
        if (self.ring, self.dimension, self.degree) != (other.ring, other.dimension, other.degree):
            raise CompatibilityError("chains differ in ring, dimension or degree")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        return Chain.from_terms(self.ring, self.dimension, self.degree, self.terms + other.terms)

    def __neg__(self) -> "Chain":
        return Chain.from_terms(
            self.ring, self.dimension, self.degree, [(c, self.ring.neg(r)) for c, r in self.terms]
        )

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, r) -> "Chain":
        r = self.ring.coerce(r)
        return Chain.from_terms(
            self.ring, self.dimension, self.degree, [(c, self.ring.mul(r, x)) for c, x in self.terms]
        )

    def __repr__(self):
        body = " + ".join(f"{self.ring.format(r)}*{c}" for c, r in self.terms) or "0"
        return f"Chain({body})"


def _shift(base: tuple[int, ...], l: int) -> tuple[int, ...]:
    return base[: l - 1] + (base[l - 1] + 1,) + base[l:]


def cell_boundary(c: Cell) -> list[tuple[Cell, int]]:
    """Signed faces of a single cell as ``(face, ±1)`` pairs (before cancellation)."""
    if c.degree == 0:
        raise DegreeError("a 0-cell has no boundary")
    faces = []
    for i, l in enumerate(c.dirs):
        s = sign_s(c.dirs, l)
        rest = c.dirs[:i] + c.dirs[i + 1:]
        faces.append((Cell(_shift(c.base, l), rest), s))
        faces.append((Cell(c.base, rest), -s))
    return faces


def boundary(chain: Chain) -> Chain:
    """The boundary map ``D'`` extended linearly; cancelling faces are removed."""
    if chain.degree == 0:
        raise DegreeError("boundary is not defined on 0-chains")
    ring = chain.ring
    terms = []
    for c, r in chain.terms:
        for face, s in cell_boundary(c):
            terms.append((face, r if s > 0 else ring.neg(r)))
    return Chain.from_terms(ring, chain.dimension, chain.degree - 1, terms)


def pair(form: GridForm, chain: Chain):
    """Integral pairing: ``sum_A r_A * f_{dirs(A)}(base(A))``."""
    if form.ring != chain.ring:
        raise CompatibilityError(f"ring mismatch: {form.ring.spec} vs {chain.ring.spec}")
    if form.dimension != chain.dimension:
        raise CompatibilityError(f"dimension mismatch: {form.dimension} vs {chain.dimension}")
    if form.degree != chain.degree:
        raise DegreeError(f"cannot pair a {form.degree}-form with a {chain.degree}-chain")
    ring = form.ring
    total = ring.zero
    for c, r in chain.terms:
        if not form.box.contains(c.base):
            raise OutOfDomainError(f"cell {c} has base outside box {form.box.extents}")
        value = form.components[c.dirs][tuple(a - 1 for a in c.base)]
        total = ring.add(total, ring.mul(r, ring.coerce(value)))
    return total


@dataclass(frozen=True)
class StokesReport:
    lhs: object
    rhs: object
    equal: bool


def stokes_verify(form: GridForm, chain: Chain) -> StokesReport:
    """Evaluate both sides of ``B(D w, c) = B(w, D'c)``.

    Every cell base must lie in ``form.box.shrink()``, where ``D w`` is known.
    """
    if chain.degree != form.degree + 1:
        raise DegreeError(f"need a {form.degree + 1}-chain for a {form.degree}-form")
    inner = form.box.shrink()
    for c, _ in chain.terms:
        if not inner.contains(c.base):
            raise OutOfDomainError(f"cell {c} is outside the evaluable box {inner.extents}")
    lhs = pair(exterior_derivative(form), chain)
    rhs = pair(form, boundary(chain))
    return StokesReport(lhs, rhs, form.ring.eq(lhs, rhs))
