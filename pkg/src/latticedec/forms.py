"""Discrete differential forms on finite lattice boxes.

A box with extents ``(N_1, ..., N_d)`` holds the lattice points ``a`` with
``1 <= a_i <= N_i``. A degree-``q`` form stores one dense grid per strictly
increasing multi-index ``I`` of size ``q``; grids are numpy arrays in C
(row-major) order, so array axis ``i - 1`` is coordinate ``i`` and the last
axis varies fastest.

The difference ``(∂_i f)(a) = f(a + e_i) - f(a)`` needs the neighbour
``a + e_i``, so :func:`exterior_derivative` returns a form on the box shrunk
by one in *every* axis. Keeping all components on one rectangular box makes
compositions like ``D(D(w))`` well typed without per-component bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CompatibilityError, DegreeError, EmptyDomainError, ValidationError
from .ring import Ring

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class Box:
    """Axis-aligned window ``[1, N_1] x ... x [1, N_d]`` of the positive lattice."""

    extents: tuple[int, ...]

    def __post_init__(self):
        ext = tuple(self.extents)
        if not ext:
            raise ValidationError("a box needs dimension >= 1")
        for n in ext:
            if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
                raise ValidationError(f"box extents must be positive integers, got {ext}")
        object.__setattr__(self, "extents", tuple(int(n) for n in ext))

    @property
    def dimension(self) -> int:
        return len(self.extents)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.extents

    @property
    def size(self) -> int:
        return int(np.prod(self.extents))

    def contains(self, point: Sequence[int]) -> bool:
        return len(point) == self.dimension and all(
            1 <= a <= n for a, n in zip(point, self.extents)
        )

    def contains_box(self, other: "Box") -> bool:
        return other.dimension == self.dimension and all(
            m <= n for m, n in zip(other.extents, self.extents)
        )

    def shrink(self) -> "Box":
        """The box where differences of grids on this box are defined."""
        if min(self.extents) < 2:
            raise EmptyDomainError(f"cannot shrink box {self.extents}: some extent is 1")
        return Box(tuple(n - 1 for n in self.extents))

    def grow(self) -> "Box":
        return Box(tuple(n + 1 for n in self.extents))

    def points(self) -> Iterator[tuple[int, ...]]:
        """Lattice points in row-major order (last coordinate fastest)."""
        return (tuple(i + 1 for i in idx) for idx in np.ndindex(*self.extents))

    def offset(self, point: Sequence[int]) -> int:
        """Flat row-major offset of a 1-based point."""
        off = 0
        for a, n in zip(point, self.extents):
            off = off * n + (a - 1)
        return off


def multi_indices(d: int, q: int) -> list[MultiIndex]:
    """All strictly increasing multi-indices of size ``q`` over ``1..d``, in lex order."""
    return list(combinations(range(1, d + 1), q))


def _check_multi_index(index: Iterable[int], d: int) -> MultiIndex:
    idx = tuple(int(i) for i in index)
    if any(i < 1 or i > d for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValidationError(f"{idx} is not a strictly increasing multi-index in 1..{d}")
    return idx


def sign_s(index: Iterable[int], j: int) -> int:
    """``+1`` if an even number of entries of ``index`` are below ``j``, else ``-1``."""
    below = sum(1 for i in index if i < j)
    return -1 if below % 2 else 1


def merge_sign(left: MultiIndex, right: MultiIndex) -> int:
    """Sign of the permutation sorting ``left + right`` (0 if they overlap)."""
    if set(left) & set(right):
        return 0
    inversions = sum(1 for i in left for j in right if i > j)
    return -1 if inversions % 2 else 1


class GridForm:
    """An immutable degree-``q`` discrete form on a box.

    Use :func:`make_form` (validating) or the helpers :func:`zero_form` and
    :func:`form_from_function` to build one.
    """

    __slots__ = ("ring", "box", "degree", "components")

    def __init__(self, ring: Ring, box: Box, degree: int, components: dict):
        self.ring = ring
        self.box = box
        self.degree = degree
        self.components = components

    @property
    def dimension(self) -> int:
        return self.box.dimension

    def __repr__(self):
        return f"GridForm(degree={self.degree}, extents={self.box.extents}, ring={self.ring.spec})"

    def __getitem__(self, index) -> np.ndarray:
        if isinstance(index, int):
            index = (index,)
        return self.components[tuple(index)]

    def __eq__(self, other):
        if not isinstance(other, GridForm):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.box == other.box
            and self.degree == other.degree
            and all(
                self.ring.arrays_equal(self.components[k], other.components[k])
                for k in self.components
            )
        )

    __hash__ = None

    def _binary(self, other: "GridForm", op) -> "GridForm":
        _check_compatible(self, other)
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")
        comps = {k: op(v, other.components[k]) for k, v in self.components.items()}
        return _build(self.ring, self.box, self.degree, comps)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self):
        return _build(self.ring, self.box, self.degree, {k: -v for k, v in self.components.items()})

    def scale(self, r) -> "GridForm":
        """Multiply every coefficient by the ring element ``r``."""
        r = self.ring.coerce(r)
        return _build(self.ring, self.box, self.degree, {k: v * r for k, v in self.components.items()})

    def restrict(self, box: Box) -> "GridForm":
        """Crop to a smaller box sharing the corner ``(1, ..., 1)``."""
        if not self.box.contains_box(box):
            raise CompatibilityError(f"box {box.extents} does not fit in {self.box.extents}")
        window = tuple(slice(0, n) for n in box.extents)
        return _build(self.ring, box, self.degree, {k: v[window] for k, v in self.components.items()})

    def is_zero(self) -> bool:
        return form_is_zero(self)


def _check_compatible(a: GridForm, b: GridForm):
    if a.ring != b.ring:
        raise CompatibilityError(f"ring mismatch: {a.ring.spec} vs {b.ring.spec}")
    if a.box != b.box:
        raise CompatibilityError(f"box mismatch: {a.box.extents} vs {b.box.extents}")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _build(ring: Ring, box: Box, degree: int, comps: dict) -> GridForm:
    # internal constructor: arrays come from trusted arithmetic
    return GridForm(ring, box, degree, {k: _freeze(ring.normalize(np.asarray(v))) for k, v in comps.items()})


def make_form(
    ring: Ring,
    box: Box | Sequence[int],
    degree: int,
    components: Mapping[Iterable[int], object],
) -> GridForm:
    """Validate and build a form.

    Args:
        ring: coefficient ring.
        box: a :class:`Box` or its extents.
        degree: form degree ``q`` with ``0 <= q <= d``.
        components: map from every size-``q`` multi-index to an array of
            shape ``box.extents``. Missing or extra components are rejected.
    """
    if not isinstance(box, Box):
        box = Box(tuple(box))
    d = box.dimension
    if isinstance(degree, bool) or not isinstance(degree, int) or not 0 <= degree <= d:
        raise ValidationError(f"degree must be in [0, {d}], got {degree!r}")
    comps = {}
    for key, values in components.items():
        if isinstance(key, int):
            key = (key,)
        idx = _check_multi_index(key, d)
        if len(idx) != degree:
            raise ValidationError(f"component {idx} has size {len(idx)}, expected {degree}")
        if idx in comps:
            raise ValidationError(f"duplicate component {idx}")
        arr = ring.asarray(values)
        if arr.shape != box.extents:
            raise ValidationError(f"component {idx} has shape {arr.shape}, expected {box.extents}")
        comps[idx] = arr
    expected = multi_indices(d, degree)
    missing = [i for i in expected if i not in comps]
    if missing:
        raise ValidationError(f"missing components {missing}; need all {comb(d, degree)}")
    return GridForm(ring, box, degree, {i: _freeze(comps[i]) for i in expected})


def zero_form(ring: Ring, box: Box | Sequence[int], degree: int) -> GridForm:
    if not isinstance(box, Box):
        box = Box(tuple(box))
    if not 0 <= degree <= box.dimension:
        raise DegreeError(f"degree must be in [0, {box.dimension}], got {degree}")
    return GridForm(
        ring, box, degree, {i: _freeze(ring.zeros(box.extents)) for i in multi_indices(box.dimension, degree)}
    )


def form_from_function(
    ring: Ring,
    box: Box | Sequence[int],
    degree: int,
    funcs: Mapping[Iterable[int], Callable[..., object]] | Callable[..., object],
) -> GridForm:
    """Tabulate coefficient functions of the 1-based coordinates.

    ``funcs`` maps multi-indices to callables ``f(n_1, ..., n_d)``; components
    not listed are zero. For a 0-form a bare callable is accepted.

    >>> f = form_from_function(ZZ, (2, 2), 0, lambda n1, n2: n1 * n2)
    """
    if not isinstance(box, Box):
        box = Box(tuple(box))
    if callable(funcs):
        funcs = {(): funcs}
    comps = {}
    table = {(k,) if isinstance(k, int) else tuple(k): fn for k, fn in funcs.items()}
    for idx in multi_indices(box.dimension, degree):
        arr = np.empty(box.extents, dtype=object)
        fn = table.pop(idx, None)
        for point in box.points():
            arr[tuple(a - 1 for a in point)] = 0 if fn is None else fn(*point)
        comps[idx] = arr
    if table:
        raise ValidationError(f"components {sorted(table)} are not size-{degree} multi-indices")
    return make_form(ring, box, degree, comps)


def form_get(form: GridForm, index: Iterable[int], point: Sequence[int]):
    """Coefficient ``f_I(a)`` at a 1-based point."""
    idx = _check_multi_index([index] if isinstance(index, int) else index, form.dimension)
    if idx not in form.components:
        raise ValidationError(f"{idx} is not a component of a degree-{form.degree} form")
    if not form.box.contains(point):
        raise ValidationError(f"point {tuple(point)} is outside box {form.box.extents}")
    return form.components[idx][tuple(a - 1 for a in point)]


def form_is_zero(form: GridForm) -> bool:
    return all(form.ring.array_is_zero(v) for v in form.components.values())


def partial(f: np.ndarray, i: int, ring: Ring | None = None) -> np.ndarray:
    """Forward difference ``f(a + e_i) - f(a)`` along coordinate ``i`` (1-based).

    The result is one shorter than ``f`` along axis ``i`` only.
    """
    f = np.asarray(f)
    if not 1 <= i <= f.ndim:
        raise ValidationError(f"axis {i} out of range for a {f.ndim}-dimensional grid")
    if f.shape[i - 1] < 2:
        raise EmptyDomainError(f"extent along axis {i} is 1; difference undefined")
    hi = [slice(None)] * f.ndim
    lo = [slice(None)] * f.ndim
    hi[i - 1] = slice(1, None)
    lo[i - 1] = slice(None, -1)
    out = f[tuple(hi)] - f[tuple(lo)]
    return ring.normalize(out) if ring is not None else out


def _shrunk_difference(f: np.ndarray, i: int) -> np.ndarray:
    # ∂_i f cropped to the uniformly shrunken box
    window = [slice(None, -1)] * f.ndim
    hi = list(window)
    hi[i - 1] = slice(1, None)
    return f[tuple(hi)] - f[tuple(window)]


def exterior_derivative(form: GridForm) -> GridForm:
    """``D`` on a degree-``q`` form, giving a degree ``q+1`` form on ``box.shrink()``.

    Component ``L = (l_1 < ... < l_{q+1})`` of the result is
    ``sum_m (-1)^(m-1) ∂_{l_m} f_{L minus l_m}``, which is what expanding
    ``sum_I D_1(f_I) ∧ dx_I`` gives after sorting each wedge.
    """
    d, q = form.dimension, form.degree
    if q >= d:
        raise DegreeError(f"no forms of degree {q + 1} in dimension {d}")
    target = form.box.shrink()
    comps = {}
    for L in multi_indices(d, q + 1):
        acc = None
        for m, l in enumerate(L):
            term = _shrunk_difference(form.components[L[:m] + L[m + 1:]], l)
            if acc is None:
                acc = term
            elif m % 2:
                acc = acc - term
            else:
                acc = acc + term
        comps[L] = acc
    return _build(form.ring, target, q + 1, comps)


def wedge(left: GridForm, right: GridForm) -> GridForm:
    """Pointwise exterior product of two forms on the same box."""
    _check_compatible(left, right)
    p, q, d = left.degree, right.degree, left.dimension
    if p + q > d:
        raise DegreeError(f"wedge of degrees {p} and {q} exceeds dimension {d}")
    ring = left.ring
    comps = {L: ring.zeros(left.box.extents) for L in multi_indices(d, p + q)}
    for I, f in left.components.items():
        for J, g in right.components.items():
            sign = merge_sign(I, J)
            if sign == 0:
                continue
            L = tuple(sorted(I + J))
            prod = f * g
            comps[L] = comps[L] + prod if sign > 0 else comps[L] - prod
    return _build(ring, left.box, p + q, comps)
