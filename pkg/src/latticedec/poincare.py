"""Closed forms, the cylinder maps and constructive potentials.

The cylinder over a ``d``-dimensional box is the ``(d+1)``-dimensional box
with one extra trailing axis ``t``. Three maps connect them:

* :func:`pullback_cylinder` copies a form along ``t``;
* :func:`restrict_base` slices at ``t = 1`` and drops every ``dx_t`` term;
* :func:`homotopy_K` sums the ``dx_t`` coefficient over ``k = 1..t-1``.

They satisfy ``w - pullback(restrict(w)) = D K w + K D w`` wherever both
sides are defined, so a closed ``w`` equals ``D(K w + pullback(xi'))`` once
``xi'`` solves the restricted problem one dimension down.
:func:`solve_potential` runs that recursion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeError, DomainError, NotClosedError
from .forms import Box, GridForm, _build, exterior_derivative, multi_indices


@dataclass(frozen=True)
class PotentialResult:
    """A potential together with the box on which ``D(potential)`` is guaranteed
    to reproduce the input."""

    potential: GridForm
    guarantee_box: Box


def first_violation(form: GridForm):
    """Return ``(component, point, value)`` of the first nonzero entry of
    ``D(form)`` in row-major order, or ``None`` if the form is closed."""
    if form.degree == form.dimension:
        return None
    dw = exterior_derivative(form)
    ring = form.ring
    for L, arr in dw.components.items():
        if ring.array_is_zero(arr):
            continue
        for idx, value in np.ndenumerate(arr):
            if not ring.is_zero(value):
                return L, tuple(i + 1 for i in idx), value
    return None


def check_closed(form: GridForm) -> bool:
    """True iff ``D(form)`` vanishes on the shrunken box. Top-degree forms are
    closed by convention."""
    if form.degree == form.dimension:
        return True
    return exterior_derivative(form).is_zero()


def h0_kernel_check(form: GridForm) -> bool:
    """True iff a 0-form has vanishing differences, i.e. is constant."""
    if form.degree != 0:
        raise DegreeError(f"expected a 0-form, got degree {form.degree}")
    return check_closed(form)


def pullback_cylinder(form: GridForm, t_extent: int) -> GridForm:
    """Pull back along the projection dropping the new trailing coordinate."""
    if t_extent < 1:
        raise DomainError(f"t_extent must be >= 1, got {t_extent}")
    d, q = form.dimension, form.degree
    box = Box(form.box.extents + (t_extent,))
    comps = {}
    for I in multi_indices(d + 1, q):
        if I and I[-1] == d + 1:
            comps[I] = form.ring.zeros(box.extents)
        else:
            src = form.components[I]
            comps[I] = np.repeat(src[..., np.newaxis], t_extent, axis=-1)
    return _build(form.ring, box, q, comps)


def restrict_base(form: GridForm) -> GridForm:
    """Pull back along ``n -> (n, 1)``; components containing ``dx_t`` vanish."""
    n, q = form.dimension, form.degree
    if n < 2:
        raise DomainError("the base of a 1-dimensional cylinder is empty")
    if q > n - 1:
        raise DegreeError(f"a {q}-form restricts to the zero module over a {n - 1}-dimensional base")
    base = Box(form.box.extents[:-1])
    comps = {I: form.components[I][..., 0] for I in multi_indices(n - 1, q)}
    return _build(form.ring, base, q, comps)


def _exclusive_cumsum(arr: np.ndarray, ring) -> np.ndarray:
    # out[..., t] = sum_{k < t} arr[..., k]; the t = 1 entry is the empty sum
    out = ring.zeros(arr.shape)
    if arr.shape[-1] > 1:
        out[..., 1:] = np.cumsum(arr[..., :-1], axis=-1)
    return out


def homotopy_K(form: GridForm) -> GridForm:
    """The homotopy operator along the last axis.

    Writing ``dx_I = σ dx_t ∧ dx_{I'}`` with ``σ = (-1)^(q-1)``, the
    ``dx_{I'}`` coefficient of the result is ``σ * sum_{k=1}^{t-1} f_I(n, k)``;
    components without ``dx_t`` contribute nothing.
    """
    n, q = form.dimension, form.degree
    if q == 0:
        raise DegreeError("K is not defined on 0-forms")
    ring = form.ring
    sigma_negative = (q - 1) % 2 == 1
    comps = {}
    for J in multi_indices(n, q - 1):
        if n in J:
            comps[J] = ring.zeros(form.box.extents)
            continue
        summed = _exclusive_cumsum(form.components[J + (n,)], ring)
        comps[J] = -summed if sigma_negative else summed
    return _build(ring, form.box, q - 1, comps)


def _solve(form: GridForm) -> GridForm:
    xi = homotopy_K(form)
    if form.dimension == form.degree:
        return xi
    inner = _solve(restrict_base(form))
    return xi + pullback_cylinder(inner, form.box.extents[-1])


def solve_potential(form: GridForm) -> PotentialResult:
    """Find ``xi`` with ``D(xi) = form`` on ``form.box.shrink()``.

    Raises:
        DegreeError: for 0-forms.
        EmptyDomainError: if some extent is 1.
        NotClosedError: naming the first point where ``D(form)`` is nonzero.
    """
    if form.degree == 0:
        raise DegreeError("0-forms have no potential")
    guarantee = form.box.shrink()
    bad = first_violation(form)
    if bad is not None:
        raise NotClosedError(*bad)
    return PotentialResult(_solve(form), guarantee)


def pathsum_scalar_potential(form: GridForm) -> GridForm:
    """Scalar potential of a closed 1-form by summing along a staircase path.

    ``F(n) = sum_i sum_{k=1}^{n_i - 1} f_i(n_1, ..., n_{i-1}, k, 1, ..., 1)``,
    i.e. walk from ``(1, ..., 1)`` along axis 1, then axis 2, and so on.
    """
    if form.degree != 1:
        raise DegreeError(f"path sums need a 1-form, got degree {form.degree}")
    form.box.shrink()
    bad = first_violation(form)
    if bad is not None:
        raise NotClosedError(*bad)
    ring = form.ring
    d = form.dimension
    total = ring.zeros(form.box.extents)
    for i in range(1, d + 1):
        # f_i restricted to the face where coordinates after i equal 1
        edge = form.components[(i,)][(Ellipsis,) + (0,) * (d - i)]
        moved = np.moveaxis(edge, i - 1, -1)
        summed = np.moveaxis(_exclusive_cumsum(moved, ring), -1, i - 1)
        total = total + summed.reshape(summed.shape + (1,) * (d - i))
    return _build(ring, form.box, 0, {(): total})
