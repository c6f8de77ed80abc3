"""Brute-force linear algebra over the rationals for small boxes.

``D`` and ``D'`` are materialized as sparse rational matrices and analysed
by exact Gauss-Jordan elimination. This is deliberately independent of the
array code in :mod:`latticedec.forms`: entries are written down from the
definition one basis vector at a time.

Unknowns are ordered by multi-index (lexicographic), then by lattice point
(row-major, last coordinate fastest), so every matrix is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chains import Chain, boundary, cell
from .errors import ResourceError, ValidationError
from .forms import Box, GridForm, exterior_derivative, make_form, multi_indices
from .poincare import solve_potential
from .ring import QQ

MAX_UNKNOWNS = 2000


@dataclass(frozen=True)
class LinearMapMatrix:
    """Sparse rational matrix with labelled rows and columns.

    Labels are ``(multi_index, point)`` pairs; a chain cell ``[a: I]`` is
    labelled ``(I, a)`` as well. ``entries[r]`` maps column numbers to the
    nonzero values of row ``r``.
    """

    rows: tuple
    cols: tuple
    entries: tuple[dict, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_dense(self) -> list[list[Fraction]]:
        out = []
        for row in self.entries:
            dense = [Fraction(0)] * len(self.cols)
            for c, v in row.items():
                dense[c] = v
            out.append(dense)
        return out

    def columns(self) -> list[dict]:
        cols: list[dict] = [{} for _ in self.cols]
        for r, row in enumerate(self.entries):
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != len(self.cols):
            raise ValidationError(f"vector of length {len(vec)} for {len(self.cols)} columns")
        return [sum((v * vec[c] for c, v in row.items()), Fraction(0)) for row in self.entries]

    def __matmul__(self, other: "LinearMapMatrix") -> "LinearMapMatrix":
        if self.cols != other.rows:
            raise ValidationError("inner labels do not match")
        prod = []
        for row in self.entries:
            acc: dict = {}
            for k, a in row.items():
                for c, b in other.entries[k].items():
                    acc[c] = acc.get(c, 0) + a * b
            prod.append({c: v for c, v in acc.items() if v})
        return LinearMapMatrix(self.rows, other.cols, tuple(prod))

    def is_zero(self) -> bool:
        return not any(self.entries)


def _labels(box: Box, degree: int) -> tuple:
    return tuple((I, p) for I in multi_indices(box.dimension, degree) for p in box.points())


def _check_size(rows: int, cols: int):
    if rows > MAX_UNKNOWNS or cols > MAX_UNKNOWNS:
        raise ResourceError(f"matrix {rows}x{cols} exceeds the {MAX_UNKNOWNS} cap")


def _bump(row: dict, col: int, value: int):
    row[col] = row.get(col, 0) + value


def _shift(p, l):
    return p[: l - 1] + (p[l - 1] + 1,) + p[l:]


def matrix_of_D(box: Box | Sequence[int], q: int) -> LinearMapMatrix:
    """Matrix of ``D_q``: (q-1)-forms on ``box`` to q-forms on ``box.shrink()``."""
    box = box if isinstance(box, Box) else Box(tuple(box))
    d = box.dimension
    if not 1 <= q <= d:
        raise ValidationError(f"D_q needs 1 <= q <= {d}, got {q}")
    target = box.shrink()
    rows, cols = _labels(target, q), _labels(box, q - 1)
    _check_size(len(rows), len(cols))
    col_at = {label: k for k, label in enumerate(cols)}
    entries = []
    for L, a in rows:
        row: dict = {}
        for m, l in enumerate(L):
            J = L[:m] + L[m + 1:]
            sign = -1 if m % 2 else 1
            _bump(row, col_at[(J, _shift(a, l))], sign)
            _bump(row, col_at[(J, a)], -sign)
        entries.append({c: Fraction(v) for c, v in row.items() if v})
    return LinearMapMatrix(rows, cols, tuple(entries))


def matrix_of_boundary(region: Box | Sequence[int], q: int) -> LinearMapMatrix:
    """Matrix of ``D'_q``: q-cells based in ``region`` to (q-1)-cells based in
    ``region.grow()`` (faces may sit one step further out)."""
    region = region if isinstance(region, Box) else Box(tuple(region))
    d = region.dimension
    if not 1 <= q <= d:
        raise ValidationError(f"D'_q needs 1 <= q <= {d}, got {q}")
    rows, cols = _labels(region.grow(), q - 1), _labels(region, q)
    _check_size(len(rows), len(cols))
    row_at = {label: k for k, label in enumerate(rows)}
    entries: list[dict] = [{} for _ in rows]
    for j, (I, a) in enumerate(cols):
        for k, l in enumerate(I):
            # face sign is (-1)^k: k entries of I lie below l
            sign = -1 if k % 2 else 1
            rest = I[:k] + I[k + 1:]
            _bump(entries[row_at[(rest, _shift(a, l))]], j, sign)
            _bump(entries[row_at[(rest, a)]], j, -sign)
    entries = [{c: Fraction(v) for c, v in row.items() if v} for row in entries]
    return LinearMapMatrix(rows, cols, tuple(entries))


def form_to_vector(form: GridForm) -> list[Fraction]:
    return [Fraction(form.components[I][tuple(x - 1 for x in p)]) for I, p in _labels(form.box, form.degree)]


def vector_to_form(box: Box, degree: int, vec: Sequence) -> GridForm:
    n = box.size
    comps = {}
    for k, I in enumerate(multi_indices(box.dimension, degree)):
        comps[I] = np.array(list(vec[k * n:(k + 1) * n]), dtype=object).reshape(box.extents)
    return make_form(QQ, box, degree, comps)


def chain_to_vector(chain: Chain, region: Box) -> list[Fraction]:
    index = {label: k for k, label in enumerate(_labels(region, chain.degree))}
    vec = [Fraction(0)] * len(index)
    for c, r in chain.terms:
        key = (c.dirs, c.base)
        if key not in index:
            raise ValidationError(f"cell {c} is not based in region {region.extents}")
        vec[index[key]] = Fraction(r)
    return vec


def vector_to_chain(region: Box, degree: int, vec: Sequence) -> Chain:
    terms = [(cell(p, I), v) for (I, p), v in zip(_labels(region, degree), vec)]
    return Chain.from_terms(QQ, region.dimension, degree, terms)


class RowSpace:
    """Incrementally maintained reduced row echelon basis of sparse vectors.

    Every basis row has a pivot entry 1 and no other basis row has a
    nonzero entry in that pivot column.
    """

    def __init__(self, vectors=()):
        self.pivots: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec) -> dict:
        row = _sparse(vec)
        for c in [c for c in row if c in self.pivots]:
            f = row.get(c)
            if not f:
                continue
            for k, v in self.pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, vec) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        row = self.reduce(vec)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for other in self.pivots.values():
            f = other.get(p)
            if f:
                for k, v in row.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self.pivots[p] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def _sparse(vec) -> dict:
    if isinstance(vec, dict):
        return {k: Fraction(v) for k, v in vec.items() if v}
    return {k: Fraction(v) for k, v in enumerate(vec) if v}


def rank(mat: LinearMapMatrix) -> int:
    return len(RowSpace(mat.entries))


def kernel_basis(mat: LinearMapMatrix) -> list[list[Fraction]]:
    """A basis of the null space, one vector per free column."""
    ncols = len(mat.cols)
    space = RowSpace(mat.entries)
    basis = []
    for free in range(ncols):
        if free in space.pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for pc, row in space.pivots.items():
            v[pc] = -row.get(free, Fraction(0))
        basis.append(v)
    return basis


def image_space(mat: LinearMapMatrix) -> RowSpace:
    """Reduced basis of the column space, reusable for many membership tests."""
    return RowSpace(mat.columns())


def in_image(mat: LinearMapMatrix, vec: Sequence) -> bool:
    """Decide exactly whether ``vec`` lies in the column space."""
    if len(vec) != len(mat.rows):
        raise ValidationError(f"vector of length {len(vec)} for {len(mat.rows)} rows")
    return image_space(mat).contains(vec)


def closed_forms_basis(box: Box, q: int) -> list[list[Fraction]]:
    """Basis of the q-forms on ``box`` whose derivative vanishes on ``box.shrink()``."""
    n = box.size * len(multi_indices(box.dimension, q))
    if q == box.dimension:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return kernel_basis(matrix_of_D(box, q + 1))


def restrict_vector(box: Box, degree: int, vec: Sequence) -> list[Fraction]:
    """Restrict a flattened form on ``box`` to ``box.shrink()``."""
    inner = box.shrink()
    n = box.size
    out = []
    for k, _ in enumerate(multi_indices(box.dimension, degree)):
        for p in inner.points():
            out.append(Fraction(vec[k * n + box.offset(p)]))
    return out


@dataclass(frozen=True)
class CohomologyReport:
    """Window-scale comparison of closed and exact q-forms.

    Closedness on a box only constrains a form on the shrunken box (entries
    on the outer layer never enter ``D``), while ``D`` of a form on the box
    is only known on the shrunken box. Both are therefore compared there:
    ``closed_dim`` is the dimension of the restrictions of closed forms and
    ``exact_dim`` the rank of ``D_q``. ``all_exact`` records that every
    restricted closed form lies in the image of ``D_q``.
    """

    degree: int
    kernel_dim: int
    closed_dim: int
    exact_dim: int
    all_exact: bool

    @property
    def vanishes(self) -> bool:
        if self.degree == 0:
            return False
        return self.all_exact and self.closed_dim == self.exact_dim


def cohomology_report(box: Box | Sequence[int], q: int) -> CohomologyReport:
    box = box if isinstance(box, Box) else Box(tuple(box))
    kernel = closed_forms_basis(box, q)
    restricted = [restrict_vector(box, q, v) for v in kernel]
    closed = RowSpace(restricted)
    if q == 0:
        return CohomologyReport(0, len(kernel), len(closed), 0, True)
    image = image_space(matrix_of_D(box, q))
    all_exact = all(image.contains(v) for v in closed.pivots.values())
    return CohomologyReport(q, len(kernel), len(closed), len(image), all_exact)


def cohomology_dimension(box: Box | Sequence[int], q: int) -> int:
    """Window-scale ``dim H^q``: closed modulo exact, compared on the shrunken box."""
    report = cohomology_report(box, q)
    if q == 0:
        return report.closed_dim
    return report.closed_dim - report.exact_dim


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _random_form(rng, box: Box, q: int) -> GridForm:
    comps = {I: rng.integers(-5, 6, size=box.extents).astype(object) for I in multi_indices(box.dimension, q)}
    return make_form(QQ, box, q, comps)


def verify_box(extents: Sequence[int], samples: int = 10, seed: int = 0) -> list[Check]:
    """Run the oracle suite on one box over the rationals.

    Checks that the matrices agree with the library operators on random
    inputs, that ``D D = 0`` and ``D' D' = 0`` as matrices, that closed
    0-forms are constant on the shrunken box, and that for every ``q >= 1``
    each closed form is exact there and is solved by :func:`solve_potential`.
    """
    box = Box(tuple(extents))
    d = box.dimension
    rng = np.random.default_rng(seed)
    checks = []

    for q in range(1, d + 1):
        mat = matrix_of_D(box, q)
        ok = True
        for _ in range(samples):
            w = _random_form(rng, box, q - 1)
            if mat.apply(form_to_vector(w)) != form_to_vector(exterior_derivative(w)):
                ok = False
                break
        checks.append(Check(f"matrix_D{q}_matches_operator", ok))

        bmat = matrix_of_boundary(box, q)
        ok = True
        for _ in range(samples):
            vec = [Fraction(int(x)) for x in rng.integers(-3, 4, size=len(bmat.cols))]
            c = vector_to_chain(box, q, vec)
            if bmat.apply(vec) != chain_to_vector(boundary(c), box.grow()):
                ok = False
                break
        checks.append(Check(f"matrix_boundary{q}_matches_operator", ok))

    for q in range(1, d):
        if min(box.extents) >= 3:
            dd = matrix_of_D(box.shrink(), q + 1) @ matrix_of_D(box, q)
            checks.append(Check(f"D{q + 1}_D{q}_is_zero", dd.is_zero()))
        bb = matrix_of_boundary(box.grow(), q) @ matrix_of_boundary(box, q + 1)
        checks.append(Check(f"boundary{q}_boundary{q + 1}_is_zero", bb.is_zero()))

    h0 = cohomology_report(box, 0)
    ones = [Fraction(1)] * box.shrink().size
    constants = h0.closed_dim == 1 and RowSpace([ones]).contains(
        next(iter(RowSpace(restrict_vector(box, 0, v) for v in closed_forms_basis(box, 0)).pivots.values()))
    )
    checks.append(Check("H0_is_constants", constants, f"dim = {h0.closed_dim}"))

    for q in range(1, d + 1):
        rep = cohomology_report(box, q)
        checks.append(
            Check(f"H{q}_vanishes", rep.vanishes, f"dim closed = {rep.closed_dim}, dim exact = {rep.exact_dim}")
        )
        solved = True
        for v in closed_forms_basis(box, q):
            w = vector_to_form(box, q, v)
            xi = solve_potential(w).potential
            if exterior_derivative(xi) != w.restrict(box.shrink()):
                solved = False
                break
        checks.append(Check(f"H{q}_solver_on_kernel_basis", solved))
    return checks
