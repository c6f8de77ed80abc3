r"""
Chains, boundaries and the Stokes pairing
=========================================

A q-cell ``[a : e_l1, ..., e_lq]`` is a base point with q unit directions.
Chains are finite ring-linear combinations of cells. Pairing a form with a
cell reads off one coefficient, and the boundary map is set up so that
pairing ``Dw`` with a chain equals pairing ``w`` with its boundary.
"""
from latticedec import ZZ, Zmod, make_form
from latticedec.chains import Chain, boundary, cell, pair, stokes_verify

#%%
# The boundary of a unit square, base point (3, 5). Faces shifted along
# e_l carry sign (-1)^(i-1) where l is the i-th direction.
square = Chain.of(ZZ, cell((3, 5), (1, 2)))
for c, r in boundary(square).terms:
    print(f"{r:+d} [{c.base} : {c.dirs}]")

#%%
# Boundaries of boundaries cancel.
cube = Chain.of(ZZ, cell((1, 1, 1), (1, 2, 3)))
print("boundary of boundary of a cube is zero:", boundary(boundary(cube)).is_zero())

#%%
# Pairing a 0-form with a point chain evaluates it.
f = make_form(ZZ, (2, 2), 0, {(): [[1, 2], [4, 8]]})
print("f(2, 1) =", pair(f, Chain.of(ZZ, cell((2, 1)))))

#%%
# Stokes on the edge from (1, 1) to (2, 1): both sides equal f(2,1) - f(1,1).
rep = stokes_verify(f, Chain.of(ZZ, cell((1, 1), (1,))))
print(rep)

#%%
# The same over Z/5 with a chain of several cells.
ring = Zmod(5)
w = make_form(ring, (3, 3), 1, {(1,): [[1, 2, 3], [4, 0, 1], [2, 2, 2]], (2,): [[0, 1, 4], [3, 3, 3], [1, 0, 2]]})
chain = Chain.from_terms(ring, 2, 2, [(cell((1, 1), (1, 2)), 2), (cell((2, 2), (1, 2)), 3)])
print(stokes_verify(w, chain))
