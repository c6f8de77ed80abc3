r"""
Forms on a lattice box and the exterior derivative
==================================================

A discrete q-form on a box of lattice points stores one grid of ring values
per strictly increasing multi-index ``I``. The exterior derivative is built
from forward differences, so each application loses one layer of points in
every direction.
"""
import numpy as np

from latticedec import ZZ, Zmod, exterior_derivative, form_from_function, make_form, partial, wedge

#%%
# A 0-form on a 2x2 grid. Points are 1-based, so ``f[()][0, 0]`` is the value
# at (1, 1).
f = make_form(ZZ, (2, 2), 0, {(): [[1, 2], [4, 8]]})
print(f[()])

#%%
# Forward differences along each axis. The result lives on the 1x1 grid.
print("d1 f =", partial(f[()], 1).tolist())
print("d2 f =", partial(f[()], 2).tolist())

df = exterior_derivative(f)
print("Df on box", df.box.extents, "components", {I: a.tolist() for I, a in df.components.items()})

#%%
# The rotation form n2 dx1 has derivative -dx1 ^ dx2 everywhere.
w = form_from_function(ZZ, (3, 3), 1, {1: lambda n1, n2: n2})
print(exterior_derivative(w)[(1, 2)])

#%%
# Applying D twice gives zero, over any ring. Here over Z/7 on a 4x4x4 box.
rng = np.random.default_rng(0)
comps = {(1,): rng.integers(0, 7, (4, 4, 4)), (2,): rng.integers(0, 7, (4, 4, 4)), (3,): rng.integers(0, 7, (4, 4, 4))}
w7 = make_form(Zmod(7), (4, 4, 4), 1, comps)
print("D D w is zero:", exterior_derivative(exterior_derivative(w7)).is_zero())

#%%
# The wedge product multiplies pointwise and sorts the indices with a sign.
dx1 = form_from_function(ZZ, (2, 2), 1, {1: lambda *_: 1})
dx2 = form_from_function(ZZ, (2, 2), 1, {2: lambda *_: 1})
print("dx2 ^ dx1 =", wedge(dx2, dx1)[(1, 2)].tolist())
