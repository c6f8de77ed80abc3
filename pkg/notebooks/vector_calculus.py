r"""
Gradient, curl and divergence in three dimensions
=================================================

In three dimensions a vector field stands for a 1-form or a 2-form. Under
that encoding grad, curl and div are the exterior derivative, and the
potential solver recovers scalar and vector potentials.
"""
from latticedec import QQ, form_from_function
from latticedec.errors import NotClosedError
from latticedec.vec3 import VectorField3, curl, div, grad, scalar_potential3, vector_potential3

#%%
# curl of (0, 0, n1 n2) is (n1, -n2, 0).
b = VectorField3.from_functions(QQ, (4, 4, 4), lambda *_: 0, lambda *_: 0, lambda x, y, z: x * y)
c = curl(b)
print("curl along axes:", [str(v) for v in c.a1[:, 0, 0]], [str(v) for v in c.a2[0, :, 0]])
print("div curl b is zero:", div(c).is_zero())

#%%
# grad of n1 + n2 is the constant field (1, 1, 0), and its curl vanishes.
f = form_from_function(QQ, (4, 4, 4), 0, lambda x, y, z: x + y)
g = grad(f)
print(g.a1[0, 0, 0], g.a2[0, 0, 0], g.a3[0, 0, 0], "curl grad f is zero:", curl(g).is_zero())

#%%
# The field (n2, n1, 0) has a scalar potential.
a = VectorField3.from_functions(QQ, (4, 4, 4), lambda x, y, z: y, lambda x, y, z: x, lambda *_: 0)
phi = scalar_potential3(a)
print("grad phi = a:", grad(phi) == a.restrict(phi.box.shrink()))

#%%
# A constant field along z has a vector potential; check by substitution.
a = VectorField3.from_functions(QQ, (4, 4, 4), lambda *_: 0, lambda *_: 0, lambda *_: 5)
B = vector_potential3(a)
print("curl B = a:", curl(B) == a.restrict(B.box.shrink()))

#%%
# A source field has nonzero divergence, so it is not a curl.
try:
    vector_potential3(VectorField3.from_functions(QQ, (4, 4, 4), lambda x, y, z: x, lambda *_: 0, lambda *_: 0))
except NotClosedError as exc:
    print("rejected:", exc)
