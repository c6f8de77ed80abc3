r"""
Recovering potentials of closed forms
=====================================

A q-form with vanishing derivative is the derivative of a (q-1)-form. The
solver builds that potential by summing along the last axis and recursing
on the base one dimension down. The answer is exact over any ring, and
``D(potential)`` reproduces the input on the shrunken box.
"""
import numpy as np

from latticedec import QQ, ZZ, exterior_derivative, form_from_function, make_form
from latticedec.errors import NotClosedError
from latticedec.poincare import check_closed, homotopy_K, pathsum_scalar_potential, solve_potential

#%%
# The worked example n2 dx1 + n1 dx2 on a 4x4 box.
w = form_from_function(ZZ, (4, 4), 1, {1: lambda n1, n2: n2, 2: lambda n1, n2: n1})
print("closed:", check_closed(w))
res = solve_potential(w)
print(res.potential[()])
print("D(potential) matches on", res.guarantee_box.extents, ":",
      exterior_derivative(res.potential) == w.restrict(res.guarantee_box))

#%%
# The path-sum formula walks from (1, 1) along axis 1 then axis 2. For this
# form it gives the same potential n1 n2 - 1.
print(pathsum_scalar_potential(w)[()])

#%%
# The homotopy operator alone. On dx_t it returns t - 1.
dt = form_from_function(ZZ, (2, 5), 1, {2: lambda n, t: 1})
print(homotopy_K(dt)[()])

#%%
# A closed 2-form in three dimensions over the rationals, made as D of a
# random 1-form, and its recovered potential.
rng = np.random.default_rng(1)
eta = make_form(QQ, (4, 4, 4), 1, {I: rng.integers(-3, 4, (4, 4, 4)) for I in [(1,), (2,), (3,)]})
w2 = exterior_derivative(eta)
xi = solve_potential(w2).potential
print("recovered:", exterior_derivative(xi) == w2.restrict(w2.box.shrink()))

#%%
# Forms that are not closed are rejected with the first offending point.
try:
    solve_potential(form_from_function(ZZ, (4, 4), 1, {1: lambda n1, n2: n1 * n2}))
except NotClosedError as exc:
    print("rejected:", exc)
