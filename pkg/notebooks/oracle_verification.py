r"""
Checking the library against exact linear algebra
=================================================

For small boxes every operator can be written out as a sparse rational
matrix and analysed by Gauss-Jordan elimination. This gives an independent
certificate that closed forms are exact and that the solver finds their
potentials.
"""
from latticedec.oracle import cohomology_report, kernel_basis, matrix_of_D, verify_box

#%%
# D_1 on a segment of three points.
m = matrix_of_D((3,), 1)
print([[int(x) for x in row] for row in m.to_dense()])
print("kernel:", [[int(x) for x in v] for v in kernel_basis(m)])

#%%
# Closed versus exact q-forms on a 3x3x3 box, compared on the shrunken box.
for q in range(4):
    print(cohomology_report((3, 3, 3), q))

#%%
# The full suite: matrices agree with the operators on random inputs, D D = 0
# and boundary boundary = 0 as matrices, closed 0-forms are constant and each
# closed q-form is solved.
for check in verify_box((3, 3, 3), samples=5):
    print(("ok  " if check.passed else "FAIL"), check.name, check.detail)
