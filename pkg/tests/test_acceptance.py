"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py`` for just the summary lines. All
comparisons are exact ring equality.
"""

import json
import os
import subprocess
import sys
import tempfile

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from conftest import EXACT_RINGS, random_chain, random_extents, random_form  # noqa: E402
from latticedec import QQ, ZZ, Box, exterior_derivative, form_from_function  # noqa: E402
from latticedec.chains import Chain, boundary, cell, stokes_verify  # noqa: E402
from latticedec.errors import NotClosedError  # noqa: E402
from latticedec.oracle import (  # noqa: E402
    RowSpace,
    closed_forms_basis,
    cohomology_report,
    form_to_vector,
    image_space,
    matrix_of_D,
    restrict_vector,
    vector_to_form,
)
from latticedec.poincare import (  # noqa: E402
    homotopy_K,
    pathsum_scalar_potential,
    pullback_cylinder,
    restrict_base,
    solve_potential,
)
from latticedec.serialize import dumps, loads  # noqa: E402
from latticedec.vec3 import (  # noqa: E402
    curl,
    div,
    from_one_form,
    from_two_form,
    grad,
    scalar_potential3,
    vector_potential3,
)

SEED = 20240501


def _rng(k):
    return np.random.default_rng(SEED + k)


def _ring_cycle(n):
    return [EXACT_RINGS[i % len(EXACT_RINGS)] for i in range(n)]


# -- criterion bodies: each returns (passed, detail) -------------------------


def criterion_1():
    rng = _rng(1)
    combos = [(d, q) for d in range(2, 6) for q in range(0, d - 1)]
    n = fails = 0
    for ring in EXACT_RINGS:
        for d, q in combos:
            for _ in range(7):
                w = random_form(rng, ring, random_extents(rng, d, lo=3, hi=6, max_points=1200), q)
                fails += not exterior_derivative(exterior_derivative(w)).is_zero()
                n += 1
    return fails == 0 and n >= 200, f"D(D(w)) = 0 on {n} random forms, {fails} failures"


def _literal_expansions():
    ok = True
    for d in (2, 3, 4):
        a = (3, 5, 2, 4)[:d]
        dirs = tuple(range(1, d + 1))
        want = []
        for m, l in enumerate(dirs):
            rest = dirs[:m] + dirs[m + 1:]
            up = tuple(x + (k == l - 1) for k, x in enumerate(a))
            want += [(cell(up, rest), (-1) ** m), (cell(a, rest), -((-1) ** m))]
        ok &= boundary(Chain.of(ZZ, cell(a, dirs))) == Chain.from_terms(ZZ, d, d - 1, want)
        ok &= boundary(boundary(Chain.of(ZZ, cell(a, dirs)))).is_zero() if d >= 2 else True
    # 2 [a : e1] has boundary 2 [a + e1] - 2 [a]
    ok &= boundary(Chain.of(ZZ, cell((2, 2), (1,)), 2)) == Chain.from_terms(
        ZZ, 2, 0, [(cell((3, 2)), 2), (cell((2, 2)), -2)]
    )
    return ok


def criterion_2():
    rng = _rng(2)
    combos = [(d, q) for d in range(2, 6) for q in range(2, d + 1)]
    n = fails = 0
    for ring in EXACT_RINGS:
        for d, q in combos:
            for _ in range(7):
                c = random_chain(rng, ring, d, q, n_cells=int(rng.integers(1, 6)), extents=(6,) * d)
                fails += not boundary(boundary(c)).is_zero()
                n += 1
    literal = _literal_expansions()
    return fails == 0 and n >= 200 and literal, f"{n} random chains, {fails} failures; literal expansions {'ok' if literal else 'WRONG'}"


def criterion_3():
    rng = _rng(3)
    n = fails = 0
    for ring in _ring_cycle(510):
        d = int(rng.integers(1, 6))
        q = int(rng.integers(1, d + 1))
        ext = random_extents(rng, d, lo=2, hi=4, max_points=300)
        w = random_form(rng, ring, ext, q - 1)
        inner = tuple(e - 1 for e in ext)
        c = random_chain(rng, ring, d, q, n_cells=1, extents=inner)
        fails += not stokes_verify(w, c).equal
        n += 1
    return fails == 0 and n >= 500, f"B(Dw, A) = B(w, D'A) on {n} pairs, {fails} failures"


def _homotopy_holds(w):
    inner = w.box.shrink()
    n, q = w.dimension, w.degree
    lhs = w - pullback_cylinder(restrict_base(w), w.box.extents[-1]) if q < n else w
    rhs = exterior_derivative(homotopy_K(w))
    if q < n:
        rhs = rhs + homotopy_K(exterior_derivative(w))
    return lhs.restrict(inner) == rhs.restrict(inner)


def criterion_4():
    rng = _rng(4)
    n = fails = 0
    for ring in _ring_cycle(120):
        dim = int(rng.integers(2, 6))
        q = int(rng.integers(1, dim + 1))
        w = random_form(rng, ring, random_extents(rng, dim, lo=2, hi=5, max_points=600), q)
        fails += not _homotopy_holds(w)
        n += 1
    return fails == 0 and n >= 100, f"(Id - pi* s*) w = (DK + KD) w on {n} cylinder forms, {fails} failures"


def criterion_5():
    rng = _rng(5)
    n = fails = 0
    for ring in _ring_cycle(120):
        d = int(rng.integers(1, 6))
        q = int(rng.integers(1, d + 1))
        eta = random_form(rng, ring, random_extents(rng, d, lo=3, hi=5, max_points=600), q - 1)
        w = exterior_derivative(eta)
        res = solve_potential(w)
        fails += not (res.guarantee_box == w.box.shrink() and exterior_derivative(res.potential) == w.restrict(res.guarantee_box))
        n += 1
    return fails == 0 and n >= 100, f"D(solve(D eta)) = D eta on shrink(box) for {n} eta, {fails} failures"


def criterion_6():
    box = Box((3, 3, 3))
    inner = box.shrink()
    details, ok = [], True
    for q in (1, 2, 3):
        rep = cohomology_report(box, q)
        solved = all(
            exterior_derivative(solve_potential(w).potential) == w.restrict(inner)
            for w in (vector_to_form(box, q, v) for v in closed_forms_basis(box, q))
        )
        ok &= rep.vanishes and solved
        details.append(f"q={q}: closed {rep.closed_dim} exact {rep.exact_dim} solver {'ok' if solved else 'FAILED'}")
    # constants: closed 0-forms, restricted to the points D actually reads,
    # span exactly the all-ones grid
    seen = set(inner.points()) | {
        tuple(x + (k == i) for k, x in enumerate(a)) for a in inner.points() for i in range(3)
    }
    kernel = closed_forms_basis(box, 0)
    on_seen = RowSpace([[v[box.offset(p)] for p in sorted(seen)] for v in kernel])
    constants = len(on_seen) == 1 and on_seen.contains([1] * len(seen))
    ok &= constants and cohomology_report(box, 0).closed_dim == 1
    details.append(f"H0 = constants on the {len(seen)} points D reads: {constants}")
    return ok, "; ".join(details)


def criterion_7():
    rng = _rng(7)
    n = fails = 0
    for ring in _ring_cycle(60):
        d = int(rng.integers(1, 6))
        ext = random_extents(rng, d, lo=2, hi=5, max_points=600)
        w = exterior_derivative(random_form(rng, ring, tuple(e + 1 for e in ext), 0))
        diff = pathsum_scalar_potential(w) - solve_potential(w).potential
        fails += not ring.array_is_zero(diff[()] - diff[()].flat[0])
        n += 1
    return fails == 0 and n >= 50, f"pathsum - solver is a constant grid on {n} systems, {fails} failures"


def _oracle_agrees(box, q, w, solver, check):
    """Return (agrees, accepted). The solver must succeed exactly when the
    oracle finds w closed; on success the result is verified by substitution
    and the restriction of w must lie in Im D_q."""
    vec = form_to_vector(w)
    closed = q == box.dimension or not any(matrix_of_D(box, q + 1).apply(vec))
    try:
        out = solver()
    except NotClosedError:
        return not closed, False
    exact = image_space(matrix_of_D(box, q)).contains(restrict_vector(box, q, vec))
    return closed and exact and check(out), True


def criterion_8():
    rng = _rng(8)
    box = Box((3, 3, 3))
    inner = box.shrink()
    ok = True
    # identities on random rational data
    for _ in range(10):
        ok &= curl(grad(random_form(rng, QQ, (4, 4, 4), 0))).is_zero()
        ok &= div(curl(from_one_form(random_form(rng, QQ, (4, 4, 4), 1)))).is_zero()
    # compatible fields (oracle kernel bases) and perturbed, generally incompatible ones
    ones = [vector_to_form(box, 1, v) for v in closed_forms_basis(box, 1)]
    twos = [vector_to_form(box, 2, v) for v in closed_forms_basis(box, 2)]
    accepted = rejected = 0
    perturbed1 = [w + random_form(rng, QQ, box.extents, 1) for w in ones[:10]]
    for w in ones + perturbed1:
        a = from_one_form(w)
        good, took = _oracle_agrees(box, 1, w, lambda: scalar_potential3(a), lambda b: grad(b) == a.restrict(inner))
        ok &= good
        accepted += took
        rejected += not took
    perturbed2 = [w + random_form(rng, QQ, box.extents, 2) for w in twos[:10]]
    for w in twos + perturbed2:
        a = from_two_form(w)
        good, took = _oracle_agrees(box, 2, w, lambda: vector_potential3(a), lambda b: curl(b) == a.restrict(inner))
        ok &= good
        accepted += took
        rejected += not took
    # hand-picked incompatible fields: d(n1 n2 dx1) != 0 and div(n1, 0, 0) = 1
    bad_grad = from_one_form(form_from_function(QQ, box.extents, 1, {1: lambda x, y, z: x * y}))
    bad_curl = from_one_form(form_from_function(QQ, box.extents, 1, {1: lambda x, y, z: x}))
    for fn, arg in ((scalar_potential3, bad_grad), (vector_potential3, bad_curl)):
        try:
            fn(arg)
            ok = False
        except NotClosedError:
            rejected += 1
    detail = (
        f"curl grad = 0, div curl = 0; {accepted} fields accepted and {rejected} rejected, "
        f"every verdict matching the oracle"
    )
    return ok and accepted >= len(ones) + len(twos) and rejected >= 2, detail


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "latticedec", *argv], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def criterion_9():
    results = []
    with tempfile.TemporaryDirectory() as tmp:
        def put(name, value):
            path = os.path.join(tmp, name)
            with open(path, "w") as fh:
                fh.write(value if isinstance(value, str) else dumps(value))
            return path

        w = form_from_function(ZZ, (4, 4), 1, {1: lambda a, b: b, 2: lambda a, b: a})
        bad = form_from_function(ZZ, (4, 4), 1, {1: lambda a, b: a * b})
        f = form_from_function(ZZ, (4, 4), 0, lambda a, b: a * b - 1)
        w3 = form_from_function(ZZ, (4, 4, 4), 1, {1: lambda a, b, c: b, 2: lambda a, b, c: a})
        f3 = form_from_function(ZZ, (4, 4, 4), 0, lambda a, b, c: a * b - 1)
        edge = Chain.of(ZZ, cell((1, 1), (1,)))
        paths = {
            "w": put("w.json", w), "bad": put("bad.json", bad), "f": put("f.json", f),
            "a3": put("a3.json", from_one_form(w3)), "f3": put("f3.json", f3),
            "src": put("src.json", from_one_form(form_from_function(ZZ, (4, 4, 4), 1, {1: lambda a, b, c: a}))),
            "edge": put("edge.json", edge), "far": put("far.json", Chain.of(ZZ, cell((9, 9)))),
            "junk": put("junk.json", "{"),
        }
        potential = f

        # byte-exact schema round trip for every document kind
        for path in (paths["w"], paths["edge"], paths["a3"]):
            text = open(path).read()
            results.append(("round trip " + os.path.basename(path), dumps(loads(text)) == text))

        def expect(name, argv, code, check=None):
            got, out, err = _cli(*argv)
            good = got == code
            if code != 0 and code != 1:
                good &= out == "" and err.startswith("latticedec: ") and err.count("\n") == 1
            if check is not None and got == code:
                good &= bool(check(out))
            results.append((name, good))

        expect("derive", ["derive", "-i", paths["w"]], 0, lambda o: loads(o) == exterior_derivative(w))
        expect("boundary", ["boundary", "-c", paths["edge"]], 0, lambda o: loads(o) == boundary(edge))
        expect("pair", ["pair", "-f", paths["w"], "-c", paths["edge"]], 0, lambda o: json.loads(o) == {"value": "1"})
        expect("wedge", ["wedge", "-i", paths["f"], "-i", paths["w"]], 0, lambda o: loads(o).degree == 1)
        expect("check-closed", ["check-closed", "-i", paths["w"]], 0)
        expect("check-closed (not closed)", ["check-closed", "-i", paths["bad"]], 1)
        expect("solve", ["solve", "-i", paths["w"]], 0, lambda o: loads(o) == potential)
        expect("solve --method pathsum", ["solve", "--method", "pathsum", "-i", paths["w"]], 0, lambda o: loads(o) == potential)
        expect("pathsum", ["pathsum", "-i", paths["w"]], 0, lambda o: loads(o) == potential)
        expect("solve (not closed)", ["solve", "-i", paths["bad"]], 1)
        expect("stokes", ["stokes", "-f", paths["f"], "-c", paths["edge"]], 0, lambda o: json.loads(o)["equal"])
        expect("vec3-grad", ["vec3-grad", "-i", paths["f3"]], 0, lambda o: loads(o) == from_one_form(w3).restrict(Box((3, 3, 3))))
        expect("vec3-curl", ["vec3-curl", "-i", paths["a3"]], 0, lambda o: loads(o).is_zero())
        expect("vec3-div", ["vec3-div", "-i", paths["a3"]], 0)
        expect("vec3-scalar-potential", ["vec3-scalar-potential", "-i", paths["a3"]], 0, lambda o: loads(o) == f3)
        expect(
            "vec3-vector-potential", ["vec3-vector-potential", "-i", paths["a3"]], 0,
            lambda o: curl(loads(o)) == from_one_form(w3).restrict(Box((3, 3, 3))),
        )
        expect("vec3-vector-potential (not divergence free)", ["vec3-vector-potential", "-i", paths["src"]], 1)
        expect("verify", ["verify", "--extents", "3,3"], 0, lambda o: json.loads(o)["passed"])
        expect("malformed JSON", ["derive", "-i", paths["junk"]], 2)
        expect("ring mismatch", ["derive", "-i", paths["w"], "--ring", "rational"], 2)
        expect("unknown verb", ["integrate"], 2)
        expect("pathsum on a 0-form", ["solve", "--method", "pathsum", "-i", paths["f"]], 3)
        expect("chain outside box", ["pair", "-f", paths["w"], "-c", paths["far"]], 3)
    failed = [name for name, good in results if not good]
    return not failed, f"{len(results)} scripted checks" + (f", failed: {failed}" if failed else ", all as documented")


CRITERIA = [
    (1, "cochain complex D D = 0", criterion_1),
    (2, "chain complex boundary boundary = 0", criterion_2),
    (3, "Stokes pairing", criterion_3),
    (4, "homotopy identity", criterion_4),
    (5, "solver soundness", criterion_5),
    (6, "completeness on 3x3x3 over Q", criterion_6),
    (7, "path-sum cross-check", criterion_7),
    (8, "3-d vector calculus end to end", criterion_8),
    (9, "CLI conformance", criterion_9),
]


def _report(number, title, body):
    passed, detail = body()
    return passed, f"{'PASS' if passed else 'FAIL'} criterion {number} ({title}): {detail}"


@pytest.mark.parametrize("number, title, body", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, body, capsys):
    passed, line = _report(number, title, body)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [_report(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
