"""Command-line front end.

Exit codes: 0 success, 1 property does not hold (not closed, Stokes
mismatch, failed verification), 2 malformed input, 3 domain error. Errors
print one line ``latticedec: <category>: <reason>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import chains, forms, oracle, poincare, vec3
from .chains import Chain
from .errors import (
    ConfigurationError,
    DomainError,
    LatticeDECError,
    NotClosedError,
    ResourceError,
    RingMismatchError,
    ValidationError,
)
from .forms import GridForm
from .ring import RingSpec
from .serialize import from_json, to_json
from .vec3 import VectorField3

EXIT_OK, EXIT_PROPERTY, EXIT_MALFORMED, EXIT_DOMAIN = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable or wrongly typed input file."""


def _read(path: str):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return from_json(obj)


def _load(args, path: str | None, kind: type, flag: str):
    if path is None:
        raise InputError(f"missing required input {flag}")
    value = _read(path)
    if not isinstance(value, kind):
        raise InputError(f"{path}: expected a {kind.__name__}, got a {type(value).__name__}")
    if args.ring is not None and value.ring.spec != args.ring:
        raise RingMismatchError(f"{path}: ring {value.ring.spec.to_json()} != --ring {args.ring.to_json()}")
    return value


def _single_input(args) -> str | None:
    if not args.input:
        return None
    if len(args.input) > 1:
        raise InputError(f"{args.command} takes one -i input")
    return args.input[0]


def _form(args) -> GridForm:
    path = args.form or _single_input(args)
    return _load(args, path, GridForm, "-i/--input")


def _field(args) -> VectorField3:
    return _load(args, _single_input(args), VectorField3, "-i/--input")


def _chain(args) -> Chain:
    path = args.chain or _single_input(args)
    return _load(args, path, Chain, "-c/--chain")


def cmd_derive(args):
    return to_json(forms.exterior_derivative(_form(args))), EXIT_OK


def cmd_boundary(args):
    return to_json(chains.boundary(_chain(args))), EXIT_OK


def cmd_pair(args):
    form = _load(args, args.form, GridForm, "-f/--form")
    chain = _load(args, args.chain, Chain, "-c/--chain")
    return {"value": form.ring.format(chains.pair(form, chain))}, EXIT_OK


def cmd_wedge(args):
    paths = ([args.form] if args.form else []) + (args.input or [])
    if len(paths) != 2:
        raise InputError("wedge needs exactly two forms (-i LEFT -i RIGHT)")
    left, right = (_load(args, p, GridForm, "-i/--input") for p in paths)
    return to_json(forms.wedge(left, right)), EXIT_OK


def cmd_check_closed(args):
    closed = poincare.check_closed(_form(args))
    return {"closed": closed}, EXIT_OK if closed else EXIT_PROPERTY


def cmd_solve(args):
    form = _form(args)
    if args.method == "pathsum":
        return to_json(poincare.pathsum_scalar_potential(form)), EXIT_OK
    return to_json(poincare.solve_potential(form).potential), EXIT_OK


def cmd_pathsum(args):
    return to_json(poincare.pathsum_scalar_potential(_form(args))), EXIT_OK


def cmd_stokes(args):
    form = _load(args, args.form, GridForm, "-f/--form")
    chain = _load(args, args.chain, Chain, "-c/--chain")
    rep = chains.stokes_verify(form, chain)
    out = {"lhs": form.ring.format(rep.lhs), "rhs": form.ring.format(rep.rhs), "equal": rep.equal}
    return out, EXIT_OK if rep.equal else EXIT_PROPERTY


def cmd_vec3_grad(args):
    return to_json(vec3.grad(_form(args))), EXIT_OK


def cmd_vec3_curl(args):
    return to_json(vec3.curl(_field(args))), EXIT_OK


def cmd_vec3_div(args):
    return to_json(vec3.div(_field(args))), EXIT_OK


def cmd_vec3_scalar_potential(args):
    return to_json(vec3.scalar_potential3(_field(args))), EXIT_OK


def cmd_vec3_vector_potential(args):
    return to_json(vec3.vector_potential3(_field(args))), EXIT_OK


def cmd_verify(args):
    if args.extents is None:
        raise InputError("verify needs --extents, e.g. --extents 3,3,3")
    try:
        extents = [int(x) for x in args.extents.split(",")]
    except ValueError as exc:
        raise InputError(f"bad --extents {args.extents!r}") from exc
    checks = oracle.verify_box(extents, samples=args.samples, seed=args.seed)
    passed = all(c.passed for c in checks)
    report = {
        "extents": extents,
        "passed": passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    }
    return report, EXIT_OK if passed else EXIT_PROPERTY


COMMANDS = {
    "derive": (cmd_derive, "exterior derivative of a form (-i)"),
    "boundary": (cmd_boundary, "boundary of a chain (-i or -c)"),
    "pair": (cmd_pair, "integral pairing of a form (-f) with a chain (-c)"),
    "wedge": (cmd_wedge, "wedge product of two forms (-i LEFT -i RIGHT)"),
    "check-closed": (cmd_check_closed, "exit 0 if the form (-i) is closed, 1 if not"),
    "solve": (cmd_solve, "potential of a closed form (-i)"),
    "pathsum": (cmd_pathsum, "path-sum scalar potential of a closed 1-form (-i)"),
    "stokes": (cmd_stokes, "compare B(Dw, c) with B(w, D'c) for -f and -c"),
    "vec3-grad": (cmd_vec3_grad, "gradient of a 0-form on a 3-d box"),
    "vec3-curl": (cmd_vec3_curl, "curl of a vector field"),
    "vec3-div": (cmd_vec3_div, "divergence of a vector field"),
    "vec3-scalar-potential": (cmd_vec3_scalar_potential, "b with grad b = a"),
    "vec3-vector-potential": (cmd_vec3_vector_potential, "b with curl b = a"),
    "verify": (cmd_verify, "run the rational oracle suite on a box (--extents)"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _ring_arg(text: str) -> RingSpec:
    try:
        return RingSpec.parse(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="latticedec", description="Discrete exterior calculus on lattice boxes."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("-i", "--input", action="append", help="input JSON file")
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("-f", "--form", help="form JSON file")
        p.add_argument("-c", "--chain", help="chain JSON file")
        p.add_argument("--ring", type=_ring_arg, help="require inputs over this ring, e.g. modular:7")
        if name == "solve":
            p.add_argument("--method", choices=("homotopy", "pathsum"), default="homotopy")
        if name == "verify":
            p.add_argument("--extents", help="comma separated box extents")
            p.add_argument("--samples", type=int, default=10)
            p.add_argument("--seed", type=int, default=0)
    return parser


def _fail(code: int, category: str, message: str) -> int:
    line = " ".join(str(message).split())
    print(f"latticedec: {category}: {line}", file=sys.stderr)
    return code


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        return _fail(EXIT_MALFORMED, "usage", exc)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED
    handler = COMMANDS[args.command][0]
    try:
        payload, code = handler(args)
    except NotClosedError as exc:
        return _fail(EXIT_PROPERTY, "not-closed", exc)
    except (DomainError, ResourceError) as exc:
        return _fail(EXIT_DOMAIN, "domain", exc)
    except (InputError, ValidationError, RingMismatchError, ConfigurationError) as exc:
        return _fail(EXIT_MALFORMED, "malformed", exc)
    except LatticeDECError as exc:
        return _fail(EXIT_MALFORMED, "error", exc)
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
