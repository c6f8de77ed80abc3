"""Commutative rings with unit used as coefficient rings.

Four concrete rings are provided:

* :class:`IntegerRing` -- arbitrary precision Python ``int``.
* :class:`RationalRing` -- :class:`fractions.Fraction` in lowest terms.
* :class:`ModularRing` -- residues ``0 <= x < m`` (``m`` may be composite).
* :class:`FloatRing` -- ``float`` with tolerance-based equality.

Every ring works on scalars and on numpy arrays. Exact rings use ``object``
arrays so values never overflow; the float ring uses ``float64``.

Note:
    Float equality ``|a - b| <= tol`` is not transitive. Use it for quick
    numerics only; every exactness claim should be checked over an exact ring.
"""

from __future__ import annotations

import math
import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import ConfigurationError, FormatError, RingMismatchError

KINDS = ("integer", "rational", "modular", "float")

_INT_RE = re.compile(r"[+-]?\d+")
_RAT_RE = re.compile(r"[+-]?\d+(/\d+)?")
_to_fraction = np.frompyfunc(Fraction, 1, 1)


@dataclass(frozen=True)
class RingSpec:
    """Declarative description of a ring, as stored in JSON documents."""

    kind: str
    modulus: int | None = None
    tolerance: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown ring kind {self.kind!r}")
        if self.kind == "modular":
            if (
                not isinstance(self.modulus, numbers.Integral)
                or isinstance(self.modulus, bool)
                or self.modulus < 2
            ):
                raise ConfigurationError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        elif self.modulus is not None:
            raise ConfigurationError(f"modulus given for {self.kind} ring")
        if self.kind == "float":
            tol = 0.0 if self.tolerance is None else self.tolerance
            if not isinstance(tol, numbers.Real) or not tol >= 0:
                raise ConfigurationError(f"tolerance must be >= 0, got {self.tolerance!r}")
        elif self.tolerance is not None:
            raise ConfigurationError(f"tolerance given for {self.kind} ring")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind == "modular":
            out["modulus"] = int(self.modulus)
        if self.kind == "float":
            out["tolerance"] = float(self.tolerance or 0.0)
        return out

    @classmethod
    def from_json(cls, obj) -> "RingSpec":
        if isinstance(obj, str):
            return cls.parse(obj)
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FormatError(f"ring spec must be an object with a 'kind', got {obj!r}")
        unknown = set(obj) - {"kind", "modulus", "tolerance"}
        if unknown:
            raise FormatError(f"unknown ring spec keys {sorted(unknown)}")
        return cls(obj["kind"], obj.get("modulus"), obj.get("tolerance"))

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse the short command-line form: ``integer``, ``rational``,
        ``modular:7`` or ``float:1e-9``."""
        kind, _, arg = text.partition(":")
        try:
            if kind == "modular":
                return cls(kind, modulus=int(arg))
            if kind == "float":
                return cls(kind, tolerance=float(arg) if arg else 0.0)
        except ValueError as exc:
            raise ConfigurationError(f"bad ring spec {text!r}") from exc
        if arg:
            raise ConfigurationError(f"bad ring spec {text!r}")
        return cls(kind)


class Ring:
    """Base class. Subclasses supply element coercion and formatting."""

    dtype: Any = object
    spec: RingSpec

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"{type(self).__name__}({self.spec})"

    # scalar interface
    def element(self, x):
        """Return ``x`` as an element of this ring or raise RingMismatchError."""
        raise NotImplementedError

    def coerce(self, x):
        """Like :meth:`element` but maps integers into the ring where natural
        (reduction mod ``m``, ``int`` to ``Fraction``)."""
        return self.element(x)

    def add(self, a, b):
        return self._reduce(a + b)

    def sub(self, a, b):
        return self._reduce(a - b)

    def neg(self, a):
        return self._reduce(-a)

    def mul(self, a, b):
        return self._reduce(a * b)

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def _reduce(self, x):
        return x

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        raise NotImplementedError

    # array interface
    def asarray(self, values) -> np.ndarray:
        """Coerce an array-like into a fresh array of ring elements."""
        src = np.asarray(values, dtype=object)
        out = np.empty(src.shape, dtype=self.dtype)
        flat_in = src.reshape(-1)
        flat_out = out.reshape(-1)
        for k in range(flat_in.size):
            flat_out[k] = self.coerce(flat_in[k])
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=self.dtype)
        out.fill(self.zero)
        return out

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Bring the result of raw numpy arithmetic back into canonical form."""
        return arr

    def array_is_zero(self, arr: np.ndarray) -> bool:
        return bool(np.all(arr == 0))

    def arrays_equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.all(a == b))


class IntegerRing(Ring):
    def __init__(self):
        self.spec = RingSpec("integer")

    def element(self, x):
        if isinstance(x, bool) or not isinstance(x, numbers.Integral):
            raise RingMismatchError(f"{x!r} is not an element of the integer ring")
        return int(x)

    def parse(self, text: str):
        if not isinstance(text, str) or not _INT_RE.fullmatch(text):
            raise FormatError(f"cannot parse {text!r} as an integer")
        return int(text)


class RationalRing(Ring):
    def __init__(self):
        self.spec = RingSpec("rational")

    def element(self, x):
        if isinstance(x, bool):
            raise RingMismatchError(f"{x!r} is not a rational number")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, numbers.Integral):
            return Fraction(int(x))
        raise RingMismatchError(f"{x!r} is not an element of the rational ring")

    def parse(self, text: str):
        if not isinstance(text, str) or not _RAT_RE.fullmatch(text):
            raise FormatError(f"cannot parse {text!r} as a rational 'p/q'")
        try:
            return Fraction(text)
        except ZeroDivisionError as exc:
            raise FormatError(f"zero denominator in {text!r}") from exc

    def format(self, x) -> str:
        return str(Fraction(x))

    def normalize(self, arr):
        # int - int stays int inside object arrays; keep every entry a Fraction
        return np.asarray(_to_fraction(np.asarray(arr, dtype=object)), dtype=object)


class ModularRing(Ring):
    def __init__(self, modulus: int):
        self.spec = RingSpec("modular", modulus=modulus)
        self.modulus = int(modulus)

    def element(self, x):
        if isinstance(x, bool) or not isinstance(x, numbers.Integral):
            raise RingMismatchError(f"{x!r} is not an element of Z/{self.modulus}")
        x = int(x)
        if not 0 <= x < self.modulus:
            raise RingMismatchError(f"{x} is not a residue in [0, {self.modulus})")
        return x

    def coerce(self, x) -> int:
        """Reduce an arbitrary integer modulo ``m``."""
        if isinstance(x, bool) or not isinstance(x, numbers.Integral):
            raise RingMismatchError(f"{x!r} is not an integer")
        return int(x) % self.modulus

    def _reduce(self, x):
        return x % self.modulus

    def parse(self, text: str):
        if not isinstance(text, str) or not _INT_RE.fullmatch(text):
            raise FormatError(f"cannot parse {text!r} as a residue")
        value = int(text)
        if not 0 <= value < self.modulus:
            raise FormatError(f"residue {value} outside [0, {self.modulus})")
        return value

    def normalize(self, arr):
        return arr % self.modulus

    def array_is_zero(self, arr):
        return bool(np.all(arr % self.modulus == 0))

    def arrays_equal(self, a, b):
        return a.shape == b.shape and bool(np.all((a - b) % self.modulus == 0))


class FloatRing(Ring):
    dtype = np.float64

    def __init__(self, tolerance: float = 1e-9):
        self.spec = RingSpec("float", tolerance=float(tolerance))
        self.tolerance = float(tolerance)

    def element(self, x):
        if isinstance(x, (bool, Fraction)) or not isinstance(x, numbers.Real):
            raise RingMismatchError(f"{x!r} is not an element of the float ring")
        return float(x)

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.tolerance

    def parse(self, text: str):
        try:
            value = float(text)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"cannot parse {text!r} as a float") from exc
        if not math.isfinite(value):
            raise FormatError(f"non-finite float {text!r}")
        return value

    def format(self, x) -> str:
        return repr(float(x))

    def asarray(self, values):
        src = np.asarray(values, dtype=object)
        for v in src.reshape(-1):
            self.coerce(v)
        return src.astype(np.float64)

    def array_is_zero(self, arr):
        return bool(np.all(np.abs(arr) <= self.tolerance))

    def arrays_equal(self, a, b):
        return a.shape == b.shape and bool(np.all(np.abs(a - b) <= self.tolerance))


ZZ = IntegerRing()
QQ = RationalRing()


def Zmod(m: int) -> ModularRing:
    return ModularRing(m)


def ring_from_spec(spec: RingSpec | str | dict) -> Ring:
    """Build a ring from a :class:`RingSpec`, its JSON dict or its short string."""
    if isinstance(spec, str):
        spec = RingSpec.parse(spec)
    elif isinstance(spec, dict):
        spec = RingSpec.from_json(spec)
    if spec.kind == "integer":
        return ZZ
    if spec.kind == "rational":
        return QQ
    if spec.kind == "modular":
        return ModularRing(spec.modulus)
    return FloatRing(spec.tolerance or 0.0)


def ring_eval(ring: Ring, op: str, a, b=None):
    """Apply one ring operation after checking both operands belong to ``ring``.

    ``op`` is one of ``add``, ``sub``, ``neg``, ``mul``, ``eq``.
    """
    a = ring.element(a)
    if op == "neg":
        if b is not None:
            raise TypeError("neg takes a single operand")
        return ring.neg(a)
    if op not in ("add", "sub", "mul", "eq"):
        raise ValueError(f"unknown ring operation {op!r}")
    if b is None:
        raise TypeError(f"{op} needs two operands")
    b = ring.element(b)
    return getattr(ring, op)(a, b)
