"""Exact arithmetic in finite fields F_q and F_{q^m} = F_q[t]/(f).

Two layers live here.  ``Scalar`` is the user-facing value type: an
immutable coefficient vector in the power basis of ``t``.  Bulk work
(structure-constant tensors, elimination) runs on numpy ``int64`` arrays of
*encoded* elements, where the coefficient vector ``(c0, ..., c_{m-1})`` is
stored as the integer ``c0 + c1*q + ... + c_{m-1}*q^(m-1)``.  Zero encodes
as 0 and one as 1 for every field, so prime-field arrays are just residues.

The canonical ordering of scalars is lexicographic on ``(c0, c1, ...)``;
``FieldSpec.elements()`` yields them in that order and every deterministic
search (roots of unity, witnesses) walks it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

# float64 tensordot is exact while every partial sum stays below 2**53
_FLOAT_EXACT = 2**53
MAX_CHAR = 2**16
MAX_EXT_DEGREE = 4
MAX_EXT_ORDER = 2**16


class FieldError(ValueError):
    """Invalid field data or an arithmetic precondition violation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomial helpers over F_q (coefficient lists, low degree first) -------

def _poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    a = _poly_trim([c % q for c in a])
    b = _poly_trim([c % q for c in b])
    if not b:
        raise FieldError("polynomial division by zero")
    inv_lead = pow(b[-1], q - 2, q)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % q
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % q
        a = _poly_trim(a)
    return a


def is_irreducible(modulus: Sequence[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _poly_trim([c % q for c in modulus])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(q), repeat=d):
            if not _poly_mod(f, list(low) + [1], q):
                return False
    return True


def default_modulus(q: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``m`` in lexicographic order."""
    if m == 1:
        return (0, 1)
    for low in itertools.product(range(q), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, q):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{q}")


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_{q^m}.

    Parameters
    ----------
    char : int
        The prime q.
    degree : int
        Extension degree m (1 for a prime field).
    modulus : tuple of int, optional
        Coefficients ``(c0, ..., cm)`` of a monic irreducible f.  Defaults to
        the lexicographically smallest one.
    """

    char: int
    degree: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        q, m = self.char, self.degree
        if not isinstance(q, (int, np.integer)) or not is_prime(int(q)):
            raise FieldError(f"characteristic {q!r} is not prime")
        if q >= MAX_CHAR:
            raise FieldError(f"characteristic {q} exceeds supported bound {MAX_CHAR}")
        if m < 1 or m > MAX_EXT_DEGREE:
            raise FieldError(f"extension degree must be in 1..{MAX_EXT_DEGREE}, got {m}")
        if q**m > MAX_EXT_ORDER and m > 1:
            raise FieldError(f"extension field of order {q**m} is too large")
        mod = tuple(int(c) % q for c in self.modulus) if self.modulus else default_modulus(q, m)
        if m == 1:
            mod = (0, 1)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}, got {list(mod)}")
        if not is_irreducible(mod, q):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{q}")
        object.__setattr__(self, "char", int(q))
        object.__setattr__(self, "modulus", mod)

    # -- basic facts ----------------------------------------------------------
    @property
    def order(self) -> int:
        return self.char**self.degree

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    def __str__(self) -> str:
        if self.degree == 1:
            return f"F_{self.char}"
        return f"F_{self.char}^{self.degree}"

    # -- scalars --------------------------------------------------------------
    def scalar(self, value) -> "Scalar":
        """Coerce an int (prime-field residue or embedded integer), a
        coefficient list, or a Scalar into a Scalar of this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"scalar from {value.field} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            coeffs = [int(value) % self.char] + [0] * (self.degree - 1)
            return Scalar(self, tuple(coeffs))
        coeffs = [int(c) for c in value]
        if len(coeffs) != self.degree:
            raise FieldError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return Scalar(self, tuple(c % self.char for c in coeffs))

    def decode(self, code: int) -> "Scalar":
        code = int(code)
        if not 0 <= code < self.order:
            raise FieldError(f"code {code} out of range for {self}")
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(code % self.char)
            code //= self.char
        return Scalar(self, tuple(coeffs))

    def encode(self, value) -> int:
        return self.scalar(value).code

    @property
    def zero(self) -> "Scalar":
        return self.decode(0)

    @property
    def one(self) -> "Scalar":
        return self.decode(1)

    def elements(self) -> Iterator["Scalar"]:
        """All field elements in canonical (lexicographic) order."""
        for coeffs in itertools.product(range(self.char), repeat=self.degree):
            yield Scalar(self, tuple(coeffs))

    def generator_t(self) -> "Scalar":
        if self.degree == 1:
            raise FieldError("prime field has no adjoined generator")
        return self.scalar([0, 1] + [0] * (self.degree - 2))

    # -- JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {"char": self.char, "degree": self.degree, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        if not isinstance(obj, dict) or "char" not in obj:
            raise FieldError("field JSON must be an object with key 'char'")
        degree = int(obj.get("degree", 1))
        modulus = tuple(obj.get("modulus") or ())
        return cls(int(obj["char"]), degree, modulus if degree > 1 else ())

    def scalar_to_json(self, code: int):
        if self.degree == 1:
            return int(code)
        return list(self.decode(code).coeffs)

    def scalar_from_json(self, obj) -> int:
        if isinstance(obj, bool):
            raise FieldError(f"invalid scalar {obj!r}")
        if isinstance(obj, int):
            if self.degree != 1 and not 0 <= obj < self.char:
                raise FieldError("bare integer scalars are only allowed in prime fields")
            return self.encode(obj)
        if isinstance(obj, list):
            return self.encode(obj)
        raise FieldError(f"invalid scalar {obj!r}")

    # -- vectorised arithmetic on encoded arrays --------------------------------
    @cached_property
    def _mu(self) -> np.ndarray:
        """t^a * t^b = sum_c mu[a, b, c] t^c."""
        q, m = self.char, self.degree
        mu = np.zeros((m, m, m), dtype=np.int64)
        for a in range(m):
            for b in range(m):
                mono = [0] * (a + b) + [1]
                red = _poly_mod(mono, self.modulus, q)
                for c, v in enumerate(red):
                    mu[a, b, c] = v
        return mu

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.char ** np.arange(self.degree, dtype=np.int64)

    @cached_property
    def _inv_table(self) -> np.ndarray:
        allv = np.arange(self.order, dtype=np.int64)
        if self.degree == 1:
            table = np.array([pow(int(v), self.char - 2, self.char) for v in allv], dtype=np.int64)
        else:
            table = self.power(allv, self.order - 2)
        table[0] = 0
        return table

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.char

    def undigits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.char) @ self._powers

    def asarray(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.order):
            raise FieldError(f"array entries out of range for {self}")
        return a

    def add(self, a, b) -> np.ndarray:
        if self.degree == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.char
        return self.undigits(self.digits(a) + self.digits(b))

    def neg(self, a) -> np.ndarray:
        if self.degree == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.char
        return self.undigits(-self.digits(a))

    def sub(self, a, b) -> np.ndarray:
        if self.degree == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.char
        return self.undigits(self.digits(a) - self.digits(b))

    def mul(self, a, b) -> np.ndarray:
        """Elementwise product with numpy broadcasting."""
        if self.degree == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.char
        da, db = np.broadcast_arrays(self.digits(a), self.digits(b))
        prod = np.einsum("...i,...j,ijk->...k", da, db, self._mu)
        return self.undigits(prod)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"inverse of zero in {self}")
        return self._inv_table[a]

    def power(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            return self.power(self.inv(a), -k)
        result = np.ones_like(a)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def tensordot(self, a, b, axes=1) -> np.ndarray:
        """``numpy.tensordot`` with field arithmetic."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if isinstance(axes, int):
            axes_a = list(range(a.ndim - axes, a.ndim))
            axes_b = list(range(axes))
        else:
            axes_a, axes_b = (list(np.atleast_1d(x)) for x in axes)
        k = int(np.prod([a.shape[i] for i in axes_a])) if axes_a else 1
        q = self.char
        if self.degree == 1:
            if k * (q - 1) ** 2 >= _FLOAT_EXACT:
                raise FieldError("contraction too long for exact float accumulation")
            out = np.tensordot(a.astype(np.float64), b.astype(np.float64), axes=(axes_a, axes_b))
            return np.rint(out).astype(np.int64) % q
        m = self.degree
        if k * m * (q - 1) ** 2 >= _FLOAT_EXACT:
            raise FieldError("contraction too long for exact float accumulation")
        da = self.digits(a).astype(np.float64)
        db = self.digits(b).astype(np.float64)
        raw = np.tensordot(da, db, axes=(axes_a, axes_b))
        raw = np.rint(raw).astype(np.int64) % q
        # raw axes: (free_a..., i, free_b..., j); fold (i, j) through mu
        free_a = a.ndim - len(axes_a)
        raw = np.moveaxis(raw, free_a, -2)
        prod = np.tensordot(raw, self._mu, axes=([raw.ndim - 2, raw.ndim - 1], [0, 1]))
        return self.undigits(prod)

    def matmul(self, a, b) -> np.ndarray:
        return self.tensordot(a, b, axes=1)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)


@dataclass(frozen=True)
class Scalar:
    """An element of ``field``; ``coeffs`` in the power basis of t."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.field.degree:
            raise FieldError("coefficient count does not match field degree")
        if any(not 0 <= c < self.field.char for c in self.coeffs):
            raise FieldError("coefficients must be reduced modulo the characteristic")

    @property
    def code(self) -> int:
        return int(sum(c * self.field.char**i for i, c in enumerate(self.coeffs)))

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"mismatched fields {self.field} and {other.field}")
            return other
        return self.field.scalar(other)

    def _wrap(self, code) -> "Scalar":
        return self.field.decode(int(code))

    def __add__(self, other):
        return self._wrap(self.field.add(self.code, self._coerce(other).code))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.code, self._coerce(other).code))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.code, self._coerce(other).code))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.field}")
        return self._wrap(self.field.inv(self.code))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return self._wrap(self.field.power(self.code, k))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sort_key(self) -> tuple[int, ...]:
        return self.coeffs

    def __int__(self) -> int:
        if self.field.degree != 1:
            raise TypeError("only prime-field scalars convert to int")
        return self.coeffs[0]

    def to_json(self):
        return self.field.scalar_to_json(self.code)

    def __repr__(self) -> str:
        if self.field.degree == 1:
            return f"{self.coeffs[0]} (mod {self.field.char})"
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Binary arithmetic by name: ``add``, ``sub``, ``mul`` or ``div``."""
    if a.field != b.field:
        raise FieldError(f"mismatched fields {a.field} and {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def multiplicative_order(a: Scalar) -> int:
    if a.is_zero():
        raise FieldError("zero has no multiplicative order")
    x, k = a, 1
    while x != a.field.one:
        x, k = x * a, k + 1
    return k


def primitive_root_of_unity(field: FieldSpec, p: int) -> Scalar:
    """Smallest (canonical order) element of multiplicative order exactly p."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == field.char:
        raise FieldError(f"no p-th root in characteristic p other than 1 (p = {p})")
    if (field.order - 1) % p:
        raise FieldError(
            f"{field} has no primitive {p}-th root of unity: need {p} | {field.char}^{field.degree} - 1"
        )
    one = field.one
    for z in field.elements():
        if z.is_zero() or z == one:
            continue
        if z**p == one:
            return z
    raise AssertionError("unreachable: root of unity guaranteed by the congruence")


def primitive_roots_of_unity(field: FieldSpec, p: int) -> list[Scalar]:
    """All primitive p-th roots, as zeta^e for e = 1..p-1 (zeta canonical)."""
    zeta = primitive_root_of_unity(field, p)
    return [zeta**e for e in range(1, p)]


def smallest_prime_1_mod(p: int) -> int:
    q = p + 1
    while not (is_prime(q) and q % p == 1):
        q += 1
    return q
