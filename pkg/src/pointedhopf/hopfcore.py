"""Structure-constant Hopf algebras and the axiom verification engine.

Conventions (all tensors hold encoded field elements):

* ``mult[i, j, k]``: e_i e_j = sum_k mult[i, j, k] e_k
* ``comult[i, j, k]``: Delta(e_i) = sum_{j,k} comult[i, j, k] e_j (x) e_k
* ``antipode[i, j]``: S(e_j) = sum_i antipode[i, j] e_i  (S acts on columns)

Elements are length-n vectors, Tensor2 values are ``(n, n)`` arrays whose
C-order flattening matches ``linalg``'s ``i * n + j`` convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from . import linalg
from .exactfield import FieldError, FieldSpec


class HopfError(ValueError):
    pass


class AntipodeError(HopfError):
    pass


class SchemaError(ValueError):
    """Malformed algebra JSON; ``where`` names the offending field."""

    def __init__(self, message: str, where: str = "", line: int | None = None, col: int | None = None):
        self.where = where
        self.line = line
        self.col = col
        loc = f" at line {line}, column {col}" if line is not None else ""
        fld = f" [{where}]" if where else ""
        super().__init__(f"{message}{fld}{loc}")


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    field: FieldSpec
    dim: int
    basis_labels: tuple[str, ...]
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray | None = None
    # hints from constructors (family name, generator coordinates, known
    # grouplikes); never trusted without re-checking
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = self.dim
        shapes = {
            "mult": (self.mult, (n, n, n)),
            "unit": (self.unit, (n,)),
            "comult": (self.comult, (n, n, n)),
            "counit": (self.counit, (n,)),
        }
        if self.antipode is not None:
            shapes["antipode"] = (self.antipode, (n, n))
        for name, (arr, shape) in shapes.items():
            if np.shape(arr) != shape:
                raise HopfError(f"{name} has shape {np.shape(arr)}, expected {shape}")
            arr = self.field.asarray(arr)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if len(self.basis_labels) != n:
            raise HopfError("basis_labels length does not match dim")
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))

    # -- convenience -----------------------------------------------------------
    @property
    def one(self) -> np.ndarray:
        return np.array(self.unit)

    @property
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, label: str) -> np.ndarray:
        return self.basis_vector(self.basis_labels.index(label))

    def generator(self, name: str) -> np.ndarray:
        gens = self.meta.get("generators", {})
        if name not in gens:
            raise KeyError(f"algebra has no recorded generator {name!r}")
        return np.array(gens[name], dtype=np.int64)

    def combo(self, *terms) -> np.ndarray:
        """Linear combination from (coefficient, vector) pairs; ints are
        embedded in the prime field."""
        F = self.field
        out = None
        for c, v in terms:
            cv = F.mul(F.encode(c), np.asarray(v, dtype=np.int64))
            out = cv if out is None else F.add(out, cv)
        return out

    def same_structure(self, other: "HopfAlgebra") -> bool:
        if self.field != other.field or self.dim != other.dim:
            return False
        pairs = [(self.mult, other.mult), (self.unit, other.unit), (self.comult, other.comult),
                 (self.counit, other.counit)]
        if (self.antipode is None) != (other.antipode is None):
            return False
        if self.antipode is not None:
            pairs.append((self.antipode, other.antipode))
        return all(np.array_equal(a, b) for a, b in pairs)

    def without_antipode(self) -> "HopfAlgebra":
        return replace(self, antipode=None)

    def with_antipode(self, S) -> "HopfAlgebra":
        return replace(self, antipode=np.asarray(S, dtype=np.int64))


def _check_vec(H: HopfAlgebra, v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (H.dim,):
        raise HopfError(f"element of length {v.shape} does not belong to a {H.dim}-dim algebra")
    return v


def _check_t2(H: HopfAlgebra, t) -> np.ndarray:
    t = np.asarray(t, dtype=np.int64)
    if t.shape != (H.dim, H.dim):
        raise HopfError(f"tensor of shape {t.shape} does not belong to a {H.dim}-dim algebra")
    return t


# -- the algebra and coalgebra maps --------------------------------------------

def multiply(H: HopfAlgebra, a, b) -> np.ndarray:
    a, b = _check_vec(H, a), _check_vec(H, b)
    F = H.field
    left = F.tensordot(a, H.mult, axes=([0], [0]))  # (j, k)
    return F.tensordot(b, left, axes=([0], [0]))


def comultiply(H: HopfAlgebra, a) -> np.ndarray:
    a = _check_vec(H, a)
    return H.field.tensordot(a, H.comult, axes=([0], [0]))


def counit(H: HopfAlgebra, a) -> int:
    a = _check_vec(H, a)
    return int(H.field.tensordot(a, H.counit, axes=([0], [0])))


def apply_antipode(H: HopfAlgebra, a) -> np.ndarray:
    if H.antipode is None:
        raise HopfError("algebra has no antipode")
    return H.field.matmul(H.antipode, _check_vec(H, a))


def tensor(H: HopfAlgebra, a, b) -> np.ndarray:
    """a (x) b as a Tensor2."""
    a, b = _check_vec(H, a), _check_vec(H, b)
    return H.field.mul(a[:, None], b[None, :])


def tensor2_multiply(H: HopfAlgebra, s, t) -> np.ndarray:
    """Product in H (x) H: (a (x) b)(c (x) d) = ac (x) bd."""
    s, t = _check_t2(H, s), _check_t2(H, t)
    return t2_mul(H.field, H.mult, s, t)


def t2_mul(F: FieldSpec, M: np.ndarray, s, t) -> np.ndarray:
    """H (x) H product given only the multiplication tensor ``M``."""
    X = F.tensordot(s, M, axes=([0], [0]))  # (b, c, x)
    Y = F.tensordot(X, t, axes=([1], [0]))  # (b, x, d)
    return F.tensordot(Y, M, axes=([0, 2], [0, 1]))  # (x, y)


def power(H: HopfAlgebra, a, k: int) -> np.ndarray:
    a = _check_vec(H, a)
    if k < 0:
        raise HopfError("negative powers are not defined")
    result = H.one
    base = a
    while k:
        if k & 1:
            result = multiply(H, result, base)
        base = multiply(H, base, base)
        k >>= 1
    return result


def tensor2_power(H: HopfAlgebra, t, k: int) -> np.ndarray:
    t = _check_t2(H, t)
    if k < 0:
        raise HopfError("negative powers are not defined")
    result = tensor(H, H.one, H.one)
    for _ in range(k):
        result = tensor2_multiply(H, result, t)
    return result


def commutator(H: HopfAlgebra, a, b) -> np.ndarray:
    return H.field.sub(multiply(H, a, b), multiply(H, b, a))


# -- axiom verification ----------------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    passed: bool
    counterexample: tuple | None = None
    note: str = ""

    def to_json(self) -> dict:
        details: dict[str, Any] = {}
        if self.counterexample is not None:
            details["counterexample"] = list(self.counterexample)
        if self.note:
            details["note"] = self.note
        return {"check": self.name, "pass": self.passed, "details": details}


@dataclass
class VerificationReport:
    results: list[AxiomResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {"check": "verify_axioms", "pass": self.ok,
                "details": {"axioms": [r.to_json() for r in self.results]}}


def _first_bad(diff: np.ndarray, lead: int) -> tuple | None:
    """First (lexicographic) index over the leading ``lead`` axes where
    ``diff`` has a nonzero entry."""
    if lead < diff.ndim:
        bad = diff.reshape(diff.shape[:lead] + (-1,)).any(axis=-1)
    else:
        bad = diff != 0
    hits = np.argwhere(bad)
    if hits.size == 0:
        return None
    return tuple(int(i) for i in hits[0])


def verify_axioms(H: HopfAlgebra) -> VerificationReport:
    """Exhaustive check of every Hopf axiom on basis tuples."""
    F, n = H.field, H.dim
    M, C, u, eps = H.mult, H.comult, H.unit, H.counit
    eye = np.eye(n, dtype=np.int64)
    out: list[AxiomResult] = []

    # (e_i e_j) e_k vs e_i (e_j e_k)
    lhs = F.tensordot(M, M, axes=([2], [0]))  # (i, j, k, :)
    rhs = np.moveaxis(F.tensordot(M, M, axes=([2], [1])), 2, 0)  # (j,k,i,:) -> (i,j,k,:)
    out.append(AxiomResult("associativity", *_ce(lhs != rhs, 3)))

    # 1 e_i = e_i = e_i 1
    left = F.tensordot(u, M, axes=([0], [0]))  # (i, k)
    right = F.tensordot(u, M, axes=([0], [1]))  # (i, k)
    bad = (left != eye) | (right != eye)
    out.append(AxiomResult("unit", *_ce(bad, 1)))

    # (Delta (x) id) Delta vs (id (x) Delta) Delta
    lhs = np.moveaxis(F.tensordot(C, C, axes=([1], [0])), 1, 3)  # (i,k,a,b) -> (i,a,b,k)
    rhs = F.tensordot(C, C, axes=([2], [0]))  # (i, j, a, b)
    out.append(AxiomResult("coassociativity", *_ce(lhs != rhs, 1)))

    # (eps (x) id) Delta = id = (id (x) eps) Delta
    left = F.tensordot(C, eps, axes=([1], [0]))  # (i, k)
    right = F.tensordot(C, eps, axes=([2], [0]))  # (i, j)
    out.append(AxiomResult("counit", *_ce((left != eye) | (right != eye), 1)))

    out.append(_check_bialgebra(H))

    if H.antipode is None:
        out.append(AxiomResult("antipode", False, None, "antipode not set"))
    else:
        S = H.antipode
        target = F.mul(eps[:, None], u[None, :])  # eps(e_i) 1
        A1 = F.tensordot(C, S, axes=([1], [1]))  # (i, k, l): C[i,j,k] S[l,j]
        m_left = F.tensordot(A1, M, axes=([2, 1], [0, 1]))  # S(e_(1)) e_(2)
        A2 = F.tensordot(C, S, axes=([2], [1]))  # (i, j, l)
        m_right = F.tensordot(A2, M, axes=([1, 2], [0, 1]))  # e_(1) S(e_(2))
        bad = (m_left != target) | (m_right != target)
        out.append(AxiomResult("antipode", *_ce(bad, 1)))
    return VerificationReport(out)


def _ce(bad: np.ndarray, lead: int) -> tuple[bool, tuple | None]:
    first = _first_bad(bad.astype(np.int64), lead)
    return first is None, first


def _check_bialgebra(H: HopfAlgebra) -> AxiomResult:
    """Delta and eps are unital algebra maps."""
    F, n = H.field, H.dim
    M, C, u, eps = H.mult, H.comult, H.unit, H.counit
    if not np.array_equal(comultiply(H, u), tensor(H, u, u)):
        return AxiomResult("bialgebra", False, ("unit",), "Delta(1) != 1 (x) 1")
    if counit(H, u) != 1:
        return AxiomResult("bialgebra", False, ("unit",), "eps(1) != 1")
    delta_prod = F.tensordot(M, C, axes=([2], [0]))  # Delta(e_i e_j): (i, j, a, b)
    for i in range(n):
        Q = F.tensordot(C[i], M, axes=([1], [0]))  # (c, f, b)
        Z = F.tensordot(C, Q, axes=([2], [1]))  # (j, e, c, b)
        R = np.swapaxes(F.tensordot(Z, M, axes=([2, 1], [0, 1])), 1, 2)  # (j, a, b)
        bad = _first_bad((R != delta_prod[i]).astype(np.int64), 1)
        if bad is not None:
            return AxiomResult("bialgebra", False, (i,) + bad, "Delta(e_i e_j) != Delta(e_i) Delta(e_j)")
    eps_prod = F.tensordot(M, eps, axes=([2], [0]))
    bad = _first_bad((eps_prod != F.mul(eps[:, None], eps[None, :])).astype(np.int64), 2)
    if bad is not None:
        return AxiomResult("bialgebra", False, bad, "eps(e_i e_j) != eps(e_i) eps(e_j)")
    return AxiomResult("bialgebra", True)


# -- antipode by convolution inversion -------------------------------------------------

def compute_antipode(H: HopfAlgebra, check: bool = True) -> np.ndarray:
    """Solve m(S (x) id)Delta = u eps for the matrix of S.

    Unknowns are the n^2 entries S[l, j]; the equation for basis element i,
    output coordinate r reads sum_{j,k,l} C[i,j,k] S[l,j] M[l,k,r] = eps_i u_r.
    """
    F, n = H.field, H.dim
    K = F.tensordot(H.comult, H.mult, axes=([2], [1]))  # (i, j, l, r)
    A = np.transpose(K, (0, 3, 2, 1)).reshape(n * n, n * n)  # rows (i,r), cols (l,j)
    b = F.mul(H.counit[:, None], H.unit[None, :]).reshape(n * n)
    R, rk, pivots = linalg.rref(F, np.hstack([A, b[:, None]]))
    if n * n in pivots:
        raise AntipodeError("identity map not convolution-invertible (not a Hopf algebra)")
    if rk < n * n:
        raise AntipodeError(f"antipode not unique: solution space of dimension {n * n - rk}")
    S = R[: n * n, n * n].reshape(n, n).copy()
    if check:
        report = verify_axioms(H.with_antipode(S))
        if not report["antipode"].passed:
            raise AntipodeError("left convolution inverse is not a two-sided antipode")
    return S


# -- duality and basis changes ---------------------------------------------------

def dual(H: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis."""
    mult = np.transpose(H.comult, (1, 2, 0))  # dual_mult[i][j][k] = comult[k][i][j]
    comult = np.transpose(H.mult, (2, 0, 1))  # dual_comult[i][j][k] = mult[j][k][i]
    labels = tuple(_dual_label(s) for s in H.basis_labels)
    S = None if H.antipode is None else H.antipode.T.copy()
    meta = {"dual_of": H.meta.get("family", "")}
    return HopfAlgebra(H.field, H.dim, labels, mult.copy(), np.array(H.counit),
                       comult.copy(), np.array(H.unit), S, meta)


def _dual_label(s: str) -> str:
    if s.startswith("d(") and s.endswith(")"):
        return s[2:-1]
    return f"d({s})"


def change_basis(H: HopfAlgebra, P) -> HopfAlgebra:
    """Re-express H in the basis f_j = sum_i P[i, j] e_i (P invertible)."""
    F, n = H.field, H.dim
    P = np.asarray(P, dtype=np.int64)
    Pinv = linalg.inverse(F, P)
    # mult'[a,b,c] = sum P[i,a] P[j,b] mult[i,j,k] Pinv[c,k]
    t = F.tensordot(P, H.mult, axes=([0], [0]))  # (a, j, k)
    t = F.tensordot(P, t, axes=([0], [1]))  # (b, a, k)
    t = F.tensordot(t, Pinv, axes=([2], [1]))  # (b, a, c)
    mult = np.swapaxes(t, 0, 1)
    # comult'[a,b,c] = sum P[i,a] comult[i,j,k] Pinv[b,j] Pinv[c,k]
    t = F.tensordot(P, H.comult, axes=([0], [0]))  # (a, j, k)
    t = F.tensordot(t, Pinv, axes=([1], [1]))  # (a, k, b)
    t = F.tensordot(t, Pinv, axes=([1], [1]))  # (a, b, c)
    comult = t
    unit = F.matmul(Pinv, H.unit)
    counit = F.tensordot(H.counit, P, axes=([0], [0]))
    S = None
    if H.antipode is not None:
        S = F.matmul(Pinv, F.matmul(H.antipode, P))
    meta = _transform_meta(H.meta, lambda v: F.matmul(Pinv, np.asarray(v, dtype=np.int64)))
    labels = tuple(f"f{j}" for j in range(n))
    if _is_permutation(P):
        perm = [int(np.flatnonzero(P[:, j])[0]) for j in range(n)]
        labels = tuple(H.basis_labels[i] for i in perm)
    return HopfAlgebra(F, n, labels, mult, unit, comult, counit, S, meta)


def _is_permutation(P: np.ndarray) -> bool:
    return bool(np.all((P == 0) | (P == 1)) and np.all(P.sum(0) == 1) and np.all(P.sum(1) == 1))


def permute_basis(H: HopfAlgebra, perm) -> HopfAlgebra:
    """New basis vector j is old basis vector perm[j]."""
    n = H.dim
    P = np.zeros((n, n), dtype=np.int64)
    for j, i in enumerate(perm):
        P[i, j] = 1
    return change_basis(H, P)


def _transform_meta(meta: dict, f) -> dict:
    new = {k: v for k, v in meta.items() if k not in ("generators", "grouplikes")}
    if "generators" in meta:
        new["generators"] = {k: [int(c) for c in f(v)] for k, v in meta["generators"].items()}
    if "grouplikes" in meta:
        new["grouplikes"] = [[int(c) for c in f(v)] for v in meta["grouplikes"]]
    return new


# -- JSON ---------------------------------------------------------------------------

def to_json(H: HopfAlgebra) -> dict:
    F = H.field

    def conv(arr):
        arr = np.asarray(arr)
        if F.degree == 1:
            return arr.tolist()
        return F.digits(arr).tolist()

    obj = {
        "field": F.to_json(),
        "dim": H.dim,
        "basis_labels": list(H.basis_labels),
        "mult": conv(H.mult),
        "unit": conv(H.unit),
        "comult": conv(H.comult),
        "counit": conv(H.counit),
        "antipode": None if H.antipode is None else conv(H.antipode),
    }
    if H.meta:
        obj["meta"] = _jsonable(H.meta)
    return obj


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dumps(H: HopfAlgebra) -> str:
    return json.dumps(to_json(H), separators=(",", ":"), sort_keys=False)


def _parse_tensor(F: FieldSpec, obj, shape: tuple[int, ...], where: str) -> np.ndarray:
    if not shape:
        try:
            return np.int64(F.scalar_from_json(obj))
        except (FieldError, TypeError, ValueError) as exc:
            raise SchemaError(str(exc), where) from None
    if not isinstance(obj, list) or len(obj) != shape[0]:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise SchemaError(f"expected list of length {shape[0]}, got {got}", where)
    return np.array([_parse_tensor(F, x, shape[1:], f"{where}[{i}]") for i, x in enumerate(obj)],
                    dtype=np.int64).reshape(shape)


def from_json(obj: dict) -> HopfAlgebra:
    """Parse the algebra schema.  Structural problems raise SchemaError;
    axioms are *not* checked here (callers run verify_axioms)."""
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON value must be an object")
    for key in ("field", "dim", "basis_labels", "mult", "unit", "comult", "counit"):
        if key not in obj:
            raise SchemaError("missing required key", key)
    try:
        F = FieldSpec.from_json(obj["field"])
    except (FieldError, TypeError, ValueError) as exc:
        raise SchemaError(str(exc), "field") from None
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("dim must be a positive integer", "dim")
    labels = obj["basis_labels"]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
        raise SchemaError(f"expected {n} string labels", "basis_labels")
    mult = _parse_tensor(F, obj["mult"], (n, n, n), "mult")
    unit = _parse_tensor(F, obj["unit"], (n,), "unit")
    comult = _parse_tensor(F, obj["comult"], (n, n, n), "comult")
    counit_ = _parse_tensor(F, obj["counit"], (n,), "counit")
    S = obj.get("antipode")
    S = None if S is None else _parse_tensor(F, S, (n, n), "antipode")
    meta = obj.get("meta") or {}
    if not isinstance(meta, dict):
        raise SchemaError("meta must be an object", "meta")
    return HopfAlgebra(F, n, tuple(labels), mult, unit, comult, counit_, S, meta)


def loads(text: str) -> HopfAlgebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc.msg}", line=exc.lineno, col=exc.colno) from None
    return from_json(obj)
