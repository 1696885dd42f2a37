"""Structure constants for every classified type, compiled from presentations.

Each family is a string rewriting system over a two-letter (one for the
cyclic group C_{p^2}) alphabet whose irreducible words are the monomials
``a^i b^j`` with exponents below p.  Rules, per family:

=============  =============================================  ==============
family         commutation rule                               power rules
=============  =============================================  ==============
group-cp2      --                                             g^{p^2} -> 1
group-cpxcp    hg -> gh                                       g^p, h^p -> 1
taft           xg -> omega^{-1} gx                            g^p -> 1, x^p -> 0
b1, b3         xg -> gx                                       g^p -> 1, x^p -> 0
b2             xg -> gx                                       g^p -> 1, x^p -> x
b4             xg -> gx - g^2 + g                             g^p -> 1, x^p -> x
a1..a4, a6..a8 yx -> xy                                       see _A_POWERS
a5             yx -> xy - y                                   x^p -> x, y^p -> 0
=============  =============================================  ==============

Termination: every rule either lowers total degree or keeps it and lowers
the number of (second letter, first letter) inversions; the g^2 and g terms
produced by the b4 rule carry no x at all.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import hopfcore
from .exactfield import FieldError, FieldSpec, Scalar, is_prime, primitive_root_of_unity, smallest_prime_1_mod
from .hopfcore import HopfAlgebra, HopfError

FAMILY_NAMES = (
    "group-cp2", "group-cpxcp", "taft",
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8",
    "b1", "b2", "b3", "b4",
)
CHAR_P_TYPES = tuple(n for n in FAMILY_NAMES if n != "taft")

# (x^p, y^p) targets for the A-types: "" means 0
_A_POWERS = {
    "a1": ("", ""), "a2": ("x", ""), "a3": ("y", ""), "a4": ("x", "y"),
    "a5": ("x", ""), "a6": ("", ""), "a7": ("", "x"), "a8": ("x", "y"),
}


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyId:
    """A classified type with its parameters; defaults are filled in."""

    name: str
    p: int
    field: FieldSpec | None = None
    omega: Scalar | None = None

    def __post_init__(self) -> None:
        name, p = self.name.lower(), self.p
        if name not in FAMILY_NAMES:
            raise FamilyError(f"unknown family {self.name!r}; expected one of {', '.join(FAMILY_NAMES)}")
        if not is_prime(p):
            raise FamilyError(f"p = {p} is not prime")
        object.__setattr__(self, "name", name)
        F = self.field
        if name == "taft":
            if F is None:
                F = FieldSpec(smallest_prime_1_mod(p))
            if F.char == p:
                raise FamilyError("Taft algebras need field characteristic different from p")
            try:
                omega = self.omega if self.omega is not None else primitive_root_of_unity(F, p)
            except FieldError as exc:
                raise FamilyError(str(exc)) from None
            omega = F.scalar(omega)
            if omega == F.one or omega**p != F.one:
                raise FamilyError(f"omega = {omega!r} is not a primitive {p}-th root of unity")
            object.__setattr__(self, "omega", omega)
        else:
            if self.omega is not None:
                raise FamilyError(f"omega only applies to taft, not {name}")
            if F is None:
                F = FieldSpec(p)
            if name[0] in "ab" and (F.char != p or F.degree != 1):
                raise FamilyError(f"type {name.upper()} is defined over F_{p}, got {F}")
        object.__setattr__(self, "field", F)

    def __str__(self) -> str:
        extra = f", omega={self.omega!r}" if self.omega is not None else ""
        return f"{self.name}(p={self.p}, {self.field}{extra})"

    @property
    def label(self) -> str:
        """Family name, with omega for Taft algebras (``taft[omega=2]``)."""
        if self.omega is None:
            return self.name
        w = self.omega.to_json()
        w = w if isinstance(w, int) else "t" + "".join(map(str, w))
        return f"{self.name}[omega={w}]"

    def to_json(self) -> dict:
        out = {"name": self.name, "p": self.p, "field": self.field.to_json()}
        if self.omega is not None:
            out["omega"] = self.omega.to_json()
        return out


# -- rewriting ----------------------------------------------------------------------

@dataclass
class RewriteSystem:
    """Linear string rewriting over a field; coefficients are encoded ints."""

    field: FieldSpec
    letters: str
    rules: list[tuple[str, dict[str, int]]]
    exponent_bound: int
    _cache: dict = field(default_factory=dict, repr=False)

    def _add(self, a: int, b: int) -> int:
        if self.field.degree == 1:
            return (a + b) % self.field.char
        return int(self.field.add(a, b))

    def _mul(self, a: int, b: int) -> int:
        if self.field.degree == 1:
            return a * b % self.field.char
        return int(self.field.mul(a, b))

    def redexes(self, word: str) -> list[tuple[int, int]]:
        """All (position, rule index) matches, sorted by position."""
        hits = []
        for r, (lhs, _) in enumerate(self.rules):
            start = word.find(lhs)
            while start != -1:
                hits.append((start, r))
                start = word.find(lhs, start + 1)
        hits.sort()
        return hits

    def _apply(self, word: str, pos: int, r: int) -> dict[str, int]:
        lhs, rhs = self.rules[r]
        return {word[:pos] + w + word[pos + len(lhs):]: c for w, c in rhs.items()}

    def normal_form(self, word: str) -> dict[str, int]:
        """Leftmost-first reduction, memoised per word."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        hits = self.redexes(word)
        if not hits:
            result = {word: 1}
        else:
            pos, r = hits[0]
            result: dict[str, int] = {}
            for w, c in self._apply(word, pos, r).items():
                for w2, c2 in self.normal_form(w).items():
                    result[w2] = self._add(result.get(w2, 0), self._mul(c, c2))
            result = {w: c for w, c in result.items() if c}
        self._cache[word] = result
        return result

    def reduce_randomly(self, word: str, rng: random.Random) -> dict[str, int]:
        """Reduce with a uniformly random redex at every step (no memo)."""
        work = {word: 1}
        while True:
            pending = [w for w in sorted(work) if self.redexes(w)]
            if not pending:
                return work
            w = rng.choice(pending)
            c = work.pop(w)
            pos, r = rng.choice(self.redexes(w))
            for w2, c2 in self._apply(w, pos, r).items():
                v = self._add(work.get(w2, 0), self._mul(c, c2))
                if v:
                    work[w2] = v
                else:
                    work.pop(w2, None)

    def basis_words(self) -> list[str]:
        a = self.letters[0]
        if len(self.letters) == 1:
            return [a * i for i in range(self.exponent_bound)]
        b = self.letters[1]
        return [a * i + b * j for i in range(self.exponent_bound) for j in range(self.exponent_bound)]


def _label(letters: str, word: str) -> str:
    return " ".join(f"{ch}^{word.count(ch)}" for ch in letters)


@dataclass
class _Presentation:
    system: RewriteSystem
    coproducts: dict[str, list[tuple[int, str, str]]]  # letter -> [(coef, left, right)]
    counits: dict[str, int]
    antipodes: dict[str, list[tuple[int, str]]] | None  # letter -> [(coef, word)]
    grouplikes: list[str]


def _presentation(name: str, p: int, F: FieldSpec, omega: Scalar | None) -> _Presentation:
    one, neg = 1, F.encode(-1)
    g_inv = "g" * (p - 1)
    if name == "group-cp2":
        sys_ = RewriteSystem(F, "g", [("g" * p * p, {"": one})], p * p)
        return _Presentation(sys_, {"g": [(one, "g", "g")]}, {"g": 1},
                             {"g": [(one, "g" * (p * p - 1))]}, ["g" * i for i in range(p * p)])
    if name == "group-cpxcp":
        rules = [("hg", {"gh": one}), ("g" * p, {"": one}), ("h" * p, {"": one})]
        sys_ = RewriteSystem(F, "gh", rules, p)
        return _Presentation(sys_, {"g": [(one, "g", "g")], "h": [(one, "h", "h")]},
                             {"g": 1, "h": 1},
                             {"g": [(one, g_inv)], "h": [(one, "h" * (p - 1))]},
                             sys_.basis_words())
    if name in ("taft", "b1", "b2", "b3", "b4"):
        if name == "taft":
            swap = {"gx": omega.inverse().code}
            xp: dict[str, int] = {}
        elif name == "b4":
            swap = {"gx": one, "gg": neg, "g": one}
            xp = {"x": one}
        else:
            swap = {"gx": one}
            xp = {"x": one} if name == "b2" else {}
        rules = [("xg", swap), ("g" * p, {"": one}), ("x" * p, xp)]
        sys_ = RewriteSystem(F, "gx", rules, p)
        if name in ("b1", "b2"):
            dx = [(one, "x", ""), (one, "", "x")]
            sx = [(neg, "x")]
        else:
            dx = [(one, "x", ""), (one, "g", "x")]
            sx = [(neg, g_inv + "x")]
        return _Presentation(sys_, {"g": [(one, "g", "g")], "x": dx}, {"g": 1, "x": 0},
                             {"g": [(one, g_inv)], "x": sx}, ["g" * i for i in range(p)])
    # connected types
    xp_t, yp_t = _A_POWERS[name]
    swap = {"xy": one, "y": neg} if name == "a5" else {"xy": one}
    rules = [("yx", swap),
             ("x" * p, {xp_t: one} if xp_t else {}),
             ("y" * p, {yp_t: one} if yp_t else {})]
    sys_ = RewriteSystem(F, "xy", rules, p)
    dy = [(one, "y", ""), (one, "", "y")]
    antipodes: dict | None = {"x": [(neg, "x")], "y": [(neg, "y")]}
    if name in ("a6", "a7", "a8"):
        for i, c in enumerate(divided_power_coefficients(p), start=1):
            dy.append((c.code, "x" * i, "x" * (p - i)))
        antipodes = None  # produced by convolution inversion
    return _Presentation(sys_, {"x": [(one, "x", ""), (one, "", "x")], "y": dy},
                         {"x": 0, "y": 0}, antipodes, [""])


def divided_power_coefficients(p: int) -> list[Scalar]:
    """(binom(p, i) / p) mod p for i = 1..p-1, by exact integer division."""
    if not is_prime(p):
        raise FamilyError(f"p = {p} is not prime")
    F = FieldSpec(p)
    out = []
    for i in range(1, p):
        b = comb(p, i)
        assert b % p == 0
        out.append(F.scalar(b // p))
    return out


@lru_cache(maxsize=None)
def _system(fid: FamilyId) -> RewriteSystem:
    return _presentation(fid.name, fid.p, fid.field, fid.omega).system


def rewrite_to_normal_form(fid: FamilyId, word) -> np.ndarray:
    """Coordinates of the product of ``word``'s letters in the monomial basis."""
    system = _system(fid)
    word = "".join(word)
    bad = set(word) - set(system.letters)
    if bad:
        raise FamilyError(f"letters {sorted(bad)} not in alphabet {system.letters!r}")
    return _vector(system, system.normal_form(word))


def _vector(system: RewriteSystem, combo: dict[str, int]) -> np.ndarray:
    index = {w: i for i, w in enumerate(system.basis_words())}
    v = np.zeros(len(index), dtype=np.int64)
    for w, c in combo.items():
        v[index[w]] = c
    return v


def build(fid: FamilyId, verify: bool = True) -> HopfAlgebra:
    """Compile ``fid``'s presentation into a HopfAlgebra."""
    return _build_cached(fid, verify)


@lru_cache(maxsize=None)
def _build_cached(fid: FamilyId, verify: bool) -> HopfAlgebra:
    return _construct(fid.name, fid.p, fid.field, fid.omega, verify=verify)


def taft_like(p: int, field: FieldSpec, omega) -> HopfAlgebra:
    """Taft presentation with an arbitrary omega, unvalidated.

    With omega = 1 the result is an algebra with an algebra map Delta on
    generators that is *not* a Hopf algebra; it exists for negative controls.
    """
    return _construct("taft", p, field, field.scalar(omega), verify=False, antipode=False)


def _construct(name: str, p: int, F: FieldSpec, omega, verify: bool, antipode: bool = True) -> HopfAlgebra:
    pres = _presentation(name, p, F, omega)
    system = pres.system
    words = system.basis_words()
    n = len(words)
    index = {w: i for i, w in enumerate(words)}

    def vec(combo: dict[str, int]) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for w, c in combo.items():
            for w2, c2 in system.normal_form(w).items():
                v[index[w2]] = int(F.add(v[index[w2]], F.mul(c, c2)))
        return v

    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            mult[i, j] = vec({wi + wj: 1})
    if any(system.redexes(w) for w in words) or len(set(words)) != n:
        raise HopfError("normal-form basis is not irreducible")

    unit = vec({"": 1})
    letter_delta = {}
    for ch, terms in pres.coproducts.items():
        t = np.zeros((n, n), dtype=np.int64)
        for c, left, right in terms:
            t = F.add(t, F.mul(c, F.mul(vec({left: 1})[:, None], vec({right: 1})[None, :])))
        letter_delta[ch] = t

    comult = np.zeros((n, n, n), dtype=np.int64)
    counit = np.zeros(n, dtype=np.int64)
    for i, w in enumerate(words):
        if not w:
            comult[i] = F.mul(unit[:, None], unit[None, :])
            counit[i] = 1
            continue
        prefix = index[w[:-1]]
        comult[i] = hopfcore.t2_mul(F, mult, comult[prefix], letter_delta[w[-1]])
        counit[i] = int(F.mul(counit[prefix], pres.counits[w[-1]]))

    S = None
    if antipode and pres.antipodes is not None:
        letter_S = {ch: vec({w: c for c, w in terms}) for ch, terms in pres.antipodes.items()}
        S = np.zeros((n, n), dtype=np.int64)
        for i, w in enumerate(words):
            img = unit
            for ch in w:  # S(ab) = S(b) S(a)
                img = _mul_vec(F, mult, letter_S[ch], img)
            S[:, i] = img

    labels = tuple(_label(system.letters, w) for w in words)
    meta = {
        "family": name,
        "p": p,
        "generators": {ch: vec({ch: 1}).tolist() for ch in system.letters},
        "grouplikes": [vec({w: 1}).tolist() for w in pres.grouplikes],
    }
    if omega is not None:
        meta["omega"] = F.scalar_to_json(F.scalar(omega).code)
    H = HopfAlgebra(F, n, labels, mult, unit, comult, counit, S, meta)
    if antipode and S is None:
        H = H.with_antipode(hopfcore.compute_antipode(H))
    if verify:
        report = hopfcore.verify_axioms(H)
        if not report.ok:
            bad = report.failures()[0]
            raise HopfError(f"{name} at p={p} failed {bad.name} at {bad.counterexample}")
    return H


def _mul_vec(F: FieldSpec, M: np.ndarray, a, b) -> np.ndarray:
    left = F.tensordot(a, M, axes=([0], [0]))
    return F.tensordot(b, left, axes=([0], [0]))


def relations(fid: FamilyId) -> list[tuple[str, dict[str, int]]]:
    """Defining relations as rules ``lhs -> rhs`` (rhs: word -> coefficient)."""
    return list(_presentation(fid.name, fid.p, fid.field, fid.omega).system.rules)


def letter_coproducts(fid: FamilyId) -> dict[str, list[tuple[int, str, str]]]:
    return _presentation(fid.name, fid.p, fid.field, fid.omega).coproducts


def formula_antipode(fid: FamilyId) -> np.ndarray | None:
    """S assembled from the generator formulas, or None where none is given."""
    if _presentation(fid.name, fid.p, fid.field, fid.omega).antipodes is None:
        return None
    return _construct(fid.name, fid.p, fid.field, fid.omega, verify=False).antipode


def all_types(p: int, field: FieldSpec | None = None) -> list[FamilyId]:
    """Calibration list: 14 types when char = p, else group algebras plus
    one Taft algebra per primitive p-th root of unity in the field."""
    F = field or FieldSpec(p)
    if F.char == p:
        return [FamilyId(n, p, F) for n in CHAR_P_TYPES]
    out = [FamilyId("group-cp2", p, F), FamilyId("group-cpxcp", p, F)]
    if (F.order - 1) % p:
        return out  # no primitive p-th root of unity, hence no Taft algebra
    zeta = primitive_root_of_unity(F, p)
    out += [FamilyId("taft", p, F, zeta**e) for e in range(1, p)]
    return out


def random_words(letters: str, count: int, max_len: int, rng: random.Random) -> list[str]:
    return ["".join(rng.choice(letters) for _ in range(rng.randint(0, max_len))) for _ in range(count)]


__all__ = [
    "FAMILY_NAMES", "CHAR_P_TYPES", "FamilyId", "FamilyError", "RewriteSystem", "build",
    "rewrite_to_normal_form", "divided_power_coefficients", "taft_like", "all_types",
    "relations", "letter_coproducts", "formula_antipode", "random_words",
]
