"""Invariant fingerprints and a self-calibrating classifier for dimension p^2.

The classifier never certifies an isomorphism.  It builds every classified
type for the input's (p, characteristic), fingerprints them, insists the
fingerprints are pairwise distinct, and reports which one (if any) the
input's fingerprint equals.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Any

from . import analysis as an
from .exactfield import FieldSpec, primitive_root_of_unity
from .families import FamilyId, all_types, build
from .hopfcore import HopfAlgebra, verify_axioms

RELIANCE_NOTE = (
    "invariant-based match: a verdict means the fingerprints agree exactly; "
    "it relies on the completeness of the classification for pointed algebras of "
    "dimension p^2 and is not an isomorphism certificate"
)


class ClassifyError(ValueError):
    pass


class CalibrationError(ClassifyError):
    pass


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    field_char: int
    n_grouplikes: int
    grouplike_exponent: int
    commutative: bool
    cocommutative: bool
    antipode_order: int
    dim_P11: int
    skew_quotient_dims: tuple[int, ...]
    filtration_dims: tuple[int, ...]
    frobenius_image_dim: int | None = None
    p_map_rank: int | None = None
    p_map_nilpotent: bool | None = None
    conj_character_kind: str | None = None
    omega_exponent: int | None = None
    additive_character_nontrivial: bool | None = None

    def to_json(self) -> dict[str, Any]:
        d = asdict(self)
        d["skew_quotient_dims"] = list(self.skew_quotient_dims)
        d["filtration_dims"] = list(self.filtration_dims)
        return d


def _character_data(H: HopfAlgebra, G: an.GrouplikeGroup, skew_q: dict) -> tuple:
    """(kind, omega exponent, additive nontriviality) from the first
    grouplike c (in group order) with a nontrivial quotient P_{1,c}/H_0.

    The exponent e satisfies chi_x(c) = zeta^e for the field's canonical
    primitive p-th root zeta.  Reading the character at the grouplike that
    the skew-primitive itself singles out makes the value independent of
    any choice of generator of G.
    """
    if not G.is_abelian:
        return None, None, None
    kind = an.character_kind(H)
    for c in range(1, len(G)):
        if not skew_q[(0, c)]:
            continue
        x = an.find_witness(H, G, G.elements[0], G.elements[c])
        if x is None:
            continue
        chi = an.conjugation_character(H, G, G.elements[0], G.elements[c], x)
        if kind == "additive":
            return kind, None, any(not v.is_zero() for v in chi.values.values())
        p = int(round(math.sqrt(H.dim)))
        zeta = primitive_root_of_unity(H.field, p)
        value = chi.values[c]
        for e in range(p):
            if zeta**e == value:
                return kind, e, None
        raise ClassifyError(f"character value {value} is not a p-th root of unity")
    return None, None, None


def fingerprint(H: HopfAlgebra, cap: int | None = None) -> Fingerprint:
    """All invariants the classifier compares; deterministic in the structure
    constants and independent of the basis order."""
    try:
        G = an.auto_grouplikes(H, cap)
    except an.GrouplikeCapError as exc:
        raise ClassifyError(f"{exc} (fingerprinting needs the full grouplike set)") from exc
    flags = an.structure_flags(H)
    H0 = an.span_of(H, G.elements)
    try:
        filt_dims = tuple(an.coradical_filtration(H, H0).dims)
    except an.FiltrationError:
        filt_dims = ()  # not pointed: no classified type can match
    skew_q = {}
    for a, g in enumerate(G.elements):
        for b, h in enumerate(G.elements):
            skew_q[(a, b)] = an.skew_primitives(H, g, h).quotient_dim(H0)
    dim_p11 = an.skew_primitives(H, H.one, H.one).dim
    char_p = H.dim % H.field.char == 0
    frob = None
    if char_p and flags["commutative"] and H.field.degree == 1:
        frob = an.frobenius_profile(H)["image_dim"]
    pm_rank = pm_nil = None
    if char_p and dim_p11:
        pm = an.p_map_on_primitives(H)
        pm_rank, pm_nil = pm["rank"], pm["nilpotent"]
    kind, e, additive = _character_data(H, G, skew_q)
    return Fingerprint(
        dim=H.dim,
        field_char=H.field.char,
        n_grouplikes=len(G),
        grouplike_exponent=G.exponent,
        commutative=flags["commutative"],
        cocommutative=flags["cocommutative"],
        antipode_order=an.antipode_order(H),
        dim_P11=dim_p11,
        skew_quotient_dims=tuple(sorted(skew_q.values())),
        filtration_dims=filt_dims,
        frobenius_image_dim=frob,
        p_map_rank=pm_rank,
        p_map_nilpotent=pm_nil,
        conj_character_kind=kind,
        omega_exponent=e,
        additive_character_nontrivial=additive,
    )


@lru_cache(maxsize=None)
def calibration(p: int, field: FieldSpec) -> tuple[tuple[FamilyId, Fingerprint], ...]:
    """Fingerprints of every classified type at (p, field); raises on any
    collision, since that would make matching meaningless."""
    table = tuple((fid, fingerprint(build(fid))) for fid in all_types(p, field))
    seen: dict[Fingerprint, FamilyId] = {}
    for fid, fp in table:
        if fp in seen:
            raise CalibrationError(f"calibration collision: {seen[fp].label} and {fid.label} share a fingerprint")
        seen[fp] = fid
    return table


@dataclass
class TypeVerdict:
    matched: FamilyId | None
    fingerprint: Fingerprint
    calibration: tuple[tuple[FamilyId, Fingerprint], ...]

    @property
    def label(self) -> str:
        return self.matched.label if self.matched is not None else "unknown"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"matched": self.label, "fingerprint": self.fingerprint.to_json()}
        if self.matched is not None:
            out["family"] = self.matched.to_json()
        out["calibration_distinct"] = True
        out["calibration_size"] = len(self.calibration)
        out["note"] = RELIANCE_NOTE
        return out


def classify(H: HopfAlgebra, p: int | None = None, cap: int | None = None) -> TypeVerdict:
    if p is None:
        p = math.isqrt(H.dim)
    if H.dim != p * p:
        raise ClassifyError(f"dimension {H.dim} is not p^2 for p = {p}")
    report = verify_axioms(H)
    if not report.ok:
        bad = report.failures()[0]
        raise ClassifyError(f"input fails verify_axioms: {bad.name} counterexample {bad.counterexample}")
    cal = calibration(p, H.field)
    fp = fingerprint(H, cap)
    matched = next((fid for fid, cfp in cal if cfp == fp), None)
    return TypeVerdict(matched, fp, cal)


def _char_field(p: int, char_mode: str) -> FieldSpec:
    if char_mode in ("equal_p", "equal-p"):
        return FieldSpec(p)
    if char_mode.startswith("taft"):
        q = int(char_mode.split(":", 1)[1]) if ":" in char_mode else FamilyId("taft", p).field.char
        return FieldSpec(q)
    raise ClassifyError(f"unknown characteristic mode {char_mode!r}")


TABLE_COLUMNS = (
    "n_grouplikes", "grouplike_exponent", "commutative", "cocommutative", "antipode_order",
    "dim_P11", "skew_quotient_dims", "filtration_dims", "frobenius_image_dim", "p_map_rank",
    "p_map_nilpotent", "conj_character_kind", "omega_exponent", "additive_character_nontrivial",
)


def _column(fp: Fingerprint, name: str):
    v = getattr(fp, name)
    # the pair multiset is long; show it as value:count
    return Counter(v) if name == "skew_quotient_dims" else v


def report_table(p: int, char_mode: str = "equal_p", fmt: str = "markdown") -> str:
    """One row per classified type; markdown or JSON."""
    field = _char_field(p, char_mode)
    cal = calibration(p, field)
    if fmt == "json":
        doc = {
            "p": p, "field": field.to_json(), "rows": len(cal), "pairwise_distinct": True,
            "types": [{"type": fid.label, "fingerprint": fp.to_json()} for fid, fp in cal],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt != "markdown":
        raise ClassifyError(f"unknown format {fmt!r}")

    def cell(v) -> str:
        if v is None:
            return "-"
        if isinstance(v, tuple):
            return "[" + ",".join(map(str, v)) + "]"
        if isinstance(v, Counter):
            return "{" + ",".join(f"{k}:{n}" for k, n in sorted(v.items())) + "}"
        return str(v).lower() if isinstance(v, bool) else str(v)

    lines = [
        f"Classified types of dimension {p * p} over {field} ({len(cal)} rows, fingerprints pairwise distinct)",
        "",
        "| type | " + " | ".join(TABLE_COLUMNS) + " |",
        "|" + "---|" * (len(TABLE_COLUMNS) + 1),
    ]
    for fid, fp in cal:
        lines.append(f"| {fid.label} | " + " | ".join(cell(_column(fp, c)) for c in TABLE_COLUMNS) + " |")
    return "\n".join(lines) + "\n"
