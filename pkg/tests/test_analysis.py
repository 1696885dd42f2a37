from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pointedhopf import analysis as an
from pointedhopf.exactfield import FieldSpec, primitive_roots_of_unity
from pointedhopf.families import CHAR_P_TYPES, FAMILY_NAMES, FamilyId, build, taft_like
from pointedhopf.hopfcore import comultiply, dual, multiply, tensor
from pointedhopf.linalg import Subspace

SMALL = [FamilyId(n, p) for p in (2, 3) for n in FAMILY_NAMES]


def _ids(fid):
    return f"{fid.name}-p{fid.p}"


def _all_vectors(F, n):
    return np.array(list(itertools.product(range(F.order), repeat=n)), dtype=np.int64)


def _naive_grouplikes(H):
    """Every vector of H checked against Delta(x) = x (x) x and eps(x) = 1."""
    F = H.field
    X = _all_vectors(F, H.dim)
    delta = F.tensordot(X, H.comult, axes=([1], [0]))
    square = F.mul(X[:, :, None], X[:, None, :])
    eps = F.tensordot(X, H.counit, axes=([1], [0]))
    ok = (delta == square).all(axis=(1, 2)) & (eps == 1)
    return {tuple(int(c) for c in row) for row in X[ok]}


def _keys(G):
    return {tuple(int(c) for c in e) for e in G.elements}


# -- grouplikes --------------------------------------------------------------------

@pytest.mark.parametrize("fid", [
    FamilyId("group-cpxcp", 2), FamilyId("group-cp2", 2), FamilyId("b4", 2), FamilyId("taft", 2),
    FamilyId("a1", 3), FamilyId("b1", 3), FamilyId("a5", 2), FamilyId("b3", 3),
], ids=_ids)
def test_bruteforce_grouplikes_match_naive_enumeration(fid):
    H = build(fid)
    G = an.grouplikes(H, "bruteforce")
    assert _keys(G) == _naive_grouplikes(H)
    assert G.complete and G.status == "complete"


def test_grouplike_examples():
    assert len(an.grouplikes(build(FamilyId("group-cpxcp", 2)))) == 4
    H = build(FamilyId("b4", 2))
    G = an.grouplikes(H)
    assert _keys(G) == {tuple(H.one), tuple(H.generator("g"))}
    assert len(an.grouplikes(build(FamilyId("a1", 3)))) == 1


def test_group_table_and_orders():
    G = an.grouplikes(build(FamilyId("group-cp2", 3)))
    assert len(G) == 9 and G.exponent == 9 and G.is_abelian
    assert sorted(G.element_order(a) for a in range(9)) == [1, 3, 3, 9, 9, 9, 9, 9, 9]
    for a in range(9):
        assert G.table[a, G.inverse_index(a)] == G.identity_index
    # basis-vector grouplikes come out in basis order
    assert [int(np.flatnonzero(e)[0]) for e in G.elements] == list(range(9))


def test_cap_and_verify_mode():
    H = build(FamilyId("b4", 3))
    with pytest.raises(an.GrouplikeCapError, match="verify mode"):
        an.grouplikes(H, "bruteforce", cap=100)
    hint = H.meta["grouplikes"]
    G = an.grouplikes(H, "verify", cap=100, candidates=hint)
    assert not G.complete and G.status == "verified, completeness unchecked"
    G = an.grouplikes(H, "verify", candidates=hint)
    assert G.complete
    with pytest.raises(an.AnalysisError):
        an.grouplikes(H, "verify", candidates=hint[:2])  # misses g^2 / not closed
    with pytest.raises(an.AnalysisError, match="not grouplike"):
        an.grouplikes(H, "verify", candidates=hint + [list(H.generator("x"))])
    with pytest.raises(an.AnalysisError):
        an.grouplikes(H, "verify")


def test_auto_grouplikes_uses_hint_above_cap(monkeypatch):
    monkeypatch.setenv("HOPF_BRUTEFORCE_CAP", "10")
    H = build(FamilyId("b4", 2))
    G = an.auto_grouplikes(H)
    assert G.mode == "verify" and len(G) == 2
    bare = H.__class__(H.field, H.dim, H.basis_labels, H.mult, H.unit, H.comult, H.counit, H.antipode)
    with pytest.raises(an.GrouplikeCapError, match="HOPF_BRUTEFORCE_CAP"):
        an.auto_grouplikes(bare)


@pytest.mark.parametrize("fid", SMALL, ids=_ids)
def test_grouplike_count_divides_dimension(fid):
    H = build(fid)
    assert H.dim % len(an.auto_grouplikes(H)) == 0


# -- skew-primitives --------------------------------------------------------------------

def _naive_skew(H, g, h):
    F = H.field
    X = _all_vectors(F, H.dim)
    delta = F.tensordot(X, H.comult, axes=([1], [0]))
    rhs = F.add(F.mul(X[:, :, None], g[None, None, :]), F.mul(h[None, :, None], X[:, None, :]))
    return {tuple(int(c) for c in row) for row in X[(delta == rhs).all(axis=(1, 2))]}


@pytest.mark.parametrize("fid", [FamilyId("taft", 2), FamilyId("b4", 2), FamilyId("group-cpxcp", 2), FamilyId("a5", 2)], ids=_ids)
def test_skew_primitives_match_naive_enumeration(fid):
    H = build(fid)
    G = an.grouplikes(H)
    for g, h in itertools.product(G.elements, repeat=2):
        P = an.skew_primitives(H, g, h)
        naive = _naive_skew(H, g, h)
        assert len(naive) == H.field.order ** P.dim
        assert all(P.contains_vector(v) for v in naive)


def test_skew_primitive_examples():
    T = build(FamilyId("taft", 3))
    assert an.skew_primitives(T, T.one, T.one).dim == 0
    T2 = build(FamilyId("taft", 2))
    g = T2.generator("g")
    P = an.skew_primitives(T2, T2.one, g)
    assert P.dim == 2
    assert P.contains_vector(T2.generator("x")) and P.contains_vector(T2.field.sub(T2.one, g))
    B1 = build(FamilyId("b1", 3))
    P = an.skew_primitives(B1, B1.one, B1.one)
    assert P == Subspace.span(B1.field, [B1.generator("x")])
    with pytest.raises(an.AnalysisError):
        an.skew_primitives(B1, B1.generator("x"), B1.one)


@pytest.mark.parametrize("fid", SMALL, ids=_ids)
def test_g_minus_h_is_skew_primitive(fid):
    H = build(fid)
    G = an.auto_grouplikes(H)
    for g, h in itertools.product(G.elements, repeat=2):
        assert an.skew_primitives(H, g, h).contains_vector(H.field.sub(g, h))


@pytest.mark.parametrize("fid", SMALL + [FamilyId(n, 5) for n in CHAR_P_TYPES], ids=_ids)
def test_primitive_space_bounds(fid):
    H = build(fid)
    d = an.skew_primitives(H, H.one, H.one).dim
    if H.field.char != fid.p:
        assert d == 0
    elif fid.name.startswith("a"):
        assert d in (1, 2)
    else:
        assert d in (0, 1)


# -- conjugation characters ----------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_taft_character_recovers_omega(p):
    F = FamilyId("taft", p).field
    for omega in primitive_roots_of_unity(F, p):
        H = build(FamilyId("taft", p, F, omega))
        G = an.auto_grouplikes(H)
        g = H.generator("g")
        x = H.generator("x")
        chi = an.conjugation_character(H, G, H.one, g, x)
        assert chi.kind == "multiplicative"
        assert chi.values[G.index_of(g)] == omega
        assert chi.satisfies_law(G)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_b3_b4_additive_characters(p):
    B3, B4 = build(FamilyId("b3", p)), build(FamilyId("b4", p))
    G3, G4 = an.auto_grouplikes(B3), an.auto_grouplikes(B4)
    rho3 = an.conjugation_character(B3, G3, B3.one, B3.generator("g"), B3.generator("x"))
    assert rho3.kind == "additive" and all(v.is_zero() for v in rho3.values.values())
    g = B4.generator("g")
    # raw generator: g x g^-1 - x = g - 1 = -(1 - g), so rho(g) = -1 against g - h = 1 - g
    raw = an.conjugation_character(B4, G4, B4.one, g, B4.generator("x"))
    assert raw.values[G4.index_of(g)] == B4.field.scalar(-1)
    w = an.find_witness(B4, G4, B4.one, g)
    rho = an.conjugation_character(B4, G4, B4.one, g, w)
    assert rho.values[G4.index_of(g)] == B4.field.one
    assert rho.satisfies_law(G4) and raw.satisfies_law(G4)
    # the normalised witness is -x + (something in span(1 - g))
    conj = an.conjugate(B4, G4, G4.index_of(g), w)
    assert np.array_equal(B4.field.sub(conj, w), B4.field.sub(B4.one, g))


def test_witness_errors():
    H = build(FamilyId("taft", 3))
    G = an.auto_grouplikes(H)
    g = H.generator("g")
    x = H.generator("x")
    mixed = H.field.add(x, H.field.sub(H.one, g))
    with pytest.raises(an.WitnessError) as exc:
        an.conjugation_character(H, G, H.one, g, mixed)
    assert exc.value.defect is not None and np.any(exc.value.defect)
    with pytest.raises(an.WitnessError):
        an.conjugation_character(H, G, H.one, g, H.field.sub(H.one, g))
    with pytest.raises(an.WitnessError):
        an.conjugation_character(H, G, H.one, H.one, x)
    B4 = build(FamilyId("b4", 3))
    with pytest.raises(an.AnalysisError, match="g = h"):
        an.find_witness(B4, an.auto_grouplikes(B4), B4.one, B4.one)


@pytest.mark.parametrize("fid", SMALL, ids=_ids)
def test_character_laws_on_full_table(fid):
    H = build(fid)
    G = an.auto_grouplikes(H)
    for a, b in itertools.product(range(len(G)), repeat=2):
        g, h = G.elements[a], G.elements[b]
        if a == b and an.character_kind(H) == "additive":
            continue
        w = an.find_witness(H, G, g, h)
        if w is not None:
            assert an.conjugation_character(H, G, g, h, w).satisfies_law(G)


# -- coradical filtration ---------------------------------------------------------------------

def _naive_filtration(H, H0):
    """Levels by testing every vector against H (x) H_{n-1} + H_0 (x) H."""
    F, n = H.field, H.dim
    X = _all_vectors(F, n)
    eye = np.eye(n, dtype=np.int64)
    dims = [H0.dim]
    prev = H0
    while prev.dim < n:
        blocks = [np.kron(eye, prev.basis) % F.char if prev.dim else np.zeros((0, n * n), dtype=np.int64),
                  np.kron(H0.basis, eye) % F.char]
        W = Subspace.span(F, np.vstack(blocks), n * n)
        members = [v for v in X if W.contains_vector(comultiply(H, v).reshape(-1))]
        nxt = Subspace.span(F, members, n)
        assert len(members) == F.order ** nxt.dim
        if nxt.dim == prev.dim:
            break
        dims.append(nxt.dim)
        prev = nxt
    return dims


@pytest.mark.parametrize("fid", [FamilyId(n, 2) for n in FAMILY_NAMES], ids=_ids)
def test_filtration_matches_naive_levels(fid):
    H = build(fid)
    H0 = an.span_of(H, an.grouplikes(H).elements)
    assert an.coradical_filtration(H, H0).dims == _naive_filtration(H, H0)


def test_filtration_examples():
    assert an.coradical_filtration(build(FamilyId("group-cpxcp", 3))).dims == [9]
    R = an.coradical_filtration(build(FamilyId("group-cp2", 2)))
    assert R.dims == [4] and R.stabilization_index == 0
    assert an.coradical_filtration(build(FamilyId("taft", 3))).dims == [3, 6, 9]
    assert an.coradical_filtration(build(FamilyId("b1", 2))).dims == [2, 4]


def test_filtration_of_non_pointed_algebra_fails_loudly():
    # functions on C_9 over F_2: the only grouplike is the counit
    H = dual(build(FamilyId("group-cp2", 3, FieldSpec(2))))
    with pytest.raises(an.FiltrationError, match="coradical larger than span of grouplikes"):
        an.coradical_filtration(H)


@pytest.mark.parametrize("fid", SMALL, ids=_ids)
def test_filtration_is_comultiplicative(fid):
    H = build(fid)
    filt = an.coradical_filtration(H)
    assert all(a < b for a, b in zip(filt.dims, filt.dims[1:]))
    assert filt.dims[-1] == H.dim
    assert an.filtration_comultiplicative(H, filt).passed


@pytest.mark.parametrize("fid", SMALL, ids=_ids)
def test_taft_wilson(fid):
    H = build(fid)
    rep = an.taft_wilson_check(H, an.auto_grouplikes(H))
    assert rep.passed, rep.details
    assert json.loads(json.dumps(rep.to_json()))["check"] == "taft_wilson"


def test_taft_wilson_examples():
    T = build(FamilyId("taft", 2))
    rep = an.taft_wilson_check(T, an.auto_grouplikes(T))
    assert rep.details["dim_H1"] == 4 and rep.details["dim_H0"] == 2
    assert sorted((a, b) for a, b, q in rep.details["contributions"]) == [(0, 1), (1, 0)]
    G = build(FamilyId("group-cpxcp", 2))
    rep = an.taft_wilson_check(G, an.auto_grouplikes(G))
    assert rep.details["quotient_sum"] == 0 and rep.details["dim_H1"] == 4
    B4 = build(FamilyId("b4", 3))
    rep = an.taft_wilson_check(B4, an.auto_grouplikes(B4))
    assert rep.details["dim_H1"] - rep.details["dim_H0"] == rep.details["quotient_sum"] == 3


# -- quantum binomials ------------------------------------------------------------------------

def _inversion_binomial(n, i, omega):
    """Sum of omega^inv(w) over 0/1 words with i ones (BA = omega AB normal ordering)."""
    F = omega.field
    total = F.zero
    for pos in itertools.combinations(range(n), i):
        ones = set(pos)
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if a in ones and b not in ones)
        total = total + omega**inv
    return total


@given(st.sampled_from([FieldSpec(7), FieldSpec(11), FieldSpec(13), FieldSpec(2, 2)]), st.integers(0, 8), st.data())
def test_quantum_binomial_matches_word_count(F, n, data):
    i = data.draw(st.integers(0, n))
    omega = F.decode(data.draw(st.integers(1, F.order - 1)))
    q = an.quantum_binomial(n, i, omega)
    assert q == _inversion_binomial(n, i, omega)
    try:
        assert an.quantum_binomial_factorial(n, i, omega) == q
    except ZeroDivisionError:
        pass


@pytest.mark.parametrize("p,q", [(2, 3), (3, 7), (5, 11), (3, 13)])
def test_quantum_binomial_vanishes(p, q):
    for omega in primitive_roots_of_unity(FieldSpec(q), p):
        vals = [an.quantum_binomial(p, i, omega) for i in range(p + 1)]
        assert vals[0] == vals[p] == omega.field.one
        assert all(v.is_zero() for v in vals[1:p])


def test_quantum_binomial_examples():
    F7 = FieldSpec(7)
    assert an.quantum_binomial(3, 1, F7.scalar(2)).is_zero()
    assert an.quantum_binomial(2, 1, FieldSpec(3).scalar(-1)).is_zero()
    assert an.quantum_binomial(5, 2, F7.one) == F7.scalar(10)
    with pytest.raises(ZeroDivisionError):
        an.quantum_binomial_factorial(3, 3, F7.scalar(2))  # [3]! = 0 in the denominator


@pytest.mark.parametrize("fid", [FamilyId("taft", 2), FamilyId("taft", 3), FamilyId("taft", 3, FieldSpec(2, 2)),
                                 FamilyId("taft", 3, FieldSpec(7), FieldSpec(7).scalar(4))], ids=str)
def test_frobenius_binomial_identity(fid):
    rep = an.frobenius_binomial_identity(build(fid))
    assert rep.passed and rep.details["BA_equals_omega_AB"] and rep.details["binomial_expansion_matches"]
    assert rep.details["middle_terms_nonzero"] == 0


def test_frobenius_binomial_negative_control():
    H = taft_like(3, FieldSpec(7), 1)
    rep = an.frobenius_binomial_identity(H, omega=FieldSpec(7).one)
    assert not rep.passed and rep.details["middle_terms_nonzero"] > 0
    assert rep.details["binomial_expansion_matches"]  # ordinary binomial theorem still holds


# -- adjoint identities -----------------------------------------------------------------------

def test_ad_power_examples():
    for p in (2, 3, 5):
        H = build(FamilyId("b4", p))
        F = H.field
        g, x = H.generator("g"), H.generator("x")
        assert np.array_equal(an.ad_power(H, x, g, 0), g)
        assert np.array_equal(an.ad_power(H, x, g, 1), F.sub(g, multiply(H, g, g)))
        assert np.array_equal(an.ad_power(H, x, g, p - 1), F.sub(g, H.one))


def test_adjoint_matrices_p2():
    T, P, Pinv = an.adjoint_matrices(2)
    assert T.tolist() == [[0, 1], [0, 1]]  # [[0, -1], [0, 1]] over F_2
    assert P.tolist() == [[1, 1], [0, 1]] and Pinv.tolist() == [[1, 1], [0, 1]]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_adjoint_matrix_identity(p):
    rep = an.adjoint_matrix_identity(p)
    assert rep.passed, rep.details
    assert rep.details["ad_x_source"] == "rewriting"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_adjoint_matrix_identity_against_algebra(p):
    rep = an.adjoint_matrix_identity(p, build(FamilyId("b4", p)))
    assert rep.passed and rep.details["ad_x_source"] == "algebra"


def test_adjoint_diagonalisation_p3():
    from pointedhopf.linalg import matrix_power

    F = FieldSpec(3)
    T, P, Pinv = an.adjoint_matrices(3)
    assert np.array_equal(F.matmul(F.matmul(P, T), Pinv), np.diag([0, 1, 2]))
    assert np.array_equal(matrix_power(F, T, 2), F.sub(np.eye(3, dtype=np.int64), F.matmul(Pinv, np.outer([1, 0, 0], P[0]))))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_xp_identity(p):
    rep = an.delta_xp_identity(build(FamilyId("b4", p)))
    assert rep.passed, rep.details


def test_delta_xp_identity_fails_off_b4():
    rep = an.delta_xp_identity(build(FamilyId("b3", 3)))
    assert not rep.passed and not rep.details["ad_power_is_g_minus_1"]


# -- whole-algebra invariants ----------------------------------------------------------------

def test_antipode_order_examples():
    assert an.antipode_order(build(FamilyId("group-cpxcp", 2))) == 1
    assert an.antipode_order(build(FamilyId("b4", 2))) == 4
    assert an.antipode_order(build(FamilyId("taft", 3))) == 6
    with pytest.raises(an.AnalysisError, match="order exceeds cap"):
        an.antipode_order(build(FamilyId("b4", 3)), cap=5)


@pytest.mark.parametrize("fid", SMALL + [FamilyId(n, 5) for n in FAMILY_NAMES], ids=_ids)
def test_antipode_order_bounds(fid):
    H = build(fid)
    flags = an.structure_flags(H)
    k = an.antipode_order(H)
    if flags["commutative"] or flags["cocommutative"]:
        assert k <= 2
    else:
        assert k == 2 * fid.p


def test_structure_flags_examples():
    flags = lambda n: tuple(an.structure_flags(build(FamilyId(n, 3))).values())
    assert flags("group-cp2") == (True, True)
    assert flags("b4") == (False, False)
    assert flags("b3") == (True, False)
    assert flags("a5") == (False, True)


def test_frobenius_profile_examples():
    assert an.frobenius_profile(build(FamilyId("a6", 3)))["image_dim"] == 1
    assert an.frobenius_profile(build(FamilyId("a7", 3)))["image_dim"] == 3
    assert an.frobenius_profile(build(FamilyId("a8", 3))) == {"image_dim": 9, "kernel_dim": 0}
    with pytest.raises(an.AnalysisError):
        an.frobenius_profile(build(FamilyId("b4", 3)))
    with pytest.raises(an.AnalysisError):
        an.frobenius_profile(build(FamilyId("group-cp2", 3, FieldSpec(2, 2))))


def test_p_map_examples():
    pm = lambda n: an.p_map_on_primitives(build(FamilyId(n, 3)))
    assert pm("a1")["rank"] == 0
    assert (pm("a3")["rank"], pm("a3")["nilpotent"]) == (1, True)
    assert (pm("a4")["rank"], pm("a4")["nilpotent"]) == (2, False)
    assert pm("a5")["abelian"] is False and all(pm(n)["abelian"] for n in ("a1", "a2", "a3", "a4"))
    assert pm("b3") == {"dim": 0, "rank": 0, "nilpotent": True, "abelian": True}


@pytest.mark.parametrize("fid", [FamilyId("b4", 2), FamilyId("taft", 3), FamilyId("a5", 3)], ids=_ids)
def test_analyze_is_json_and_deterministic(fid):
    H = build(fid)
    a, b = an.analyze(H), an.analyze(H)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["taft_wilson"]["pass"]
