"""Acceptance criteria 1 to 14, all exact (no tolerances).

Each test carries ``@pytest.mark.criterion(n)``; the conftest hook prints one
PASS/FAIL line per criterion at the end of the run.
"""

import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from exactlie import admissible as adm
from exactlie import root_systems as rsys
from exactlie.errors import JacobiViolation, Violation
from exactlie.exact_linalg import Subspace, add, unit_vector, vec
from exactlie.lie_core import LieAlgebra, bracket, find_jacobi_violation, validate
from exactlie.suites import PARTIAL_SUM_LIMIT, PARTIAL_SUM_MAX_TERMS, partial_sum_instances, rest2_subsets
from exactlie.toral import ToralSubalgebra, weight_decomposition

import data
from oracles import brute_partial_sum, to_sympy

PAIRS = data.CLASSICAL_PAIRS
FAMILIES_TO_6 = [(f, n) for f in ("A", "B", "C", "D", "BC") for n in range(rsys.FAMILY_MINIMUM[f], 7)]
criterion = pytest.mark.criterion


def ids(pairs):
    return [f"{f}{n}" for f, n in pairs]


def sl_root(n, i, j):
    """Weight of E_ij on the basis H_k = E_kk - E_k+1,k+1, computed by hand."""
    def eps(m):
        return [F(int(m == k)) - F(int(m == k + 1)) for k in range(n - 1)]

    return tuple(a - b for a, b in zip(eps(i), eps(j)))


# -- 1 ------------------------------------------------------------------------------------------

@criterion(1)
@pytest.mark.parametrize("fam,n", PAIRS, ids=ids(PAIRS))
def test_c01_classical_pairs_are_admissible(fam, n):
    verdict = adm.is_admissible(data.decomposition(fam, n), 5, random.Random(0))
    assert not isinstance(verdict, Violation), verdict
    family, m = data.EXPECTED_TYPE[(fam, n)]
    assert len(verdict.roots) == len(rsys.family_truncation(family, m))
    # every chosen triple is an sl2-triple, checked here by direct brackets
    L = verdict.algebra
    for a, t in verdict.triples.items():
        assert bracket(L, t.e, t.f) == t.h
        assert bracket(L, t.h, t.e) == tuple(2 * x for x in t.e)
        assert bracket(L, t.h, t.f) == tuple(-2 * x for x in t.f)
        assert verdict.toral.space.contains(t.h)


# -- 2 ------------------------------------------------------------------------------------------

@criterion(2)
@pytest.mark.parametrize("fam,n", PAIRS, ids=ids(PAIRS))
def test_c02_loc5(fam, n):
    rd = data.datum(fam, n)
    assert adm.check_loc5(rd) == []
    allowed = {F(1), F(-1), F(1, 2), F(-1, 2), F(2), F(-2)}
    for a in rd.roots:
        for b in rd.roots:
            p = rd.pairing(b, a)
            assert p.denominator == 1
            assert rd.is_root(tuple(y - p * x for x, y in zip(a, b)))
            ks = adm.root_string(rd, b, a)
            assert ks == list(range(ks[0], ks[-1] + 1))
            # the string through b runs from -r to q with r - q = b(h_a)
            assert -ks[0] - ks[-1] == p
            # multiples of a that are roots
            nz = [i for i, x in enumerate(a) if x]
            c = b[nz[0]] / a[nz[0]]
            if tuple(c * x for x in a) == b:
                assert c in allowed


# -- 3 ------------------------------------------------------------------------------------------

@criterion(3)
@pytest.mark.parametrize("fam,n", PAIRS, ids=ids(PAIRS))
def test_c03_pairing_bound_on_data(fam, n):
    rd = data.datum(fam, n)
    assert adm.pairing_bound_violations(rd) == []
    values = {rd.pairing(b, a) for a in rd.roots for b in rd.roots}
    assert all(v.denominator == 1 and -4 <= v <= 4 for v in values)


@criterion(3)
@pytest.mark.parametrize("family,n", FAMILIES_TO_6, ids=ids(FAMILIES_TO_6))
def test_c03_pairing_bound_on_truncations(family, n):
    rs = rsys.family_truncation(family, n)
    values = {rs.pairing(b, a) for a in rs.roots for b in rs.roots}
    assert all(v.denominator == 1 and -4 <= v <= 4 for v in values)
    if family == "BC":
        assert 4 in values and -4 in values  # e_i against 2e_i


# -- 4 ------------------------------------------------------------------------------------------

@criterion(4)
@pytest.mark.parametrize("fam,n", PAIRS, ids=ids(PAIRS))
def test_c04_splitting_elements_unique(fam, n):
    rd = data.datum(fam, n)
    assert adm.splitting_elements_unique(rd, 5, random.Random(2024)) is None


@criterion(4)
def test_c04_splitting_elements_add_in_sl3():
    rd = data.datum("sl", 3)
    a1, a2 = sl_root(3, 0, 1), sl_root(3, 1, 2)
    a12 = adm.wadd(a1, a2)
    assert a12 == sl_root(3, 0, 2)
    h = rd.splitting_elements
    assert h[a12] == add(h[a1], h[a2])
    # h_a1 is E11 - E22, the basis vector H1
    L = rd.algebra
    assert h[a1] == unit_vector(L.dim, L.labels.index("H1"))


# -- 5 ------------------------------------------------------------------------------------------

@criterion(5)
@pytest.mark.parametrize("fam,n", PAIRS, ids=ids(PAIRS))
def test_c05_killing_identities(fam, n):
    rd = data.datum(fam, n)
    assert adm.killing_identities(rd) is None
    hs = [rd.splitting_elements[a] for a in rd.roots]
    assert Subspace.span(hs, rd.algebra.dim) == rd.toral.space


# -- 6 ------------------------------------------------------------------------------------------

@criterion(6)
@pytest.mark.parametrize("parts,count", [((("sl", 2), ("sl", 3)), 2), ((("sl", 2), ("sl", 2), ("sl", 2)), 3)])
def test_c06_simple_ideal_decomposition(parts, count):
    rd = data.sum_datum(*parts)
    pieces = adm.simple_ideal_decomposition(rd)
    assert len(pieces) == count
    h = rd.toral.space
    toral_parts = [h.intersect(p.ideal) for p in pieces]
    total = Subspace.zero(rd.algebra.dim)
    for t in toral_parts:
        total = total + t
    assert total == h
    assert sum(t.dim for t in toral_parts) == h.dim
    assert len(rsys.connected_components(rsys.extract_abstract(rd))) == count
    # ideals pairwise commute and sum to the whole algebra
    L = rd.algebra
    for p, q in combinations(pieces, 2):
        assert all(not any(bracket(L, x, y)) for x in p.ideal.basis for y in q.ideal.basis)
    whole = Subspace.zero(L.dim)
    for p in pieces:
        whole = whole + p.ideal
    assert whole == Subspace.full(L.dim)


# -- 7 ------------------------------------------------------------------------------------------

@criterion(7)
def test_c07_rest2_on_sl4():
    rd = data.datum("sl", 4)
    rs = data.abstract("sl", 4)
    subsets = rest2_subsets(rs)
    # two roots span at most rank 2: 6 of type A1, 3 of type A1 x A1, 4 of type A2
    assert sorted(len(s) for s in subsets) == [2] * 6 + [4] * 3 + [6] * 4
    rng = random.Random(7)
    zero = rd.decomposition.zero_weight
    for delta in subsets:
        assert rsys.is_symmetric(delta) and rsys.is_closed(rs, delta)
        sub = adm.sub_from_roots(rd, delta, 1, rng)
        images = [sub.restriction[a] for a in delta]
        assert len(set(images) | {sub.restriction[zero]}) == len(delta) + 1
        assert set(sub.datum.roots) == set(images)
        assert not isinstance(adm.is_admissible(sub.datum.decomposition, 5, rng), Violation)


# -- 8 ------------------------------------------------------------------------------------------

@criterion(8)
@pytest.mark.parametrize("fam,n", PAIRS, ids=ids(PAIRS))
def test_c08_full_cartans_are_maximal(fam, n):
    assert adm.is_maximal_toral(data.datum(fam, n))


@criterion(8)
def test_c08_single_coroot_is_not_maximal():
    L, T = data.pair("sl", 3)
    d = weight_decomposition(L, ToralSubalgebra(L, [T.basis[0]]))
    assert not adm.is_maximal_toral(d)
    assert d.zero_space.dim == 2 and d.toral.dim == 1


# -- 9 ------------------------------------------------------------------------------------------

@criterion(9)
@pytest.mark.parametrize("fam,n", [("sl", 4), ("so_odd", 2)], ids=["A3", "B2"])
def test_c09_partial_sums(fam, n):
    rs = data.abstract(fam, n)
    instances = partial_sum_instances(rs, PARTIAL_SUM_MAX_TERMS, PARTIAL_SUM_LIMIT, random.Random(9))
    assert 0 < len(instances) <= PARTIAL_SUM_LIMIT
    misses = []
    for summands, beta in instances:
        w = rsys.partial_sum_witness(rs, summands, beta)
        if w is None:
            misses.append((summands, beta))
            continue
        assert sorted(w) == list(range(len(summands)))
        acc = tuple(F(0) for _ in beta)
        for i in w:
            acc = add(acc, summands[i])
            assert rs.is_root_or_zero(acc)
        assert acc == beta
    assert misses == []
    # cross-check a slice against brute force over all orderings
    for summands, beta in instances[:150]:
        assert brute_partial_sum(set(rs.roots), list(summands))


# -- 10 -----------------------------------------------------------------------------------------

@criterion(10)
@pytest.mark.parametrize("family,n", FAMILIES_TO_6, ids=ids(FAMILIES_TO_6))
def test_c10_axioms_and_reducedness(family, n):
    rs = rsys.family_truncation(family, n)
    assert rsys.check_axioms(rs.roots, rs.coroot, rs.space) is None
    if family == "BC":
        s = rsys.sdiv(rs)
        assert len(s) == 2 * n * (n - 1) + 2 * n
        assert not rsys.is_reduced(rs)
        assert rsys.check_axioms(s.members, {a: rs.coroot[a] for a in s.members}, rs.space) is None
    else:
        assert rsys.is_reduced(rs)


@criterion(10)
def test_c10_bc2_counts():
    bc2 = rsys.family_truncation("BC", 2)
    assert len(bc2) == 12 and len(rsys.sdiv(bc2)) == 8


# -- 11 -----------------------------------------------------------------------------------------

CHAINS = [("A", 1, 6), ("B", 1, 5), ("C", 1, 5), ("BC", 1, 5), ("D", 3, 5)]


@criterion(11)
@pytest.mark.parametrize("family,lo,hi", CHAINS, ids=[c[0] for c in CHAINS])
def test_c11_chain(family, lo, hi):
    report = rsys.chain_check(family, hi, lo)
    assert report.ok, report.failures()
    assert [link.n for link in report.links] == list(range(lo, hi))
    assert all(link.closed and link.subsystem and link.irreducible and link.coroots_agree for link in report.links)


def sl_inclusion_images(n):
    """Images of the sl_n basis under the corner inclusion into sl_{n+1}.

    E_ij goes to E_ij and H_i = E_ii - E_i+1,i+1 goes to H_i, matched by label.
    """
    small, _ = data.pair("sl", n)
    big, _ = data.pair("sl", n + 1)
    return [unit_vector(big.dim, big.labels.index(lab)) for lab in small.labels]


@criterion(11)
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c11_sl_embeddings(n):
    small, big = data.datum("sl", n), data.datum("sl", n + 1)
    mapping = adm.root_embedding(small, big, sl_inclusion_images(n))
    assert rsys.check_root_map(data.abstract("sl", n), data.abstract("sl", n + 1), mapping) is None
    # compatible with the hand-computed weights of E_ij
    for i in range(n):
        for j in range(n):
            if i != j:
                assert mapping[sl_root(n, i, j)] == sl_root(n + 1, i, j)


# -- 12 -----------------------------------------------------------------------------------------

@criterion(12)
@pytest.mark.parametrize("fam,n", [("sl", 3), ("so_odd", 2)], ids=["sl3", "so5"])
def test_c12_theta(fam, n):
    rd = data.datum(fam, n)
    L, d = rd.algebra, rd.decomposition
    rng = random.Random(12)
    for alpha in rd.roots:
        theta = adm.theta_automorphism(rd, alpha)
        for beta in rd.roots:
            image = tuple(b - rd.pairing(beta, alpha) * a for a, b in zip(alpha, beta))
            moved = Subspace.span([theta @ v for v in d.space(beta).basis], L.dim)
            assert moved == d.space(image)
        for _ in range(20):
            x = vec(rng.randint(-3, 3) for _ in range(L.dim))
            y = vec(rng.randint(-3, 3) for _ in range(L.dim))
            assert theta @ bracket(L, x, y) == bracket(L, theta @ x, theta @ y)


# -- 13 -----------------------------------------------------------------------------------------

@criterion(13)
def test_c13_gl3_fails_clause_one():
    verdict = adm.is_admissible(data.decomposition("gl", 3), 5, random.Random(0))
    assert isinstance(verdict, Violation)
    assert verdict.check == "admissible.clause1"
    direction = verdict.witness["direction"]
    assert direction == (F(1), F(1), F(1))
    # the identity matrix E11 + E22 + E33 is the offending toral element
    L = data.pair("gl", 3)[0]
    ident = vec(int(lab in ("E11", "E22", "E33")) for lab in L.labels)
    assert Subspace.span([verdict.witness["element"]], L.dim) == Subspace.span([ident], L.dim)


@criterion(13)
def test_c13_alpha_three_alpha_fails_axioms():
    a, b = vec([1]), vec([3])
    roots = [a, b, vec([-1]), vec([-3])]
    coroot = {r: vec([F(2) / r[0]]) for r in roots}
    v = rsys.check_axioms(roots, coroot)
    assert v is not None and v.check.startswith("axioms.")


@criterion(13)
def test_c13_injected_jacobi_violation_is_named():
    L, _ = data.pair("sl", 3)
    structure = {key: list(terms) for key, terms in L.structure.items()}
    key = (L.labels.index("E12"), L.labels.index("E23"))
    structure[key] = [(k, c * 2) for k, c in structure[key]]
    bad = LieAlgebra(L.dim, structure, L.labels)
    triple = find_jacobi_violation(bad)
    assert triple is not None
    with pytest.raises(JacobiViolation) as info:
        validate(bad)
    assert info.value.triple == triple
    x, y, z = (unit_vector(L.dim, t) for t in triple)
    jac = add(add(bracket(bad, x, bracket(bad, y, z)), bracket(bad, y, bracket(bad, z, x))), bracket(bad, z, bracket(bad, x, y)))
    assert any(jac)


# -- 14 -----------------------------------------------------------------------------------------

SMALL = [(f, n) for f, n in FAMILIES_TO_6 if len(rsys.family_truncation(f, n)) <= 12]
SMALL_LIE = [("sl", 2), ("sl", 3), ("sl", 4), ("so_odd", 1), ("so_odd", 2), ("sp", 1), ("sp", 2), ("so_even", 2), ("so_even", 3)]


def _closure_against_enumeration(rs):
    closed = rsys.symmetric_closed_subsets(rs)
    roots = rs.sorted_roots
    gens = [(a,) for a in roots] + list(combinations(roots, 2)) + list(combinations(roots, 3))
    for m in gens:
        smallest = frozenset(rs.roots)
        for c in closed:
            if set(m) <= c:
                smallest &= c
        assert rsys.closure_delta_M(rs, m) == smallest
    return closed


@criterion(14)
@pytest.mark.parametrize("family,n", SMALL, ids=ids(SMALL))
def test_c14_closure_minimality_truncations(family, n):
    _closure_against_enumeration(rsys.family_truncation(family, n))


@criterion(14)
@pytest.mark.parametrize("fam,n", SMALL_LIE, ids=ids(SMALL_LIE))
def test_c14_closure_minimality_extracted(fam, n):
    rs = data.abstract(fam, n)
    assert len(rs) <= 12
    _closure_against_enumeration(rs)


@criterion(14)
@pytest.mark.parametrize("family", ["A", "B", "C"])
def test_c14_cartan_solve_against_span_membership(family):
    rs = rsys.family_truncation(family, 2)
    base = rsys.simple_roots(rs)
    a = to_sympy([list(col) for col in zip(*base)])
    for eta in rs.sorted_roots:
        x = rsys.cartan_solve(rs, base, eta)
        assert tuple(sum(c * r[i] for c, r in zip(x, base)) for i in range(rs.rank)) == eta
        sol, params = a.gauss_jordan_solve(to_sympy([[c] for c in eta]))
        assert params.shape[0] == 0
        assert tuple(F(int(s.p), int(s.q)) for s in sol) == x
