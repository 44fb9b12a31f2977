from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlocus.cyclo import CycloField
from modlocus.locus import (
    B_QUARTIC_PAIRS_13,
    b_correspondence,
    b_forms_11,
    b_forms_13,
    b_to_e_11,
    fold,
    frame_matrix,
    generate_ideal,
    hessian_cubic_11,
    hessian_minors_11,
    kappa_point,
    klein_relations_11,
    quartic,
    weil_in_e_frame,
)
from modlocus.mpoly import MPoly, poly_rank, poly_span_solver


def perm_sign(perm):
    sgn = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if perm[i] > perm[j]:
                sgn = -sgn
    return sgn


# --- the raw quartic ---------------------------------------------------------


def test_repeated_arguments_vanish():
    assert quartic(13, 0, 0, 1, 2).is_zero()
    assert quartic(11, 2, 3, 3, 5).is_zero()
    assert quartic(7, 1, 2, 1, 3).is_zero()


@settings(max_examples=60)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_antisymmetry_p13(w, x, y, z):
    base = quartic(13, w, x, y, z)
    args = (w, x, y, z)
    for perm in permutations(range(4)):
        shuffled = quartic(13, *[args[i] for i in perm])
        if perm_sign(perm) > 0:
            assert shuffled == base
        else:
            assert shuffled == -base


@settings(max_examples=40)
@given(
    st.integers(0, 10),
    st.integers(0, 10),
    st.integers(0, 10),
    st.integers(0, 10),
    st.tuples(*[st.sampled_from([1, -1]) for _ in range(4)]),
)
def test_sign_invariance_p11(w, x, y, z, signs):
    a, b, c, d = signs
    assert quartic(11, a * w, b * x, c * y, d * z) == quartic(11, w, x, y, z)


@settings(max_examples=40)
@given(st.integers(1, 6), st.integers(-40, 40))
def test_fold_periodic_and_odd(t, k):
    assert fold(13, t + 13 * k) == fold(13, t)
    idx, sgn = fold(13, t)
    nidx, nsgn = fold(13, -t)
    assert (nidx, nsgn) == (idx, -sgn)


# --- generation, dedup, canonical form ---------------------------------------


@pytest.mark.parametrize("p,raw,distinct", [(7, 1, 1), (11, 15, 10), (13, 35, 21)])
def test_counts(p, raw, distinct):
    sys = generate_ideal(p)
    assert sys.raw_count == raw
    assert len(sys) == distinct
    assert sys.labels[0] == (0, 1, 2, 3)
    assert poly_rank(list(sys.quartics)) == distinct  # members are independent
    for q in sys.quartics:
        lead = max(q.terms, key=lambda e: e)
        c = q.terms[lead]
        first = next(r for r in c.nums if r != 0)
        assert first > 0  # lex-leading coefficient is +1


def test_every_raw_label_is_plus_minus_a_canonical_one():
    sys = generate_ideal(13)
    keys = {q.monic_sign() for q in sys.quartics}
    from itertools import combinations

    for label in combinations(range(7), 4):
        q = quartic(13, *label, field=sys.field)
        assert q.monic_sign() in keys


def test_degenerate_prime_raises():
    with pytest.raises(ValueError):
        generate_ideal(5)


# The full list of 21 distinct quartics for p=13, as (label, aliases, terms);
# terms are (coeff, exponent vector) pairs in E1..E6.
P13_TABLE = [
    ((0, 1, 2, 3), [], [(1, (3, 0, 0, 0, 1, 0)), (-1, (0, 3, 0, 1, 0, 0)), (1, (1, 0, 3, 0, 0, 0))]),
    ((0, 1, 2, 4), [(3, 4, 5, 6)], [(1, (2, 1, 0, 0, 0, 1)), (-1, (0, 2, 1, 0, 1, 0)), (1, (1, 0, 1, 2, 0, 0))]),
    ((0, 1, 2, 5), [(1, 2, 3, 4)], [(-1, (2, 0, 1, 0, 0, 1)), (-1, (0, 2, 0, 1, 0, 1)), (1, (1, 0, 1, 0, 2, 0))]),
    ((0, 1, 2, 6), [(2, 3, 4, 5)], [(-1, (2, 0, 0, 1, 1, 0)), (1, (0, 2, 0, 0, 1, 1)), (1, (1, 0, 1, 0, 0, 2))]),
    ((0, 1, 3, 4), [], [(-1, (3, 0, 0, 0, 0, 1)), (-1, (0, 0, 3, 0, 1, 0)), (1, (0, 1, 0, 3, 0, 0))]),
    ((0, 1, 3, 5), [(2, 3, 5, 6)], [(-1, (2, 1, 0, 0, 1, 0)), (-1, (0, 0, 2, 1, 0, 1)), (1, (0, 1, 0, 1, 2, 0))]),
    ((0, 1, 3, 6), [(1, 2, 4, 5)], [(-1, (2, 0, 1, 1, 0, 0)), (1, (0, 0, 2, 0, 1, 1)), (1, (0, 1, 0, 1, 0, 2))]),
    ((0, 1, 4, 5), [], [(-1, (3, 0, 0, 1, 0, 0)), (-1, (0, 0, 0, 3, 0, 1)), (1, (0, 0, 1, 0, 3, 0))]),
    ((0, 1, 4, 6), [(1, 2, 5, 6)], [(-1, (2, 1, 1, 0, 0, 0)), (1, (0, 0, 0, 2, 1, 1)), (1, (0, 0, 1, 0, 1, 2))]),
    ((0, 1, 5, 6), [], [(-1, (3, 1, 0, 0, 0, 0)), (1, (0, 0, 0, 0, 3, 1)), (1, (0, 0, 0, 1, 0, 3))]),
    ((0, 2, 3, 4), [(2, 4, 5, 6)], [(-1, (1, 2, 0, 0, 0, 1)), (-1, (0, 1, 2, 0, 0, 1)), (1, (1, 0, 0, 2, 1, 0))]),
    ((0, 2, 3, 5), [], [(-1, (0, 3, 0, 0, 1, 0)), (1, (0, 0, 3, 0, 0, 1)), (1, (1, 0, 0, 0, 3, 0))]),
    ((0, 2, 3, 6), [(1, 3, 4, 6)], [(-1, (0, 2, 1, 1, 0, 0)), (1, (0, 0, 2, 1, 1, 0)), (1, (1, 0, 0, 0, 1, 2))]),
    ((0, 2, 4, 5), [(1, 3, 5, 6)], [(-1, (1, 2, 0, 1, 0, 0)), (1, (0, 0, 1, 2, 0, 1)), (1, (0, 1, 0, 0, 2, 1))]),
    ((0, 2, 4, 6), [], [(-1, (0, 3, 1, 0, 0, 0)), (1, (0, 0, 0, 3, 1, 0)), (1, (0, 1, 0, 0, 0, 3))]),
    ((0, 2, 5, 6), [], [(-1, (1, 3, 0, 0, 0, 0)), (1, (0, 0, 0, 1, 3, 0)), (-1, (0, 0, 1, 0, 0, 3))]),
    ((0, 3, 4, 5), [(1, 2, 3, 6)], [(-1, (1, 0, 2, 1, 0, 0)), (1, (0, 1, 0, 2, 1, 0)), (-1, (1, 0, 0, 0, 2, 1))]),
    ((0, 3, 4, 6), [], [(-1, (0, 1, 3, 0, 0, 0)), (1, (0, 0, 1, 3, 0, 0)), (-1, (1, 0, 0, 0, 0, 3))]),
    ((0, 3, 5, 6), [(1, 2, 4, 6)], [(-1, (1, 1, 2, 0, 0, 0)), (1, (0, 0, 1, 1, 2, 0)), (-1, (0, 1, 0, 0, 1, 2))]),
    ((0, 4, 5, 6), [(1, 3, 4, 5)], [(-1, (1, 1, 0, 2, 0, 0)), (1, (0, 1, 1, 0, 2, 0)), (-1, (1, 0, 0, 1, 0, 2))]),
    ((1, 2, 3, 5), [(1, 4, 5, 6), (2, 3, 4, 6)], [(-1, (1, 1, 1, 0, 1, 0)), (1, (0, 1, 1, 1, 0, 1)), (1, (1, 0, 0, 1, 1, 1))]),
]


def _poly_from_terms(field, terms):
    out = MPoly.zero(field, 6)
    for coeff, expo in terms:
        mono = MPoly.constant(field, 6, field.from_rational(coeff))
        for i, e in enumerate(expo):
            if e:
                mono = mono * MPoly.variable(field, 6, i, e)
        out = out + mono
    return out


def test_p13_full_table():
    sys = generate_ideal(13)
    F = sys.field
    assert [row[0] for row in P13_TABLE] == list(sys.labels)
    for label, aliases, terms in P13_TABLE:
        expected = _poly_from_terms(F, terms)
        assert quartic(13, *label, field=F) == expected, label
        for alias in aliases:
            assert quartic(13, *alias, field=F) == expected, (label, alias)


def test_p7_single_quartic_is_klein():
    sys = generate_ideal(7)
    F = sys.field
    lam, mu, nu = MPoly.variables(F, 3)
    f = lam ** 3 * mu + mu ** 3 * nu + nu ** 3 * lam
    # (lambda, mu, nu) = (E1, E2, -E3) carries f to -Phi_{0123}
    assert f.substitute_linear(frame_matrix(7, F).rows) == -quartic(7, 0, 1, 2, 3, field=F)
    # the canonically signed stored quartic is exactly f in E coordinates
    assert sys.quartics[0] == f.substitute_linear(frame_matrix(7, F).rows)


# --- kappa points and tangents ------------------------------------------------


@pytest.mark.parametrize("p", [7, 11, 13])
def test_kappa_points_are_members(p):
    sys = generate_ideal(p)
    for t in range(1, p):
        assert sys.membership(kappa_point(p, t, sys.field)) is True


def test_kappa_minus_t_is_kappa_t_projectively():
    F = CycloField(13)
    for t in range(1, 13):
        k, nk = kappa_point(13, t, F), kappa_point(13, -t, F)
        assert [c for c in k] == [-c for c in nk] or k == nk


def test_all_ones_point_is_not_a_member():
    sys = generate_ideal(13)
    F = sys.field
    ones = [F.one()] * 6
    assert sys.membership(ones) is False
    residual = sys.membership([complex(1.0)] * 6)
    assert residual > 0.5


@pytest.mark.parametrize("p,rank", [(7, 1), (11, 3), (13, 4)])
def test_tangent_lines(p, rank):
    sys = generate_ideal(p)
    for t in range(1, (p - 1) // 2 + 1):
        r, ok = sys.tangent_check(t)
        assert r == rank == (p - 1) // 2 - 2
        assert ok


# --- group stability of the degree-4 piece ------------------------------------


@pytest.mark.parametrize("p", [7, 11, 13])
def test_generators_preserve_span(p):
    sys = generate_ideal(p)
    solver = sys.solver()
    S_E, T_E = weil_in_e_frame(p)
    for M in (S_E, T_E):
        for q in sys.quartics:
            assert solver(q.substitute_linear(M.rows)) is not None


@pytest.mark.parametrize("p", [7, 11, 13])
def test_e_frame_T_is_multiplier_diagonal(p):
    _, T_E = weil_in_e_frame(p)
    F = T_E.field
    m = (p - 1) // 2
    for t in range(1, m + 1):
        for j in range(m):
            want = F.zeta((t * (t - p) // 2) % p) if j == t - 1 else F.zero()
            assert T_E.rows[t - 1][j] == want


def test_random_group_elements_preserve_span_p13():
    import random

    from modlocus.group import matrix_of, psl_group, weil_generators

    sys = generate_ideal(13)
    solver = sys.solver()
    G = psl_group(13)
    w = weil_generators(13)
    P = frame_matrix(13, w.field)
    Pinv = P.inv()
    rng = random.Random(20518)
    for g in rng.sample(list(G.elements), 3):
        M_E = Pinv * matrix_of(G, w, g) * P
        for q in sys.quartics[:7]:
            assert solver(q.substitute_linear(M_E.rows)) is not None


# --- the second and third presentations ---------------------------------------


def test_b_correspondence_all_21_pairs():
    table = b_correspondence()
    assert len(table) == 21
    assert table["B0_0"] == (1, (1, 2, 3, 5))
    assert table["B0_1"] == (-1, (0, 2, 5, 6))
    labels = sorted(lbl for _, lbl in table.values())
    assert labels == sorted(generate_ideal(13).labels)


def test_b_forms_13_span_is_21_dimensional():
    forms = list(b_forms_13().values())
    assert poly_rank(forms) == 21
    # z -> E substitution is a linear isomorphism onto the quartic span
    sys = generate_ideal(13)
    qsolver = sys.solver()
    F = sys.field
    for name, sign, label in B_QUARTIC_PAIRS_13:
        assert qsolver(quartic(13, *label, field=F)) is not None


def test_p11_b_forms_span_the_quartic_space():
    sys = generate_ideal(11)
    qsolver = sys.solver()
    bs = list(b_to_e_11(sys.field).values())
    assert poly_rank(bs) == 10 == poly_rank(list(sys.quartics))
    for f in bs:
        assert qsolver(f) is not None
    bsolver = poly_span_solver(bs)
    for q in sys.quartics:
        assert bsolver(q) is not None


def test_p11_classical_relations_extend_the_quartic_space():
    # The fifteen sub-determinant relations span a 15-dimensional space that
    # strictly contains the 10-dimensional quartic span; the two printed
    # presentations (seed forms + cycle, Hessian minors) agree exactly.
    sys = generate_ideal(11)
    F = sys.field
    rows = frame_matrix(11, F).rows
    hs = [h.substitute_linear(rows) for h in klein_relations_11(F)]
    minors = {k: m.substitute_linear(rows) for k, m in hessian_minors_11(F).items()}
    ms = list(minors.values())
    assert poly_rank(hs) == 15 == poly_rank(ms)
    assert poly_rank(hs + ms) == 15  # identical spans
    assert poly_rank(ms + list(sys.quartics)) == 15  # quartic span inside
    qsolver = sys.solver()
    in_span = {k for k, m in minors.items() if qsolver(m) is not None}
    assert in_span == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def test_p11_hessian_matrix_matches_display():
    F = CycloField(11)
    y1, y4, y5, y9, y3 = MPoly.variables(F, 5)
    Z = MPoly.zero(F, 5)
    printed = [
        [y9, Z, y5, y1, Z],
        [Z, y3, Z, y9, y4],
        [y5, Z, y1, Z, y3],
        [y1, y9, Z, y4, Z],
        [Z, y4, y3, Z, y5],
    ]
    from fractions import Fraction

    nabla = hessian_cubic_11(F)
    half = F.from_rational(Fraction(1, 2))
    for i in range(5):
        for j in range(5):
            assert nabla.derivative(i).derivative(j) * half == printed[i][j]


def test_b_forms_11_T_eigenvalues():
    from modlocus.group import weil_generators

    w = weil_generators(11)
    rho = w.field.zeta(6)
    forms = b_forms_11(w.field)
    expected = {"1": 10, "4": 7, "5": 6, "9": 2, "3": 8}
    for i, e in expected.items():
        f1, f2 = forms[f"B{i}_1"], forms[f"B{i}_2"]
        assert f1.substitute_linear(w.T.rows) == f1 * rho ** e
        assert f2.substitute_linear(w.T.rows) == f2 * rho ** int(i)


# --- serialization -------------------------------------------------------------


def test_json_round_trip():
    sys = generate_ideal(11)
    data = sys.to_json()
    assert data["raw_count"] == 15 and data["distinct"] == 10
    for q, packed in zip(sys.quartics, data["quartics"]):
        assert MPoly.from_json(packed) == q
