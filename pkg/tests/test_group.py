import random

import pytest

from modlocus.cyclo import CycloField, gauss_sum
from modlocus.group import (
    GroupElement,
    PSLGroup,
    matrix_of,
    psl_group,
    sl13_auxiliary,
    sl_classes,
    sl_elements,
    weil_generators,
)
from modlocus.mpoly import RepMatrix


@pytest.mark.parametrize("p,order", [(7, 168), (11, 660), (13, 1092)])
def test_group_order(p, order):
    assert psl_group(p).order == order


def test_canonical_sign_representative():
    e = GroupElement(7, -1, 0, 0, -1)
    assert e == GroupElement.identity(7)
    g = GroupElement(7, 6, 0, 0, 6)  # = -identity mod 7
    assert g == GroupElement.identity(7)
    # first nonzero entry lands in {1..3}
    h = GroupElement(7, 0, 6, 1, 0)
    assert h.abcd[1] <= 3


def test_determinant_guard():
    with pytest.raises(ValueError):
        GroupElement(7, 1, 0, 0, 2)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_generator_relations_in_psl(p):
    G = psl_group(p)
    assert G.S * G.S == G.identity
    assert G.T ** p == G.identity
    assert (G.S * G.T) ** 3 == G.identity


@pytest.mark.parametrize(
    "p,count,orders",
    [
        (7, 6, [1, 2, 3, 4, 7, 7]),
        (11, 8, [1, 2, 3, 5, 5, 6, 11, 11]),
        (13, 9, [1, 2, 3, 6, 7, 7, 7, 13, 13]),
    ],
)
def test_conjugacy_classes(p, count, orders):
    G = psl_group(p)
    assert len(G.classes) == count
    assert sorted(c.order for c in G.classes) == orders
    assert sum(c.size for c in G.classes) == G.order
    assert all(G.order % c.size == 0 for c in G.classes)
    ident = [c for c in G.classes if c.size == 1]
    assert len(ident) == 1 and ident[0].rep == G.identity


def test_class_members_partition():
    G = psl_group(11)
    seen = set()
    for c in G.classes:
        assert not (seen & c.members)
        seen |= c.members
    assert len(seen) == G.order


def test_words_reconstruct_elements():
    G = psl_group(13)
    words = G.words()
    assert len(words) == G.order
    assert words[G.identity] == ()
    assert words[G.S] == ("S",)
    assert words[G.T] == ("T",)
    rng = random.Random(5)
    gens = {"S": G.S, "T": G.T}
    for g in rng.sample(G.elements, 25):
        acc = G.identity
        for sym in G.word_of(g):
            acc = acc * gens[sym]
        assert acc == g


def test_words_are_shortest():
    # BFS guarantees: dropping the last letter of any word gives another word
    G = psl_group(7)
    gens = {"S": G.S, "T": G.T}
    for g, w in G.words().items():
        if not w:
            continue
        acc = G.identity
        for sym in w[:-1]:
            acc = acc * gens[sym]
        assert len(G.word_of(acc)) == len(w) - 1


@pytest.mark.parametrize("p", [7, 11, 13])
def test_borel_subgroup(p):
    G = psl_group(p)
    B = G.borel()
    assert len(B) == p * (p - 1) // 2
    bset = set(B)
    rng = random.Random(3)
    for _ in range(20):
        x, y = rng.choice(B), rng.choice(B)
        assert x * y in bset


@pytest.mark.parametrize("p", [7, 11, 13])
def test_coset_decomposition_partitions(p):
    G = psl_group(p)
    reps = G.coset_reps()
    assert len(reps) == p + 1
    covered = []
    for r in reps:
        covered.extend(h * r for h in G.borel())
    assert len(covered) == G.order
    assert set(covered) == set(G.elements)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_torus_generator(p):
    d = psl_group(p).torus_generator()
    assert d.order() == (p - 1) // 2
    assert d.abcd[1] == 0 and d.abcd[2] == 0


@pytest.mark.parametrize("p,sign", [(7, 1), (11, 1), (13, -1)])
def test_weil_relations(p, sign):
    w = weil_generators(p)
    I = RepMatrix.identity(w.field, w.dim)
    assert w.S * w.S == I * sign
    assert w.T ** p == I
    assert (w.S * w.T) ** 3 == I
    assert w.central_sign == sign


@pytest.mark.parametrize(
    "p,exps", [(7, (4, 2, 1)), (11, (6, 2, 8, 10, 7)), (13, (7, 11, 8, 6, 2, 5))]
)
def test_weil_T_eigenvalues(p, exps):
    w = weil_generators(p)
    F = w.field
    for i, k in enumerate(exps):
        assert w.T.rows[i][i] == F.zeta(k)
        for j in range(w.dim):
            if j != i:
                assert w.T.rows[i][j].is_zero()


def test_weil_S_entry_structure_p11():
    # every entry of sqrt(-11) * S is a difference of two 11th roots of unity
    w = weil_generators(11)
    g = gauss_sum(11)
    for row in w.S.rows:
        for entry in row:
            cleared = entry * g
            coeffs = [c for c in cleared.coeffs if c != 0]
            assert sorted(coeffs) == [-1, 1] or _is_folded_difference(cleared)


def _is_folded_difference(x):
    # zeta^a - zeta^b reduced mod Phi_11 can smear over the power basis when
    # a or b is 10; undo the reduction by comparing against all candidates
    F = x.field
    M = F.M
    for a in range(M):
        for b in range(M):
            if a != b and F.zeta(a) - F.zeta(b) == x:
                return True
    return False


def test_sl13_auxiliary_relations():
    w = weil_generators(13)
    F = w.field
    P, Q, H = sl13_auxiliary(w)
    I = RepMatrix.identity(F, 6)
    assert (Q ** 3 * P ** 4) ** 3 == I * (-1)
    assert H ** 6 == I * (-1)
    assert H ** 12 == I
    assert (H ** -1) * w.T * H == w.T ** 4

    from fractions import Fraction

    body = [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, -1, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
    ]
    signed_perm = RepMatrix(F, [[F.from_rational(Fraction(v)) for v in row] for row in body])
    assert H == signed_perm


def test_normalizer_subgroup_order_78():
    # <H, T> in PSL: H has projective order 6, T order 13, H normalizes <T>
    G = psl_group(13)
    # H's image in PSL: reconstruct from the same word in the 2x2 group
    S2, T2 = G.S, G.T
    P2 = S2 * T2.inv() * S2
    Q2 = S2 * T2 ** 3
    H2 = Q2 ** 5 * P2 ** 4 * Q2 ** 6 * P2 ** 8 * Q2 ** 5 * P2 ** 5 * Q2
    assert H2.inv() * T2 * H2 == T2 ** 4
    sub = {G.identity}
    frontier = [G.identity]
    gens = [H2, T2]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in sub:
                    sub.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(sub) == 78


@pytest.mark.parametrize("p", [7, 11])
def test_matrix_of_is_homomorphism(p):
    # for p = 3 mod 4 the matrix group realizes PSL itself, no sign ambiguity
    G = psl_group(p)
    w = weil_generators(p)
    rng = random.Random(11)
    for _ in range(8):
        g, h = rng.choice(G.elements), rng.choice(G.elements)
        assert matrix_of(G, w, g) * matrix_of(G, w, h) == matrix_of(G, w, g * h)


def test_matrix_of_projective_p13():
    G = psl_group(13)
    w = weil_generators(13)
    I = RepMatrix.identity(w.field, 6)
    rng = random.Random(13)
    for _ in range(5):
        g, h = rng.choice(G.elements), rng.choice(G.elements)
        lhs = matrix_of(G, w, g) * matrix_of(G, w, h)
        rhs = matrix_of(G, w, g * h)
        assert lhs == rhs or lhs == rhs * (-1)
    g = rng.choice(G.elements)
    prod = matrix_of(G, w, g) * matrix_of(G, w, g.inv())
    assert prod == I or prod == I * (-1)


def test_sl2_13_classes():
    els = sl_elements(13)
    assert len(els) == 2184
    classes = sl_classes(13)
    assert len(classes) == 17
    assert sum(c.size for c in classes) == 2184
    # -I is central: its class has size 1 and order 2
    minus = [c for c in classes if c.rep == (12, 0, 0, 12)]
    assert len(minus) == 1 and minus[0].size == 1 and minus[0].order == 2


def test_weil_generators_unknown_prime():
    with pytest.raises(ValueError):
        weil_generators(17)
