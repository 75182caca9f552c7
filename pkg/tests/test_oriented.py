import itertools

import pytest

from ospbrauer.brauer import basis, failed_relations, multiply
from ospbrauer.diagrams import GeneralizedDiagram, enumerate_brauer, generator
from ospbrauer.oriented import (
    MatEndo,
    OrientedMorphism,
    compose_combinations,
    compose_oriented,
    format_morphism,
    hom_basis,
    hom_dim,
    hom_vanishing_predicate,
    identity_morphism,
    mat_compose,
    mat_scale,
    orientations,
    parse_morphism,
    parse_sequence,
    psi_element,
    psi_embed,
    reduce,
    sequences,
)
from ospbrauer.scalars import power, vector_rank


def test_parse_sequence_aliases():
    assert parse_sequence("∧∨∘") == "^vo"
    assert parse_sequence("^, v") == "^v"
    with pytest.raises(ValueError, match="非法字符"):
        parse_sequence("^x")


def test_sequences():
    assert len(sequences(2, "odd")) == 9
    assert sequences(1, "even") == ["^", "v"]


@pytest.mark.parametrize(
    "s, t, expected",
    [
        ("o", "^", 0),
        ("^", "^", 1),
        ("^v", "", 1),
        ("", "^v", 1),
        ("^v", "^v", 2),
        ("^^", "^^", 2),
        ("^v", "v^", 2),
        ("^v^", "^", 2),
        ("oo", "oo", 1),
    ],
)
def test_hom_dim(s, t, expected):
    assert hom_dim(s, t) == expected


@pytest.mark.parametrize("d", [1, 2, 3])
def test_hom_vanishing_predicate_matches_hom_basis(d):
    for s, t in itertools.product(sequences(d, "odd"), repeat=2):
        assert hom_vanishing_predicate(s, t) == (not hom_basis(s, t)), (s, t)


def test_hom_vanishing_unequal_lengths():
    assert hom_vanishing_predicate("^v^", "^^")
    assert not hom_vanishing_predicate("^v^", "^")


def test_orientation_condition():
    with pytest.raises(ValueError, match="不是合法的定向图"):
        OrientedMorphism("^^", generator(2, "e", 1), "^v")
    with pytest.raises(ValueError, match="不是合法的定向图"):
        OrientedMorphism("^", GeneralizedDiagram.identity(1), "v")


def test_morphism_literal():
    f = parse_morphism("^v | (1,2)(1*,2*) | v^")
    assert format_morphism(f) == "^v | (1,2)(1*,2*) | v^"
    with pytest.raises(ValueError, match="t \\| diagram \\| s"):
        parse_morphism("^v (1,2)")


def test_compose_closes_circles():
    f = parse_morphism("^v | (1,2)(1*,2*) | ^v")
    assert compose_oriented(f, f, 3) == {f: 3}
    assert compose_oriented(f, f, 0) == {}
    g = parse_morphism("v^ | (1,2)(1*,2*) | v^")
    with pytest.raises(ValueError, match="无法复合"):
        compose_oriented(f, g, 1)


def test_reduce_drops_circles():
    f = parse_morphism("o^ | (1)(2,2*)(1*) | o^")
    assert reduce(f) == identity_morphism("^")
    assert reduce("o^vo") == "^v"


def test_orientations_of_e1():
    oriented = list(orientations(generator(2, "e", 1)))
    assert {(f.top, f.bottom) for f in oriented} == {("^v", "^v"), ("^v", "v^"), ("v^", "^v"), ("v^", "v^")}


@pytest.mark.parametrize(
    "b, d, parity, entries",
    [
        (generator(2, "e", 1), 2, "odd", 9),
        (generator(2, "e", 1), 2, "even", 4),
        (GeneralizedDiagram.identity(1), 1, "odd", 3),
        (GeneralizedDiagram.identity(1), 1, "even", 2),
    ],
)
def test_psi_entry_counts(b, d, parity, entries):
    assert psi_embed(b, d, parity).nonzero_entries() == entries


def test_psi_rejects_singletons():
    with pytest.raises(ValueError, match="含单点"):
        psi_embed(GeneralizedDiagram.all_singletons(1), 1, "odd")


def _delta(c, parity):
    return 2 * c + (1 if parity == "odd" else 0)


def _psi_word_evaluator(d, parity, c):
    gens = {}

    def evaluate(word):
        result = MatEndo.identity(d, parity)
        for g in word:
            if g not in gens:
                gens[g] = psi_embed(generator(d, g.kind, g.index), d, parity)
            result = mat_compose(result, gens[g], c)
        return result

    return evaluate


@pytest.mark.parametrize("c", [-1, 0, 1, 2])
@pytest.mark.parametrize("parity", ["even", "odd"])
@pytest.mark.parametrize("d", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_psi_images_satisfy_brauer_relations(d, parity, c):
    delta = _delta(c, parity)
    _, failures = failed_relations(
        d,
        _psi_word_evaluator(d, parity, c),
        lambda x, k: mat_scale(x, power(delta, k)),
    )
    assert failures == []


@pytest.mark.parametrize("c", [-1, 0, 2])
@pytest.mark.parametrize("parity", ["even", "odd"])
def test_e_squared_circle_bookkeeping(parity, c):
    M = psi_embed(generator(2, "e", 1), 2, parity)
    assert mat_compose(M, M, c) == mat_scale(M, _delta(c, parity))


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_psi_is_multiplicative(parity):
    c = 2
    delta = _delta(c, parity)
    elements = basis(2)
    for x, y in itertools.product(elements, repeat=2):
        lhs = psi_element(multiply(x, y, delta).items(), 2, parity)
        rhs = mat_compose(psi_element(x.items(), 2, parity), psi_element(y.items(), 2, parity), c)
        assert lhs == rhs


def test_mat_identity_is_neutral():
    one = MatEndo.identity(2, "odd")
    M = psi_embed(generator(2, "s", 1), 2, "odd")
    assert mat_compose(one, M, 5) == M
    assert mat_compose(M, one, 5) == M
    with pytest.raises(ValueError, match="不兼容"):
        mat_compose(one, MatEndo.identity(2, "even"), 1)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("parity", ["even", "odd"])
def test_psi_is_faithful(d, parity):
    keys = {}
    vectors = []
    for b in enumerate_brauer(d):
        vec = psi_embed(b, d, parity).coefficient_vector()
        vectors.append({keys.setdefault(f, len(keys)): c for f, c in vec.items()})
    assert vector_rank(vectors) == len(vectors)


def _homs_up_to(length, parity):
    objects = [s for k in range(length + 1) for s in sequences(k, parity)]
    return objects, {(s, t): hom_basis(s, t) for s, t in itertools.product(objects, repeat=2)}


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_oriented_composition_is_associative(parity):
    objects, homs = _homs_up_to(2, parity)
    for s, r, q, t in itertools.product(objects, repeat=4):
        for f, g, h in itertools.product(homs[s, r], homs[r, q], homs[q, t]):
            left = compose_combinations(compose_oriented(h, g, 3), {f: 1}, 3)
            right = compose_combinations({h: 1}, compose_oriented(g, f, 3), 3)
            assert left == right, (str(h), str(g), str(f))


def test_reduce_is_a_functor():
    objects, homs = _homs_up_to(2, "odd")
    for s, r, t in itertools.product(objects, repeat=3):
        for f, g in itertools.product(homs[s, r], homs[r, t]):
            composite = compose_oriented(g, f, 5)
            expected = {reduce(h): c for h, c in composite.items()}
            assert compose_oriented(reduce(g), reduce(f), 5) == expected, (str(g), str(f))


def test_hom_vanishing_predicate_on_unequal_lengths():
    objects = [s for k in range(4) for s in sequences(k, "odd")]
    for s, t in itertools.product(objects, repeat=2):
        if hom_vanishing_predicate(s, t):
            assert hom_dim(s, t) == 0, (s, t)


def test_circles_shift_the_up_count_by_half_their_excess():
    # ℓ = #∘(s) − #∘(t) = 2，非零 Hom 要求 #∧(s) − #∧(t) = −ℓ/2
    assert hom_dim("oo", "^v") == 1
    assert not hom_vanishing_predicate("oo", "^v")
    assert hom_vanishing_predicate("oo", "^^")
