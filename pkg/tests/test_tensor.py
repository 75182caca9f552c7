import itertools
import random

import pytest
from sympy import QQ

from conftest import ALL_PARAMS
from ospbrauer.brauer import failed_relations, parse_word
from ospbrauer.diagrams import generator
from ospbrauer.oriented import (
    MatEndo,
    compose_oriented,
    hom_basis,
    parse_morphism,
    psi_embed,
    sequences,
)
from ospbrauer.scalars import SparseMatrix, power
from ospbrauer.superalgebra import Params, gl_embedding, lie_element, osp_basis, superbracket
from ospbrauer.tensor import (
    LabelledOrientedDiagram,
    SparseOperator,
    apply_permutation,
    brauer_operator,
    flat_index,
    functor_entry,
    functor_F,
    lie_operator,
    minimal_permutation,
    operator_from_word,
    parse_tensor_index,
    parse_vector,
    psi_sigma,
    reduced_word,
    remark_example_weight,
    sigma_tau,
    summand,
    summand_indices,
    tensor_basis,
    theta,
    unflatten,
    weight,
)


def _ids(p):
    return f"{p.m}-{p.n}-{p.mode}"


def test_tensor_basis_and_flat_index():
    p = Params(1, 1, "odd")
    labels = tensor_basis(p, 2)
    assert len(labels) == 25
    assert [flat_index(p, lab) for lab in labels] == list(range(25))
    assert unflatten(p, 7, 2) == parse_tensor_index("1~,1")
    assert summand(parse_tensor_index("0,1~,2")) == "ov^"


def test_summand_indices_partition_tensor_space():
    p = Params(1, 1, "odd")
    seen = []
    for s in sequences(2, "odd"):
        seen += summand_indices(p, s)
    assert sorted(seen) == list(range(25))


def test_sigma_signs():
    p = Params(1, 1, "even")
    sigma, _ = sigma_tau(p)
    assert sigma.entry(parse_tensor_index("2,2"), parse_tensor_index("2,2")) == -1
    assert sigma.entry(parse_tensor_index("2,1"), parse_tensor_index("1,2")) == 1
    assert sigma @ sigma == SparseOperator.identity(p, 2)


@pytest.mark.parametrize("p", ALL_PARAMS, ids=_ids)
def test_tau_squared_is_supertrace_times_tau(p):
    _, tau = sigma_tau(p)
    assert tau @ tau == tau.scale(p.supertrace)


@pytest.mark.parametrize("p", ALL_PARAMS, ids=_ids)
@pytest.mark.parametrize("d", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_operators_satisfy_brauer_relations(p, d):
    delta = QQ(p.supertrace)
    _, failures = failed_relations(
        d,
        lambda word: operator_from_word(word, p, d),
        lambda x, k: x.scale(power(delta, k)),
    )
    assert failures == []


@pytest.mark.parametrize("p", ALL_PARAMS, ids=_ids)
@pytest.mark.parametrize("d", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_operators_commute_with_osp(p, d):
    generators = [brauer_operator(kind, i, d, p) for kind in "se" for i in range(1, d)]
    for X in osp_basis(p):
        rho = lie_operator(X, p, d)
        for G in generators:
            assert rho.commutes_with(G), (X.label, G)


@pytest.mark.parametrize("p", ALL_PARAMS, ids=_ids)
@pytest.mark.parametrize("d", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_theta_psi_agrees_with_direct_operators(p, d):
    for kind, i in itertools.product("se", range(1, d)):
        via_diagrams = theta(psi_embed(generator(d, kind, i), d, p.mode), p)
        assert via_diagrams == brauer_operator(kind, i, d, p), (kind, i)


def test_theta_of_identity():
    p = Params(2, 1, "odd")
    assert theta(MatEndo.identity(2, "odd"), p) == SparseOperator.identity(p, 2)


@pytest.mark.parametrize("p", [Params(1, 1, "even"), Params(1, 1, "odd"), Params(0, 1, "odd")], ids=_ids)
def test_lie_action_is_a_representation(p):
    d = 2
    elements = osp_basis(p)
    ops = [lie_operator(X, p, d) for X in elements]
    for (X, A), (Y, B) in itertools.product(zip(elements, ops), repeat=2):
        bracket = A @ B - (B @ A).scale(-1 if X.parity and Y.parity else 1)
        assert lie_operator(superbracket(X, Y), p, d) == bracket


def test_lie_operator_on_one_factor_is_the_matrix():
    p = Params(1, 1, "odd")
    for X in osp_basis(p):
        assert lie_operator(X, p, 1).matrix == X.matrix


def _random_pairs(p, d, rng, count):
    objects = sequences(d, p.mode)
    pairs = 0
    while pairs < count:
        s, r, t = (rng.choice(objects) for _ in range(3))
        lower, upper = hom_basis(s, r), hom_basis(r, t)
        if not lower or not upper:
            continue
        pairs += 1
        yield rng.choice(upper), rng.choice(lower)


@pytest.mark.parametrize(
    "p",
    [Params(1, 1, "even"), Params(1, 1, "odd"), Params(2, 1, "even"), Params(2, 1, "odd")],
    ids=_ids,
)
def test_functor_respects_composition(p):
    rng = random.Random(20240611)
    for d in (1, 2):
        for g, f in _random_pairs(p, d, rng, 100):
            product = functor_F(g, p) @ functor_F(f, p)
            combination = compose_oriented(g, f, p.circle)
            if combination:
                assert functor_F(combination, p) == product, (str(g), str(f))
            else:
                assert product.is_zero()


@pytest.mark.parametrize("m, n", [(1, 1), (2, 1), (1, 2), (3, 0), (0, 2)])
def test_closed_circle_evaluates_to_m_minus_n(m, n):
    for mode in ("even", "odd"):
        p = Params(m, n, mode)
        cap = functor_F(parse_morphism(" | (1*,2*) | ^v"), p)
        cup = functor_F(parse_morphism("^v | (1,2) | "), p)
        circle = cap @ cup
        assert (circle.out_degree, circle.in_degree) == (0, 0)
        assert circle.entry((), ()) == m - n


def test_functor_rejects_circles_in_even_mode():
    f = parse_morphism("o | (1)(1*) | o")
    with pytest.raises(ValueError, match="even 模式"):
        functor_F(f, Params(1, 1, "even"))
    assert functor_F(f, Params(1, 1, "odd")).entry(
        parse_tensor_index("0"), parse_tensor_index("0")
    ) == 1


def test_theta_mode_mismatch():
    with pytest.raises(ValueError, match="模式"):
        theta(MatEndo.identity(1, "odd"), Params(1, 1, "even"))


@pytest.mark.parametrize("m, n, expected", [(3, 0, 1), (4, 1, 1), (1, 2, -1), (2, 1, -1), (0, 3, 1)])
def test_remark_example_weight(m, n, expected):
    assert remark_example_weight(m, n) == expected


def test_remark_example_needs_label_three():
    with pytest.raises(ValueError, match="m\\+n ≥ 3"):
        remark_example_weight(1, 1)


def test_minimal_permutation_and_reduced_word():
    assert minimal_permutation("^v", "v^") == (2, 1)
    assert minimal_permutation("^v^", "^^v") == (1, 3, 2)
    assert reduced_word((3, 1, 2)) == [1, 2]
    assert reduced_word((1, 2, 3)) == []
    with pytest.raises(ValueError, match="不存在置换"):
        minimal_permutation("^^", "^v")


def test_apply_permutation_signs():
    p = Params(1, 1, "even")
    v = {parse_tensor_index("2,2~,1"): QQ(1)}
    # 第 1、2 个因子都是奇的，交换产生 −1
    assert apply_permutation((2, 1, 3), v, p) == {parse_tensor_index("2~,2,1"): QQ(-1)}
    assert apply_permutation((3, 2, 1), v, p) == {parse_tensor_index("1,2~,2"): QQ(-1)}
    with pytest.raises(ValueError, match="不是"):
        apply_permutation((1, 1, 2), v, p)


def test_psi_sigma_matches_apply_permutation():
    p = Params(1, 1, "odd")
    s, t = "^vo", "o^v"
    op = psi_sigma(s, t, p)
    perm = minimal_permutation(s, t)
    for k in summand_indices(p, s):
        labels = unflatten(p, k, 3)
        assert op.apply({labels: QQ(1)}) == apply_permutation(perm, {labels: QQ(1)}, p)
    # W_s 以外为零
    outside = unflatten(p, summand_indices(p, "^^^")[0], 3)
    assert op.apply({outside: QQ(1)}) == {}


def test_operator_from_word_order():
    p = Params(1, 1, "even")
    word = parse_word("s1 e1")
    assert operator_from_word(word, p, 2) == brauer_operator("s", 1, 2, p) @ brauer_operator("e", 1, 2, p)
    with pytest.raises(ValueError, match="超出范围"):
        operator_from_word(parse_word("s2"), p, 2)


def test_operator_json_and_vectors():
    p = Params(1, 1, "even")
    op = SparseOperator.from_json(
        {"entries": [{"out": "1,1~", "in": "1~,1", "value": "1/2"}]}, p, 2
    )
    assert op.entry(parse_tensor_index("1,1~"), parse_tensor_index("1~,1")) == QQ(1, 2)
    assert op.to_json()["entries"][0]["value"] == "1/2"
    with pytest.raises(ValueError, match="entries"):
        SparseOperator.from_json({"rows": []}, p, 2)
    with pytest.raises(ValueError, match="长度"):
        parse_vector({"1": "1"}, p, 2)
    assert parse_vector({"1,2": "0", "2,1": "3/4"}, p, 2) == {parse_tensor_index("2,1"): QQ(3, 4)}


def test_unequal_degree_functor():
    p = Params(1, 1, "even")
    cup = functor_F(parse_morphism("^v | (1,2) | "), p)
    assert (cup.out_degree, cup.in_degree) == (2, 0)
    # 杯 = Σ_a w_a ⊗ w_ā，w_2̄ = −v_2̄
    assert cup.matrix.nnz == 2
    assert cup.entry(parse_tensor_index("1,1~"), ()) == 1
    assert cup.entry(parse_tensor_index("2,2~"), ()) == -1


def test_weight_and_matrix_entry_differ_by_dual_basis_sign():
    p = Params(1, 1, "even")
    cup = parse_morphism("^v | (1,2) | ")
    ld = LabelledOrientedDiagram(cup, bottom_labels=(), top_labels=parse_tensor_index("2,2~"))
    assert weight(ld, p) == 1
    assert functor_entry(ld, p) == -1
    through = parse_morphism("v | (1,1*) | v")
    ld = LabelledOrientedDiagram(
        through, bottom_labels=parse_tensor_index("2~"), top_labels=parse_tensor_index("2~")
    )
    assert weight(ld, p) == functor_entry(ld, p) == 1


def _objects(p, length):
    return [s for k in range(length + 1) for s in sequences(k, p.mode)]


@pytest.mark.parametrize(
    "p",
    [Params(1, 1, "even"), Params(1, 1, "odd"), Params(0, 1, "odd"), Params(2, 1, "even")],
    ids=_ids,
)
def test_functor_is_gl_equivariant(p):
    gl = gl_embedding(p)
    actions = {k: [lie_operator(X, p, k) for X in gl] for k in range(3)}
    objects = _objects(p, 2)
    for s, t in itertools.product(objects, repeat=2):
        for f in hom_basis(s, t):
            F = functor_F(f, p)
            for X, lower, upper in zip(gl, actions[len(s)], actions[len(t)]):
                assert upper @ F == F @ lower, (str(f), X.label)


@pytest.mark.parametrize("p", [Params(1, 1, "even"), Params(1, 1, "odd")], ids=_ids)
@pytest.mark.parametrize("d", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_psi_sigma_is_equivariant_and_invertible(p, d):
    gl = gl_embedding(p)
    actions = [lie_operator(X, p, d) for X in gl]
    for s, t in itertools.product(sequences(d, p.mode), repeat=2):
        if sorted(s) != sorted(t):
            continue
        forward, backward = psi_sigma(s, t, p), psi_sigma(t, s, p)
        assert backward @ forward == SparseOperator.projection(p, s), (s, t)
        for X, A in zip(gl, actions):
            assert A @ forward == forward @ A, (s, t, X.label)


def test_swap_commutes_with_all_of_gl_v():
    p = Params(1, 1, "odd")
    s1 = brauer_operator("s", 1, 2, p)
    for r, c in itertools.product(range(p.dim), repeat=2):
        E = lie_element(SparseMatrix.from_entries((p.dim, p.dim), [((r, c), 1)]), p, f"E[{r},{c}]")
        assert s1.commutes_with(lie_operator(E, p, 2)), E.label
