import itertools

import pytest
from sympy import QQ

from ospbrauer.brauer import evaluate_word, parse_word
from ospbrauer.centralizer import (
    MODULAR,
    RATIONAL,
    VerificationReport,
    brauer_action_rank,
    classical_bound,
    commutant,
    commutant_parity_split,
    decompose_in_brauer_basis,
    gl_intertwiner_dim,
    hypotheses_satisfied,
    osp_commutant,
    osp_commutant_dim,
    verify_theorem_A,
)
from ospbrauer.config import Settings
from ospbrauer.diagrams import GeneralizedDiagram, generator
from ospbrauer.oriented import hom_vanishing_predicate, psi_embed, sequences
from ospbrauer.superalgebra import Params
from ospbrauer.tensor import SparseOperator, brauer_operator, operator_from_word, theta

REPORT_KEYS = {
    "m", "n", "mode", "d", "delta", "brauer_dim", "image_rank",
    "commutant_dim", "injective", "surjective", "iso", "hypotheses_satisfied",
}


def test_commutant_of_scalars_is_everything():
    p = Params(1, 0, "odd")
    basis = commutant([SparseOperator.identity(p, 1)])
    assert basis.dimension == 9
    assert basis.method == RATIONAL


def test_commutant_of_full_action_is_one_dimensional():
    p = Params(1, 0, "odd")
    assert osp_commutant_dim(p, 1) == 1


def test_commutant_rejects_bad_input():
    p = Params(1, 1, "even")
    with pytest.raises(ValueError, match="为空"):
        commutant([])
    with pytest.raises(ValueError, match="dim=3"):
        commutant([SparseOperator.identity(p, 1)], dim=3)


@pytest.mark.parametrize(
    "m, n, mode, d, expected",
    [
        (1, 1, "even", 2, 3),
        (1, 1, "odd", 2, 3),
        (2, 0, "even", 2, 4),
        (0, 1, "even", 1, 1),
        (0, 1, "even", 2, 2),
        (1, 0, "odd", 2, 3),
        pytest.param(2, 1, "even", 3, 15, marks=pytest.mark.slow),
    ],
)
def test_osp_commutant_dimensions(m, n, mode, d, expected):
    assert osp_commutant_dim(Params(m, n, mode), d, exact=True) == expected


def test_commutant_operators_commute_with_brauer_image():
    p = Params(1, 1, "even")
    basis = osp_commutant(p, 2, exact=True)
    assert len(basis.operators) == 3
    for f in basis.operators:
        assert f.commutes_with(brauer_operator("s", 1, 2, p))
        assert f.commutes_with(brauer_operator("e", 1, 2, p))


def test_parity_split():
    p = Params(1, 1, "even")
    basis = osp_commutant(p, 2, exact=True)
    assert commutant_parity_split(basis, p, 2) == (3, 0)


@pytest.mark.parametrize(
    "m, n, mode, expected",
    [(1, 1, "even", 3), (2, 0, "even", 3), (1, 0, "odd", 3), (0, 1, "even", 2)],
)
def test_brauer_action_rank(m, n, mode, expected):
    assert brauer_action_rank(Params(m, n, mode), 2, exact=True) == expected


def test_gl_intertwiners():
    p = Params(1, 1, "odd")
    assert gl_intertwiner_dim("o", "^", p) == 0
    assert gl_intertwiner_dim("^", "^", p) == 1
    assert gl_intertwiner_dim("o", "o", p) == 1
    with pytest.raises(ValueError, match="even 模式"):
        gl_intertwiner_dim("o", "^", Params(1, 1, "even"))


@pytest.mark.parametrize("d", [1, 2])
def test_gl_hom_vanishes_when_predicate_holds(d):
    p = Params(1, 1, "odd")
    for s, t in itertools.product(sequences(d, "odd"), repeat=2):
        if hom_vanishing_predicate(s, t):
            assert gl_intertwiner_dim(s, t, p) == 0, (s, t)


@pytest.mark.parametrize(
    "m, n, mode, d, expected",
    [
        (2, 0, "even", 1, True),
        (2, 0, "even", 2, False),
        (0, 2, "even", 2, True),
        (0, 1, "even", 2, False),
        (1, 0, "odd", 1, True),
        (1, 0, "odd", 2, False),
        (1, 1, "odd", 2, True),
    ],
)
def test_hypotheses_satisfied(m, n, mode, d, expected):
    assert hypotheses_satisfied(Params(m, n, mode), d) is expected


@pytest.mark.parametrize(
    "m, n, mode, d, expected",
    [(1, 0, "odd", 3, True), (1, 0, "odd", 4, False), (1, 1, "odd", 2, None), (1, 0, "even", 1, None)],
)
def test_classical_bound(m, n, mode, d, expected):
    assert classical_bound(Params(m, n, mode), d) is expected


# ────────────────────────── 分解 ──────────────────────────


def test_decompose_linear_combination():
    p = Params(1, 1, "even")
    e1, one = generator(2, "e", 1), GeneralizedDiagram.identity(2)
    f = brauer_operator("e", 1, 2, p).scale(2) + SparseOperator.identity(p, 2)
    coefficients, residual = decompose_in_brauer_basis(f, p, 2)
    assert coefficients == {e1: QQ(2), one: QQ(1)}
    assert residual.is_zero()


def test_decompose_every_diagram_recovers_itself():
    p = Params(1, 1, "odd")
    for kind in ("s", "e"):
        b = generator(2, kind, 1)
        coefficients, residual = decompose_in_brauer_basis(theta(psi_embed(b, 2, "odd"), p), p, 2)
        assert coefficients == {b: QQ(1)}
        assert residual.is_zero()


@pytest.mark.slow
def test_decompose_product_of_generators():
    p = Params(2, 1, "even")
    word = parse_word("e1 s2")
    expected = dict(evaluate_word(word, 3, p.supertrace).items())
    coefficients, residual = decompose_in_brauer_basis(operator_from_word(word, p, 3), p, 3)
    assert coefficients == expected
    assert residual.is_zero()


def test_decompose_errors():
    p = Params(1, 1, "even")
    with pytest.raises(ValueError, match="不符"):
        decompose_in_brauer_basis(SparseOperator.identity(p, 1), p, 2)
    with pytest.raises(ValueError, match="osp 等变"):
        decompose_in_brauer_basis(SparseOperator.projection(p, "^^"), p, 2)
    small = Params(1, 0, "odd")
    with pytest.raises(RuntimeError, match="m\\+n"):
        decompose_in_brauer_basis(SparseOperator.identity(small, 2), small, 2)


def test_commutant_element_outside_image_leaves_residual():
    p = Params(2, 0, "even")
    basis = osp_commutant(p, 2, exact=True)
    residuals = [decompose_in_brauer_basis(f, p, 2)[1] for f in basis.operators]
    assert any(not r.is_zero() for r in residuals)


# ────────────────────────── 验证报告 ──────────────────────────


def test_verify_isomorphism_case(settings):
    report = verify_theorem_A(Params(1, 1, "even"), 2, settings=settings)
    assert report.brauer_dim == 3
    assert report.image_rank == 3
    assert report.commutant_dim == 3
    assert report.injective and report.surjective and report.iso
    assert report.hypotheses_satisfied
    assert report.method == RATIONAL
    assert report.image_equivariant
    assert report.decomposition_residuals == [0, 0, 0]
    assert report.delta == 0
    assert REPORT_KEYS <= set(report.to_dict())


def test_verify_orthogonal_failure(settings):
    report = verify_theorem_A(Params(2, 0, "even"), 2, settings=settings)
    assert (report.brauer_dim, report.image_rank, report.commutant_dim) == (3, 3, 4)
    assert report.injective
    assert not report.surjective
    assert not report.iso
    assert not report.hypotheses_satisfied


def test_verify_odd_orthogonal_beyond_hypotheses(settings):
    report = verify_theorem_A(Params(1, 0, "odd"), 2, settings=settings)
    assert report.iso
    assert not report.hypotheses_satisfied
    assert report.classical_bound is True
    assert report.decomposition_residuals == []


def test_verify_symplectic_rank_drop(settings):
    report = verify_theorem_A(Params(0, 1, "even"), 2, settings=settings)
    assert report.image_rank == 2
    assert report.image_rank <= report.brauer_dim
    assert not report.injective


def test_verify_modular_path(tmp_path):
    settings = Settings(modular_threshold=10, cache_dir=str(tmp_path))
    report = verify_theorem_A(Params(1, 1, "even"), 2, settings=settings)
    assert report.method == MODULAR
    assert len(report.primes) == 2
    assert (report.commutant_even_dim, report.commutant_odd_dim) == (None, None)
    assert report.commutant_dim == 3
    assert report.iso


def test_verify_exact_overrides_threshold(tmp_path):
    settings = Settings(modular_threshold=10, cache_dir=str(tmp_path))
    report = verify_theorem_A(Params(1, 1, "even"), 2, exact=True, settings=settings)
    assert report.method == RATIONAL
    assert report.commutant_even_dim == 3


def test_verify_budget(tmp_path):
    settings = Settings(max_tensor_dim=10, cache_dir=str(tmp_path))
    with pytest.raises(RuntimeError, match="max_tensor_dim"):
        verify_theorem_A(Params(1, 1, "even"), 2, settings=settings)


def test_report_round_trip_ignores_unknown_keys(settings):
    report = verify_theorem_A(Params(0, 1, "even"), 1, settings=settings)
    data = report.to_dict()
    data["created_by"] = "someone"
    assert VerificationReport.from_dict(data) == report
    assert "同构" in report.summary()
