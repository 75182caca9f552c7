import dataclasses
import json

import pytest

from ospbrauer import SchurWeylClient
from ospbrauer.cache import ReportCache
from ospbrauer.centralizer import VerificationReport
from ospbrauer.diagrams import parse_diagram
from ospbrauer.services import DecompositionService, RenderService, VerificationService, render_svg
from ospbrauer.services import verification as verification_module
from ospbrauer.superalgebra import Params
from ospbrauer.tensor import SparseOperator, brauer_operator, parse_tensor_index


def _fake_report(**changes):
    data = dict(
        m=1, n=1, mode="even", d=2, delta=0, brauer_dim=3, image_rank=3, commutant_dim=3,
        injective=True, surjective=True, iso=True, hypotheses_satisfied=True,
    )
    data.update(changes)
    return VerificationReport(**data)


@pytest.fixture
def client(settings):
    return SchurWeylClient(settings=settings, log_level=None)


# ────────────────────────── 验证服务 ──────────────────────────


def test_verification_uses_cache(settings, monkeypatch):
    calls = []

    def fake_verify(p, d, exact=False, settings=None, on_progress=None):
        calls.append((p, d, exact))
        return _fake_report()

    monkeypatch.setattr(verification_module, "verify_theorem_A", fake_verify)
    svc = VerificationService(settings, ReportCache(settings.cache_dir))
    first = svc.verify(1, 1, "even", 2)
    second = svc.verify(1, 1, "even", 2)
    assert first == second
    assert len(calls) == 1

    svc.verify(1, 1, "even", 2, exact=True)
    svc.verify(1, 1, "even", 2, use_cache=False)
    assert len(calls) == 3


def test_verification_progress_reports_each_stage(settings):
    events = []
    svc = VerificationService(settings)
    svc.verify(1, 1, "even", 2, on_progress=lambda stage, pct, msg: events.append((stage, pct)))
    assert [stage for stage, _ in events] == ["准备", "Brauer 像", "交换子", "分解", "完成"]
    percents = [pct for _, pct in events]
    assert percents == sorted(percents)
    assert (percents[0], percents[-1]) == (0, 100)


def test_verification_progress_skips_decomposition_in_modular_mode(settings):
    modular = dataclasses.replace(settings, modular_threshold=1)
    events = []
    VerificationService(modular).verify(1, 1, "even", 2, on_progress=lambda s, pct, msg: events.append(s))
    assert events == ["准备", "Brauer 像", "交换子", "完成"]


def test_verification_progress_on_cache_hit(settings, monkeypatch):
    monkeypatch.setattr(verification_module, "verify_theorem_A", lambda *a, **kw: _fake_report())
    svc = VerificationService(settings, ReportCache(settings.cache_dir))
    svc.verify(1, 1, "even", 2)
    events = []
    svc.verify(1, 1, "even", 2, on_progress=lambda stage, pct, msg: events.append((stage, pct)))
    assert events == [("完成", 100)]


def test_verification_rejects_bad_parameters(settings):
    svc = VerificationService(settings)
    with pytest.raises(ValueError, match="不能为负"):
        svc.verify(1, 1, "even", -1)
    with pytest.raises(ValueError, match="模式"):
        svc.verify(1, 1, "super", 1)


def test_verify_relations(settings):
    report = VerificationService(settings).verify_relations(3, "7/2")
    assert report.ok
    assert report.to_dict()["delta"] == "7/2"


# ────────────────────────── 分解服务 ──────────────────────────


def test_decomposition_of_identity(settings):
    p = Params(1, 1, "even")
    result = DecompositionService(settings).decompose(SparseOperator.identity(p, 2), p, 2)
    assert result.coefficients == [("(1,1*)(2,2*)", "1")]
    assert result.in_image
    assert result.to_dict()["coefficients"] == {"(1,1*)(2,2*)": "1"}


def test_load_operator(settings, tmp_path):
    p = Params(1, 1, "even")
    svc = DecompositionService(settings)
    path = tmp_path / "op.json"
    path.write_text(brauer_operator("e", 1, 2, p).dumps(), encoding="utf-8")
    op = svc.load_operator(str(path), p, 2)
    assert op == brauer_operator("e", 1, 2, p)

    result = svc.decompose(op, p, 2)
    assert result.coefficients == [("(1,2)(1*,2*)", "1")]
    saved = result.save(str(tmp_path / "out" / "decomposition.json"))
    assert json.loads(open(saved, encoding="utf-8").read())["in_image"] is True


def test_load_operator_errors(settings, tmp_path):
    p = Params(1, 1, "even")
    svc = DecompositionService(settings)
    with pytest.raises(FileNotFoundError):
        svc.load_operator(str(tmp_path / "missing.json"), p, 2)
    bad = tmp_path / "bad.json"
    bad.write_text("{oops", encoding="utf-8")
    with pytest.raises(ValueError, match="JSON"):
        svc.load_operator(str(bad), p, 2)


# ────────────────────────── 渲染 ──────────────────────────


def test_render_svg_contains_blocks():
    b = parse_diagram("(1,2)(3,1*)(2*)(3*)", 3, 3)
    text = render_svg(b)
    assert text.startswith("<svg")
    assert text.count("<circle") == 2
    assert "<path" in text


def test_render_orientation_markers(tmp_path):
    b = parse_diagram("(1,2*)(2,1*)", 2, 2)
    result = RenderService().render(b, "^v", "v^")
    assert "∧" in result.svg_text and "∨" in result.svg_text
    path = result.save(str(tmp_path / "s1.svg"))
    assert open(path, encoding="utf-8").read() == result.svg_text
    with pytest.raises(ValueError, match="不是合法的定向图"):
        render_svg(b, "^^", "vv")
    with pytest.raises(ValueError, match="同时给出"):
        render_svg(b, "^v", None)


# ────────────────────────── 客户端 ──────────────────────────


def test_client_multiply(client):
    assert client.multiply("e1 e1", 2, 0).is_zero()
    x = client.multiply("e1 e1", 2, 3)
    assert x.to_json() == {"(1,2)(1*,2*)": "3"}


def test_client_hom_dims(client):
    assert client.hom_dim("o", "^") == 0
    assert client.hom_dim("^v", "v^") == 2
    assert client.gl_intertwiner_dim("^", "^", 1, 1) == 1


def test_client_act(client):
    out = client.act(1, 1, "even", 2, "s1", {"1,2": "1", "2,2": "1"})
    assert out == {parse_tensor_index("2,1"): 1, parse_tensor_index("2,2"): -1}


def test_client_act_budget(tmp_path):
    client = SchurWeylClient(cache_dir=str(tmp_path), max_tensor_dim=10, log_level=None)
    with pytest.raises(RuntimeError, match="max_tensor_dim"):
        client.act(1, 1, "even", 2, "s1", {"1,2": "1"})


def test_client_render_with_orientation(client):
    result = client.render("(1,2)(1*,2*)", top="^v", bottom="^v")
    assert result.diagram == "(1,2)(1*,2*)"
