import pytest

import narrow


def test_initial_position_and_moves():
    p = narrow.Position("boxes", "closed", 3)
    assert p.components() == [[1, 1, 1]]
    assert p.to_move == "A"
    assert p.legal_moves() == ["L0", "L1", "L2", "I0", "I1"]
    q, captured, extra = p.play("I0")
    assert captured == [] and not extra
    assert q.to_move == "B"
    with pytest.raises(ValueError):
        q.play("I0")


def test_mirror():
    p = narrow.Position.from_components([[1, 0, 2]])
    assert p.mirror().components() == p.components()
    assert p.mirror_edge("L0") == "L2"
    assert p.mirror_edge("I0") == "I1"


def test_score_tables():
    boxes = [v for _, v in narrow.score_table("boxes", "closed", 8)]
    assert boxes == [1, -2, 3, 0, 1, 0, 3, 0]
    tri = [v for _, v in narrow.score_table("triangles", "closed", 6)]
    assert tri == [1, -3, 5, 1, 1, 5]


def test_solver():
    s = narrow.Solver()
    p = narrow.Position("triangles", "closed", 2)
    assert s.value(p) == -3
    best = s.best_move(p)
    assert best in p.legal_moves()
    assert s.move_value(p, best) == -3
    assert s.best_move(narrow.Position.from_components([[1]]).play("L0")[0]) is None


def test_memo_overflow():
    with pytest.raises(narrow.MemoOverflow):
        narrow.Solver(16).value(narrow.Position("boxes", "closed", 12))


def test_guarantee():
    r = narrow.guaranteed_score("triangles", "closed", 3)
    assert r["worst_net"] >= 1
    assert r["invariant_failures"] == []
    assert narrow.guaranteed_score("boxes", "open", 4)["worst_net"] >= 0
    with pytest.raises(ValueError):
        narrow.guaranteed_score("triangles", "closed", 2)
    assert not narrow.strategy_supported("triangles", "closed", 2)
    assert narrow.first_move("triangles", "closed", 5) == "L4"


def test_analysis():
    p = narrow.Position.from_components([[1, 1]])
    assert [c["category"] for c in narrow.chains(p)] == ["medium"]
    assert narrow.classify_edge(p, "I0") == "good"
    assert narrow.classify_edge(p, "L0", "direct") == "bad"
    assert [c["category"] for c in narrow.chains(narrow.Position.from_components([[1, 0, 1]]))] == ["long"]
    q = narrow.Position.from_components([[1, 0]])
    assert narrow.double_deals(q) == [("I0", "L0")]


def test_scenarios():
    assert narrow.scenario_names() == ["fig9_unmirrorable", "fig10_zugzwang"]
    for name in narrow.scenario_names():
        assert narrow.scenario_check(name)["passed"]


def test_board_io():
    b = narrow.initial_board("boxes", "closed", 2)
    assert b.startswith("boxes:closed:2/")
    after = narrow.board_play(b, "V1")
    assert narrow.board_position(after).to_move == "B"
    assert "+---+---+" in narrow.render(b)
    assert '"spec"' in narrow.board_json(after)


def test_service():
    svc = narrow.GameService()
    created = svc.create(
        {"spec": {"game": "triangles", "boundary": "closed", "n": 3}, "engine_role": "first", "engine_mode": "constructive"}
    )
    assert created["engine_replies"] == ["B1"]
    state = created["state"]
    while state["legal_moves"]:
        state = svc.submit_move(created["id"], {"edge": state["legal_moves"][0]})["state"]
    assert state["net_score"] >= 1
    with pytest.raises(narrow.ServiceError) as err:
        svc.fetch("missing")
    assert err.value.args[:2] == (404, "not_found")
    assert svc.session_count == 1
