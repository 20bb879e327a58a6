"""File formats and the solution checker."""

import json

import pytest

from stackext import (
    InputError,
    Layout,
    RawSolution,
    SpineOrder,
    Violation,
    edge,
    emit_instance,
    emit_solution,
    make_instance,
    parse_instance,
    parse_solution,
    solve_exhaustive,
    verify_solution,
)
from stackext.serialize import as_layout, instance_from_doc

from reference_impl import random_corpus


def _inst():
    return make_instance(
        2,
        ["a", "b", "c", "d"],
        [("a", "c", 1), ("b", "d", 2)],
        ["x"],
        [("x", "a"), ("x", "d"), ("b", "c")],
    )


def _good_solution(inst):
    sol = solve_exhaustive(inst)
    assert sol is not None
    return sol


def test_instance_round_trips_byte_for_byte():
    for inst in random_corpus(60, seed=50_000, v_max=7, ell_max=3):
        text = emit_instance(inst)
        again = parse_instance(text)
        assert emit_instance(again) == text
        assert again == inst


def test_solution_round_trips_byte_for_byte():
    count = 0
    for inst in random_corpus(120, seed=51_000, v_max=6, ell_max=2):
        lay = solve_exhaustive(inst)
        if lay is None:
            continue
        count += 1
        text = emit_solution(lay)
        raw = parse_solution(text)
        assert emit_solution(as_layout(raw, inst.ell)) == text
    assert count >= 40


def test_emitted_files_are_canonical():
    text = emit_instance(_inst())
    doc = json.loads(text)
    assert text == json.dumps(doc, sort_keys=True, indent=2) + "\n"
    # fixed edges ordered by endpoint ranks
    pairs = [(e["u"], e["v"]) for e in doc["H"]["edges"]]
    assert pairs == [("a", "c"), ("b", "d")]


def test_parse_instance_rejects_bad_documents():
    good = json.loads(emit_instance(_inst()))
    with pytest.raises(InputError):
        parse_instance("{nope")
    for breakage in (
        lambda d: d.pop("ell"),
        lambda d: d.__setitem__("ell", True),
        lambda d: d.__setitem__("ell", "2"),
        lambda d: d.pop("H"),
        lambda d: d["H"].pop("spine"),
        lambda d: d["H"]["spine"].append(7),
        lambda d: d["H"]["edges"].append({"u": "a"}),
        lambda d: d["H"]["edges"][0].pop("page"),
        lambda d: d.pop("new_vertices"),
        lambda d: d.pop("new_edges"),
        lambda d: d["new_edges"].__setitem__(0, {"u": "x"}),
    ):
        doc = json.loads(json.dumps(good))
        breakage(doc)
        with pytest.raises(InputError):
            instance_from_doc(doc)


def test_parse_solution_shape():
    raw = parse_solution(
        '{"spine": ["a", "x", "b"], "pages": [{"u": "a", "v": "b", "page": 1}]}'
    )
    assert raw == RawSolution(("a", "x", "b"), (("a", "b", 1),))
    with pytest.raises(InputError):
        parse_solution('{"spine": ["a"]}')
    with pytest.raises(InputError):
        parse_solution("[]")


def test_as_layout_is_strict():
    raw = RawSolution(("a", "a"), ())
    with pytest.raises(InputError):
        as_layout(raw, 1)


def test_verify_accepts_real_solutions():
    inst = _inst()
    sol = _good_solution(inst)
    assert verify_solution(inst, sol) == ()
    raw = parse_solution(emit_solution(sol))
    assert verify_solution(inst, raw) == ()


def _raw_of(inst):
    sol = _good_solution(inst)
    return parse_solution(emit_solution(sol))


def _codes(violations):
    return [v.code for v in violations]


def test_violation_unknown_vertex():
    inst = _inst()
    raw = _raw_of(inst)
    got = verify_solution(
        inst, RawSolution(raw.spine + ("ghost",), raw.pages)
    )
    assert "unknown-vertex" in _codes(got)


def test_violation_missing_vertex():
    inst = _inst()
    raw = _raw_of(inst)
    got = verify_solution(inst, RawSolution(raw.spine[:-1], raw.pages))
    assert "missing-vertex" in _codes(got)


def test_violation_duplicate_vertex():
    inst = _inst()
    raw = _raw_of(inst)
    got = verify_solution(
        inst, RawSolution(raw.spine + (raw.spine[0],), raw.pages)
    )
    assert "duplicate-vertex" in _codes(got)


def test_violation_unknown_edge():
    inst = _inst()
    raw = _raw_of(inst)
    got = verify_solution(
        inst, RawSolution(raw.spine, raw.pages + (("a", "b", 1),))
    )
    assert "unknown-edge" in _codes(got)
    got = verify_solution(
        inst, RawSolution(raw.spine, raw.pages + (("a", "a", 1),))
    )
    assert "unknown-edge" in _codes(got)


def test_violation_duplicate_edge():
    inst = _inst()
    raw = _raw_of(inst)
    got = verify_solution(inst, RawSolution(raw.spine, raw.pages + raw.pages[:1]))
    assert "duplicate-edge" in _codes(got)


def test_violation_missing_edge_page():
    inst = _inst()
    raw = _raw_of(inst)
    got = verify_solution(inst, RawSolution(raw.spine, raw.pages[1:]))
    assert "missing-edge-page" in _codes(got)


def test_violation_page_out_of_range():
    inst = _inst()
    raw = _raw_of(inst)
    u, v, _ = raw.pages[0]
    got = verify_solution(
        inst, RawSolution(raw.spine, ((u, v, 99),) + raw.pages[1:])
    )
    assert "page-out-of-range" in _codes(got)


def test_violation_spine_order_changed():
    inst = _inst()
    raw = _raw_of(inst)
    flipped = tuple(reversed(raw.spine))
    got = verify_solution(inst, RawSolution(flipped, raw.pages))
    assert "spine-order-changed" in _codes(got)


def test_violation_old_edge_page_changed():
    inst = _inst()
    raw = _raw_of(inst)
    moved = tuple(
        (u, v, 2 if edge(u, v) == edge("a", "c") else p) for u, v, p in raw.pages
    )
    got = verify_solution(inst, RawSolution(raw.spine, moved))
    assert "old-edge-page-changed" in _codes(got)


def test_violation_crossing():
    inst = make_instance(
        1, ["a", "b", "c", "d"], [("a", "c", 1)], [], [("b", "d")]
    )
    raw = RawSolution(
        ("a", "b", "c", "d"),
        (("a", "c", 1), ("b", "d", 1)),
    )
    got = verify_solution(inst, raw)
    assert _codes(got) == ["crossing"]
    assert "crosses" in got[0].detail


def test_violations_are_layered():
    # a page defect must not double-report as a crossing
    inst = _inst()
    raw = _raw_of(inst)
    u, v, _ = raw.pages[0]
    got = verify_solution(
        inst, RawSolution(raw.spine, ((u, v, 99),) + raw.pages[1:])
    )
    assert "crossing" not in _codes(got)
    assert len([c for c in _codes(got) if c == "page-out-of-range"]) == 1


def test_violation_str():
    v = Violation("crossing", "a bad pair")
    assert str(v) == "crossing: a bad pair"
