"""JSON forms for instances and solutions, and a solution checker.

Instance files look like::

    { "ell": 2,
      "H": { "spine": ["a", "b"], "edges": [{"u": "a", "v": "b", "page": 1}] },
      "new_vertices": ["c"],
      "new_edges": [{"u": "a", "v": "c"}] }

Solution files carry the full spine and a page per edge of ``G``::

    { "spine": ["a", "c", "b"],
      "pages": [{"u": "a", "v": "b", "page": 1}, {"u": "a", "v": "c", "page": 2}] }

Emission is canonical: object keys sorted, two-space indent, trailing
newline, fixed edges ordered by (lower endpoint rank, higher endpoint
rank, page).  Parsing then emitting a canonical file reproduces it byte
for byte.

:func:`verify_solution` checks a candidate solution against an instance
and reports every problem as a :class:`Violation` with a stable code
instead of raising, so defective files can be diagnosed in one pass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from .model import (
    Edge,
    InputError,
    Instance,
    Layout,
    SpineOrder,
    Vertex,
    edge,
    make_instance,
)


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _need(doc: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(doc, dict):
        raise InputError(f"{where} must be an object")
    if key not in doc:
        raise InputError(f"{where} lacks {key!r}")
    val = doc[key]
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise InputError(f"{where}.{key} must be an integer")
    elif not isinstance(val, kind):
        raise InputError(f"{where}.{key} must be a {kind.__name__}")
    return val


def _name_list(val: Any, where: str) -> tuple[str, ...]:
    if not isinstance(val, list) or not all(isinstance(v, str) for v in val):
        raise InputError(f"{where} must be a list of strings")
    return tuple(val)


def _edge_obj(item: Any, where: str, with_page: bool):
    u = _need(item, "u", str, where)
    v = _need(item, "v", str, where)
    if with_page:
        return u, v, _need(item, "page", int, where)
    return u, v


# ---------------------------------------------------------------------------
# instances


def instance_to_doc(inst: Instance) -> dict:
    lay = inst.layout_h

    def rank_key(item):
        e, p = item
        a, b = lay.rank_of(e[0]), lay.rank_of(e[1])
        if a > b:
            a, b = b, a
        return a, b, p

    h_edges = []
    for e, p in sorted(lay.page_of.items(), key=rank_key):
        a, b = sorted(e, key=lay.rank_of)
        h_edges.append({"u": a, "v": b, "page": p})
    return {
        "ell": inst.ell,
        "H": {"spine": list(lay.spine.order), "edges": h_edges},
        "new_vertices": list(inst.new_vertices),
        "new_edges": [{"u": u, "v": v} for u, v in inst.new_edges],
    }


def instance_from_doc(doc: Any) -> Instance:
    ell = _need(doc, "ell", int, "instance")
    h = _need(doc, "H", dict, "instance")
    spine = _name_list(_need(h, "spine", list, "instance.H"), "instance.H.spine")
    raw_edges = _need(h, "edges", list, "instance.H")
    h_edges = [_edge_obj(it, "instance.H.edges[]", True) for it in raw_edges]
    new_vs = _name_list(
        _need(doc, "new_vertices", list, "instance"), "instance.new_vertices"
    )
    raw_new = _need(doc, "new_edges", list, "instance")
    new_es = [_edge_obj(it, "instance.new_edges[]", False) for it in raw_new]
    return make_instance(ell, spine, h_edges, new_vs, new_es)


def emit_instance(inst: Instance) -> str:
    return canonical(instance_to_doc(inst))


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None
    return instance_from_doc(doc)


# ---------------------------------------------------------------------------
# solutions


@dataclass(frozen=True)
class RawSolution:
    """A solution file as written: not yet checked against any instance."""

    spine: tuple[Vertex, ...]
    pages: tuple[tuple[Vertex, Vertex, int], ...]


def solution_to_doc(layout: Layout) -> dict:
    def rank_key(item):
        e, p = item
        a, b = layout.rank_of(e[0]), layout.rank_of(e[1])
        if a > b:
            a, b = b, a
        return a, b, p

    pages = []
    for e, p in sorted(layout.page_of.items(), key=rank_key):
        a, b = sorted(e, key=layout.rank_of)
        pages.append({"u": a, "v": b, "page": p})
    return {"spine": list(layout.spine.order), "pages": pages}


def solution_from_doc(doc: Any) -> RawSolution:
    spine = _name_list(_need(doc, "spine", list, "solution"), "solution.spine")
    raw = _need(doc, "pages", list, "solution")
    pages = tuple(_edge_obj(it, "solution.pages[]", True) for it in raw)
    return RawSolution(spine, pages)


def emit_solution(layout: Layout) -> str:
    return canonical(solution_to_doc(layout))


def parse_solution(text: str) -> RawSolution:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None
    return solution_from_doc(doc)


def as_layout(sol: RawSolution, ell: int) -> Layout:
    """Strict :class:`Layout` from a raw solution; raises on defects."""
    return Layout(
        SpineOrder(sol.spine),
        ell,
        {edge(u, v): p for u, v, p in sol.pages},
    )


# ---------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class Violation:
    """One defect of a candidate solution.

    Codes: ``unknown-vertex``, ``missing-vertex``, ``duplicate-vertex``,
    ``unknown-edge``, ``duplicate-edge``, ``missing-edge-page``,
    ``page-out-of-range``, ``spine-order-changed``,
    ``old-edge-page-changed``, ``crossing``.
    """

    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


def verify_solution(
    inst: Instance, sol: Union[RawSolution, Layout]
) -> tuple[Violation, ...]:
    """Every reason ``sol`` is not a solution of ``inst``, empty if valid.

    Checks are layered: naming problems first, then page assignments,
    then fidelity to the fixed layout, then crossings.  Later layers
    skip whatever earlier layers flagged, so each defect is reported
    once, under its most specific code.
    """
    if isinstance(sol, Layout):
        sol = RawSolution(
            sol.spine.order,
            tuple((u, v, p) for (u, v), p in sorted(sol.page_of.items())),
        )
    out: list[Violation] = []
    gset = inst.g.vertex_set
    rank: dict[Vertex, int] = {}
    for i, v in enumerate(sol.spine, start=1):
        if v not in gset:
            out.append(Violation("unknown-vertex", f"{v!r} is not a vertex"))
        if v in rank:
            out.append(Violation("duplicate-vertex", f"{v!r} appears twice"))
        else:
            rank[v] = i
    for v in inst.g.vertices:
        if v not in rank:
            out.append(Violation("missing-vertex", f"{v!r} not on the spine"))

    assigned: dict[Edge, int] = {}
    for u, v, p in sol.pages:
        if u == v:
            out.append(Violation("unknown-edge", f"self-loop at {u!r}"))
            continue
        e = edge(u, v)
        if e in assigned:
            out.append(Violation("duplicate-edge", f"{e} assigned twice"))
            continue
        assigned[e] = p
        if e not in inst.g.edge_set:
            out.append(Violation("unknown-edge", f"{e} is not an edge"))
        if not 1 <= p <= inst.ell:
            out.append(
                Violation("page-out-of-range", f"{e} on page {p}, have 1..{inst.ell}")
            )
    for e in inst.g.edges:
        if e not in assigned:
            out.append(Violation("missing-edge-page", f"{e} has no page"))

    it = iter(sol.spine)
    for v in inst.layout_h.spine:
        for w in it:
            if w == v:
                break
        else:
            out.append(
                Violation(
                    "spine-order-changed",
                    f"fixed spine broken at {v!r}",
                )
            )
            break
    for e, p in inst.layout_h.page_of.items():
        q = assigned.get(e)
        if q is not None and q != p:
            out.append(
                Violation(
                    "old-edge-page-changed", f"{e} moved from page {p} to {q}"
                )
            )

    placeable = [
        (e, p)
        for e, p in sorted(assigned.items())
        if e in inst.g.edge_set
        and 1 <= p <= inst.ell
        and e[0] in rank
        and e[1] in rank
    ]
    for i, (e1, p1) in enumerate(placeable):
        a, b = sorted((rank[e1[0]], rank[e1[1]]))
        for e2, p2 in placeable[i + 1 :]:
            if p1 != p2:
                continue
            c, d = sorted((rank[e2[0]], rank[e2[1]]))
            if a < c < b < d or c < a < d < b:
                out.append(
                    Violation("crossing", f"{e1} crosses {e2} on page {p1}")
                )
    return tuple(out)
