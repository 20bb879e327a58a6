"""Solvers for the easier instance shapes.

* ``solve_edges_only``: no new vertices.  Safe new edges (those fitting
  on at least as many pages as there are new edges left) can be set
  aside and re-added greedily afterwards, so only a small core is
  brute-forced.
* ``solve_one_vertex``: one new vertex, every new edge attached to it.
  A left-to-right first-fit over the gaps is exact here.
* ``solve_xp``: fully general.  Enumerates all spine extensions and
  settles the page assignment of each like ``solve_edges_only``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .model import (
    Edge,
    Graph,
    Instance,
    InputError,
    Layout,
    SpineOrder,
    Vertex,
    edge,
    gap_sees_vertex,
)
from .oracle import assemble_spine


@dataclass
class SolveStats:
    """Mutable counter bag a solver fills when handed in."""

    branches: int = 0
    cells: int = 0
    algorithm: str = ""


def candidate_pages(inst: Instance, e: Edge) -> frozenset[int]:
    """Pages on which new edge ``e`` fits against the fixed layout alone.

    Both endpoints of ``e`` must already lie on the spine.  Interaction
    with other new edges is deliberately ignored.
    """
    e = edge(*e)
    if e not in set(inst.new_edges):
        raise InputError(f"{e!r} is not a new edge of the instance")
    layout = inst.layout_h
    a, b = sorted((layout.rank_of(e[0]), layout.rank_of(e[1])))
    good = set(range(1, inst.ell + 1))
    for f, p in layout.page_of.items():
        if p not in good:
            continue
        x, y = sorted((layout.rank_of(f[0]), layout.rank_of(f[1])))
        if x < a < y < b or a < x < b < y:
            good.discard(p)
    return frozenset(good)


def _removal_order(
    edges: Sequence[Edge], fit_count: dict[Edge, int]
) -> tuple[list[Edge], list[Edge]]:
    # repeatedly take the first edge fitting on >= len(remaining) pages
    remaining = list(edges)
    removed: list[Edge] = []
    while True:
        for e in remaining:
            if fit_count[e] >= len(remaining):
                remaining.remove(e)
                removed.append(e)
                break
        else:
            return remaining, removed


def reduce_safe_edges(inst: Instance) -> tuple[Instance, tuple[Edge, ...]]:
    """Strip new edges that are safe to postpone.

    Precondition: no new vertices.  While some new edge fits on at least
    as many pages (against the fixed layout) as there are new edges left,
    remove the first such edge in canonical order.  The removed edges can
    always be re-added after the rest is placed, each on a page no other
    new edge uses, so the reduced instance is extendable if and only if
    the original is.  Returns the reduced instance and the removal order.
    """
    if inst.n_add != 0:
        raise InputError("safe-edge reduction needs an instance without new vertices")
    fits = {e: len(candidate_pages(inst, e)) for e in inst.new_edges}
    remaining, removed = _removal_order(inst.new_edges, fits)
    if not removed:
        return inst, ()
    kept = set(inst.h.edges) | set(remaining)
    g = Graph(inst.g.vertices, tuple(sorted(kept)))
    return Instance(inst.ell, g, inst.h, inst.layout_h), tuple(removed)


def _page_fits(
    h_list: Sequence[tuple[int, int, int]], a: int, b: int, ell: int
) -> set[int]:
    good = set(range(1, ell + 1))
    for x, y, p in h_list:
        if p in good and (x < a < y < b or a < x < b < y):
            good.discard(p)
    return good


def _assign_with_fits(new_pairs, fits, ell: int) -> Optional[list[int]]:
    """Page per endpoint pair given per-pair page options, or ``None``.

    Pair endpoints only need to be comparable; equal endpoints mean a
    shared vertex, which never blocks.  Pairs that fit on at least as
    many pages as there are pairs left are set aside first and re-added
    greedily afterwards on a page no other pair uses, so only a small
    core is brute-forced (pages ascending, pairs in given order).
    """
    order = list(range(len(new_pairs)))
    remaining = list(order)
    removed: list[int] = []
    while True:
        for i in remaining:
            if len(fits[i]) >= len(remaining):
                remaining.remove(i)
                removed.append(i)
                break
        else:
            break

    chosen: dict[int, int] = {}
    added: dict[int, list] = {p: [] for p in range(1, ell + 1)}

    def rec(t: int) -> bool:
        if t == len(remaining):
            return True
        i = remaining[t]
        a, b = new_pairs[i]
        for p in sorted(fits[i]):
            if any(x < a < y < b or a < x < b < y for x, y in added[p]):
                continue
            chosen[i] = p
            added[p].append((a, b))
            if rec(t + 1):
                return True
            added[p].pop()
            del chosen[i]
        return False

    if not rec(0):
        return None
    for i in reversed(removed):
        used = set(chosen.values())
        free = sorted(set(fits[i]) - used)
        if not free:
            raise RuntimeError("safe-edge invariant violated")
        chosen[i] = free[0]
    return [chosen[i] for i in order]


def _edges_only_pages(
    h_list: Sequence[tuple[int, int, int]],
    new_pairs: Sequence[tuple[int, int]],
    ell: int,
) -> Optional[list[int]]:
    """Page per new endpoint pair against fixed ``(lo, hi, page)`` triples."""
    fits: list[set[int]] = []
    for a, b in new_pairs:
        fit = _page_fits(h_list, a, b, ell)
        if not fit:
            return None
        fits.append(fit)
    return _assign_with_fits(new_pairs, fits, ell)


def _h_rank_list(layout: Layout) -> list[tuple[int, int, int]]:
    out = []
    for e, p in layout.page_of.items():
        a, b = layout.rank_of(e[0]), layout.rank_of(e[1])
        out.append((a, b, p) if a < b else (b, a, p))
    out.sort()
    return out


def solve_edges_only(inst: Instance) -> Optional[Layout]:
    """Exact solver for instances without new vertices.

    Sets safe edges aside, brute-forces the surviving core over per-edge
    candidate pages (pages ascending, edges in canonical order), then
    re-adds the removed edges in reverse removal order, each on the
    smallest candidate page no other new edge uses.  Such a page always
    exists by the removal rule.
    """
    if inst.n_add != 0:
        raise InputError("edges-only solver needs an instance without new vertices")
    layout = inst.layout_h
    new_pairs = [
        tuple(sorted((layout.rank_of(u), layout.rank_of(v))))
        for u, v in inst.new_edges
    ]
    chosen = _edges_only_pages(_h_rank_list(layout), new_pairs, inst.ell)
    if chosen is None:
        return None
    full = dict(layout.page_of)
    full.update(zip(inst.new_edges, chosen))
    return Layout(layout.spine, inst.ell, full)


def solve_one_vertex(inst: Instance) -> Optional[Layout]:
    """Exact first-fit solver for one new vertex with all new edges at it.

    Scans the gaps left to right; within a gap assigns every new edge the
    smallest page from which the gap sees the edge's old endpoint.  Edges
    sharing the new vertex cannot cross each other, so per-edge choices
    are independent and the first completely served gap is a solution.
    """
    if inst.n_add != 1 or inst.new_old_edges:
        raise InputError(
            "one-vertex solver needs exactly one new vertex and no new edge "
            "between old vertices"
        )
    (v,) = inst.new_vertices
    layout = inst.layout_h
    for g in range(1, inst.gap_count + 1):
        pages = {}
        for e in inst.new_edges:
            u = e[0] if e[1] == v else e[1]
            p = next(
                (
                    p
                    for p in range(1, inst.ell + 1)
                    if gap_sees_vertex(layout, g, u, p)
                ),
                None,
            )
            if p is None:
                break
            pages[e] = p
        else:
            spine = assemble_spine(layout.spine.order, [(g, v)])
            full = dict(layout.page_of)
            full.update(pages)
            return Layout(SpineOrder(spine), inst.ell, full)
    return None


def _colex_multisets(top: int, k: int) -> Iterator[tuple[int, ...]]:
    # ascending k-multisets over 1..top in colexicographic order
    if k == 0:
        yield ()
        return
    for last in range(1, top + 1):
        for rest in _colex_multisets(last, k - 1):
            yield rest + (last,)


def feasible_gaps(inst: Instance) -> dict[Vertex, frozenset[int]]:
    """Per new vertex: gaps from which every old neighbour is visible on
    some page.  A placement outside this set puts some of the vertex's
    edges across a fixed edge on every page, so spine candidates
    violating it can be skipped without losing solutions."""
    layout = inst.layout_h
    old = inst.h.vertex_set
    nbrs: dict[Vertex, set[Vertex]] = {v: set() for v in inst.new_vertices}
    for u, v in inst.new_edges:
        if u in nbrs and v in old:
            nbrs[u].add(v)
        if v in nbrs and u in old:
            nbrs[v].add(u)
    pairs_by_page = {
        p: [
            tuple(sorted((layout.rank_of(u), layout.rank_of(v))))
            for u, v in layout.edges_on_page(p)
        ]
        for p in range(1, inst.ell + 1)
    }
    all_gaps = frozenset(range(1, inst.gap_count + 1))

    def visible_from(u: Vertex) -> frozenset[int]:
        ru = layout.rank_of(u)
        good = []
        for g in range(1, inst.gap_count + 1):
            a, b = sorted((2 * g - 1, 2 * ru))  # gap sits between ranks
            for pairs in pairs_by_page.values():
                if not any(
                    2 * x < a < 2 * y < b or a < 2 * x < b < 2 * y
                    for x, y in pairs
                ):
                    good.append(g)
                    break
        return frozenset(good)

    seen: dict[Vertex, frozenset[int]] = {}
    out = {}
    for v, us in nbrs.items():
        gaps = all_gaps
        for u in us:
            if u not in seen:
                seen[u] = visible_from(u)
            gaps = gaps & seen[u]
        out[v] = gaps
    return out


def solve_xp(inst: Instance, stats: Optional[SolveStats] = None) -> Optional[Layout]:
    """General exact solver, exponential only in the number of new vertices.

    Enumerates gap multisets in colexicographic order and new-vertex
    orders lexicographically; every spine candidate turns the instance
    into one without new vertices, settled like ``solve_edges_only``.
    ``stats.branches`` counts the (multiset, order) pairs considered,
    at most ``(n_H + 1) * ... * (n_H + n_add)`` in total.
    """
    if stats is not None:
        stats.algorithm = "xp"
    news = inst.new_vertices
    if not news:
        if stats is not None:
            stats.branches += 1
        return solve_edges_only(inst)
    layout = inst.layout_h
    ell = inst.ell
    old = inst.h.vertex_set
    ok_gaps = feasible_gaps(inst)
    base_assign = dict(layout.page_of)
    h_pairs = []
    for e, p in base_assign.items():
        a, b = layout.rank_of(e[0]), layout.rank_of(e[1])
        h_pairs.append((a, b, p) if a < b else (b, a, p))

    # Doubled coordinates: a vertex of rank r sits at 2r, a new vertex
    # dropped into gap g at 2g - 1, wherever the other insertions land.
    # Page options per new edge therefore depend only on its endpoint
    # coordinates and can be cached across spine candidates.
    def pages_left(a2: int, b2: int) -> frozenset[int]:
        good = set(range(1, ell + 1))
        for x, y, p in h_pairs:
            if p in good:
                x2, y2 = 2 * x, 2 * y
                if x2 < a2 < y2 < b2 or a2 < x2 < b2 < y2:
                    good.discard(p)
        return frozenset(good)

    cache: dict[tuple[int, int], frozenset[int]] = {}

    def cached_fit(a2: int, b2: int) -> frozenset[int]:
        if b2 < a2:
            a2, b2 = b2, a2
        key = (a2, b2)
        f = cache.get(key)
        if f is None:
            f = cache[key] = pages_left(a2, b2)
        return f

    templates = []
    for u, v in inst.new_edges:
        if u in old and v in old:
            a, b = sorted((layout.rank_of(u), layout.rank_of(v)))
            templates.append(("oo", a, b))
        elif u in old:
            templates.append(("ao", layout.rank_of(u), v))
        elif v in old:
            templates.append(("ao", layout.rank_of(v), u))
        else:
            templates.append(("nn", u, v))

    for slots in _colex_multisets(inst.gap_count, len(news)):
        for perm in itertools.permutations(news):
            if stats is not None:
                stats.branches += 1
            if any(g not in ok_gaps[v] for g, v in zip(slots, perm)):
                continue
            gap_of = dict(zip(perm, slots))
            tie_of = {v: t for t, v in enumerate(perm, start=1)}
            fits = []
            pairs = []
            for kind, lhs, rhs in templates:
                if kind == "oo":
                    f = cached_fit(2 * lhs, 2 * rhs)
                    a, b = (2 * lhs, 0), (2 * rhs, 0)
                elif kind == "ao":
                    g = gap_of[rhs]
                    f = cached_fit(2 * lhs, 2 * g - 1)
                    a, b = (2 * lhs, 0), (2 * g - 1, tie_of[rhs])
                else:
                    f = cached_fit(2 * gap_of[lhs] - 1, 2 * gap_of[rhs] - 1)
                    a = (2 * gap_of[lhs] - 1, tie_of[lhs])
                    b = (2 * gap_of[rhs] - 1, tie_of[rhs])
                if not f:
                    fits = None
                    break
                fits.append(f)
                pairs.append((a, b) if a < b else (b, a))
            if fits is None:
                continue
            chosen = _assign_with_fits(pairs, fits, ell)
            if chosen is not None:
                spine = assemble_spine(layout.spine.order, zip(slots, perm))
                full = dict(base_assign)
                full.update(zip(inst.new_edges, chosen))
                return Layout(SpineOrder(spine), inst.ell, full)
    return None
