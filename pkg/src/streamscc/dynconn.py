"""Fully dynamic connectivity (Holm, de Lichtenberg and Thorup).

Every edge carries a level. ``F[i]`` is a spanning forest of the edges of
level >= i, kept as Euler tour treaps; ``F[0]`` spans the whole graph.
Deleting a tree edge of level ``l`` searches for a replacement from level
``l`` down to 0, each time scanning the smaller of the two halves and
promoting the edges it inspects, which bounds the amortized cost at
O(log^2 n) per update.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from . import _ett
from ._ett import Node


class DynConnError(KeyError):
    pass


class UnknownNode(DynConnError):
    pass


class UnknownEdge(DynConnError):
    pass


class DuplicateEdge(DynConnError):
    pass


class RemoveNonIsolated(DynConnError):
    pass


@dataclass(frozen=True)
class MergeOutcome:
    merged: bool


@dataclass(frozen=True)
class SplitOutcome:
    split: bool
    side_a: frozenset = field(default=frozenset())
    side_b: frozenset = field(default=frozenset())


def _key(u, v):
    return (u, v) if (u, v) <= (v, u) else (v, u)


class _Level:
    __slots__ = ("vnodes", "arcs", "nontree")

    def __init__(self):
        self.vnodes: dict = {}  # vertex -> vertex Node in this forest
        self.arcs: dict = {}  # edge key -> (arc u->v, arc v->u)
        self.nontree: dict = {}  # vertex -> set of neighbours via non-tree edges of this level


class DynConn:
    """Connectivity of an undirected simple graph under edge insertions and deletions.

    >>> dc = DynConn()
    >>> for x in "abc":
    ...     dc.insert_node(x)
    >>> dc.insert_edge("a", "b").merged
    True
    >>> dc.insert_edge("b", "c").merged, dc.insert_edge("a", "c").merged
    (True, False)
    >>> dc.delete_edge("a", "b").split
    False
    >>> sorted(dc.component_nodes("a"))
    ['a', 'b', 'c']
    """

    def __init__(self):
        self._levels: list[_Level] = [_Level()]
        self._edge_level: dict = {}  # edge key -> level
        self._tree: set = set()  # keys of edges in the spanning forest
        self._degree: dict = {}
        self._components = 0

    # -- bookkeeping ----------------------------------------------------

    def _vnode(self, i: int, u) -> Node:
        lv = self._levels[i]
        x = lv.vnodes.get(u)
        if x is None:
            x = lv.vnodes[u] = Node(vertex=u)
        return x

    def _level(self, i: int) -> _Level:
        while len(self._levels) <= i:
            self._levels.append(_Level())
        return self._levels[i]

    def _check(self, u) -> None:
        if u not in self._degree:
            raise UnknownNode(u)

    def _set_nflag(self, i: int, u) -> None:
        lv = self._levels[i]
        has = 1 if lv.nontree.get(u) else 0
        x = lv.vnodes.get(u)
        if x is None:
            if not has:
                return
            x = self._vnode(i, u)
        if x.nflag != has:
            x.nflag = has
            _ett.refresh_up(x)

    def _add_nontree(self, i: int, u, v) -> None:
        lv = self._level(i)
        lv.nontree.setdefault(u, set()).add(v)
        lv.nontree.setdefault(v, set()).add(u)
        self._edge_level[_key(u, v)] = i
        self._set_nflag(i, u)
        self._set_nflag(i, v)

    def _remove_nontree(self, i: int, u, v) -> None:
        lv = self._levels[i]
        for a, b in ((u, v), (v, u)):
            s = lv.nontree[a]
            s.discard(b)
            if not s:
                del lv.nontree[a]
        self._set_nflag(i, u)
        self._set_nflag(i, v)

    def _link(self, i: int, u, v, flagged: bool) -> None:
        lv = self._level(i)
        uv = Node(arc=(u, v))
        vu = Node(arc=(v, u))
        if flagged:
            uv.tflag = uv.tsum = 1
        lv.arcs[_key(u, v)] = (uv, vu)
        _ett.link(self._vnode(i, u), self._vnode(i, v), uv, vu)

    def _cut(self, i: int, u, v) -> None:
        uv, vu = self._levels[i].arcs.pop(_key(u, v))
        _ett.cut(uv, vu)

    # -- public API -----------------------------------------------------

    def __contains__(self, u) -> bool:
        return u in self._degree

    def __len__(self) -> int:
        return len(self._degree)

    @property
    def edge_count(self) -> int:
        return len(self._edge_level)

    def has_edge(self, u, v) -> bool:
        return _key(u, v) in self._edge_level

    def insert_node(self, u: Hashable) -> None:
        if u in self._degree:
            return
        self._degree[u] = 0
        self._vnode(0, u)
        self._components += 1

    def remove_node(self, u: Hashable) -> None:
        self._check(u)
        if self._degree[u]:
            raise RemoveNonIsolated(u)
        del self._degree[u]
        for lv in self._levels:
            lv.vnodes.pop(u, None)
        self._components -= 1

    def connected(self, u, v) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            return True
        vn = self._levels[0].vnodes
        return _ett.root(vn[u]) is _ett.root(vn[v])

    def component_nodes(self, u) -> set:
        """Nodes connected to ``u``; costs O(size of the component)."""
        self._check(u)
        return set(_ett.iter_vertices(_ett.root(self._levels[0].vnodes[u])))

    def component_size(self, u) -> int:
        self._check(u)
        return _ett.root(self._levels[0].vnodes[u]).vcount

    def component_count(self) -> int:
        return self._components

    def insert_edge(self, u, v) -> MergeOutcome:
        self._check(u)
        self._check(v)
        if u == v:
            raise DuplicateEdge((u, v))
        k = _key(u, v)
        if k in self._edge_level:
            raise DuplicateEdge(k)
        self._degree[u] += 1
        self._degree[v] += 1
        if self.connected(u, v):
            self._add_nontree(0, u, v)
            return MergeOutcome(False)
        self._edge_level[k] = 0
        self._tree.add(k)
        self._link(0, u, v, True)
        self._components -= 1
        return MergeOutcome(True)

    def delete_edge(self, u, v) -> SplitOutcome:
        k = _key(u, v)
        level = self._edge_level.pop(k, None)
        if level is None:
            raise UnknownEdge(k)
        self._degree[u] -= 1
        self._degree[v] -= 1
        if k not in self._tree:
            self._remove_nontree(level, u, v)
            return SplitOutcome(False)
        self._tree.discard(k)
        for i in range(level + 1):
            self._cut(i, u, v)
        for i in range(level, -1, -1):
            if self._replace(i, u, v):
                return SplitOutcome(False)
        self._components += 1
        vn = self._levels[0].vnodes
        a = frozenset(_ett.iter_vertices(_ett.root(vn[u])))
        b = frozenset(_ett.iter_vertices(_ett.root(vn[v])))
        return SplitOutcome(True, a, b)

    def _replace(self, i: int, u, v) -> bool:
        """Look for a replacement edge of level ``i`` reconnecting u and v."""
        lv = self._levels[i]
        ru = _ett.root(self._vnode(i, u))
        rv = _ett.root(self._vnode(i, v))
        small = ru if ru.vcount <= rv.vcount else rv

        # promote the level-i tree edges of the smaller tree
        while True:
            r = _ett.root(small)
            arc = _ett.find_flagged(r, "tsum", "tflag")
            if arc is None:
                break
            x, y = arc.arc
            arc.tflag = 0
            _ett.refresh_up(arc)
            self._edge_level[_key(x, y)] = i + 1
            self._level(i + 1)
            self._link(i + 1, x, y, True)
            small = r

        # scan non-tree edges of level i incident to the smaller tree
        while True:
            r = _ett.root(small)
            xn = _ett.find_flagged(r, "nsum", "nflag")
            if xn is None:
                return False
            x = xn.vertex
            for y in list(lv.nontree.get(x, ())):
                if _ett.root(self._vnode(i, y)) is r:
                    self._remove_nontree(i, x, y)
                    self._add_nontree(i + 1, x, y)
                else:
                    self._remove_nontree(i, x, y)
                    k = _key(x, y)
                    self._edge_level[k] = i
                    self._tree.add(k)
                    for j in range(i):
                        self._link(j, x, y, False)
                    self._link(i, x, y, True)
                    return True
            small = r
