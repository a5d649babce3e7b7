"""Euler tour forests stored in treaps with parent pointers.

Each tree of the forest is represented by a cyclic sequence holding one
*vertex* node per vertex and two *arc* nodes per tree edge. Rerooting is a
rotation of the sequence, which keeps every operation at O(log n) expected.

Subtree aggregates maintained on every treap node:
  size   number of treap nodes (for positional split)
  vcount number of vertex nodes (tree size in vertices)
  tsum   number of flagged arc nodes  (tree edges whose level equals this forest)
  nsum   number of flagged vertex nodes (vertices owning non-tree edges at this level)
"""
from __future__ import annotations

import random

_rand = random.Random(0x5EED).random


class Node:
    __slots__ = ("left", "right", "parent", "prio", "size", "vcount", "tflag", "nflag", "tsum", "nsum", "vertex", "arc")

    def __init__(self, vertex=None, arc=None):
        self.left = None
        self.right = None
        self.parent = None
        self.prio = _rand()
        self.size = 1
        self.vertex = vertex
        self.arc = arc
        self.vcount = 1 if arc is None else 0
        self.tflag = 0
        self.nflag = 0
        self.tsum = 0
        self.nsum = 0

    def __repr__(self):
        return f"Node({self.vertex if self.arc is None else self.arc})"


def _pull(x: Node) -> None:
    l, r = x.left, x.right
    size = 1
    vc = 1 if x.arc is None else 0
    ts = x.tflag
    ns = x.nflag
    if l is not None:
        size += l.size
        vc += l.vcount
        ts += l.tsum
        ns += l.nsum
    if r is not None:
        size += r.size
        vc += r.vcount
        ts += r.tsum
        ns += r.nsum
    x.size = size
    x.vcount = vc
    x.tsum = ts
    x.nsum = ns


def root(x: Node) -> Node:
    while x.parent is not None:
        x = x.parent
    return x


def index(x: Node) -> int:
    """Position of ``x`` in its sequence."""
    i = x.left.size if x.left is not None else 0
    while x.parent is not None:
        p = x.parent
        if x is p.right:
            i += (p.left.size if p.left is not None else 0) + 1
        x = p
    return i


def merge(a: Node | None, b: Node | None) -> Node | None:
    """Concatenate two sequences given by their roots."""
    if a is None:
        return b
    if b is None:
        return a
    # iterative merge along the right spine of a and left spine of b
    stack = []
    parent = None
    while a is not None and b is not None:
        if a.prio > b.prio:
            stack.append((a, True))
            a = a.right
        else:
            stack.append((b, False))
            b = b.left
    rest = a if a is not None else b
    for node, is_a in reversed(stack):
        if is_a:
            node.right = rest
        else:
            node.left = rest
        if rest is not None:
            rest.parent = node
        _pull(node)
        rest = node
    rest.parent = parent
    return rest


def split(t: Node | None, k: int) -> tuple[Node | None, Node | None]:
    """Split sequence rooted at ``t`` into its first ``k`` nodes and the rest."""
    if t is None:
        return None, None
    t.parent = None
    # descend, collecting which nodes go left / right
    lefts = []
    rights = []
    x = t
    while x is not None:
        ls = x.left.size if x.left is not None else 0
        if k <= ls:
            rights.append(x)
            x = x.left
        else:
            lefts.append(x)
            k -= ls + 1
            x = x.right
    # rebuild bottom-up: lefts chain through .right, rights through .left
    lroot = None
    for node in reversed(lefts):
        node.right = lroot
        if lroot is not None:
            lroot.parent = node
        _pull(node)
        lroot = node
    rroot = None
    for node in reversed(rights):
        node.left = rroot
        if rroot is not None:
            rroot.parent = node
        _pull(node)
        rroot = node
    if lroot is not None:
        lroot.parent = None
    if rroot is not None:
        rroot.parent = None
    return lroot, rroot


def refresh_up(x: Node) -> None:
    while x is not None:
        _pull(x)
        x = x.parent


def reroot(v: Node) -> Node:
    """Rotate the tour containing vertex node ``v`` so that it starts at ``v``."""
    r = root(v)
    i = index(v)
    if i == 0:
        return r
    a, b = split(r, i)
    return merge(b, a)


def link(u: Node, v: Node, uv: Node, vu: Node) -> Node:
    """Join the trees of vertex nodes ``u`` and ``v`` (distinct trees) via arcs uv, vu."""
    ru = reroot(u)
    rv = reroot(v)
    return merge(merge(merge(ru, uv), rv), vu)


def cut(uv: Node, vu: Node) -> tuple[Node | None, Node | None]:
    """Remove the tree edge whose arcs are ``uv`` and ``vu``; return the two tree roots."""
    r = root(uv)
    i, j = index(uv), index(vu)
    if i > j:
        i, j = j, i
    a, rest = split(r, i)
    mid, c = split(rest, j - i + 1)
    # mid = [arc] inner [arc]
    _, inner = split(mid, 1)
    inner, _ = split(inner, inner.size - 1 if inner is not None else 0)
    return inner, merge(a, c)


def find_flagged(r: Node, attr_sum: str, attr_flag: str) -> Node | None:
    """Any node in the tree rooted at ``r`` whose ``attr_flag`` is set."""
    x = r
    if getattr(x, attr_sum) == 0:
        return None
    while True:
        if getattr(x, attr_flag):
            return x
        if x.left is not None and getattr(x.left, attr_sum) > 0:
            x = x.left
        else:
            x = x.right


def iter_vertices(r: Node | None):
    """Vertices of the tree rooted at ``r``, skipping subtrees without vertex nodes."""
    if r is None:
        return
    stack = [r]
    while stack:
        x = stack.pop()
        if x.arc is None:
            yield x.vertex
        if x.left is not None and x.left.vcount:
            stack.append(x.left)
        if x.right is not None and x.right.vcount:
            stack.append(x.right)
