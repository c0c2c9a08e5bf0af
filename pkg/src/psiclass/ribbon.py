"""Ribbon graphs (maps on oriented surfaces) as dart structures.

A ribbon graph on darts 0..N-1 is a pair of permutations: ``sigma`` rotates
darts counterclockwise around their vertex and ``alpha`` is the fixed-point
free involution pairing the two halves of each edge.  Faces are the cycles
of ``phi = sigma o alpha`` (apply alpha, then sigma); with counterclockwise
rotations this walks each face boundary clockwise.  The convention is used
everywhere in the package.

Isomorphisms are orientation preserving and must respect face labels when
present.  A connected map is rigid: an isomorphism is fixed by the image of
one dart, so canonical forms and automorphism groups come from relabelling
the darts by a traversal started at every dart.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .hurwitz import Factorization
from .symmetric import Partition


class MalformedGraphError(ValueError):
    pass


class UnstableError(ValueError):
    pass


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        c = []
        x = start
        while not seen[x]:
            seen[x] = True
            c.append(x)
            x = perm[x]
        out.append(c)
    return out


def _perm_from_cycles(cycles: Iterable[Sequence[int]], n: int) -> tuple[int, ...]:
    img = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return tuple(img)


@dataclass(frozen=True)
class RibbonGraph:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    # label of the face through each dart, or None for an unlabelled map
    face_labels: tuple[int, ...] | None = None

    def __post_init__(self):
        sigma, alpha = tuple(self.sigma), tuple(self.alpha)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "alpha", alpha)
        n = len(sigma)
        if len(alpha) != n or n % 2:
            raise MalformedGraphError("sigma and alpha must act on the same even number of darts")
        if sorted(sigma) != list(range(n)) or sorted(alpha) != list(range(n)):
            raise MalformedGraphError("sigma and alpha must be permutations")
        if any(alpha[d] == d or alpha[alpha[d]] != d for d in range(n)):
            raise MalformedGraphError("alpha must be a fixed-point free involution")
        if self.face_labels is not None:
            labels = tuple(self.face_labels)
            object.__setattr__(self, "face_labels", labels)
            if len(labels) != n:
                raise MalformedGraphError("one face label per dart required")
            fl = []
            for face in self.faces():
                vals = {labels[d] for d in face}
                if len(vals) != 1:
                    raise MalformedGraphError("face label must be constant along a face")
                fl.append(vals.pop())
            if sorted(fl) != list(range(1, len(fl) + 1)):
                raise MalformedGraphError(f"face labels {fl} are not a bijection onto 1..n")

    # -- basic structure -------------------------------------------------
    @property
    def num_darts(self) -> int:
        return len(self.sigma)

    @property
    def num_edges(self) -> int:
        return len(self.sigma) // 2

    def phi(self) -> tuple[int, ...]:
        s, a = self.sigma, self.alpha
        return tuple(s[a[d]] for d in range(len(s)))

    # cycle decompositions are cached; the dataclass is frozen so they never go stale
    @cached_property
    def _vertex_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, _cycles(self.sigma)))

    @cached_property
    def _face_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, _cycles(self.phi())))

    def vertices(self) -> list[list[int]]:
        return [list(c) for c in self._vertex_cycles]

    def edges(self) -> list[tuple[int, int]]:
        return [(d, self.alpha[d]) for d in range(self.num_darts) if d < self.alpha[d]]

    def faces(self) -> list[list[int]]:
        """Face cycles of phi, each starting at its least dart, ordered by that dart."""
        return [list(c) for c in self._face_cycles]

    @property
    def num_vertices(self) -> int:
        return len(self._vertex_cycles)

    @property
    def num_faces(self) -> int:
        return len(self._face_cycles)

    def valences(self) -> list[int]:
        return [len(v) for v in self._vertex_cycles]

    def is_connected(self) -> bool:
        n = self.num_darts
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    def face_of_dart(self) -> list[int]:
        """Index (into ``faces()``) of the face through each dart."""
        out = [0] * self.num_darts
        for i, f in enumerate(self._face_cycles):
            for d in f:
                out[d] = i
        return out

    def edge_face_labels(self) -> list[tuple[int, int]]:
        """For every edge, the (sorted) labels of the faces on its two sides."""
        if self.face_labels is None:
            raise ValueError("face labels required")
        fl = self.face_labels
        return [tuple(sorted((fl[d], fl[e]))) for d, e in self.edges()]

    def with_face_labels(self, labels_by_face: Sequence[int]) -> "RibbonGraph":
        """Attach labels given in the order of ``faces()``."""
        per_dart = [0] * self.num_darts
        for lab, face in zip(labels_by_face, self.faces()):
            for d in face:
                per_dart[d] = lab
        return RibbonGraph(self.sigma, self.alpha, tuple(per_dart))

    # -- serialisation ---------------------------------------------------
    def to_dict(self) -> dict:
        out = {
            "darts": self.num_darts,
            "sigma": [c for c in _cycles(self.sigma)],
            "alpha": [c for c in _cycles(self.alpha)],
        }
        if self.face_labels is not None:
            out["faces"] = {str(self.face_labels[f[0]]): f for f in self.faces()}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RibbonGraph":
        n = int(data["darts"])
        sigma = _perm_from_cycles(data["sigma"], n)
        alpha = _perm_from_cycles(data["alpha"], n)
        labels = None
        if data.get("faces") is not None:
            per = [0] * n
            for lab, darts in data["faces"].items():
                for d in darts:
                    per[d] = int(lab)
            labels = tuple(per)
        return cls(sigma, alpha, labels)


def faces(r: RibbonGraph) -> list[list[int]]:
    return r.faces()


def genus(r: RibbonGraph) -> int:
    """(2 - V + E - F) / 2 for a connected ribbon graph."""
    if not r.is_connected():
        raise MalformedGraphError("genus is defined for connected ribbon graphs")
    defect = 2 - r.num_vertices + r.num_edges - r.num_faces
    if defect % 2 or defect < 0:
        raise MalformedGraphError(f"Euler defect {defect} is not a non-negative even integer")
    return defect // 2


# ---------------------------------------------------------------------------
# canonical forms


def _traversal(sigma, alpha, root: int) -> list[int] | None:
    """Darts in traversal order from ``root``; None if the map is disconnected.

    Each vertex is numbered along its rotation as soon as it is reached; darts
    are scanned in order and unseen partners open new vertices.
    """
    n = len(sigma)
    order = [root]
    seen = [False] * n
    seen[root] = True
    d = sigma[root]
    while d != root:
        seen[d] = True
        order.append(d)
        d = sigma[d]
    i = 0
    while i < len(order):
        a = alpha[order[i]]
        if not seen[a]:
            seen[a] = True
            order.append(a)
            d = sigma[a]
            while d != a:
                seen[d] = True
                order.append(d)
                d = sigma[d]
        i += 1
    if len(order) != n:
        return None
    return order


def _code(r: RibbonGraph, root: int):
    order = _traversal(r.sigma, r.alpha, root)
    if order is None:
        raise MalformedGraphError("canonical forms need a connected graph")
    pos = [0] * len(order)
    for i, d in enumerate(order):
        pos[d] = i
    code = tuple(pos[r.alpha[d]] for d in order) + tuple(pos[r.sigma[d]] for d in order)
    if r.face_labels is not None:
        code += tuple(r.face_labels[d] for d in order)
    return code, order


def _min_codes(r: RibbonGraph):
    best = None
    best_order = None
    count = 0
    for root in range(r.num_darts):
        code, order = _code(r, root)
        if best is None or code < best:
            best, best_order, count = code, order, 1
        elif code == best:
            count += 1
    return best, best_order, count


def canonical_form(r: RibbonGraph) -> RibbonGraph:
    """Relabel darts by the lexicographically least traversal code.

    Isomorphic graphs (orientation preserving, respecting face labels) give
    identical results.
    """
    if r.num_darts == 0:
        return r
    _, order, _ = _min_codes(r)
    return _relabel(r, order)


def _relabel(r: RibbonGraph, order: Sequence[int]) -> RibbonGraph:
    pos = [0] * len(order)
    for i, d in enumerate(order):
        pos[d] = i
    sigma = tuple(pos[r.sigma[d]] for d in order)
    alpha = tuple(pos[r.alpha[d]] for d in order)
    labels = None if r.face_labels is None else tuple(r.face_labels[d] for d in order)
    return RibbonGraph(sigma, alpha, labels)


def canonical_key(r: RibbonGraph) -> tuple:
    if r.num_darts == 0:
        return ()
    return _min_codes(r)[0]


def automorphism_order(r: RibbonGraph) -> int:
    """Number of dart permutations commuting with sigma and alpha (and fixing
    face labels when present).  Equals the number of roots giving the least code."""
    if r.num_darts == 0:
        return 1
    return _min_codes(r)[2]


# ---------------------------------------------------------------------------
# trivalent maps


def _is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 1 and 2 * g - 2 + n > 0


def _rooted_trivalent(num_vertices: int) -> Iterator[tuple[int, ...]]:
    """Every connected rooted trivalent map on ``num_vertices`` vertices, once.

    Darts 3v, 3v+1, 3v+2 form vertex v.  The maps are produced already in
    their traversal labelling from root 0, so distinct outputs are distinct
    rooted maps.  Yields alpha.
    """
    n = 3 * num_vertices
    alpha = [-1] * n

    def rec(created: int):
        labelled = 3 * created
        i = next((d for d in range(labelled) if alpha[d] < 0), None)
        if i is None:
            if created == num_vertices:
                yield tuple(alpha)
            return
        for j in range(i + 1, labelled):
            if alpha[j] < 0:
                alpha[i], alpha[j] = j, i
                yield from rec(created)
                alpha[i] = alpha[j] = -1
        if created < num_vertices:
            k = labelled
            alpha[i], alpha[k] = k, i
            yield from rec(created + 1)
            alpha[i] = alpha[k] = -1

    if num_vertices == 0:
        return
    yield from rec(1)


def _face_labellings(m: RibbonGraph) -> dict[tuple, tuple[RibbonGraph, int]]:
    classes: dict[tuple, tuple[RibbonGraph, int]] = {}
    nf = m.num_faces
    for labels in itertools.permutations(range(1, nf + 1)):
        lab = m.with_face_labels(labels)
        key, order, aut = _min_codes(lab)
        if key not in classes:
            classes[key] = (_relabel(lab, order), aut)
    return classes


def enumerate_trivalent_maps(g: int, n: int) -> list[tuple[RibbonGraph, int]]:
    """Isomorphism classes of trivalent maps of genus g with n labelled faces.

    Returns (canonical graph, automorphism order) pairs sorted by canonical
    code.  The graphs have 2(6g - 6 + 3n) darts.
    """
    if not _is_stable(g, n):
        raise UnstableError(f"(g, n) = ({g}, {n}) is outside the stable range")
    num_vertices = 4 * g - 4 + 2 * n
    sigma = tuple(3 * (d // 3) + (d + 1) % 3 for d in range(3 * num_vertices))
    unlabelled: dict[tuple, RibbonGraph] = {}
    for alpha in _rooted_trivalent(num_vertices):
        m = RibbonGraph(sigma, alpha)
        if m.num_faces != n:
            continue
        key = canonical_key(m)
        if key not in unlabelled:
            unlabelled[key] = m
    classes: dict[tuple, tuple[RibbonGraph, int]] = {}
    for m in unlabelled.values():
        classes.update(_face_labellings(m))
    return [classes[k] for k in sorted(classes)]


def count_rooted_trivalent_maps(g: int, n: int) -> int:
    """Rooted trivalent maps with n labelled faces, counted directly (no quotient)."""
    num_vertices = 4 * g - 4 + 2 * n
    sigma = tuple(3 * (d // 3) + (d + 1) % 3 for d in range(3 * num_vertices))
    total = 0
    for alpha in _rooted_trivalent(num_vertices):
        m = RibbonGraph(sigma, alpha)
        if m.num_faces == n:
            total += math.factorial(n)
    return total


# ---------------------------------------------------------------------------
# branching graphs


@dataclass(frozen=True)
class LabeledBranchingGraph:
    """Edge-labelled ribbon graph of a Hurwitz covering.

    Edge k (label k in 1..r, standing for exp(2 pi i k / r)) has darts 2k-2
    and 2k-1.  ``sheet`` gives the vertex (sheet of the covering) of each dart.
    """

    underlying: RibbonGraph
    edge_labels: tuple[int, ...]  # per dart
    r: int
    sheet: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = self.underlying
        if len(self.edge_labels) != g.num_darts:
            raise MalformedGraphError("one edge label per dart required")
        for d in range(g.num_darts):
            if self.edge_labels[d] != self.edge_labels[g.alpha[d]]:
                raise MalformedGraphError("both darts of an edge carry the same label")
        if sorted(set(self.edge_labels)) != list(range(1, self.r + 1)):
            raise MalformedGraphError("edge labels must be a bijection onto 1..r")
        for v in g.vertices():
            labs = [self.edge_labels[d] for d in v]
            # counterclockwise order of labels is a rotation of the increasing order
            start = labs.index(min(labs))
            if labs[start:] + labs[:start] != sorted(labs):
                raise MalformedGraphError("cyclic order of labels disagrees with the roots of unity")

    @property
    def genus(self) -> int:
        return genus(self.underlying)


def branching_graph_from_factorization(f: Factorization) -> LabeledBranchingGraph:
    """Sheets become vertices and t_k becomes an edge labelled k.

    Around each vertex the incident edges are ordered by increasing label.
    Faces are labelled 1..n by decreasing perimeter, ties broken by least dart.
    """
    if not f.is_transitive():
        raise MalformedGraphError("non-transitive factorization gives a disconnected graph")
    d, r = f.degree, f.r
    if r == 0:
        raise MalformedGraphError("a covering without branch points has no edges")
    alpha = [0] * (2 * r)
    sheet = [0] * (2 * r)
    labels = [0] * (2 * r)
    incident: dict[int, list[int]] = {v: [] for v in range(1, d + 1)}
    for k, t in enumerate(f.transpositions, start=1):
        a, b = t.moved_points()
        da, db = 2 * k - 2, 2 * k - 1
        alpha[da], alpha[db] = db, da
        sheet[da], sheet[db] = a, b
        labels[da] = labels[db] = k
        incident[a].append(da)
        incident[b].append(db)
    sigma = [0] * (2 * r)
    for v, darts in incident.items():
        darts.sort(key=lambda x: labels[x])
        for i, x in enumerate(darts):
            sigma[x] = darts[(i + 1) % len(darts)]
    base = RibbonGraph(tuple(sigma), tuple(alpha))
    perims = _perimeters(base, labels, r)
    fcs = base.faces()
    order = sorted(range(len(fcs)), key=lambda i: (-perims[i], fcs[i][0]))
    face_label = [0] * len(fcs)
    for lab, i in enumerate(order, start=1):
        face_label[i] = lab
    graph = base.with_face_labels(face_label)
    return LabeledBranchingGraph(graph, tuple(labels), r, tuple(sheet))


def _perimeters(g: RibbonGraph, labels: Sequence[int], r: int) -> list[int]:
    out = []
    for face in g.faces():
        total = 0
        for dart in face:
            a = labels[g.alpha[dart]]
            b = labels[g.sigma[g.alpha[dart]]]
            angle = (b - a) % r
            total += angle if angle else r
        if total % r:
            raise MalformedGraphError(f"face angle sum {total} is not a multiple of r={r}")
        out.append(total // r)
    return out


def face_perimeters(b: LabeledBranchingGraph) -> Partition:
    """Perimeters of the faces: summed corner angles, in units of a full turn."""
    return Partition.from_parts(_perimeters(b.underlying, b.edge_labels, b.r))


def face_perimeters_by_label(b: LabeledBranchingGraph) -> dict[int, int]:
    g = b.underlying
    perims = _perimeters(g, b.edge_labels, b.r)
    return {g.face_labels[f[0]]: p for f, p in zip(g.faces(), perims)}


# ---------------------------------------------------------------------------
# homotopy types


@dataclass(frozen=True)
class Degenerate:
    """Reduction of an unstable graph: a point (g,n)=(0,1) or a circle (0,2)."""

    kind: str


@dataclass(frozen=True)
class HomotopyType:
    graph: RibbonGraph

    def __post_init__(self):
        if min(self.graph.valences(), default=3) < 3:
            raise MalformedGraphError("homotopy types have all valences >= 3")
        if self.graph.face_labels is None:
            raise MalformedGraphError("homotopy types carry face labels")

    @property
    def genus(self) -> int:
        return genus(self.graph)

    @property
    def n(self) -> int:
        return self.graph.num_faces

    def is_trivalent(self) -> bool:
        return all(v == 3 for v in self.graph.valences())

    def key(self) -> tuple:
        return canonical_key(self.graph)


def reduce_ribbon(r: RibbonGraph) -> HomotopyType | Degenerate:
    """Delete univalent vertices with their edges until none is left, then
    smooth bivalent vertices.  Genus and labelled faces are preserved."""
    sigma = dict(enumerate(r.sigma))
    alpha = dict(enumerate(r.alpha))
    labels = None if r.face_labels is None else dict(enumerate(r.face_labels))

    def remove(d):
        # splice d out of its rotation
        if sigma[d] != d:
            prev = next(x for x in _orbit(sigma, d) if sigma[x] == d)
            sigma[prev] = sigma[d]
        del sigma[d]
        del alpha[d]

    changed = True
    while changed:
        changed = False
        for d in list(sigma):
            if d in sigma and sigma[d] == d:
                a = alpha[d]
                remove(d)
                remove(a)
                changed = True
    if not sigma:
        return Degenerate("point")
    changed = True
    while changed:
        changed = False
        for a in list(sigma):
            if a not in sigma:
                continue
            b = sigma[a]
            if b == a or sigma[b] != a:
                continue
            if alpha[a] == b:
                return Degenerate("circle")
            x, y = alpha[a], alpha[b]
            alpha[x], alpha[y] = y, x
            del sigma[a], sigma[b], alpha[a], alpha[b]
            changed = True
    darts = sorted(sigma)
    pos = {d: i for i, d in enumerate(darts)}
    out = RibbonGraph(
        tuple(pos[sigma[d]] for d in darts),
        tuple(pos[alpha[d]] for d in darts),
        None if labels is None else tuple(labels[d] for d in darts),
    )
    return HomotopyType(canonical_form(out))


def _orbit(perm: dict, start: int) -> Iterator[int]:
    x = start
    while True:
        yield x
        x = perm[x]
        if x == start:
            return


def homotopy_type(b: LabeledBranchingGraph | RibbonGraph) -> HomotopyType | Degenerate:
    """Forget edge labels and reduce to an element of G^{>=3}_{g,n}."""
    graph = b.underlying if isinstance(b, LabeledBranchingGraph) else b
    return reduce_ribbon(graph)


def homotopy_histogram(factorizations: Iterable[Factorization]) -> dict:
    """Tally of homotopy types (canonical key or Degenerate) over factorizations."""
    tally: dict = {}
    reps: dict = {}
    for f in factorizations:
        h = homotopy_type(branching_graph_from_factorization(f))
        key = h if isinstance(h, Degenerate) else h.key()
        tally[key] = tally.get(key, 0) + 1
        reps.setdefault(key, h)
    return {k: (reps[k], tally[k]) for k in tally}
