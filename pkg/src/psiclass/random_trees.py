"""Random labelled trees and the limit laws behind the graph sum.

Vertices are 0..m-1.  Uniform trees come from uniform Pruefer sequences,
decoded in linear time.  Monte-Carlo batches are split into fixed-size
chunks, each with its own RNG stream spawned from the seed, so results do
not depend on how many workers run them.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from numba import njit
from scipy import stats

from .poly import Polynomial
from .symmetric import UnionFind

CHUNK = 256


@dataclass(frozen=True)
class LabeledTree:
    m: int
    edges: tuple[tuple[int, int], ...]
    edge_labels: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.edges) != self.m - 1:
            raise ValueError("a tree on m vertices has m - 1 edges")
        uf = UnionFind(self.m)
        for u, v in self.edges:
            if not uf.union(u, v):
                raise ValueError("edges contain a cycle")

    def valences(self) -> list[int]:
        val = [0] * self.m
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return val

    def key(self) -> tuple:
        return tuple(sorted(tuple(sorted(e)) for e in self.edges))


@dataclass(frozen=True)
class EdgeTreeStats:
    m: int
    root: int
    top: int
    trunk: tuple[int, ...]
    root_component_size: int
    top_component_size: int
    trunk_component_size: int
    p: int
    q: int

    @property
    def d(self) -> int:
        """Vertices in the branches hanging off interior trunk vertices."""
        return self.p + self.q

    @property
    def trunk_length(self) -> int:
        return len(self.trunk) - 1


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True)
def _prufer_decode(seq, m):
    degree = np.ones(m, dtype=np.int64)
    for v in seq:
        degree[v] += 1
    edges = np.empty((m - 1, 2), dtype=np.int64)
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(m - 2):
        v = seq[i]
        edges[i, 0] = leaf
        edges[i, 1] = v
        degree[leaf] -= 1
        degree[v] -= 1
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges[m - 2, 0] = leaf
    edges[m - 2, 1] = m - 1
    return edges


@njit(cache=True)
def _decompose(edges, labels, m, root, top):
    """Returns (root_size, top_size, trunk_len, p, q, trunk array)."""
    deg = np.zeros(m + 1, dtype=np.int64)
    for i in range(m - 1):
        deg[edges[i, 0] + 1] += 1
        deg[edges[i, 1] + 1] += 1
    start = np.cumsum(deg)
    fill = start[:-1].copy()
    nbr = np.empty(2 * (m - 1), dtype=np.int64)
    eid = np.empty(2 * (m - 1), dtype=np.int64)
    for i in range(m - 1):
        u, v = edges[i, 0], edges[i, 1]
        nbr[fill[u]] = v
        eid[fill[u]] = i
        fill[u] += 1
        nbr[fill[v]] = u
        eid[fill[v]] = i
        fill[v] += 1
    parent = np.full(m, -1, dtype=np.int64)
    pedge = np.full(m, -1, dtype=np.int64)
    order = np.empty(m, dtype=np.int64)
    order[0] = root
    parent[root] = root
    head, tail = 0, 1
    while head < tail:
        x = order[head]
        head += 1
        for j in range(start[x], start[x + 1]):
            y = nbr[j]
            if parent[y] < 0:
                parent[y] = x
                pedge[y] = eid[j]
                order[tail] = y
                tail += 1
    # trunk from root to top
    pos = np.full(m, -1, dtype=np.int64)
    length = 0
    x = top
    while x != root:
        length += 1
        x = parent[x]
    trunk = np.empty(length + 1, dtype=np.int64)
    x = top
    for i in range(length, -1, -1):
        trunk[i] = x
        pos[x] = i
        x = parent[x]
    # attachment point and branch edge of every vertex
    att = np.empty(m, dtype=np.int64)
    branch = np.full(m, -1, dtype=np.int64)
    for idx in range(m):
        v = order[idx]
        if pos[v] >= 0:
            att[v] = v
        else:
            pv = parent[v]
            att[v] = att[pv]
            if pos[pv] >= 0:
                branch[v] = pedge[v]
            else:
                branch[v] = branch[pv]
    root_size = 0
    top_size = 0
    p = 0
    q = 0
    for v in range(m):
        a = att[v]
        if a == root:
            root_size += 1
        elif a == top:
            top_size += 1
        elif pos[v] < 0:
            i = pos[a]
            lab_in = labels[pedge[a]]  # edge towards the root
            lab_out = labels[pedge[trunk[i + 1]]]  # edge towards the top
            rel_out = (lab_out - lab_in) % 1.0
            rel = (labels[branch[v]] - lab_in) % 1.0
            if rel < rel_out:
                p += 1
            else:
                q += 1
    return root_size, top_size, length, p, q, trunk


@njit(cache=True)
def _decompose_prufer(edges, labels, m, top):
    """Same as _decompose with root = m - 1, for trees straight from _prufer_decode.

    Row i of the decoded edge list is (leaf removed at step i, its neighbour
    towards m - 1), so reading the rows backwards visits parents before
    children and no search is needed.
    """
    root = m - 1
    parent = np.empty(m, dtype=np.int64)
    pedge = np.empty(m, dtype=np.int64)
    parent[root] = root
    pedge[root] = -1
    for i in range(m - 1):
        parent[edges[i, 0]] = edges[i, 1]
        pedge[edges[i, 0]] = i
    pos = np.full(m, -1, dtype=np.int64)
    length = 0
    x = top
    while x != root:
        length += 1
        x = parent[x]
    trunk = np.empty(length + 1, dtype=np.int64)
    x = top
    for i in range(length, -1, -1):
        trunk[i] = x
        pos[x] = i
        x = parent[x]
    att = np.empty(m, dtype=np.int64)
    branch = np.full(m, -1, dtype=np.int64)
    att[root] = root
    root_size = 1
    top_size = 0
    p = 0
    q = 0
    for i in range(m - 2, -1, -1):
        v = edges[i, 0]
        pv = edges[i, 1]
        if pos[v] >= 0:
            att[v] = v
            a = v
        else:
            a = att[pv]
            att[v] = a
            branch[v] = i if pos[pv] >= 0 else branch[pv]
        if a == root:
            root_size += 1
        elif a == top:
            top_size += 1
        elif pos[v] < 0:
            lab_in = labels[pedge[a]]
            lab_out = labels[pedge[trunk[pos[a] + 1]]]
            # counterclockwise from the incoming edge: wrap labels below lab_in
            rel_out = lab_out - lab_in
            if rel_out < 0:
                rel_out += 1.0
            rel = labels[branch[v]] - lab_in
            if rel < 0:
                rel += 1.0
            if rel < rel_out:
                p += 1
            else:
                q += 1
    return root_size, top_size, length, p, q, trunk


@njit(cache=True)
def _end_components(edges, m, top):
    """Root and top component sizes for root = m - 1, from subtree sizes alone.

    The top component is the subtree below top; the root component is
    everything outside the subtree of the root's child on the trunk.
    """
    root = m - 1
    parent = np.empty(m, dtype=np.int64)
    sub = np.ones(m, dtype=np.int64)
    parent[root] = root
    for i in range(m - 1):
        parent[edges[i, 0]] = edges[i, 1]
        sub[edges[i, 1]] += sub[edges[i, 0]]
    c = top
    while parent[c] != root:
        c = parent[c]
    return m - sub[c], sub[top]


def prufer_decode(seq, m: int) -> np.ndarray:
    seq = np.asarray(seq, dtype=np.int64)
    if m < 2:
        raise ValueError("trees need m >= 2")
    if len(seq) != m - 2:
        raise ValueError("a Pruefer sequence has length m - 2")
    return _prufer_decode(seq, m)


def sample_uniform_tree(m: int, seed=None, *, labels: bool = False) -> LabeledTree:
    """Uniform labelled tree on m vertices (one of m^(m-2))."""
    if m < 2:
        raise ValueError("trees need m >= 2")
    rng = np.random.default_rng(seed)
    seq = rng.integers(0, m, size=m - 2)
    edges = prufer_decode(seq, m)
    lab = tuple(rng.random(m - 1).tolist()) if labels else None
    return LabeledTree(m, tuple(map(tuple, edges.tolist())), lab)


def edge_tree_decompose(t: LabeledTree, root: int, top: int) -> EdgeTreeStats:
    """Split t into root, top and trunk components around the root-top path.

    Side of a branch: with edges ordered counterclockwise by label at each
    vertex, branches met going counterclockwise from the incoming trunk edge
    before the outgoing one count towards p, the others towards q.
    """
    if root == top:
        raise ValueError("root and top must differ")
    if t.edge_labels is None:
        labels = np.arange(t.m - 1, dtype=np.float64) / max(t.m - 1, 1)
    else:
        labels = np.asarray(t.edge_labels, dtype=np.float64)
    edges = np.asarray(t.edges, dtype=np.int64).reshape(-1, 2)
    rs, ts, _, p, q, trunk = _decompose(edges, labels, t.m, root, top)
    return EdgeTreeStats(
        m=t.m,
        root=root,
        top=top,
        trunk=tuple(int(x) for x in trunk),
        root_component_size=int(rs),
        top_component_size=int(ts),
        trunk_component_size=int(t.m - rs - ts),
        p=int(p),
        q=int(q),
    )


def _edge_tree_chunk(args):
    # root is vertex m - 1 and top is uniform among the rest; by relabelling
    # symmetry this has the same law as two distinct uniform vertices
    m, count, seed_seq = args
    rng = np.random.default_rng(seed_seq)
    out = np.empty((count, 5), dtype=np.int64)
    for i in range(count):
        seq = rng.integers(0, m, size=m - 2)
        labels = rng.random(m - 1)
        top = rng.integers(0, m - 1)
        edges = _prufer_decode(seq, m)
        rs, ts, length, p, q, _ = _decompose_prufer(edges, labels, m, top)
        out[i] = (rs, ts, length, p, q)
    return out


def _end_component_chunk(args):
    m, count, seed_seq = args
    rng = np.random.default_rng(seed_seq)
    out = np.empty((count, 2), dtype=np.int64)
    for i in range(count):
        seq = rng.integers(0, m, size=m - 2)
        top = rng.integers(0, m - 1)
        out[i] = _end_components(_prufer_decode(seq, m), m, top)
    return out


def _chunks(samples: int, seed):
    ss = np.random.SeedSequence(seed)
    n_chunks = -(-samples // CHUNK)
    children = ss.spawn(n_chunks)
    sizes = [CHUNK] * (n_chunks - 1) + [samples - CHUNK * (n_chunks - 1)]
    return list(zip(sizes, children))


def _run_chunks(worker, samples: int, seed, jobs: int, *extra) -> np.ndarray:
    tasks = [extra + (size, child) for size, child in _chunks(samples, seed)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(worker, tasks))
    else:
        parts = [worker(t) for t in tasks]
    out = np.concatenate(parts)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=8)
def edge_tree_samples(m: int, samples: int, seed: int = 1, jobs: int = 1) -> np.ndarray:
    """Decompositions of ``samples`` uniform trees with uniform distinct root/top.

    Columns: root size, top size, trunk length (edges), p, q.
    """
    return _run_chunks(_edge_tree_chunk, samples, seed, jobs, m)


@lru_cache(maxsize=8)
def end_component_samples(m: int, samples: int, seed: int = 1, jobs: int = 1) -> np.ndarray:
    """Root and top component sizes only, for ``samples`` trees; much cheaper."""
    return _run_chunks(_end_component_chunk, samples, seed, jobs, m)


# ---------------------------------------------------------------------------
# exact enumeration


def all_labeled_trees(m: int):
    """Every spanning tree of the complete graph on m vertices, by edge-subset search."""
    pairs = list(itertools.combinations(range(m), 2))
    chosen: list[tuple[int, int]] = []

    def rec(i: int, uf_parent: list[int]):
        need = m - 1 - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        if len(pairs) - i < need:
            return
        u, v = pairs[i]
        ru, rv = _find(uf_parent, u), _find(uf_parent, v)
        if ru != rv:
            nxt = list(uf_parent)
            nxt[ru] = rv
            chosen.append((u, v))
            yield from rec(i + 1, nxt)
            chosen.pop()
        yield from rec(i + 1, uf_parent)

    if m == 1:
        yield ()
        return
    yield from rec(0, list(range(m)))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def valence_polynomial(m: int) -> Polynomial:
    """sum over labelled trees of prod z_i^val(i)."""
    counts: Counter = Counter()
    for edges in all_labeled_trees(m):
        val = [0] * m
        for u, v in edges:
            val[u] += 1
            val[v] += 1
        counts[tuple(val)] += 1
    return Polynomial(m, counts)


def cayley_polynomial(m: int) -> Polynomial:
    """z_1 ... z_m (z_1 + ... + z_m)^(m-2)"""
    prod_z = Polynomial(m, {(1,) * m: 1})
    return prod_z * Polynomial.linear(m, tuple(range(m))) ** (m - 2)


def cayley_identity_check(m: int) -> bool:
    if m > 8:
        raise ValueError("full enumeration is limited to m <= 8")
    return valence_polynomial(m) == cayley_polynomial(m)


def count_labeled_trees(m: int) -> int:
    return sum(1 for _ in all_labeled_trees(m))


def count_edge_labeled_trees(d: int, rooted: bool = False) -> int:
    """Trees with d unlabelled vertices and edges labelled 1..d-1, counted up to
    vertex relabelling (optionally with a marked root vertex), by enumeration."""
    seen = set()
    for edges in all_labeled_trees(d):
        for perm in itertools.permutations(range(1, d)):
            inc: list[set[int]] = [set() for _ in range(d)]
            for lab, (u, v) in zip(perm, edges):
                inc[u].add(lab)
                inc[v].add(lab)
            shape = frozenset(frozenset(s) for s in inc)
            if rooted:
                for v in range(d):
                    seen.add((shape, frozenset(inc[v])))
            else:
                seen.add(shape)
    return len(seen)


# ---------------------------------------------------------------------------
# limit laws


def shifted_poisson_pmf(v: int) -> float:
    """Limit law of a vertex valence: e^-1 / (v-1)!."""
    return math.exp(-1) / math.factorial(v - 1) if v >= 1 else 0.0


def borel_pmf(k: int) -> float:
    """k^(k-1) e^-k / k!, via logs to stay finite for large k."""
    if k < 1:
        return 0.0
    return math.exp((k - 1) * math.log(k) - k - math.lgamma(k + 1))


def binned_tv(samples: np.ndarray, pmf, max_bin: int) -> tuple[float, dict[int, float]]:
    """Total variation over bins 1..max_bin-1 plus a tail bin >= max_bin."""
    samples = np.asarray(samples)
    n = len(samples)
    emp = {}
    tv = 0.0
    tail_expected = 1.0
    for k in range(1, max_bin):
        e = float(np.count_nonzero(samples == k)) / n
        emp[k] = e
        tv += abs(e - pmf(k))
        tail_expected -= pmf(k)
    tail = float(np.count_nonzero(samples >= max_bin)) / n
    tv += abs(tail - tail_expected)
    return tv / 2, emp


def _report(statistic, expected, tolerance, passed, **extra) -> dict:
    out = {"statistic": statistic, "expected": expected, "tolerance": tolerance, "pass": bool(passed)}
    out.update(extra)
    return out


def valence_histogram(m: int, samples: int, seed=1, tolerance: float = 0.01) -> dict:
    """Empirical valence law against e^-1/(v-1)!.

    Valences of all vertices of ceil(samples/m) independent trees are pooled
    (vertices are exchangeable) and the first ``samples`` are used.
    """
    rng = np.random.default_rng(seed)
    vals = []
    got = 0
    while got < samples:
        seq = rng.integers(0, m, size=m - 2)
        edges = _prufer_decode(seq, m)
        val = np.bincount(edges.ravel(), minlength=m)
        vals.append(val)
        got += m
    vals = np.concatenate(vals)[:samples]
    tv, emp = binned_tv(vals, shifted_poisson_pmf, 12)
    return _report(tv, 0.0, tolerance, tv < tolerance, kind="total-variation",
                   empirical={k: emp[k] for k in (1, 2, 3, 4)},
                   limit={k: shifted_poisson_pmf(k) for k in (1, 2, 3, 4)})


def root_component_law(m: int, samples: int, seed=1, tolerance: float = 0.01, jobs: int = 1) -> dict:
    """Root and top component sizes against the Borel law.

    Root and top are exchangeable, so both ends of each of ``samples`` trees
    are pooled.
    """
    data = end_component_samples(m, samples, seed, jobs)
    sizes = data.ravel()
    tv, emp = binned_tv(sizes, borel_pmf, 20)
    return _report(tv, 0.0, tolerance, tv < tolerance, kind="total-variation",
                   empirical={k: emp[k] for k in (1, 2, 3)},
                   limit={k: borel_pmf(k) for k in (1, 2, 3)})


def trunk_length_law(m: int, samples: int, seed=1, tolerance: float = 0.02, jobs: int = 1) -> dict:
    """Kolmogorov-Smirnov distance of trunk/sqrt(m) to the Rayleigh law."""
    data = edge_tree_samples(m, samples, seed, jobs)
    x = data[:, 2] / math.sqrt(m)
    ks = stats.kstest(x, lambda t: 1.0 - np.exp(-np.square(t) / 2)).statistic
    return _report(float(ks), 0.0, tolerance, ks < tolerance, kind="kolmogorov-smirnov",
                   mean=float(x.mean()), expected_mean=math.sqrt(math.pi / 2),
                   median=float(np.median(x)), expected_median=math.sqrt(2 * math.log(2)))


def trunk_split_law(m: int, samples: int, seed=1, tolerance: float = 0.02, jobs: int = 1) -> dict:
    """Kolmogorov-Smirnov distance of p/(p+q) to Uniform[0,1]; trees with p+q = 0 are skipped."""
    data = edge_tree_samples(m, samples, seed, jobs)
    p, q = data[:, 3], data[:, 4]
    keep = (p + q) > 0
    frac = p[keep] / (p[keep] + q[keep])
    ks = stats.kstest(frac, "uniform").statistic
    return _report(float(ks), 0.0, tolerance, ks < tolerance, kind="kolmogorov-smirnov",
                   mean=float(frac.mean()), variance=float(frac.var()), used=int(keep.sum()))


def cyclic_order_probability(*valences: int) -> Fraction:
    """Chance that gluing vertices of the given valences keeps labels cyclically ordered."""
    return Fraction(math.prod(math.factorial(v - 1) for v in valences),
                    math.factorial(sum(valences) - 1))


def assembly_success_rate(tolerance: float = 1e-12, digits: int = 40) -> mpmath.mpf:
    """e^-3 sum_{v1,v2,v3 >= 1} 1/(v1+v2+v3-1)!, summed until the tail bound is below tolerance.

    Grouping by k = v1+v2+v3-1 gives terms a_k = C(k, 2)/k!, and
    a_(k+1)/a_k = 1/(k-1), so the tail after a_k is at most a_(k+1) k/(k-1).
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    with mpmath.workdps(digits):
        pref = mpmath.exp(-3)
        total = mpmath.mpf(0)
        k = 2
        while True:
            term = mpmath.mpf(math.comb(k, 2)) / mpmath.factorial(k)
            total += term
            if k > 2 and pref * term / (k - 1) * k / (k - 1) < tolerance:
                break
            k += 1
        return pref * total


def assembly_truncated(max_valence: int, digits: int = 40) -> mpmath.mpf:
    """The same triple sum with every v_i <= max_valence."""
    with mpmath.workdps(digits):
        total = mpmath.mpf(0)
        for s in range(3, 3 * max_valence + 1):
            # number of (v1, v2, v3) in [1, max_valence]^3 with sum s
            c = sum(1 for v1 in range(1, max_valence + 1) for v2 in range(1, max_valence + 1)
                    if 1 <= s - v1 - v2 <= max_valence)
            total += mpmath.mpf(c) / mpmath.factorial(s - 1)
        return mpmath.exp(-3) * total


def edge_factor_closed_form(s1: float, s2: float) -> float:
    return math.sqrt(2) / (math.sqrt(s1) + math.sqrt(s2))


def edge_factor_mc(s1: float, s2: float, samples: int = 1_000_000, seed=1) -> dict:
    """Monte-Carlo estimate of (2 pi)^-1/2 iint e^(-p s1 - q s2) (p+q)^(-3/2) dp dq.

    With x = p + q and p = u x the integrand becomes x^(-1/2) e^(-x s(u)),
    s(u) = u s1 + (1-u) s2.  x is drawn from Gamma(1/2, rate beta) with
    beta = min(s1, s2)/2, which keeps the importance weights bounded.
    """
    if s1 <= 0 or s2 <= 0:
        raise ValueError("s1 and s2 must be positive")
    rng = np.random.default_rng(seed)
    beta = min(s1, s2) / 2
    x = rng.gamma(0.5, 1.0 / beta, size=samples)
    u = rng.random(samples)
    s = u * s1 + (1 - u) * s2
    w = math.sqrt(math.pi / beta) * np.exp(-x * (s - beta))
    est = float(w.mean()) / math.sqrt(2 * math.pi)
    se = float(w.std(ddof=1)) / math.sqrt(samples) / math.sqrt(2 * math.pi)
    exact = edge_factor_closed_form(s1, s2)
    rel = abs(est - exact) / exact
    return _report(est, exact, 0.01, rel < 0.01, kind="relative-error", relative_error=rel,
                   standard_error=se)
