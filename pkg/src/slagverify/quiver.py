"""Directed multigraphs, cycle covers and glued-manifold bookkeeping.

The boundary map sends an edge h to s(h) - t(h); its kernel dimension
h1 and cokernel dimension h0 satisfy h0 - h1 = #V - #E.  A quiver all
of whose edges lie on directed cycles admits a strictly positive kernel
vector, extracted here by a peeling walk; the verdict is cross-checked
against per-edge reachability.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional

from .core import AngleClass, int_rank


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    edges: tuple  # pairs (src, dst); parallel edges and loops allowed

    def __post_init__(self):
        verts = tuple(self.vertices)
        edges = tuple((s, t) for s, t in self.edges)
        vset = set(verts)
        if len(vset) != len(verts):
            raise ValueError("duplicate vertex labels")
        for s, t in edges:
            if s not in vset or t not in vset:
                raise ValueError(f"edge ({s!r}, {t!r}) uses an unknown vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_text(cls, text: str) -> "Quiver":
        """Parse lines of the form 'src -> dst'; blanks and # comments skip."""
        edges = []
        verts = []
        seen = set()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise ValueError(f"line {lineno}: expected 'src -> dst'")
            s, t = (part.strip() for part in line.split("->", 1))
            if not s or not t:
                raise ValueError(f"line {lineno}: empty vertex name")
            for v in (s, t):
                if v not in seen:
                    seen.add(v)
                    verts.append(v)
            edges.append((s, t))
        if not verts:
            raise ValueError("no edges found")
        return cls(tuple(verts), tuple(edges))

    def drop_edge(self, idx: int) -> "Quiver":
        if not 0 <= idx < len(self.edges):
            raise IndexError("edge index out of range")
        return Quiver(self.vertices, self.edges[:idx] + self.edges[idx + 1:])


def boundary_matrix(q: Quiver):
    """Vertex x edge incidence of h -> s(h) - t(h), as exact integers."""
    index = {v: i for i, v in enumerate(q.vertices)}
    mat = [[0] * len(q.edges) for _ in q.vertices]
    for j, (s, t) in enumerate(q.edges):
        mat[index[s]][j] += 1
        mat[index[t]][j] -= 1
    return mat


def betti(q: Quiver):
    """(h0, h1) = (components, independent cycles); Euler-exact."""
    parent = {v: v for v in q.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s, t in q.edges:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rs] = rt
    h0 = len({find(v) for v in q.vertices})
    rank = int_rank(boundary_matrix(q)) if q.edges else 0
    h1 = len(q.edges) - rank
    assert h0 - h1 == len(q.vertices) - len(q.edges), "Euler identity broken"
    return h0, h1


def _out_edges(q: Quiver):
    out = {v: [] for v in q.vertices}
    for j, (s, _) in enumerate(q.edges):
        out[s].append(j)
    return out


def _sccs(q: Quiver):
    """Tarjan strongly connected components, iterative."""
    out = _out_edges(q)
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comp = {}
    counter = [0]
    ncomp = [0]
    for root in q.vertices:
        if root in index:
            continue
        work = [(root, iter(out[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for j in it:
                w = q.edges[j][1]
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(out[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
    return comp


def _reachable(q: Quiver, src, dst, out=None):
    """Shortest directed edge path src -> dst, or None."""
    if out is None:
        out = _out_edges(q)
    if src == dst:
        return []
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for j in out[v]:
            w = q.edges[j][1]
            if w not in prev:
                prev[w] = j
                if w == dst:
                    path = []
                    while w != src:
                        j = prev[w]
                        path.append(j)
                        w = q.edges[j][0]
                    return path[::-1]
                queue.append(w)
    return None


@dataclass(frozen=True)
class CycleCoverCertificate:
    covered: bool
    edge_covered: tuple  # bool per edge
    cycles: tuple  # tuples of edge indices, each a closed walk
    kernel: Optional[tuple]  # positive integer kernel vector when covered


def cycle_cover(q: Quiver) -> CycleCoverCertificate:
    """Can the edge set be covered by directed cycles?

    Verdict: an edge lies on a cycle iff its endpoints share a strongly
    connected component.  Cross-checked against the reachability oracle.
    When covered, a positive integer kernel vector is assembled from
    closing paths and decomposed into simple cycles by the peeling walk,
    so kernel = sum of the peeled multiples exactly.
    """
    comp = _sccs(q)
    out = _out_edges(q)
    flags = []
    for j, (s, t) in enumerate(q.edges):
        in_cycle = comp[s] == comp[t]
        oracle = _reachable(q, t, s, out) is not None
        assert in_cycle == oracle, "SCC verdict disagrees with reachability"
        flags.append(in_cycle)
    covered = all(flags) and bool(q.edges)
    if not covered:
        return CycleCoverCertificate(covered, tuple(flags), (), None)
    weight = [0] * len(q.edges)
    for j, (s, t) in enumerate(q.edges):
        path = _reachable(q, t, s, out)
        weight[j] += 1
        for k in path:
            weight[k] += 1
    kernel = tuple(weight)
    # peel the kernel vector into simple positive cycles
    cycles = []
    w = list(weight)
    while any(x > 0 for x in w):
        start = next(j for j, x in enumerate(w) if x > 0)
        walk = [start]
        seen_at = {q.edges[start][0]: 0}
        v = q.edges[start][1]
        while v not in seen_at:
            seen_at[v] = len(walk)
            j = next(k for k in out[v] if w[k] > 0)
            walk.append(j)
            v = q.edges[j][1]
        cyc = tuple(walk[seen_at[v]:])
        m = min(w[j] for j in cyc)
        for j in cyc:
            w[j] -= m
        cycles.append(cyc)
    # sanity: the peeled cycles rebuild the kernel vector exactly
    rebuilt = [0] * len(q.edges)
    for cyc, m in zip(cycles, _peel_multiples(kernel, cycles)):
        for j in cyc:
            rebuilt[j] += m
    assert rebuilt == list(kernel), "cycle peeling lost weight"
    return CycleCoverCertificate(True, tuple(flags), tuple(cycles), kernel)


def _peel_multiples(kernel, cycles):
    w = list(kernel)
    mults = []
    for cyc in cycles:
        m = min(w[j] for j in cyc)
        for j in cyc:
            w[j] -= m
        mults.append(m)
    return mults


def edge_removal_profile(q: Quiver, idx: int):
    """Betti change from deleting one edge: 'bridge-like' or 'cycle-edge'."""
    h0, h1 = betti(q)
    nh0, nh1 = betti(q.drop_edge(idx))
    if (nh0, nh1) == (h0 + 1, h1):
        return "bridge-like", (nh0, nh1)
    if (nh0, nh1) == (h0, h1 - 1):
        return "cycle-edge", (nh0, nh1)
    raise AssertionError("edge removal changed betti numbers illegally")


# shape tags with an orientation-reversing self-diffeomorphism
def _reversible(tag: str) -> bool:
    return tag.startswith("(P1)^")


_SUPER = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _sup(k: int) -> str:
    return str(k).translate(_SUPER)


def _display(tag: str, barred: bool) -> str:
    if tag.startswith("(P1)^"):
        k = int(tag[5:])
        body = "ℙ¹" if k == 1 else f"(ℙ¹){_sup(k)}"
        return body  # never barred: orientation-reversible
    if tag == "P2":
        return "ℙ̄²" if barred else "ℙ²"
    return ("~" if barred else "") + tag


@dataclass(frozen=True)
class SummandExpression:
    """Connected-sum bookkeeping: toric summands plus N copies of S^1 x S^{m-1}."""

    summands: tuple  # ((tag, sign, count), ...) canonical order
    n_cross: int  # number of S^1 x S^{m-1} summands
    m: int  # real dimension of the manifold

    def render(self) -> str:
        parts = []
        for tag, sign, count in self.summands:
            disp = _display(tag, sign < 0)
            parts.append(f"{count}{disp}" if count != 1 else disp)
        if self.n_cross:
            cross = f"(S¹×S{_sup(self.m - 1)})"
            parts.append(f"{self.n_cross}{cross}" if self.n_cross != 1 else cross)
        return " # ".join(parts) if parts else f"S{_sup(self.m)}"


def glued_topology(q: Quiver, labels, n: int) -> SummandExpression:
    """Diffeomorphism type of the glued manifold attached to the quiver.

    labels maps each vertex to (shape tag, slice angle).  Requires a
    connected quiver and slice angles in (pi/n) Z.  Summand signs come
    from the angle parity; shapes admitting an orientation-reversing
    self-diffeomorphism are normalized to the positive side.
    """
    h0, h1 = betti(q)
    if h0 != 1:
        raise ValueError("glued topology needs a connected quiver")
    counts = Counter()
    for v in q.vertices:
        tag, theta = labels[v]
        if not isinstance(theta, AngleClass):
            raise TypeError("labels must carry AngleClass slice angles")
        k = theta.frac * n
        if k.denominator != 1:
            raise ValueError(f"vertex {v!r}: angle {theta} is not a multiple of pi/{n}")
        sign = 1 if int(k) % 2 == 0 else -1
        if _reversible(tag):
            sign = 1
        counts[(tag, sign)] += 1
    ordered = sorted(counts.items(), key=lambda kv: (kv[0][0], -kv[0][1]))
    summands = tuple((tag, sign, cnt) for (tag, sign), cnt in ordered)
    return SummandExpression(summands, h1, 2 * n)


_B1_TABLE = {"P2": 0}


def first_betti(expr: SummandExpression) -> int:
    """First Betti number of the connected sum."""
    total = 0
    for tag, _sign, count in expr.summands:
        if _reversible(tag) or tag in _B1_TABLE:
            total += 0 if _reversible(tag) else _B1_TABLE[tag] * count
        else:
            raise ValueError(f"no Betti data for shape {tag!r}")
    if expr.n_cross:
        if expr.m < 3:
            raise ValueError("S^1 x S^{m-1} bookkeeping needs m >= 3")
        total += expr.n_cross
    return total
