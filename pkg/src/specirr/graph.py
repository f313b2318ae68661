"""Simple undirected graphs stored as bit rows, plus I/O and generators.

Row ``i`` of a :class:`Graph` is an int whose bit ``j`` is set iff ``i ~ j``.
Graphs are immutable; every operation returns a new graph.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .exceptions import Graph6Error, GraphFormatError

__all__ = [
    "Graph",
    "FamilySpec",
    "from_graph6",
    "to_graph6",
    "from_edge_list",
    "from_edges",
    "is_connected",
    "components",
    "induced_subgraph",
    "delete_vertex",
    "relabel",
    "empty",
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "pineapple",
    "cone",
    "harmonic_tk",
    "parse_family",
    "build_family",
    "enumerate_connected",
    "MAX_ENUMERATION_N",
]

MAX_ENUMERATION_N = 7
_G6_SHORT_MAX = 62
_G6_LONG_MAX = 258047


class Graph:
    __slots__ = ("n", "rows", "degrees", "m")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i, r in enumerate(rows):
            if r & ~full or r < 0:
                raise ValueError(f"row {i} references a vertex outside 0..{n - 1}")
            if r >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            rest = r
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if not rows[j] >> i & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
                rest ^= low
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        degrees = tuple(r.bit_count() for r in rows)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "m", sum(degrees) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, graph6={to_graph6(self)!r})"

    def __reduce__(self):
        return (Graph, (self.n, self.rows))

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        r = self.rows[i]
        return [j for j in range(self.n) if r >> j & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.rows[i] >> j & 1]

    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix as ``uint8``."""
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        return a


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


# -- graph6 ---------------------------------------------------------------

def _strip_g6(text: str) -> str:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    return s


def from_graph6(text: str) -> Graph:
    """Decode one graph6 line.

    Accepts the 1-byte size header (n <= 62) and the 4-byte ``~``-prefixed
    header (n <= 258047).  Surrounding whitespace is ignored.
    """
    s = _strip_g6(text)
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    data = s.encode("ascii", errors="replace")
    for off, c in enumerate(data):
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {chr(c)!r} outside the graph6 range", off)

    if data[0] != 126:
        n = data[0] - 63
        body = 1
    elif len(data) >= 2 and data[1] == 126:
        raise Graph6Error("8-byte size header (n > 258047) not supported", 1)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size header", len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n <= _G6_SHORT_MAX:
            raise Graph6Error(f"long size header used for n={n}", 0)
        body = 4
    if n < 1:
        raise Graph6Error("graph6 encodes no vertices", 0)

    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    if len(data) - body != nchars:
        off = min(len(data), body + nchars)
        raise Graph6Error(f"expected {nchars} data bytes for n={n}, got {len(data) - body}", off)

    pad = nchars * 6 - nbits
    if pad and (data[-1] - 63) & ((1 << pad) - 1):
        raise Graph6Error("padding bits are not zero", len(data) - 1)

    rows = [0] * n
    k = 0
    i, j = 0, 1
    for c in data[body:]:
        val = c - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                break
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, rows)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= _G6_SHORT_MAX:
        out = [chr(n + 63)]
    elif n <= _G6_LONG_MAX:
        out = ["~", chr((n >> 12 & 63) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    else:
        raise ValueError(f"n={n} exceeds the supported graph6 range")
    val = 0
    nb = 0
    rows = g.rows
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            val = (val << 1) | (rj >> i & 1)
            nb += 1
            if nb == 6:
                out.append(chr(val + 63))
                val = nb = 0
    if nb:
        out.append(chr((val << (6 - nb)) + 63))
    return "".join(out)


# -- edge list --------------------------------------------------------------

def from_edge_list(text: str) -> Graph:
    """Parse ``n`` followed by whitespace-separated ``u v`` pairs.

    Duplicate edges collapse; self-loops and out-of-range indices raise.
    """
    tokens = text.split()
    if not tokens:
        raise GraphFormatError("empty edge list")
    values = []
    for tok in tokens:
        try:
            values.append(int(tok))
        except ValueError:
            raise GraphFormatError(f"unparsable token {tok!r}") from None
    n, rest = values[0], values[1:]
    if n < 1:
        raise GraphFormatError(f"vertex count must be positive, got {n}")
    if len(rest) % 2:
        raise GraphFormatError("dangling vertex index without a partner")
    rows = [0] * n
    for u, v in zip(rest[::2], rest[1::2]):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


# -- structure --------------------------------------------------------------

def _reach(rows: Sequence[int], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return _reach(g.rows, 0) == (1 << g.n) - 1


def components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by smallest vertex."""
    left = (1 << g.n) - 1
    out = []
    while left:
        start = (left & -left).bit_length() - 1
        comp = _reach(g.rows, start)
        out.append([i for i in range(g.n) if comp >> i & 1])
        left &= ~comp
    return out


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph on ``vertices``, relabeled 0.. in the given order."""
    index = {v: k for k, v in enumerate(vertices)}
    rows = []
    for v in vertices:
        r = 0
        for u, k in index.items():
            if g.rows[v] >> u & 1:
                r |= 1 << k
        rows.append(r)
    return Graph(len(vertices), rows)


def delete_vertex(g: Graph, i: int) -> Graph:
    if g.n == 1:
        raise ValueError("cannot delete the only vertex")
    if not 0 <= i < g.n:
        raise IndexError(f"vertex {i} out of range for n={g.n}")
    low_mask = (1 << i) - 1
    rows = []
    for k, r in enumerate(g.rows):
        if k != i:
            rows.append((r & low_mask) | (r >> (i + 1) << i))
    return Graph(g.n - 1, rows)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph in which old vertex ``i`` becomes ``perm[i]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges()))


# -- families ---------------------------------------------------------------

def empty(n: int) -> Graph:
    if n < 1:
        raise ValueError("empty graph needs n >= 1")
    return Graph(n, [0] * n)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << i) for i in range(n)])


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q} with parts ``0..p-1`` and ``p..p+q-1``."""
    if p < 1 or q < 1:
        raise ValueError("both parts of a biclique need at least one vertex")
    a = (1 << p) - 1
    b = ((1 << q) - 1) << p
    return Graph(p + q, [b] * p + [a] * q)


def pineapple(n: int, q: int) -> Graph:
    """Clique on ``0..q-1`` with pendant vertices ``q..n-1`` hanging off vertex 0."""
    if not 2 <= q <= n:
        raise ValueError(f"pineapple needs 2 <= q <= n, got n={n}, q={q}")
    edges = [(i, j) for j in range(q) for i in range(j)]
    edges += [(0, s) for s in range(q, n)]
    return from_edges(n, edges)


def cone(h: Graph) -> Graph:
    """Add apex vertex 0 joined to every vertex of ``h`` (shifted to 1..)."""
    n = h.n + 1
    rows = [((1 << n) - 1) & ~1]
    rows += [(r << 1) | 1 for r in h.rows]
    return Graph(n, rows)


def harmonic_tk(k: int) -> Graph:
    """Cycle ``0..k-1`` with a triangle hung on each cycle vertex.

    Cycle vertex ``i`` gets the adjacent pair ``k+2i, k+2i+1``.  The result
    has degree vector d with A d = 3 d.
    """
    if k < 3:
        raise ValueError("harmonic_tk needs k >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)]
    for i in range(k):
        a, b = k + 2 * i, k + 2 * i + 1
        edges += [(i, a), (i, b), (a, b)]
    return from_edges(3 * k, edges)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = ()
    inner: "FamilySpec | Graph | None" = None

    def __str__(self):
        if self.kind == "cone":
            inner = self.inner
            text = str(inner) if isinstance(inner, FamilySpec) else f"graph6 {to_graph6(inner)}"
            return f"cone {text}"
        return " ".join([self.kind, *map(str, self.params)])


_ARITY = {
    "biclique": 2,
    "pineapple": 2,
    "path": 1,
    "cycle": 1,
    "complete": 1,
    "empty": 1,
    "tk": 1,
}


def parse_family(text: str) -> FamilySpec:
    """Parse ``"biclique p q" | "pineapple n q" | "cone <spec>" | "path n" |
    "cycle n" | "complete n" | "empty n" | "tk k"``.
    """
    tokens = re.split(r"[\s,()]+", text.strip())
    tokens = [t for t in tokens if t]
    spec, rest = _parse_tokens(tokens, text)
    if rest:
        raise GraphFormatError(f"trailing tokens {' '.join(rest)!r} in family spec {text!r}")
    return spec


def _parse_tokens(tokens, text):
    if not tokens:
        raise GraphFormatError(f"incomplete family spec {text!r}")
    kind, rest = tokens[0].lower(), tokens[1:]
    if kind == "cone":
        inner, rest = _parse_tokens(rest, text)
        return FamilySpec("cone", (), inner), rest
    if kind == "graph6":
        if not rest:
            raise GraphFormatError(f"graph6 literal missing in {text!r}")
        return from_graph6(rest[0]), rest[1:]
    if kind not in _ARITY:
        raise GraphFormatError(f"unknown family {kind!r} in {text!r}")
    arity = _ARITY[kind]
    if len(rest) < arity:
        raise GraphFormatError(f"family {kind!r} needs {arity} integer parameter(s)")
    try:
        params = tuple(int(t) for t in rest[:arity])
    except ValueError:
        raise GraphFormatError(f"non-integer parameter in {text!r}") from None
    return FamilySpec(kind, params), rest[arity:]


_BUILDERS = {
    "biclique": complete_bipartite,
    "pineapple": pineapple,
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "empty": empty,
    "tk": harmonic_tk,
}


def build_family(spec: FamilySpec | Graph | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    if isinstance(spec, Graph):
        return spec
    if spec.kind == "cone":
        return cone(build_family(spec.inner))
    try:
        return _BUILDERS[spec.kind](*spec.params)
    except ValueError as exc:
        raise GraphFormatError(f"{spec}: {exc}") from None


# -- enumeration ------------------------------------------------------------

def _from_pattern(n: int, x: int, pairs) -> Graph:
    rows = [0] * n
    k = 0
    while x:
        if x & 1:
            i, j = pairs[k]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        x >>= 1
        k += 1
    return Graph(n, rows)


def enumerate_connected(
    n: int, dedup: bool = True, partition: tuple[int, int] | None = None
) -> Iterator[Graph]:
    """Yield every connected labeled graph on ``n`` vertices, by bit pattern.

    With ``dedup`` only the graph whose upper-triangle pattern is smallest
    in its isomorphism class is kept.  ``partition=(index, count)`` restricts
    the stream to the ``index``-th of ``count`` contiguous pattern ranges;
    the union over all indices is the full stream, in the same order.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"built-in enumeration supports 1 <= n <= {MAX_ENUMERATION_N}")
    flags = _kernels.pattern_flags(n)
    want = _kernels.CONNECTED | (_kernels.CANONICAL if dedup else 0)
    lo, hi = 0, len(flags)
    if partition is not None:
        index, count = partition
        if count < 1 or not 0 <= index < count:
            raise ValueError(f"bad partition {partition!r}")
        lo, hi = index * len(flags) // count, (index + 1) * len(flags) // count
    hits = np.flatnonzero((flags[lo:hi] & want) == want) + lo
    pairs = _kernels.pair_list(n)
    for x in hits:
        yield _from_pattern(n, int(x), pairs)
