"""Boundaries, multiwords and the contraction machinery.

A boundary is an ordered set of endpoints, each polarized left or right.
A multiword over an alphabet is an edge-labeled perfect matching on a
boundary (edges run left-to-right) together with a finite multiset of
cyclic words.  Gluing two adjacent endpoints of opposite polarity either
fuses two edges (concatenating their labels) or closes an edge into a
cyclic word; every notion of composition in this package reduces to
iterating that single operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

# A word is a sequence of tokens; the empty tuple is the empty word.
Word = tuple[str, ...]

EPSILON: Word = ()


def word(text: str) -> Word:
    """Split a whitespace-separated token string into a word."""
    return tuple(text.split())


@dataclass(frozen=True, order=True)
class Boundary:
    """An ordered endpoint set: a cardinality plus the set of left positions."""

    size: int
    lefts: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("boundary size must be >= 0")
        if not all(1 <= p <= self.size for p in self.lefts):
            raise ValueError("left endpoints out of range")

    @property
    def rights(self) -> frozenset[int]:
        return frozenset(range(1, self.size + 1)) - self.lefts

    def is_left(self, pos: int) -> bool:
        return pos in self.lefts

    def tensor(self, other: "Boundary") -> "Boundary":
        lefts = self.lefts | frozenset(self.size + p for p in other.lefts)
        return Boundary(self.size + other.size, lefts)

    def dual(self) -> "Boundary":
        return Boundary(self.size, frozenset(self.size + 1 - p for p in self.rights))

    def polarity_string(self) -> str:
        return "".join("l" if p in self.lefts else "r" for p in range(1, self.size + 1))

    def __repr__(self):
        return f"Boundary({self.polarity_string()!r})" if self.size else "Boundary(1)"


EMPTY = Boundary(0)

#: The standard type: one left and one right endpoint; words live on it.
STANDARD = Boundary(2, frozenset({1}))


def boundary(polarities: str) -> Boundary:
    """Build a boundary from a polarity string such as ``"lrlr"``."""
    if not all(c in "lr" for c in polarities):
        raise ValueError(f"bad polarity string {polarities!r}")
    return Boundary(len(polarities), frozenset(i + 1 for i, c in enumerate(polarities) if c == "l"))


def tensor_boundary(x: Boundary, y: Boundary) -> Boundary:
    return x.tensor(y)


def dual_boundary(x: Boundary) -> Boundary:
    return x.dual()


def tensor_all(parts: Iterable[Boundary]) -> Boundary:
    out = EMPTY
    for p in parts:
        out = out.tensor(p)
    return out


def is_subboundary(host: Boundary, offset: int, sub: Boundary) -> bool:
    """True iff ``offset + sub`` sits inside ``host`` with matching polarities."""
    if offset < 0 or offset + sub.size > host.size:
        return False
    return all(
        host.is_left(offset + p) == sub.is_left(p) for p in range(1, sub.size + 1)
    )


@dataclass(frozen=True, order=True)
class Edge:
    """A labeled edge from a left endpoint to a right endpoint."""

    src: int
    label: Word
    dst: int


@dataclass(frozen=True, order=True)
class CyclicWord:
    """A word up to rotation, stored as its lexicographically least rotation."""

    tokens: Word

    @staticmethod
    def of(w: Word) -> "CyclicWord":
        if not w:
            return CyclicWord(())
        best = min(w[i:] + w[:i] for i in range(len(w)))
        return CyclicWord(best)

    def __repr__(self):
        return f"[{' '.join(self.tokens) or 'ε'}]"


@dataclass(frozen=True)
class Multiword:
    """An edge-labeled perfect matching on a boundary plus cyclic words."""

    boundary: Boundary
    edges: frozenset[Edge]
    cycles: tuple[CyclicWord, ...] = ()

    def __post_init__(self):
        seen: set[int] = set()
        for e in self.edges:
            if not self.boundary.is_left(e.src) or self.boundary.is_left(e.dst):
                raise ValueError(f"edge {e} does not run left to right")
            seen.update((e.src, e.dst))
        if len(seen) != 2 * len(self.edges) or len(seen) != self.boundary.size:
            raise ValueError("edges are not a perfect matching on the boundary")
        object.__setattr__(self, "cycles", tuple(sorted(self.cycles)))

    @property
    def is_regular(self) -> bool:
        return not self.cycles

    def letter_count(self) -> int:
        n = sum(len(e.label) for e in self.edges)
        return n + sum(len(c.tokens) for c in self.cycles)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: e.src)

    def __repr__(self):
        es = ", ".join(
            f"({e.src},{' '.join(e.label) or 'ε'},{e.dst})" for e in self.sorted_edges()
        )
        cy = ("; " + " ".join(map(repr, self.cycles))) if self.cycles else ""
        return f"Multiword<{self.boundary.polarity_string()}|{es}{cy}>"


def multiword(bnd: Boundary, edges: Iterable[tuple[int, Word, int]],
              cycles: Iterable[Word] = ()) -> Multiword:
    return Multiword(bnd, frozenset(Edge(s, tuple(w), t) for s, w, t in edges),
                     tuple(CyclicWord.of(tuple(c)) for c in cycles))


EMPTY_MULTIWORD = Multiword(EMPTY, frozenset())


def tensor_multiword(m: Multiword, n: Multiword) -> Multiword:
    """Place ``n`` after ``m``: shift its endpoints by ``|m.boundary|``."""
    shift = m.boundary.size
    edges = set(m.edges)
    edges.update(Edge(e.src + shift, e.label, e.dst + shift) for e in n.edges)
    return Multiword(m.boundary.tensor(n.boundary), frozenset(edges),
                     m.cycles + n.cycles)


def elementary_contraction(m: Multiword, n: int) -> Multiword:
    """Glue endpoints ``n`` and ``n + 1``, which must have opposite polarity.

    If the two endpoints belong to distinct edges, the edges fuse with
    concatenated labels; if one edge connects them, it closes into a
    cyclic word.
    """
    bnd = m.boundary
    if not 1 <= n < bnd.size:
        raise ValueError(f"contraction position {n} out of range")
    if bnd.is_left(n) == bnd.is_left(n + 1):
        raise ValueError(f"positions {n},{n + 1} have equal polarity")
    x, y = (n, n + 1) if not bnd.is_left(n) else (n + 1, n)  # x right, y left

    def phi(i: int) -> int:  # embedding of the shrunk boundary
        return i if i < n else i + 2

    new_bnd = Boundary(
        bnd.size - 2,
        frozenset(i for i in range(1, bnd.size - 1) if phi(i) in bnd.lefts),
    )

    def unphi(i: int) -> int:
        return i if i < n else i - 2

    into_x = next(e for e in m.edges if e.dst == x)
    from_y = next(e for e in m.edges if e.src == y)
    rest = [e for e in m.edges if e not in (into_x, from_y)]
    edges = {Edge(unphi(e.src), e.label, unphi(e.dst)) for e in rest}
    cycles = list(m.cycles)
    if into_x is from_y:  # loop case: (y, w, x) closes up
        cycles.append(CyclicWord.of(into_x.label))
    else:
        edges.add(Edge(unphi(into_x.src), into_x.label + from_y.label, unphi(from_y.dst)))
    return Multiword(new_bnd, frozenset(edges), tuple(cycles))


def iterated_contraction(m: Multiword, offset: int, y: Boundary) -> Multiword:
    """Contract the subboundary ``offset + (Y-dual tensor Y)`` inside out."""
    if not is_subboundary(m.boundary, offset, y.dual().tensor(y)):
        raise ValueError("contraction region is not a subboundary of the stated shape")
    out = m
    for k in range(y.size, 0, -1):
        out = elementary_contraction(out, offset + k)
    return out


def glue(m: Multiword, offset: int, width: int) -> Multiword:
    """Splice out the mirror-glued region of ``2 * width`` endpoints at ``offset``.

    Equivalent to :func:`iterated_contraction` over a region ``Y-dual (x) Y``
    (position ``offset + k`` is glued to ``offset + 2 * width + 1 - k``) but
    computed by path tracing in one pass.
    """
    if width == 0:
        return m
    lo, hi = offset + 1, offset + 2 * width
    size = m.boundary.size

    def glued(p: int) -> int:
        return offset + (2 * width + 1) - (p - offset)

    def keep(p: int) -> int:
        return p if p < lo else p - 2 * width

    out_of: dict[int, Edge] = {e.src: e for e in m.edges}
    edges: set[Edge] = set()
    visited: set[Edge] = set()
    for e in m.edges:
        if lo <= e.src <= hi:
            continue
        cur = e
        label = list(e.label)
        visited.add(cur)
        while lo <= cur.dst <= hi:
            cur = out_of[glued(cur.dst)]
            visited.add(cur)
            label.extend(cur.label)
        edges.add(Edge(keep(e.src), tuple(label), keep(cur.dst)))
    cycles = list(m.cycles)
    for e in sorted(m.edges):
        if e in visited:
            continue
        cur = e
        label = list(e.label)
        visited.add(cur)
        while True:
            cur = out_of[glued(cur.dst)]
            if cur is e:
                break
            visited.add(cur)
            label.extend(cur.label)
        cycles.append(CyclicWord.of(tuple(label)))
    lefts = frozenset(keep(p) for p in m.boundary.lefts if not lo <= p <= hi)
    return Multiword(Boundary(size - 2 * width, lefts), frozenset(edges), tuple(cycles))


def pattern(m: Multiword) -> Multiword:
    """Erase every letter: same wiring, empty labels, cyclic words become [ε]."""
    return Multiword(
        m.boundary,
        frozenset(Edge(e.src, EPSILON, e.dst) for e in m.edges),
        tuple(CyclicWord(()) for _ in m.cycles),
    )
