"""The compact closed category of word cobordisms.

Objects are boundaries; a morphism ``X -> Y`` is a multiword whose
boundary is ``Y (x) dual(X)``.  Composition glues the shared boundary by
iterated contraction.  Duality, currying, names and conames are
re-indexings or outright re-typings of the same underlying multiword,
which is what makes the category compact closed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multiword import (
    EMPTY,
    EPSILON,
    Boundary,
    Edge,
    Multiword,
    glue,
    pattern,
    tensor_multiword,
)


@dataclass(frozen=True)
class Cowordism:
    """A multiword typed as a morphism ``source -> target``."""

    source: Boundary
    target: Boundary
    body: Multiword

    def __post_init__(self):
        want = self.target.tensor(self.source.dual())
        if self.body.boundary != want:
            raise ValueError(
                f"body boundary {self.body.boundary.polarity_string()!r} does not match "
                f"{want.polarity_string()!r} for {self.source.polarity_string()!r}"
                f"->{self.target.polarity_string()!r}"
            )

    @property
    def is_regular(self) -> bool:
        return self.body.is_regular

    def retype(self, source: Boundary, target: Boundary) -> "Cowordism":
        """Re-type the same multiword; the new boundaries must multiply out equal."""
        return Cowordism(source, target, self.body)

    def __repr__(self):
        return (
            f"Cowordism({self.source.polarity_string()!r}->"
            f"{self.target.polarity_string()!r}, {self.body!r})"
        )


def from_state(bnd: Boundary, body: Multiword) -> Cowordism:
    """View a multiword on ``bnd`` as a morphism from the unit."""
    assert body.boundary == bnd
    return Cowordism(EMPTY, bnd, body)


def identity(x: Boundary) -> Cowordism:
    n = x.size
    edges = {Edge(i, EPSILON, 2 * n - i + 1) for i in x.lefts}
    edges |= {Edge(2 * n - i + 1, EPSILON, i) for i in x.rights}
    return Cowordism(x, x, Multiword(x.tensor(x.dual()), frozenset(edges)))


def compose(sigma: Cowordism, tau: Cowordism) -> Cowordism:
    """Pipeline order: first ``sigma: X -> Y`` then ``tau: Y -> Z``."""
    if sigma.target != tau.source:
        raise ValueError(
            f"cannot compose: middle boundaries differ "
            f"({sigma.target.polarity_string()!r} vs {tau.source.polarity_string()!r})"
        )
    glued = glue(tensor_multiword(tau.body, sigma.body), tau.target.size,
                 sigma.target.size)
    return Cowordism(sigma.source, tau.target, glued)


def compose_all(first: Cowordism, *rest: Cowordism) -> Cowordism:
    out = first
    for f in rest:
        out = compose(out, f)
    return out


def tensor(sigma: Cowordism, tau: Cowordism) -> Cowordism:
    """Side-by-side product ``X (x) Z -> Y (x) T``."""
    y, x = sigma.target.size, sigma.source.size
    t, z = tau.target.size, tau.source.size

    def phi(i: int) -> int:
        return i if i <= y else i + t + z

    def psi(i: int) -> int:
        return i + y

    edges = {Edge(phi(e.src), e.label, phi(e.dst)) for e in sigma.body.edges}
    edges |= {Edge(psi(e.src), e.label, psi(e.dst)) for e in tau.body.edges}
    src = sigma.source.tensor(tau.source)
    tgt = sigma.target.tensor(tau.target)
    body = Multiword(tgt.tensor(src.dual()), frozenset(edges),
                     sigma.body.cycles + tau.body.cycles)
    return Cowordism(src, tgt, body)


def tensor_all(first: Cowordism, *rest: Cowordism) -> Cowordism:
    out = first
    for f in rest:
        out = tensor(out, f)
    return out


def symmetry(x: Boundary, y: Boundary) -> Cowordism:
    """The braid-free swap ``X (x) Y -> Y (x) X``."""
    nx, ny = x.size, y.size
    edges = {Edge(ny + i, EPSILON, 2 * nx + 2 * ny - i + 1) for i in x.lefts}
    edges |= {Edge(2 * nx + 2 * ny - i + 1, EPSILON, ny + i) for i in x.rights}
    edges |= {Edge(i, EPSILON, nx + 2 * ny - i + 1) for i in y.lefts}
    edges |= {Edge(nx + 2 * ny - i + 1, EPSILON, i) for i in y.rights}
    src = x.tensor(y)
    tgt = y.tensor(x)
    return Cowordism(src, tgt, Multiword(tgt.tensor(src.dual()), frozenset(edges)))


def dual(sigma: Cowordism) -> Cowordism:
    """Contravariant duality: ``dual(X -> Y) : dual(Y) -> dual(X)``."""
    y, x = sigma.target.size, sigma.source.size

    def phi(i: int) -> int:
        return i + x if i <= y else i - y

    body = Multiword(
        sigma.source.dual().tensor(sigma.target),
        frozenset(Edge(phi(e.src), e.label, phi(e.dst)) for e in sigma.body.edges),
        sigma.body.cycles,
    )
    return Cowordism(sigma.target.dual(), sigma.source.dual(), body)


def hom(x: Boundary, y: Boundary) -> Boundary:
    """Internal hom: ``X -o Y = Y (x) dual(X)``."""
    return y.tensor(x.dual())


def par(x: Boundary, y: Boundary) -> Boundary:
    """Cotensor: ``X par Y = Y (x) X``."""
    return y.tensor(x)


def curry(sigma: Cowordism, split: int) -> Cowordism:
    """Re-type ``X (x) Y -> Z`` as ``X -> (Y -o Z)``.

    ``split`` is ``|X|``: the source is cut after that many endpoints.
    The underlying multiword is untouched.
    """
    src = sigma.source
    if split < 0 or split > src.size:
        raise ValueError("bad split point")
    x = Boundary(split, frozenset(p for p in src.lefts if p <= split))
    y = Boundary(src.size - split,
                 frozenset(p - split for p in src.lefts if p > split))
    return Cowordism(x, hom(y, sigma.target), sigma.body)


def uncurry(sigma: Cowordism, arg_size: int) -> Cowordism:
    """Inverse of :func:`curry`: read ``X -> (Y -o Z)`` as ``X (x) Y -> Z``.

    ``arg_size`` is ``|Y|``; the target must end in ``dual(Y)``.
    """
    tgt = sigma.target
    if arg_size < 0 or arg_size > tgt.size:
        raise ValueError("bad argument size")
    zsize = tgt.size - arg_size
    z = Boundary(zsize, frozenset(p for p in tgt.lefts if p <= zsize))
    ydual = Boundary(arg_size, frozenset(p - zsize for p in tgt.lefts if p > zsize))
    return Cowordism(sigma.source.tensor(ydual.dual()), z, sigma.body)


def name_of(sigma: Cowordism) -> Cowordism:
    """``1 -> (X -o Y)``; same multiword, everything on the outgoing side."""
    return Cowordism(EMPTY, hom(sigma.source, sigma.target), sigma.body)


def coname_of(sigma: Cowordism) -> Cowordism:
    """``X (x) dual(Y) -> 1``; same multiword, everything on the incoming side."""
    return Cowordism(sigma.source.tensor(sigma.target.dual()), EMPTY, sigma.body)


def copairing(x: Boundary) -> Cowordism:
    """Name of the identity, ``1 -> dual(X) par X``."""
    return name_of(identity(x))


def pairing(x: Boundary) -> Cowordism:
    """Coname of the identity presented as ``dual(X) (x) X -> 1``."""
    return compose(symmetry(x.dual(), x), coname_of(identity(x)))


def evaluation(x: Boundary, y: Boundary) -> Cowordism:
    """``(X -o Y) (x) X -> Y``: the identity on the hom, uncurried."""
    return uncurry(identity(hom(x, y)), x.size)


def block_permutation(blocks: list[Boundary], order: list[int]) -> Cowordism:
    """Wire the tensor of ``blocks`` to the same blocks listed in ``order``.

    ``order[j]`` is the index (into ``blocks``) of the block placed at
    target position ``j``.  All wires are empty-labeled; each block keeps
    its internal ordering, so the result is a composite of symmetries.
    """
    if sorted(order) != list(range(len(blocks))):
        raise ValueError("order is not a permutation of the blocks")
    from .multiword import tensor_all as _tb

    src = _tb(blocks)
    tgt = _tb([blocks[i] for i in order])
    src_offset: dict[int, int] = {}
    acc = 0
    for i, b in enumerate(blocks):
        src_offset[i] = acc
        acc += b.size
    edges = set()
    tacc = 0
    total_src = src.size
    for j, i in enumerate(order):
        b = blocks[i]
        for q in range(1, b.size + 1):
            tp = tacc + q
            inpos = tgt.size + (total_src + 1 - (src_offset[i] + q))
            if b.is_left(q):
                edges.add(Edge(tp, EPSILON, inpos))
            else:
                edges.add(Edge(inpos, EPSILON, tp))
        tacc += b.size
    return Cowordism(src, tgt, Multiword(tgt.tensor(src.dual()), frozenset(edges)))


def linear_distributivity(x: Boundary, y: Boundary, z: Boundary) -> Cowordism:
    """``(X par Y) (x) Z -> X par (Y (x) Z)``; a pure permutation here."""
    return tensor(identity(y), symmetry(x, z))


def internal_tensor(x: Boundary, y: Boundary, z: Boundary, t: Boundary) -> Cowordism:
    """``(X par Y) (x) (Z par T) -> X par (Y (x) Z) par T``."""
    first = tensor(identity(y), symmetry(x, t.tensor(z)))
    second = tensor(tensor(symmetry(y, t), identity(z)), identity(x))
    return compose(first, second)


def internal_cotensor(x: Boundary, y: Boundary, z: Boundary, t: Boundary) -> Cowordism:
    """``X (x) (Y par Z) (x) T -> (X (x) Y) par (Z (x) T)``.

    Defined as the dual of the internal tensor on dualized arguments.
    """
    return dual(internal_tensor(x.dual(), y.dual(), z.dual(), t.dual()))


def partial_compose(sigma: Cowordism, tau: Cowordism) -> Cowordism:
    """Compose ``sigma: X -> Y`` with ``tau: Y (x) T -> Z`` over ``Y``."""
    ysize = sigma.target.size
    tsize = tau.source.size - ysize
    if tsize < 0:
        raise ValueError("tau source too small for partial composition")
    t = Boundary(tsize, frozenset(p - ysize for p in tau.source.lefts if p > ysize))
    if tau.source != sigma.target.tensor(t):
        raise ValueError("tau source does not start with sigma target")
    return compose(tensor(sigma, identity(t)), tau)


def partial_pairing(sigma: Cowordism, tau: Cowordism, x: Boundary, y: Boundary,
                    z: Boundary) -> Cowordism:
    """Cut two one-sided morphisms over ``Y``.

    ``sigma: 1 -> X par Y`` and ``tau: 1 -> dual(Y) par Z`` combine into
    ``1 -> X par Z`` by gluing ``Y`` against its dual, following the
    defining composite built from the internal tensor and the pairing.
    """
    if sigma.source != EMPTY or sigma.target != par(x, y):
        raise ValueError("sigma is not of type 1 -> X par Y")
    if tau.source != EMPTY or tau.target != par(y.dual(), z):
        raise ValueError("tau is not of type 1 -> dual(Y) par Z")
    spread = compose(tensor(sigma, tau), internal_tensor(x, y, y.dual(), z))
    collapse = tensor(identity(z), tensor(coname_of(identity(y)), identity(x)))
    return compose(spread, collapse)


def cut_glue(sigma: Cowordism, tau: Cowordism, x: Boundary, y: Boundary,
             z: Boundary) -> Cowordism:
    """Direct contraction route for :func:`partial_pairing` (same contract).

    Used where many cuts are performed; equality with the composite
    definition is pinned by tests.
    """
    glued = glue(tensor_multiword(tau.body, sigma.body), z.size, y.size)
    return Cowordism(EMPTY, par(x, z), glued)


def remap_blocks(state: Cowordism, blocks: list[Boundary], order: list[int]) -> Cowordism:
    """Reorder the tensor blocks of a unit-sourced cowordism in place.

    Equal to composing with :func:`block_permutation`, but by a direct
    endpoint relabeling.
    """
    if state.source != EMPTY:
        raise ValueError("remap_blocks expects a cowordism from the unit")
    src_off = []
    acc = 0
    for b in blocks:
        src_off.append(acc)
        acc += b.size
    if acc != state.target.size:
        raise ValueError("blocks do not cover the boundary")
    tgt_off = {}
    acc = 0
    for j, i in enumerate(order):
        tgt_off[i] = acc
        acc += blocks[i].size
    mapping = {}
    for i, b in enumerate(blocks):
        for q in range(1, b.size + 1):
            mapping[src_off[i] + q] = tgt_off[i] + q
    from .multiword import tensor_all as _tb

    tgt = _tb([blocks[i] for i in order])
    body = Multiword(
        tgt,
        frozenset(Edge(mapping[e.src], e.label, mapping[e.dst])
                  for e in state.body.edges),
        state.body.cycles,
    )
    return Cowordism(EMPTY, tgt, body)


def pattern_cow(sigma: Cowordism) -> Cowordism:
    """Erase all letters; a strict monoidal functor to cobordisms."""
    return Cowordism(sigma.source, sigma.target, pattern(sigma.body))
