"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import product

from cowgram import category as cat
from cowgram import mll
from cowgram.llg import CowordismSignature, Llg
from cowgram.mcfg import Mcfg, Production
from cowgram.multiword import EMPTY, Boundary, Edge, Multiword


def random_boundary(rng: random.Random, max_points: int = 6) -> Boundary:
    n = rng.randrange(max_points + 1)
    lefts = frozenset(p for p in range(1, n + 1) if rng.random() < 0.5)
    return Boundary(n, lefts)


def random_label(rng: random.Random, alphabet="abc", max_len: int = 3) -> tuple:
    return tuple(rng.choice(alphabet) for _ in range(rng.randrange(max_len + 1)))


def random_multiword(rng: random.Random, bnd: Boundary,
                     cyclic_chance: float = 0.2) -> Multiword:
    lefts = sorted(bnd.lefts)
    rights = sorted(bnd.rights)
    assert len(lefts) == len(rights), "boundary is not matchable"
    rng.shuffle(rights)
    edges = frozenset(Edge(l, random_label(rng), r) for l, r in zip(lefts, rights))
    cycles = []
    while rng.random() < cyclic_chance:
        cycles.append(random_label(rng))
    from cowgram.multiword import CyclicWord

    return Multiword(bnd, edges, tuple(CyclicWord.of(c) for c in cycles))


def balanced_boundary(rng: random.Random, max_pairs: int = 3) -> Boundary:
    """A boundary with equally many left and right endpoints."""
    while True:
        b = random_boundary(rng, 2 * max_pairs)
        if len(b.lefts) == len(b.rights):
            return b


def random_cowordism(rng: random.Random, src: Boundary | None = None,
                     tgt: Boundary | None = None) -> cat.Cowordism:
    """A random morphism; source and target are drawn to be matchable."""
    while True:
        s = random_boundary(rng) if src is None else src
        t = random_boundary(rng) if tgt is None else tgt
        bnd = t.tensor(s.dual())
        if len(bnd.lefts) == len(bnd.rights):
            return cat.Cowordism(s, t, random_multiword(rng, bnd))


def random_composable_pair(rng: random.Random):
    mid = random_boundary(rng)
    return (random_cowordism(rng, tgt=mid), random_cowordism(rng, src=mid))


def random_composable_triple(rng: random.Random):
    a = random_boundary(rng)
    b = random_boundary(rng)
    return (random_cowordism(rng, tgt=a),
            random_cowordism(rng, src=a, tgt=b),
            random_cowordism(rng, src=b))


# ---------------------------------------------------- naive LLG enumerator


def naive_logic_free_words(llg: Llg, max_axioms: int, max_letters: int):
    """Brute-force enumeration of start words by cut trees over axioms.

    Independent of the chart engine: builds every judgement obtainable by
    cutting dual literals between derivation trees, with no sequent
    canonicalization and no sharing.
    """
    sig = llg.signature
    env = sig.literals
    from cowgram.mll import Lit, interp_formula, interp_sequent, negate

    # judgement: (sequent tuple, cowordism)
    levels = {1: []}
    for ax in sig.axioms.values():
        levels[1].append((ax.sequent, ax.cow))

    def letters(cow):
        return cow.body.letter_count()

    for n in range(2, max_axioms + 1):
        out = []
        for k in range(1, n):
            for (gl, sl) in levels.get(k, ()):
                for (gr, sr) in levels.get(n - k, ()):
                    for i, f in enumerate(gl):
                        for j, g in enumerate(gr):
                            if g != negate(f):
                                continue
                            # exchange f to last, g to first, then cut
                            gl2 = gl[:i] + gl[i + 1:] + (f,)
                            gr2 = (g,) + gr[:j] + gr[j + 1:]
                            sl2 = _rearranged(sl, gl, list(range(len(gl))), i, env)
                            sr2 = _to_front(sr, gr, j, env)
                            x = interp_sequent(gl2[:-1], env)
                            y = interp_formula(f, env)
                            z = interp_sequent(gr2[1:], env)
                            cow = cat.partial_pairing(sl2, sr2, x, y, z)
                            if letters(cow) <= max_letters:
                                out.append((gl2[:-1] + gr2[1:], cow))
        levels[n] = out
    start = (Lit(llg.start),)
    words = set()
    for lvl in levels.values():
        for seq, cow in lvl:
            if seq == start and cow.is_regular:
                words.add(next(iter(cow.body.edges)).label)
    return words


def _perm_cow(seq, order, env):
    from cowgram.mll import interp_formula

    blocks = [interp_formula(f, env) for f in reversed(seq)]
    n = len(seq)
    block_order = [n - 1 - order[n - 1 - k] for k in range(n)]
    return cat.block_permutation(blocks, block_order)


def _rearranged(cow, seq, idx, i, env):
    order = [k for k in idx if k != i] + [i]
    if order == idx:
        return cow
    return cat.compose(cow, _perm_cow(seq, order, env))


def _to_front(cow, seq, j, env):
    order = [j] + [k for k in range(len(seq)) if k != j]
    if order == list(range(len(seq))):
        return cow
    return cat.compose(cow, _perm_cow(seq, order, env))


# --------------------------------------------------------- random grammars


def random_tiny_mcfg(rng: random.Random) -> Mcfg:
    """Small valid grammars: <=3 nonterminals, arity <=2, <=4 productions."""
    nts = ["S"] + [f"N{i}" for i in range(rng.randrange(0, 3))]
    arities = {"S": 1}
    for n in nts[1:]:
        arities[n] = rng.randrange(1, 3)
    terminals = ("a", "b")
    g = Mcfg(arities, terminals, "S")
    for _ in range(rng.randrange(1, 5)):
        head = rng.choice(nts)
        k = arities[head]
        nbody = rng.randrange(0, 3)
        body = []
        vars_ = []
        pool = iter([f"{v}{i}" for i in range(9) for v in "uvwxyz"])
        for _b in range(nbody):
            b = rng.choice(nts)
            args = tuple(next(pool) for _ in range(arities[b]))
            body.append((b, args))
            vars_.extend(args)
        rng.shuffle(vars_)
        slots: list[list[str]] = [[] for _ in range(k)]
        for v in vars_:
            slots[rng.randrange(k)].append(v)
        words = []
        for parts in slots:
            w: list[str] = []
            for v in parts:
                if rng.random() < 0.5:
                    w.append(rng.choice(terminals))
                w.append(v)
            if rng.random() < 0.7:
                w.append(rng.choice(terminals))
            words.append(tuple(w))
        g.productions.append(Production(body, head, tuple(words)))
    return g


def random_logic_free_llg(rng: random.Random) -> Llg:
    """Small lexicons over standard literals, for engine cross-checks."""
    from cowgram.multiword import STANDARD

    names = ["S", "A", "B"][: rng.randrange(1, 4)]
    literals = {n: STANDARD for n in names}
    sig = CowordismSignature(literals, ("a", "b"))
    from cowgram.mll import Lit, interp_sequent, negate

    for k in range(rng.randrange(1, 5)):
        length = rng.randrange(1, 4)
        seq = []
        for _ in range(length):
            lit = Lit(rng.choice(names))
            seq.append(lit if rng.random() < 0.5 else negate(lit))
        seq = tuple(seq)
        bnd = interp_sequent(seq, literals)
        mw = random_multiword(rng, bnd, cyclic_chance=0.0)
        mw = Multiword(bnd, frozenset(
            Edge(e.src, random_label(rng, "ab", 2), e.dst) for e in mw.edges))
        sig.add(f"ax{k}", seq, cat.Cowordism(EMPTY, bnd, mw))
    return Llg(sig, "S")


# ------------------------------------------------ normal form of a witness


def generalized_id_proof(seq: tuple) -> mll.MllProof:
    """A pure proof of ``|- neg(A1) x ... x neg(An), A1, ..., An``."""
    p: mll.MllProof = mll.IdAxiom(seq[0])
    for k in range(1, len(seq)):
        # move the tensed passenger from front to the end
        for pos in range(1, k + 1):
            p = mll.ExchangeRule(p, pos)
        p = mll.TensorRule(p, mll.IdAxiom(seq[k]))
        # move the new tensor back to the front
        for pos in range(k, 0, -1):
            p = mll.ExchangeRule(p, pos)
    return p


def to_normal_form(proof: mll.MllProof, axioms: dict) -> tuple[mll.MllProof, list[str]]:
    """Replace lexicon leaves by generalized identities.

    Returns a pure proof of ``|- G1-, ..., Gk-, Gamma`` (one tensed
    passenger per leaf, in leaf order) plus the leaf names.
    """

    def bubble_to_front(p: mll.MllProof, m: int) -> mll.MllProof:
        for pos in range(m - 1, 0, -1):
            p = mll.ExchangeRule(p, pos)
        return p

    def move_block_left(p: mll.MllProof, start: int, size: int,
                        over: int) -> mll.MllProof:
        # move items [start, start+size) left across `over` positions
        for item in range(size):
            for pos in range(start + item - 1, start + item - over - 1, -1):
                p = mll.ExchangeRule(p, pos)
        return p

    def go(p: mll.MllProof) -> tuple[mll.MllProof, int, list[str]]:
        if isinstance(p, mll.LexAxiom):
            return generalized_id_proof(axioms[p.name]), 1, [p.name]
        if isinstance(p, mll.IdAxiom):
            return p, 0, []
        if isinstance(p, mll.ExchangeRule):
            q, np_, leaves = go(p.premise)
            return mll.ExchangeRule(q, p.pos + np_), np_, leaves
        if isinstance(p, mll.ParRule):
            q, np_, leaves = go(p.premise)
            return mll.ParRule(q, p.pos + np_), np_, leaves
        if isinstance(p, mll.CutRule):
            l, nl, ll_ = go(p.left)
            r, nr, lr_ = go(p.right)
            gl = len(mll.conclusion(p.left, axioms))
            r = bubble_to_front(r, nr + 1)  # the cut formula sits after passengers
            q: mll.MllProof = mll.CutRule(l, r)
            # conclusion: PL, Gamma(gl-1), PR, Delta -> PL, PR, Gamma, Delta
            q = move_block_left(q, nl + gl, nr, gl - 1)
            return q, nl + nr, ll_ + lr_
        if isinstance(p, mll.TensorRule):
            l, nl, ll_ = go(p.left)
            r, nr, lr_ = go(p.right)
            gl = len(mll.conclusion(p.left, axioms))
            r = bubble_to_front(r, nr + 1)
            q = mll.TensorRule(l, r)
            # PL, Gamma(gl-1), X x Y, PR, Delta -> PL, PR, Gamma, X x Y, Delta
            q = move_block_left(q, nl + gl + 1, nr, gl)
            return q, nl + nr, ll_ + lr_
        raise AssertionError(p)

    q, _, leaves = go(proof)
    return q, leaves


def check_normal_form(llg: Llg, proof: mll.MllProof) -> bool:
    """Verify the factorization through axioms-first normal form."""
    sig = llg.signature
    axseqs = sig.axiom_sequents()
    pure, leaves = to_normal_form(proof, axseqs)
    env = sig.literals
    pure_cow = mll.interpret_proof(pure, env)  # no lexicon needed
    seq_bnds = [mll.interp_sequent(axseqs[n], env) for n in leaves]
    src = EMPTY
    for b in seq_bnds:
        src = src.tensor(b)
    gamma = mll.interp_sequent(mll.conclusion(proof, axseqs), env)
    factor = cat.Cowordism(src, gamma, pure_cow.body)
    if leaves:
        sigma = cat.tensor_all(*[sig.axioms[n].cow for n in leaves])
        recomposed = cat.compose(sigma, factor)
    else:
        recomposed = factor
    direct = mll.interpret_proof(proof, env, sig.axiom_cows(), axseqs)
    return recomposed == direct
