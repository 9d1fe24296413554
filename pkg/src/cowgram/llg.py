"""Linear logic grammars: lexicons of cowordism-typed axioms plus search.

Generation derives judgements ``|- Gamma`` from the lexicon by closing a
chart of states under cut (with exchange implicit in a canonical sequent
order).  Par is applied on demand to assemble the dual of a compound cut
formula, and tensor introductions are restricted to the finitely many
tensor formulas that can ever serve as a cut partner, so the closure
stays finite under the budget.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterator

from . import category as cat
from .mll import (
    CutRule,
    ExchangeRule,
    Formula,
    IdAxiom,
    LexAxiom,
    Lit,
    MllProof,
    Par,
    ParRule,
    Sequent,
    Tensor,
    TensorRule,
    conclusion,
    exchange_chain,
    formula_key,
    interp_formula,
    interp_sequent,
    interp_tensor,
    interpret_proof,
    negate,
    par_leaves,
    permutation_swaps,
    proof_size,
    subformulas,
)
from .multiword import EMPTY, Boundary, CyclicWord, Edge, Multiword, Word


@dataclass(frozen=True)
class Axiom:
    name: str
    sequent: Sequent
    cow: cat.Cowordism


@dataclass
class CowordismSignature:
    literals: dict[str, Boundary]
    alphabet: tuple[str, ...]
    axioms: dict[str, Axiom] = field(default_factory=dict)

    def add(self, name: str, sequent: Sequent, cow: cat.Cowordism) -> None:
        if name in self.axioms:
            raise ValueError(f"duplicate axiom {name!r}")
        self.axioms[name] = Axiom(name, sequent, cow)

    def axiom_sequents(self) -> dict[str, Sequent]:
        return {n: a.sequent for n, a in self.axioms.items()}

    def axiom_cows(self) -> dict[str, cat.Cowordism]:
        return {n: a.cow for n, a in self.axioms.items()}


@dataclass
class Llg:
    signature: CowordismSignature
    start: str


@dataclass(frozen=True)
class GenerationBudget:
    max_axiom_uses: int
    max_total_word_length: int | None = None
    max_proof_nodes: int | None = None

    def __post_init__(self):
        for v in (self.max_axiom_uses, self.max_total_word_length, self.max_proof_nodes):
            if v is not None and v < 0:
                raise ValueError("budget components must be >= 0")


@dataclass
class GenerationResult:
    words: dict[Word, MllProof]
    complete: bool

    def sorted_words(self) -> list[Word]:
        return sorted(self.words)


def validate(llg: Llg) -> list[str]:
    """Check the grammar invariants; returns diagnostics, empty if fine."""
    sig = llg.signature
    out = []
    if llg.start not in sig.literals:
        out.append(f"start literal {llg.start!r} is not declared")
    else:
        s = sig.literals[llg.start]
        if s.size != 2 or s.lefts != frozenset({1}):
            out.append(
                f"start literal {llg.start!r} must have exactly one left and one "
                f"right endpoint, got {s.polarity_string()!r}"
            )
    for name, ax in sig.axioms.items():
        for f in ax.sequent:
            for sub in subformulas(f):
                if isinstance(sub, Lit) and sub.name not in sig.literals:
                    out.append(f"axiom {name!r} uses undeclared literal {sub.name!r}")
        try:
            want = interp_sequent(ax.sequent, sig.literals)
        except KeyError:
            continue
        if ax.cow.source != EMPTY:
            out.append(f"axiom {name!r} cowordism does not start from the unit")
        elif ax.cow.target != want:
            out.append(
                f"axiom {name!r} cowordism boundary "
                f"{ax.cow.target.polarity_string()!r} does not interpret its sequent "
                f"({want.polarity_string()!r})"
            )
        for e in ax.cow.body.edges:
            for tok in e.label:
                if tok not in sig.alphabet:
                    out.append(f"axiom {name!r} uses token {tok!r} outside the alphabet")
    return out


def derive(llg: Llg, proof: MllProof) -> tuple[Sequent, cat.Cowordism]:
    """Replay a proof over the lexicon; returns the judgement it derives."""
    sig = llg.signature
    seq = conclusion(proof, sig.axiom_sequents())
    cow = interpret_proof(proof, sig.literals, sig.axiom_cows(), sig.axiom_sequents())
    return seq, cow


def strip_pars(sig: CowordismSignature) -> CowordismSignature:
    """Split every top-level par in axiom sequents; generated types are kept."""
    out = CowordismSignature(dict(sig.literals), sig.alphabet, {})
    for name, ax in sig.axioms.items():
        seq = list(ax.sequent)
        changed = True
        while changed:
            changed = False
            for i, f in enumerate(seq):
                if isinstance(f, Par):
                    seq[i: i + 1] = [f.left, f.right]
                    changed = True
                    break
        out.add(name, tuple(seq), ax.cow)
    return out


def is_logic_free(sig: CowordismSignature) -> bool:
    return all(isinstance(f, Lit) for ax in sig.axioms.values() for f in ax.sequent)


def is_tensor_free(sig: CowordismSignature) -> bool:
    return not any(
        isinstance(sub, Tensor)
        for ax in sig.axioms.values()
        for f in ax.sequent
        for sub in subformulas(f)
    )


# ------------------------------------------------------------------ engine


@dataclass(frozen=True)
class _State:
    sequent: Sequent
    cow: cat.Cowordism
    proof: MllProof
    axioms: int
    letters: int = -1
    ids: int = 0  # identity-axiom leaves; capped like lexicon axioms

    def __post_init__(self):
        if self.letters < 0:
            object.__setattr__(self, "letters", self.cow.body.letter_count())


class _Engine:
    """Chart closure over derived judgements, canonical up to exchange."""

    def __init__(self, llg: Llg, budget: GenerationBudget,
                 target_letters: dict[str, int] | None = None):
        self.sig = llg.signature
        self.env = self.sig.literals
        self.budget = budget
        self.target = target_letters
        self.best: dict[tuple, int] = {}
        self.queue: list[tuple[int, int, _State]] = []
        self.processed: dict[int, list[_State]] = {}
        self.counter = itertools.count()
        self.complete = True
        self._fb_cache: dict[Formula, Boundary] = {}
        self._sb_cache: dict[Sequent, Boundary] = {}
        self._blocks_cache: dict[Sequent, list[Boundary]] = {}
        self._off_cache: dict[Sequent, list[int]] = {}
        self.needed_tensors, self.needed_pars, self.id_seeds = self._needed()
        self._profiles: list[tuple[tuple[tuple[str, int], ...], int]] | None = None
        self._feas_memo: dict[tuple, bool] = {}
        if self.target is not None and not self.id_seeds:
            profs = set()
            for ax in self.sig.axioms.values():
                counts: dict[str, int] = {}
                for e in ax.cow.body.edges:
                    for tok in e.label:
                        counts[tok] = counts.get(tok, 0) + 1
                for c in ax.cow.body.cycles:
                    for tok in c.tokens:
                        counts[tok] = counts.get(tok, 0) + 1
                profs.add((tuple(sorted(counts.items())), len(ax.sequent)))
            self._profiles = sorted(profs)

    def _feasible(self, missing: tuple[tuple[str, int], ...], reduction: int,
                  room: int) -> bool:
        """Can some multiset of axioms supply ``missing`` letters exactly,
        lower the formula count by ``reduction``, and fit in ``room`` uses?
        A necessary condition for any completion of a partial derivation.
        """
        key = (missing, reduction, room)
        got = self._feas_memo.get(key)
        if got is not None:
            return got
        if not missing and reduction == 0:
            self._feas_memo[key] = True
            return True
        ok = False
        if room > 0:
            need = dict(missing)
            for letters, g in self._profiles:
                if any(need.get(t, 0) < c for t, c in letters):
                    continue
                rest = dict(need)
                for t, c in letters:
                    rest[t] -= c
                    if not rest[t]:
                        del rest[t]
                if self._feasible(tuple(sorted(rest.items())),
                                  reduction - (2 - g), room - 1):
                    ok = True
                    break
        self._feas_memo[key] = ok
        return ok

    def _target_prune(self, counts: dict[str, int], nformulas: int,
                      axioms: int) -> bool:
        """True if the candidate cannot reach the target word any more."""
        if any(self.target.get(tk, 0) < c for tk, c in counts.items()):
            return True
        if self._profiles is None:
            return False
        missing = tuple(sorted(
            (tk, c - counts.get(tk, 0))
            for tk, c in self.target.items() if c > counts.get(tk, 0)
        ))
        return not self._feasible(missing, nformulas - 1,
                                  self.budget.max_axiom_uses - axioms)

    def processed_count(self) -> int:
        return sum(len(v) for v in self.processed.values())

    # -- caches

    def _fb(self, f: Formula) -> Boundary:
        out = self._fb_cache.get(f)
        if out is None:
            out = self._fb_cache[f] = interp_formula(f, self.env)
        return out

    def _sb(self, seq: Sequent) -> Boundary:
        out = self._sb_cache.get(seq)
        if out is None:
            out = EMPTY
            for f in reversed(seq):
                out = out.tensor(self._fb(f))
            self._sb_cache[seq] = out
        return out

    def _blocks(self, seq: Sequent) -> list[Boundary]:
        out = self._blocks_cache.get(seq)
        if out is None:
            out = self._blocks_cache[seq] = [self._fb(f) for f in reversed(seq)]
        return out

    def _offsets(self, seq: Sequent) -> list[int]:
        """Boundary offset of each formula's block, indexed like the sequent."""
        out = self._off_cache.get(seq)
        if out is None:
            offs = []
            acc = 0
            for f in reversed(seq):
                offs.append(acc)
                acc += self._fb(f).size
            out = self._off_cache[seq] = list(reversed(offs))
        return out

    def _arrangements(self, raw_seq, edge_view) -> list[list[int]]:
        """Canonical arrangements of the blocks of a raw judgement.

        ``edge_view`` lists edges as ((block, offset), label, (block, offset)).
        Blocks are sorted by formula and then by a local wiring signature;
        only blocks whose signatures tie exactly admit more than one
        arrangement, so the list is almost always a singleton.
        """
        n = len(raw_seq)
        sig: list[list] = [[] for _ in range(n)]
        fkeys = [formula_key(f) for f in raw_seq]
        for (r1, p1), label, (r2, p2) in edge_view:
            sig[r1].append((p1, 0, label, fkeys[r2], p2))
            sig[r2].append((p2, 1, label, fkeys[r1], p1))
        keys = [(fkeys[r], tuple(sorted(sig[r]))) for r in range(n)]
        order0 = sorted(range(n), key=lambda r: (keys[r], r))
        runs = []
        i = 0
        while i < n:
            j = i
            while j + 1 < n and keys[order0[j + 1]] == keys[order0[i]]:
                j += 1
            if j > i:
                runs.append((i, j))
            i = j + 1
        variants = [order0]
        for lo, hi in runs:
            new = []
            for base in variants:
                for perm in itertools.permutations(base[lo: hi + 1]):
                    cand = base[:lo] + list(perm) + base[hi + 1:]
                    new.append(cand)
                    if len(new) >= 24:
                        break
                if len(new) >= 24:
                    break
            variants = new
        return variants

    def _edge_view_of(self, st: _State):
        """Block-indexed view of a state's edges (block index = formula index)."""
        offs = self._offsets(st.sequent)
        sizes = [self._fb(f).size for f in st.sequent]

        def locate(p: int) -> tuple[int, int]:
            for k, off in enumerate(offs):
                if off < p <= off + sizes[k]:
                    return (k, p - off)
            raise AssertionError("endpoint outside all blocks")

        return [(locate(e.src), e.label, locate(e.dst))
                for e in st.cow.body.edges]

    # -- move bookkeeping

    def _needed(self):
        """Tensor formulas worth introducing and pars worth assembling.

        A compound formula standing in some state is cut against its
        dual.  A dual with a par root is assembled transiently inside the
        partner, so only tensor-rooted duals (and the components feeding
        them) ever have to stand on their own; closing over those keeps
        the move alphabet finite.
        """
        tensors: set[Formula] = set()
        pars: set[Formula] = set()
        seen: set[Formula] = set()

        def register(phi: Formula):
            if isinstance(phi, Lit) or phi in seen:
                return
            seen.add(phi)
            dual = negate(phi)
            if isinstance(dual, Tensor):
                need_stand(dual)
            else:
                for leaf in par_leaves(dual):
                    if not isinstance(leaf, Lit):
                        need_stand(leaf)

        def need_stand(f: Formula):
            if isinstance(f, Lit) or f in tensors or f in pars:
                return
            if isinstance(f, Tensor):
                tensors.add(f)
                parts = (f.left, f.right)
            else:
                pars.add(f)
                parts = tuple(par_leaves(f))
            for part in parts:
                need_stand(part)
                register(part)

        for ax in self.sig.axioms.values():
            for f in ax.sequent:
                register(f)
        seeds: set[Formula] = set()
        for f in tensors | pars:
            for sub in subformulas(f):
                if isinstance(sub, Lit):
                    seeds.add(sub)
        return tensors, pars, sorted(seeds, key=formula_key)

    # -- state plumbing

    def _permute(self, st: _State, order: list[int]) -> _State:
        n = len(st.sequent)
        if order == list(range(n)):
            return st
        new_seq = tuple(st.sequent[i] for i in order)
        blocks = self._blocks(st.sequent)
        block_order = [n - 1 - order[n - 1 - k] for k in range(n)]
        cow = cat.remap_blocks(st.cow, blocks, block_order)
        proof = exchange_chain(st.proof, permutation_swaps(order))
        return _State(new_seq, cow, proof, st.axioms, st.letters, st.ids)

    def _canonical(self, st: _State) -> _State:
        variants = self._arrangements(st.sequent, self._edge_view_of(st))
        if len(variants) == 1:
            return self._permute(st, variants[0])
        return min((self._permute(st, order) for order in variants),
                   key=lambda s: _body_key(s.cow.body))

    def _admit(self, st: _State) -> None:
        b = self.budget
        if st.axioms > b.max_axiom_uses:
            return
        if b.max_total_word_length is not None and st.letters > b.max_total_word_length:
            return
        cap = b.max_axiom_uses - st.axioms
        if self.id_seeds:
            cap += b.max_axiom_uses - st.ids
        if len(st.sequent) - 1 > cap:
            # each remaining leaf can rid the state of at most one formula
            return
        if self.target is not None:
            counts: dict[str, int] = {}
            for e in st.cow.body.edges:
                for tok in e.label:
                    counts[tok] = counts.get(tok, 0) + 1
            for c in st.cow.body.cycles:
                for tok in c.tokens:
                    counts[tok] = counts.get(tok, 0) + 1
            if self._target_prune(counts, len(st.sequent), st.axioms):
                return
        if b.max_proof_nodes is not None and \
                proof_size(st.proof) > b.max_proof_nodes:
            self.complete = False
            return
        if st.ids > b.max_axiom_uses:
            return
        key = (st.sequent, _raw_key(st.cow.body))
        old = self.best.get(key)
        if old is not None and old <= (st.axioms, st.ids):
            return
        self.best[key] = (st.axioms, st.ids)
        heapq.heappush(self.queue, (st.axioms, next(self.counter), st))

    # -- moves

    def _seed(self) -> None:
        self.seeds: list[_State] = []
        for name in sorted(self.sig.axioms):
            ax = self.sig.axioms[name]
            st = self._canonical(_State(ax.sequent, ax.cow, LexAxiom(name), 1))
            self.seeds.append(st)
            self._admit(st)
        for f in self.id_seeds:
            st = self._canonical(_State((negate(f), f),
                                        cat.copairing(self._fb(f)),
                                        IdAxiom(f), 0, ids=1))
            self.seeds.append(st)
            self._admit(st)

    def _cut(self, s: _State, t: _State, i: int, j: int) -> None:
        self._cut_core(s, i, t, [j], None)

    def _cut_core(self, s: _State, i: int, t: _State, consumed: list[int],
                  psi_tree: Formula | None) -> None:
        """Glue formula ``i`` of ``s`` against its dual inside ``t``.

        ``consumed`` lists the formulas of ``t`` forming the dual, in par
        leaf order; for a plain cut it is a single index, otherwise the
        par is assembled on the fly (the rule itself is a no-op).  Both
        bodies are spliced through the glued region in one pass; nothing
        is built for candidates the chart already knows.
        """
        axioms = s.axioms + t.axioms
        b = self.budget
        if axioms > b.max_axiom_uses:
            return
        ids = s.ids + t.ids
        if ids > b.max_axiom_uses:
            return
        letters = s.letters + t.letters  # splicing conserves letters
        if b.max_total_word_length is not None and letters > b.max_total_word_length:
            return
        n, m = len(s.sequent), len(t.sequent)
        cset = set(consumed)
        s_rest = [k for k in range(n) if k != i]
        t_rest = [k for k in range(m) if k not in cset]
        raw_seq = tuple(s.sequent[k] for k in s_rest) + \
            tuple(t.sequent[k] for k in t_rest)
        cap = b.max_axiom_uses - axioms
        if self.id_seeds:
            cap += b.max_axiom_uses - ids
        if len(raw_seq) - 1 > cap:
            # each remaining leaf can rid the state of at most one formula
            return
        raw_blocks = [("s", k) for k in s_rest] + [("t", k) for k in t_rest]
        s_off, t_off = self._offsets(s.sequent), self._offsets(t.sequent)
        width = self._fb(s.sequent[i]).size
        s_base = s_off[i]

        # the dual region of t: par components in reverse leaf order
        v2t: list[int] = [0]
        t2v: dict[int, int] = {}
        for k in reversed(consumed):
            base = t_off[k]
            for o in range(1, self._fb(t.sequent[k]).size + 1):
                t2v[base + o] = len(v2t)
                v2t.append(base + o)
        if len(v2t) - 1 != width:
            raise AssertionError("glued region width mismatch")

        abstract, cycles, counts = self._splice(s, t, width, s_base, v2t, t2v)
        if self.target is not None and \
                self._target_prune(counts, len(raw_seq), axioms):
            return

        ridx = {bl: r for r, bl in enumerate(raw_blocks)}
        view = [((ridx[(sd1, k1)], p1), label, (ridx[(sd2, k2)], p2))
                for (sd1, p1, k1), label, (sd2, p2, k2) in abstract]
        sizes = [self._fb(f).size for f in raw_seq]
        best = None
        for order in self._arrangements(raw_seq, view):
            final_off = {}
            acc = 0
            for r in reversed(order):
                final_off[r] = acc
                acc += sizes[r]
            edges = sorted(
                (final_off[r1] + p1, label, final_off[r2] + p2)
                for (r1, p1), label, (r2, p2) in view
            )
            key = (tuple(edges), cycles)
            if best is None or key < best[0]:
                best = (key, order, edges)
        _, order, edges = best
        final_seq = tuple(raw_seq[r] for r in order)
        dkey = (final_seq, (tuple(edges), cycles))
        old = self.best.get(dkey)
        if old is not None and old <= (axioms, ids):
            return
        tgt = self._sb(final_seq)
        body = Multiword(tgt, frozenset(Edge(a, w, bb) for a, w, bb in edges),
                         tuple(CyclicWord.of(c) for c in cycles))
        right = exchange_chain(t.proof, permutation_swaps(consumed + t_rest))
        if psi_tree is not None:
            right = _par_chain(right, psi_tree, 1)
        proof = CutRule(
            exchange_chain(s.proof, permutation_swaps(s_rest + [i])), right)
        proof = exchange_chain(proof, permutation_swaps(list(order)))
        if b.max_proof_nodes is not None and proof_size(proof) > b.max_proof_nodes:
            self.complete = False
            return
        self.best[dkey] = (axioms, ids)
        st = _State(final_seq, cat.Cowordism(EMPTY, tgt, body), proof, axioms,
                    letters, ids)
        heapq.heappush(self.queue, (axioms, next(self.counter), st))

    def _splice(self, s: _State, t: _State, width: int, s_base: int,
                v2t: list[int], t2v: dict[int, int]):
        """Path-trace both bodies through the mirror-glued region.

        The region pairs position ``s_base + q`` of ``s`` with virtual slot
        ``width + 1 - q``, whose location in ``t`` is given by ``v2t``.
        Returns abstract edges with (side, offset-in-block, formula-index)
        endpoints, the cyclic words, and token counts for target pruning.
        """
        s_off = self._offsets(s.sequent)
        t_off = self._offsets(t.sequent)
        s_sizes = [self._fb(f).size for f in s.sequent]
        t_sizes = [self._fb(f).size for f in t.sequent]

        def locate(side: str, p: int) -> tuple[str, int, int]:
            offs, sizes = (s_off, s_sizes) if side == "s" else (t_off, t_sizes)
            for k, off in enumerate(offs):
                if off < p <= off + sizes[k]:
                    return (side, p - off, k)
            raise AssertionError("endpoint outside all blocks")

        def link_s(p: int) -> int:
            return v2t[width + 1 - (p - s_base)]

        def link_t(p: int) -> int:
            return s_base + (width + 1 - t2v[p])

        s_out = {e.src: e for e in s.cow.body.edges}
        t_out = {e.src: e for e in t.cow.body.edges}

        def inside(side: str, p: int) -> bool:
            if side == "s":
                return s_base < p <= s_base + width
            return p in t2v

        abstract = []
        cycles = [c.tokens for c in s.cow.body.cycles + t.cow.body.cycles]
        visited: set[tuple[str, int]] = set()
        counts: dict[str, int] = {}
        count_tokens = self.target is not None

        def count(tokens):
            for tok in tokens:
                counts[tok] = counts.get(tok, 0) + 1

        if count_tokens:
            for c in cycles:
                count(c)
        for side0, out_map in (("s", s_out), ("t", t_out)):
            for src in out_map:
                if inside(side0, src):
                    continue
                e = out_map[src]
                side = side0
                label = list(e.label)
                visited.add((side, e.src))
                while inside(side, e.dst):
                    if side == "s":
                        side, e = "t", t_out[link_s(e.dst)]
                    else:
                        side, e = "s", s_out[link_t(e.dst)]
                    visited.add((side, e.src))
                    label.extend(e.label)
                abstract.append((locate(side0, src), tuple(label),
                                 locate(side, e.dst)))
                if count_tokens:
                    count(label)
        for side0, out_map in (("s", s_out), ("t", t_out)):
            for src in sorted(out_map):
                if not inside(side0, src) or (side0, src) in visited:
                    continue
                e = out_map[src]
                side = side0
                label = list(e.label)
                visited.add((side, e.src))
                while True:
                    if side == "s":
                        side, e = "t", t_out[link_s(e.dst)]
                    else:
                        side, e = "s", s_out[link_t(e.dst)]
                    if (side, e.src) in visited:
                        break
                    visited.add((side, e.src))
                    label.extend(e.label)
                cyc = CyclicWord.of(tuple(label)).tokens
                cycles.append(cyc)
                if count_tokens:
                    count(cyc)
        return abstract, tuple(sorted(cycles)), counts

    def _par_front(self, st: _State, indices: list[int], tree: Formula) -> _State:
        """Bring ``indices`` to the front in order and par them up into ``tree``."""
        rest = [k for k in range(len(st.sequent)) if k not in indices]
        st = self._permute(st, indices + rest)
        proof = st.proof
        seq = list(st.sequent)

        def build(t: Formula, pos: int) -> None:
            nonlocal proof
            if not isinstance(t, Par):
                return
            build(t.left, pos)
            build(t.right, pos + 1)
            proof = ParRule(proof, pos)
            seq[pos - 1: pos + 1] = [Par(seq[pos - 1], seq[pos])]

        build(tree, 1)
        return _State(tuple(seq), st.cow, proof, st.axioms, st.letters, st.ids)

    def _leaf_assignments(self, leaves: list[Formula], seq: Sequent) -> Iterator[list[int]]:
        slots = [[i for i, f in enumerate(seq) if f == leaf] for leaf in leaves]

        def go(k: int, used: frozenset[int]) -> Iterator[list[int]]:
            if k == len(slots):
                yield []
                return
            for i in slots[k]:
                if i not in used:
                    for rest in go(k + 1, used | {i}):
                        yield [i] + rest

        yield from go(0, frozenset())

    def _compound_cuts(self, s: _State, t: _State) -> None:
        """Cut a compound formula of ``s`` against a par assembled inside ``t``."""
        avail = Counter(t.sequent)
        for i, phi in enumerate(s.sequent):
            if isinstance(phi, Lit):
                continue
            psi = negate(phi)
            if not isinstance(psi, Par):
                continue
            leaves = par_leaves(psi)
            if Counter(leaves) - avail:
                continue
            for assign in self._leaf_assignments(leaves, t.sequent):
                self._cut_core(s, i, t, assign, psi)

    def _tensor_moves(self, s: _State, t: _State) -> None:
        for need in self.needed_tensors:
            for i, a in enumerate(s.sequent):
                if a != need.left:
                    continue
                for j, b in enumerate(t.sequent):
                    if b != need.right:
                        continue
                    n, m = len(s.sequent), len(t.sequent)
                    s1 = self._permute(s, [k for k in range(n) if k != i] + [i])
                    t1 = self._permute(t, [j] + [k for k in range(m) if k != j])
                    cow = interp_tensor(s1.cow, s1.sequent, t1.cow, t1.sequent,
                                        self.env)
                    seq = s1.sequent[:-1] + (need,) + t1.sequent[1:]
                    st = _State(seq, cow, TensorRule(s1.proof, t1.proof),
                                s.axioms + t.axioms, ids=s.ids + t.ids)
                    self._admit(self._canonical(st))

    def _standalone_pars(self, s: _State) -> None:
        for need in self.needed_pars:
            leaves = par_leaves(need)
            for assign in self._leaf_assignments(leaves, s.sequent):
                self._admit(self._canonical(self._par_front(s, assign, need)))

    def _combine(self, s: _State, t: _State) -> None:
        tset = set(t.sequent)
        for i, f in enumerate(s.sequent):
            nf = negate(f)
            if nf not in tset:
                continue
            for j, g in enumerate(t.sequent):
                if g == nf:
                    self._cut(s, t, i, j)
        self._compound_cuts(s, t)
        if t is not s:
            self._compound_cuts(t, s)

    def run(self, stop_word: Word | None = None,
            start: str | None = None) -> dict[Word, MllProof]:
        self._seed()
        found: dict[Word, MllProof] = {}
        goal = (Lit(start),) if start is not None else None
        while self.queue:
            ax_count, _, st = heapq.heappop(self.queue)
            cur = self.best.get((st.sequent, _raw_key(st.cow.body)))
            if cur is not None and cur < (ax_count, st.ids):
                continue  # superseded by a cheaper copy
            if goal is not None and st.sequent == goal and st.cow.is_regular:
                w = next(iter(st.cow.body.edges)).label
                if w not in found or proof_size(st.proof) < proof_size(found[w]):
                    found[w] = st.proof
                if stop_word is not None and w == stop_word:
                    return found
            if self.needed_pars:
                self._standalone_pars(st)
            # every cut tree linearizes: growing derivations one lexicon
            # leaf at a time reaches every derivable judgement, so states
            # are only ever merged with seed states
            room = self.budget.max_axiom_uses - st.axioms
            for seed in self.seeds:
                if seed.axioms <= room:
                    self._combine(st, seed)
            if self.needed_tensors:
                for count in sorted(self.processed):
                    if count > room:
                        break
                    for other in list(self.processed[count]):
                        self._tensor_moves(st, other)
                        if other is not st:
                            self._tensor_moves(other, st)
                if 2 * st.axioms <= self.budget.max_axiom_uses:
                    self._tensor_moves(st, st)
            self.processed.setdefault(st.axioms, []).append(st)
        return found


def _par_chain(proof: MllProof, tree: Formula, pos: int) -> MllProof:
    """Par rules assembling ``tree`` from its leaves sitting at ``pos``."""
    if not isinstance(tree, Par):
        return proof
    proof = _par_chain(proof, tree.left, pos)
    proof = _par_chain(proof, tree.right, pos + 1)
    return ParRule(proof, pos)


def _raw_key(m: Multiword) -> tuple:
    return (tuple(sorted((e.src, e.label, e.dst) for e in m.edges)),
            tuple(sorted(c.tokens for c in m.cycles)))


def _body_key(m: Multiword) -> tuple:
    return _raw_key(m)


def generate(llg: Llg, budget: GenerationBudget) -> GenerationResult:
    """All words labeling regular start-type cowordisms derivable in budget."""
    engine = _Engine(llg, budget)
    words = engine.run(start=llg.start)
    return GenerationResult(dict(sorted(words.items())), engine.complete)


def member(llg: Llg, w: Word, budget: GenerationBudget) -> MllProof | None:
    """Search for a witness proof deriving exactly the word ``w``.

    Deepens the axiom allowance one step at a time so that easy words
    are found long before the full budget's state space is touched; the
    letter multiset of the target prunes everything else.
    """
    count: dict[str, int] = {}
    for tok in w:
        count[tok] = count.get(tok, 0) + 1
    length = min(
        len(w),
        budget.max_total_word_length
        if budget.max_total_word_length is not None else len(w),
    )
    for allowance in range(1, budget.max_axiom_uses + 1):
        step = GenerationBudget(allowance, length, budget.max_proof_nodes)
        engine = _Engine(llg, step, target_letters=count)
        words = engine.run(stop_word=w, start=llg.start)
        if w in words:
            return words[w]
    return None
