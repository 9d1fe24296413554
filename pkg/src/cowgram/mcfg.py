"""Multiple context-free grammars and their cowordism form.

An MCFG production rewrites a tuple-valued predicate; representing each
predicate by a boundary with one left/right endpoint pair per argument
slot turns productions into cowordisms and derivation into composition.
The translations here go both ways and in and out of linear logic
grammars, preserving the generated language.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import category as cat
from .llg import Axiom, CowordismSignature, Llg, is_tensor_free, strip_pars
from .mll import Lit, Sequent, negate
from .multiword import (
    EMPTY,
    EPSILON,
    Boundary,
    Edge,
    Multiword,
    Word,
    pattern,
)

# words in production heads mix terminals with variables
Symbol = str
MixedWord = tuple[Symbol, ...]


@dataclass
class Production:
    body: list[tuple[str, tuple[str, ...]]]  # (nonterminal, argument variables)
    head: str
    head_words: tuple[MixedWord, ...]

    def variables(self) -> list[str]:
        return [v for _, vs in self.body for v in vs]

    def __repr__(self):
        b = ", ".join(f"{n}({', '.join(vs)})" for n, vs in self.body)
        h = ", ".join(" ".join(w) if w else "ε" for w in self.head_words)
        return f"{self.head}({h}) <- {b}"


@dataclass
class Mcfg:
    nonterminals: dict[str, int]  # name -> arity
    terminals: tuple[str, ...]
    start: str
    productions: list[Production] = field(default_factory=list)

    def validate(self) -> list[str]:
        out = []
        if self.start not in self.nonterminals:
            out.append(f"start symbol {self.start!r} is not a nonterminal")
        elif self.nonterminals[self.start] != 1:
            out.append("start symbol must be unary")
        if any(a <= 0 for a in self.nonterminals.values()):
            out.append("nonterminal arities must be positive")
        for p in self.productions:
            vs = p.variables()
            if len(vs) != len(set(vs)):
                out.append(f"{p!r}: variables are not pairwise distinct")
            if p.head not in self.nonterminals:
                out.append(f"{p!r}: unknown head {p.head!r}")
            elif len(p.head_words) != self.nonterminals[p.head]:
                out.append(f"{p!r}: head arity mismatch")
            for n, args in p.body:
                if n not in self.nonterminals:
                    out.append(f"{p!r}: unknown body symbol {n!r}")
                elif len(args) != self.nonterminals[n]:
                    out.append(f"{p!r}: arity mismatch for {n!r}")
            used = [t for w in p.head_words for t in w if t in set(vs)]
            if sorted(used) != sorted(vs):
                out.append(f"{p!r}: every variable must occur exactly once in the head")
            for w in p.head_words:
                for t in w:
                    if t not in self.terminals and t not in vs:
                        out.append(f"{p!r}: symbol {t!r} is neither terminal nor variable")
        return out


def mcfg_derive(g: Mcfg, length_bound: int) -> dict[str, set[tuple[Word, ...]]]:
    """Bottom-up closure of derivable predicate formulas within the bound.

    The bound limits the total argument length of every kept formula;
    since productions are non-erasing this is exact for the language up
    to that length.
    """
    problems = g.validate()
    if problems:
        raise ValueError("; ".join(problems))
    derived: dict[str, set[tuple[Word, ...]]] = {n: set() for n in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            pools = [sorted(derived[n]) for n, _ in p.body]
            for choice in product(*pools):
                env: dict[str, Word] = {}
                for (_, args), tup in zip(p.body, choice):
                    env.update(zip(args, tup))
                tup_out = tuple(
                    tuple(tok for t in w for tok in (env[t] if t in env else (t,)))
                    for w in p.head_words
                )
                if sum(map(len, tup_out)) > length_bound:
                    continue
                if tup_out not in derived[p.head]:
                    derived[p.head].add(tup_out)
                    changed = True
    return derived


def mcfg_language(g: Mcfg, length_bound: int) -> set[Word]:
    return {t[0] for t in mcfg_derive(g, length_bound)[g.start]}


# ------------------------------------------------- cowordism representation


def carrier(arity: int) -> Boundary:
    """Boundary of a predicate: one ``l r`` pair per argument slot."""
    if arity <= 0:
        raise ValueError("arity must be positive")
    return Boundary(2 * arity, frozenset(range(1, 2 * arity, 2)))


def predicate_pattern(arity: int) -> cat.Cowordism:
    bnd = carrier(arity)
    return cat.Cowordism(
        EMPTY, bnd,
        Multiword(bnd, frozenset(Edge(2 * i - 1, EPSILON, 2 * i)
                                 for i in range(1, arity + 1))),
    )


def represent_formula(args: tuple[Word, ...]) -> cat.Cowordism:
    """The cowordism of a predicate formula: slot ``i`` labeled with its word."""
    bnd = carrier(len(args))
    edges = frozenset(Edge(2 * i - 1, tuple(w), 2 * i) for i, w in enumerate(args, 1))
    return cat.Cowordism(EMPTY, bnd, Multiword(bnd, edges))


def represent_production(g: Mcfg, p: Production) -> cat.Cowordism:
    """Solve the defining substitution equation for one production."""
    k = g.nonterminals[p.head]
    arities = [g.nonterminals[n] for n, _ in p.body]
    total = sum(arities)
    left_of: dict[str, int] = {}
    right_of: dict[str, int] = {}
    off = 0
    for (n, args), a in zip(p.body, arities):
        for i, v in enumerate(args, 1):
            left_of[v] = off + 2 * i - 1
            right_of[v] = off + 2 * i
        off += 2 * a

    def inpos(q: int) -> int:  # incoming endpoint, order reversed
        return 2 * k + (2 * total + 1 - q)

    vars_ = set(p.variables())
    edges = []
    for m, w in enumerate(p.head_words, 1):
        # split into terminal chunks around variable occurrences
        chunks: list[list[str]] = [[]]
        seen: list[str] = []
        for tok in w:
            if tok in vars_:
                seen.append(tok)
                chunks.append([])
            else:
                chunks[-1].append(tok)
        if not seen:
            edges.append(Edge(2 * m - 1, tuple(chunks[0]), 2 * m))
            continue
        edges.append(Edge(2 * m - 1, tuple(chunks[0]), inpos(left_of[seen[0]])))
        for idx in range(len(seen) - 1):
            edges.append(Edge(inpos(right_of[seen[idx]]), tuple(chunks[idx + 1]),
                              inpos(left_of[seen[idx + 1]])))
        edges.append(Edge(inpos(right_of[seen[-1]]), tuple(chunks[-1]), 2 * m))
    src = EMPTY
    for a in arities:
        src = src.tensor(carrier(a))
    tgt = carrier(k)
    return cat.Cowordism(src, tgt, Multiword(tgt.tensor(src.dual()), frozenset(edges)))


# ------------------------------------------------------------ cowordism CFG


@dataclass
class CowProduction:
    name: str
    body: tuple[str, ...]
    head: str
    cow: cat.Cowordism

    def __repr__(self):
        return f"{self.name}: {' '.join(self.body) or '1'} -> {self.head}"


@dataclass
class CowordismCfg:
    types: dict[str, Boundary]
    terminals: tuple[str, ...]
    start: str
    productions: list[CowProduction] = field(default_factory=list)

    def validate(self) -> list[str]:
        out = []
        s = self.types.get(self.start)
        if s is None:
            out.append(f"start type {self.start!r} undeclared")
        elif s.size != 2 or s.lefts != frozenset({1}):
            out.append("start type must be a standard boundary")
        for p in self.productions:
            src = EMPTY
            for b in p.body:
                src = src.tensor(self.types[b])
            if p.cow.source != src or p.cow.target != self.types[p.head]:
                out.append(f"production {p.name!r} boundary mismatch")
        return out


def mcfg_to_cowcfg(g: Mcfg) -> CowordismCfg:
    problems = g.validate()
    if problems:
        raise ValueError("; ".join(problems))
    out = CowordismCfg(
        types={n: carrier(a) for n, a in g.nonterminals.items()},
        terminals=g.terminals,
        start=g.start,
    )
    for i, p in enumerate(g.productions):
        out.productions.append(
            CowProduction(f"p{i + 1}", tuple(n for n, _ in p.body), p.head,
                          represent_production(g, p)))
    return out


def cowcfg_generate(g: CowordismCfg, max_letters: int) -> dict[str, set[cat.Cowordism]]:
    """Generated cowordisms per type, limited by total label length."""
    derived: dict[str, set[cat.Cowordism]] = {n: set() for n in g.types}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            pools = [sorted(derived[b], key=lambda c: repr(c.body)) for b in p.body]
            for choice in product(*pools):
                if choice:
                    arg = cat.tensor_all(*choice)
                    new = cat.compose(arg, p.cow)
                else:
                    new = p.cow
                if new.body.letter_count() > max_letters:
                    continue
                if new not in derived[p.head]:
                    derived[p.head].add(new)
                    changed = True
    return derived


def cowcfg_language(g: CowordismCfg, max_letters: int) -> set[Word]:
    out = set()
    for c in cowcfg_generate(g, max_letters)[g.start]:
        if c.is_regular:
            out.add(next(iter(c.body.edges)).label)
    return out


def possible_patterns(g: CowordismCfg, max_types: int | None = None
                      ) -> dict[str, set[Multiword]]:
    """Patterns of the regular cowordisms each type can generate.

    Computed on the label-erased level, so the fixpoint is finite without
    any budget; compositions that close a loop are discarded because they
    only arise from singular cowordisms.
    """
    patt: dict[str, set[Multiword]] = {n: set() for n in g.types}
    prod_patterns = [(p, cat.pattern_cow(p.cow)) for p in g.productions]
    changed = True
    while changed:
        changed = False
        for p, pc in prod_patterns:
            pools = [sorted(patt[b], key=repr) for b in p.body]
            for choice in product(*pools):
                if choice:
                    arg = cat.tensor_all(*[cat.Cowordism(EMPTY, g.types[b], m)
                                           for b, m in zip(p.body, choice)])
                    new = cat.compose(arg, pc)
                else:
                    new = pc
                if not new.is_regular:
                    continue
                if new.body not in patt[p.head]:
                    patt[p.head].add(new.body)
                    changed = True
    return patt


def is_simple(g: CowordismCfg) -> bool:
    return all(len(ps) <= 1 for ps in possible_patterns(g).values())


def simplify(g: CowordismCfg) -> CowordismCfg:
    """Split every type by its possible patterns; the language is kept."""
    patt = possible_patterns(g)
    if not patt.get(g.start):
        return CowordismCfg({g.start: g.types[g.start]}, g.terminals, g.start, [])
    names: dict[tuple[str, Multiword], str] = {}
    out_types: dict[str, Boundary] = {}
    for t in sorted(g.types):
        for i, pat in enumerate(sorted(patt[t], key=repr), 1):
            nm = f"{t}#{i}" if len(patt[t]) > 1 else t
            names[(t, pat)] = nm
            out_types[nm] = g.types[t]
    start_pat = next(iter(patt[g.start]))
    out = CowordismCfg(out_types, g.terminals, names[(g.start, start_pat)], [])
    for p in g.productions:
        pc = cat.pattern_cow(p.cow)
        pools = [sorted(patt[b], key=repr) for b in p.body]
        for choice in product(*pools):
            if choice:
                arg = cat.tensor_all(*[cat.Cowordism(EMPTY, g.types[b], m)
                                       for b, m in zip(p.body, choice)])
                head_pat = cat.compose(arg, pc)
            else:
                head_pat = pc
            if not head_pat.is_regular:
                continue
            body = tuple(names[(b, m)] for b, m in zip(p.body, choice))
            head = names[(p.head, head_pat.body)]
            out.productions.append(
                CowProduction(f"{p.name}/{len(out.productions) + 1}", body, head, p.cow))
    return out


def _normalizers(bnd: Boundary, pat: Multiword) -> tuple[cat.Cowordism, cat.Cowordism]:
    """Invertible rewirings between a carrier and its standard form."""
    k = bnd.size // 2
    pairs = sorted(((e.src, e.dst) for e in pat.edges))
    std = carrier(k)
    n4 = 4 * k
    rho_edges = set()
    tau_edges = set()
    for alpha, (i, j) in enumerate(pairs, 1):
        rho_edges.add(Edge(2 * alpha - 1, EPSILON, n4 + 1 - i))
        rho_edges.add(Edge(n4 + 1 - j, EPSILON, 2 * alpha))
        tau_edges.add(Edge(i, EPSILON, n4 + 1 - (2 * alpha - 1)))
        tau_edges.add(Edge(n4 + 1 - 2 * alpha, EPSILON, j))
    rho = cat.Cowordism(bnd, std, Multiword(std.tensor(bnd.dual()), frozenset(rho_edges)))
    tau = cat.Cowordism(std, bnd, Multiword(bnd.tensor(std.dual()), frozenset(tau_edges)))
    return rho, tau


def cowcfg_to_mcfg(g: CowordismCfg) -> Mcfg:
    """Read a simple cowordism CFG back as an MCFG (same language)."""
    patt = possible_patterns(g)
    if any(len(ps) > 1 for ps in patt.values()):
        raise ValueError("grammar is not simple; call simplify first")
    if not patt[g.start]:
        return Mcfg({g.start: 1}, g.terminals, g.start, [])
    live = {t for t, ps in patt.items() if ps}
    if any(g.types[t].size == 0 for t in live):
        raise ValueError("a generating type has an empty carrier")
    base = "x"
    while any(t.startswith(base) for t in g.terminals):
        base += "_"
    arity = {t: g.types[t].size // 2 for t in live}
    out = Mcfg({t: arity[t] for t in live}, g.terminals, g.start)
    norms = {t: _normalizers(g.types[t], next(iter(patt[t]))) for t in live}
    for p in g.productions:
        if p.head not in live or any(b not in live or not patt[b] for b in p.body):
            continue
        rho_a, _ = norms[p.head]
        sigma = p.cow
        if p.body:
            taus = cat.tensor_all(*[norms[b][1] for b in p.body])
            sigma = cat.compose(taus, sigma)
        sigma = cat.compose(sigma, rho_a)
        # plug in variable-labeled arguments and read the head words off
        var_args = []
        for j, b in enumerate(p.body, 1):
            names = tuple(f"{base}{j}_{i}" for i in range(1, arity[b] + 1))
            var_args.append(names)
        if p.body:
            plugged = cat.compose(
                cat.tensor_all(*[represent_formula(tuple((v,) for v in vs))
                                 for vs in var_args]),
                sigma)
        else:
            plugged = sigma
        if not plugged.is_regular:
            continue  # only generates singular cowordisms; language-irrelevant
        k = arity[p.head]
        words = []
        for m in range(1, k + 1):
            e = next(e for e in plugged.body.edges if e.src == 2 * m - 1)
            assert e.dst == 2 * m
            words.append(e.label)
        out.productions.append(
            Production([(b, vs) for b, vs in zip(p.body, var_args)],
                       p.head, tuple(words)))
    return out


# ----------------------------------------------------------- LLG embedding


def cowcfg_to_llg(g: CowordismCfg) -> Llg:
    """Name every production: a logic-free lexicon with the same language."""
    sig = CowordismSignature(
        literals=dict(g.types),
        alphabet=g.terminals,
    )
    for p in g.productions:
        seq: Sequent = tuple(negate(Lit(b)) for b in p.body) + (Lit(p.head),)
        sig.add(p.name, seq, cat.name_of(p.cow))
    return Llg(sig, g.start)


def llg_to_cowcfg(llg: Llg) -> CowordismCfg:
    """Rotate every axiom of a tensor-free lexicon into productions."""
    sig = strip_pars(llg.signature)
    if not is_tensor_free(sig):
        raise ValueError("lexicon contains a tensor; not in the MCFG fragment")
    dual_name = {}
    for lit in sig.literals:
        cand = lit + "_dual"
        while cand in sig.literals or cand in dual_name.values():
            cand += "_"
        dual_name[lit] = cand
    types = {n: b for n, b in sig.literals.items()}
    types.update({dual_name[n]: b.dual() for n, b in sig.literals.items()})

    def type_of(f: Lit) -> str:
        return f.name if f.positive else dual_name[f.name]

    out = CowordismCfg(types, sig.alphabet, llg.start, [])
    for name, ax in sig.axioms.items():
        seq = ax.sequent
        n = len(seq)
        blocks = [
            sig.literals[f.name] if f.positive else sig.literals[f.name].dual()
            for f in reversed(seq)
        ]
        for i in range(1, n + 1):
            order = [(n - i + k) % n for k in range(n)]
            rotated = cat.compose(ax.cow, cat.block_permutation(blocks, order))
            body_forms = [negate(seq[j]) for j in
                          list(range(i, n)) + list(range(0, i - 1))]
            body = tuple(type_of(f) for f in body_forms)
            src = EMPTY
            for b in body:
                src = src.tensor(types[b])
            cow = cat.Cowordism(src, types[type_of(seq[i - 1])], rotated.body)
            out.productions.append(CowProduction(f"{name}@{i}", body,
                                                 type_of(seq[i - 1]), cow))
    return out
