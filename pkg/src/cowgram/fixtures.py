"""Built-in example grammars: toy English, the wa^n w b^n MCFG, subset sum."""

from __future__ import annotations

from . import category as cat
from .llg import Axiom, CowordismSignature, Llg
from .mcfg import Mcfg, Production
from .mll import Lit, Sequent, Tensor, interp_sequent, negate
from .multiword import EMPTY, STANDARD, Boundary, Word, multiword


def _axiom(sig: CowordismSignature, name: str, seq: Sequent,
           edges: list[tuple[int, tuple[str, ...], int]]) -> None:
    bnd = interp_sequent(seq, sig.literals)
    sig.add(name, seq, cat.Cowordism(EMPTY, bnd, multiword(bnd, edges)))


def toy_grammar() -> Llg:
    """The relative-clause toy grammar deriving one famous sentence.

    Transitive verbs take their object first; the modifier and the
    relativizer consume a verb phrase through a tensor type.
    """
    np, s = Lit("NP"), Lit("S")
    nnp, ns = negate(np), negate(s)
    vp_arg = Tensor(np, ns)  # dual of NP^ par S, i.e. of a verb phrase type
    sig = CowordismSignature(
        literals={"NP": STANDARD, "S": STANDARD},
        alphabet=("John", "Mary", "leaves", "loves", "madly", "who"),
    )
    _axiom(sig, "JOHN", (np,), [(1, ("John",), 2)])
    _axiom(sig, "MARY", (np,), [(1, ("Mary",), 2)])
    _axiom(sig, "LEAVES", (nnp, s), [(1, (), 4), (3, ("leaves",), 2)])
    _axiom(sig, "LOVES", (nnp, nnp, s),
           [(1, (), 4), (3, ("loves",), 6), (5, (), 2)])
    _axiom(sig, "MADLY", (vp_arg, nnp, s),
           [(1, (), 8), (7, ("madly",), 2), (3, (), 6), (5, (), 4)])
    _axiom(sig, "WHO", (vp_arg, nnp, np),
           [(1, (), 4), (3, ("who",), 8), (5, (), 6), (7, (), 2)])
    return Llg(sig, "S")


TOY_SENTENCE: Word = ("Mary", "who", "John", "loves", "madly", "leaves")


def wanwbn_mcfg() -> Mcfg:
    """The two-copy grammar for ``{ w a^n w b^n : w in {a,b}*, n >= 0 }``."""
    g = Mcfg(
        nonterminals={"P": 2, "Q": 2, "S": 1},
        terminals=("a", "b"),
        start="S",
    )
    g.productions.append(Production([], "P", ((), ())))
    g.productions.append(Production([], "Q", ((), ())))
    g.productions.append(
        Production([("P", ("x", "y"))], "P", (("x", "a"), ("y", "b"))))
    g.productions.append(
        Production([("Q", ("z", "t"))], "Q", (("z", "a"), ("t", "a"))))
    g.productions.append(
        Production([("Q", ("z", "t"))], "Q", (("z", "b"), ("t", "b"))))
    g.productions.append(
        Production([("Q", ("z", "t")), ("P", ("x", "y"))], "S", (("z", "x", "t", "y"),)))
    return g


def wanwbn_language(max_len: int) -> set[Word]:
    """Direct enumeration of the target language up to a length bound."""
    out: set[Word] = set()
    ws: list[tuple[str, ...]] = [()]
    for _ in range(max_len // 2):
        ws += [w + (c,) for w in ws if len(w) < max_len // 2 for c in "ab"]
    for w in set(ws):
        n = 0
        while 2 * len(w) + 2 * n <= max_len:
            out.add(w + ("a",) * n + w + ("b",) * n)
            n += 1
    return out


# ----------------------------------------------------------- subset sum

BULLET = "."


def ssp_grammar() -> Llg:
    """Solutions of the subset-sum problem as a word language.

    Honest list slots live on ``S``: ``close`` starts a slot with a
    separator, ``push`` appends one ``+`` and one ``-`` to two slots, and
    ``cons`` concatenates.  Deceptive slots live on ``H`` and are filled
    freely by ``push+``/``push-`` before being spliced into a list, either
    in front of it (``open_before``) or behind it (``open_after``).
    """
    s, h = Lit("S"), Lit("H")
    ns, nh = negate(s), negate(h)
    sig = CowordismSignature(
        literals={"S": STANDARD, "H": STANDARD},
        alphabet=("+", "-", BULLET),
    )
    _axiom(sig, "close", (s,), [(1, (BULLET,), 2)])
    _axiom(sig, "cons", (ns, ns, s),
           [(1, (), 6), (5, (), 4), (3, (), 2)])
    # push appends "-" to the first slot and "+" to the second
    _axiom(sig, "push", (ns, ns, Tensor(s, s)),
           [(1, (), 8), (7, ("-",), 2), (3, (), 6), (5, ("+",), 4)])
    _axiom(sig, "close_H", (h,), [(1, (BULLET,), 2)])
    _axiom(sig, "push+", (nh, h), [(1, (), 4), (3, ("+",), 2)])
    _axiom(sig, "push-", (nh, h), [(1, (), 4), (3, ("-",), 2)])
    _axiom(sig, "open_before", (nh, ns, s),
           [(1, (), 6), (5, (), 4), (3, (), 2)])
    _axiom(sig, "open_after", (ns, nh, s),
           [(1, (), 6), (5, (), 4), (3, (), 2)])
    return Llg(sig, "S")


def decode_numerals(w: Word) -> list[int] | None:
    """Read a word as a separator-initiated list of numerals, or None."""
    if not w or w[0] != BULLET:
        return None
    out: list[int] = []
    for tok in w:
        if tok == BULLET:
            out.append(0)
        elif tok == "+":
            out[-1] += 1
        elif tok == "-":
            out[-1] -= 1
        else:
            return None
    return out


def encode_sequence(zs: list[int]) -> Word:
    """The irreducible list word of an integer sequence."""
    out: list[str] = []
    for z in zs:
        out.append(BULLET)
        out.extend(["+"] * z if z >= 0 else ["-"] * (-z))
    return tuple(out)


def has_zero_subset(zs: list[int]) -> bool:
    """Brute-force oracle: some nonempty sub-multiset sums to zero."""
    reach: set[int] = set()
    for z in zs:
        reach |= {z} | {r + z for r in reach}
    return 0 in reach


# ----------------------------------------------------------------- demos


def toy_derivation():
    """The scripted relative-clause derivation, step by step."""
    from .mll import CutRule, ExchangeRule, LexAxiom, ParRule

    loves_vp = ParRule(LexAxiom("LOVES"), 2)
    cut_madly = CutRule(loves_vp, LexAxiom("MADLY"))
    swapped = ExchangeRule(cut_madly, 1)
    jlm = CutRule(LexAxiom("JOHN"), swapped)
    who_moved = ExchangeRule(ExchangeRule(LexAxiom("WHO"), 1), 2)
    rel = CutRule(who_moved, ParRule(jlm, 1))
    with_mary = CutRule(LexAxiom("MARY"), rel)
    return CutRule(with_mary, LexAxiom("LEAVES")), jlm


def show_word(w: Word, unicode_bullets: bool = False) -> str:
    toks = ["•" if unicode_bullets and t == BULLET else t for t in w]
    return " ".join(toks) if toks else '""'


def demo(name: str, unicode_bullets: bool = False) -> list[str]:
    """Build one of the built-in grammars and run its scripted generation."""
    from . import llg as engine
    from .mll import proof_size

    lines: list[str] = []
    if name == "toy":
        g = toy_grammar()
        full, jlm = toy_derivation()
        _, cow = engine.derive(g, jlm)
        lines.append("scripted derivation, intermediate (a verb phrase):")
        lines.append(f"  {cow.body!r}")
        _, final = engine.derive(g, full)
        word_ = next(iter(final.body.edges)).label
        lines.append(f"scripted derivation, sentence: {show_word(word_)}")
        res = engine.generate(g, engine.GenerationBudget(max_axiom_uses=6))
        lines.append(f"generation at 6 axiom uses "
                     f"(complete within budget: {'yes' if res.complete else 'no'}):")
        for w in res.sorted_words():
            lines.append(f"  {show_word(w)}   [{proof_size(res.words[w])} nodes]")
    elif name == "wanwbn":
        from . import mcfg as mc
        g = wanwbn_mcfg()
        llg = mc.cowcfg_to_llg(mc.mcfg_to_cowcfg(g))
        res = engine.generate(
            llg, engine.GenerationBudget(max_axiom_uses=12, max_total_word_length=8))
        lines.append(f"two-copy language up to length 8 "
                     f"(complete within budget: {'yes' if res.complete else 'no'}):")
        for w in res.sorted_words():
            lines.append(f"  {show_word(w)}   [{proof_size(res.words[w])} nodes]")
    elif name == "ssp":
        g = ssp_grammar()
        res = engine.generate(
            g, engine.GenerationBudget(max_axiom_uses=7, max_total_word_length=5))
        lines.append(f"subset-sum solution lists at 7 axiom uses "
                     f"(complete within budget: {'yes' if res.complete else 'no'}):")
        for w in res.sorted_words():
            zs = decode_numerals(w)
            mark = "ok" if zs is not None and has_zero_subset(zs) else "FAIL"
            lines.append(f"  {show_word(w, unicode_bullets)}   "
                         f"[{proof_size(res.words[w])} nodes, {mark}: {zs}]")
    else:
        raise ValueError(f"unknown demo {name!r} (expected toy, wanwbn or ssp)")
    return lines
