"""Multiplicative linear logic: formulas, one-sided proofs, interpretation.

A sequent ``|- A1, ..., An`` is interpreted as a morphism from the unit
to ``A1 par ... par An``; with the concrete cotensor ``X par Y = Y (x) X``
that boundary is ``[An] (x) ... (x) [A1]``, so the block of the *last*
formula sits at the lowest endpoint positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from . import category as cat
from .multiword import EMPTY, Boundary

# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Lit:
    name: str
    positive: bool = True


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"


Formula = Union[Lit, Tensor, Par]
Sequent = tuple[Formula, ...]


def negate(f: Formula) -> Formula:
    if isinstance(f, Lit):
        return Lit(f.name, not f.positive)
    if isinstance(f, Tensor):
        return Par(negate(f.left), negate(f.right))
    return Tensor(negate(f.left), negate(f.right))


def lollipop(a: Formula, b: Formula) -> Formula:
    """Linear implication sugar: ``A -o B = neg(A) par B``."""
    return Par(negate(a), b)


def formula_str(f: Formula) -> str:
    if isinstance(f, Lit):
        return f.name + ("" if f.positive else "^")
    op = "*" if isinstance(f, Tensor) else "@"
    return f"({formula_str(f.left)} {op} {formula_str(f.right)})"


def sequent_str(seq: Sequent) -> str:
    return ", ".join(formula_str(f) for f in seq)


def formula_key(f: Formula) -> tuple:
    """Total order used to canonicalize sequents in the search engine."""
    return (formula_size(f), formula_str(f))


def formula_size(f: Formula) -> int:
    if isinstance(f, Lit):
        return 1
    return 1 + formula_size(f.left) + formula_size(f.right)


def subformulas(f: Formula):
    yield f
    if not isinstance(f, Lit):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def par_leaves(f: Formula) -> list[Formula]:
    """Maximal non-par subformulas, left to right."""
    if isinstance(f, Par):
        return par_leaves(f.left) + par_leaves(f.right)
    return [f]


Interpretation = Mapping[str, Boundary]


def interp_formula(f: Formula, env: Interpretation) -> Boundary:
    if isinstance(f, Lit):
        try:
            base = env[f.name]
        except KeyError:
            raise KeyError(f"literal {f.name!r} has no interpretation") from None
        return base if f.positive else base.dual()
    if isinstance(f, Tensor):
        return interp_formula(f.left, env).tensor(interp_formula(f.right, env))
    # X par Y = Y (x) X
    return interp_formula(f.right, env).tensor(interp_formula(f.left, env))


def interp_sequent(seq: Sequent, env: Interpretation) -> Boundary:
    out = EMPTY
    for f in reversed(seq):
        out = out.tensor(interp_formula(f, env))
    return out


def sequent_blocks(seq: Sequent, env: Interpretation) -> list[Boundary]:
    """Boundary blocks bottom-up, i.e. for the reversed sequent."""
    return [interp_formula(f, env) for f in reversed(seq)]


# ------------------------------------------------------------------ proofs


@dataclass(frozen=True)
class IdAxiom:
    formula: Formula


@dataclass(frozen=True)
class LexAxiom:
    name: str


@dataclass(frozen=True)
class CutRule:
    left: "MllProof"
    right: "MllProof"


@dataclass(frozen=True)
class ExchangeRule:
    premise: "MllProof"
    pos: int  # swap formulas pos, pos+1 (1-based)


@dataclass(frozen=True)
class ParRule:
    premise: "MllProof"
    pos: int  # join formulas pos, pos+1 into a par


@dataclass(frozen=True)
class TensorRule:
    left: "MllProof"
    right: "MllProof"


MllProof = Union[IdAxiom, LexAxiom, CutRule, ExchangeRule, ParRule, TensorRule]


class ProofError(ValueError):
    pass


def proof_size(p: MllProof) -> int:
    if isinstance(p, (IdAxiom, LexAxiom)):
        return 1
    if isinstance(p, (CutRule, TensorRule)):
        return 1 + proof_size(p.left) + proof_size(p.right)
    return 1 + proof_size(p.premise)


def axiom_leaves(p: MllProof) -> list[str]:
    """Names of lexicon axioms used, left to right."""
    if isinstance(p, LexAxiom):
        return [p.name]
    if isinstance(p, IdAxiom):
        return []
    if isinstance(p, (CutRule, TensorRule)):
        return axiom_leaves(p.left) + axiom_leaves(p.right)
    return axiom_leaves(p.premise)


def conclusion(p: MllProof, axioms: Mapping[str, Sequent] | None = None) -> Sequent:
    """Compute and validate the sequent a proof tree derives."""
    axioms = axioms or {}
    if isinstance(p, IdAxiom):
        return (negate(p.formula), p.formula)
    if isinstance(p, LexAxiom):
        if p.name not in axioms:
            raise ProofError(f"unknown axiom {p.name!r}")
        return axioms[p.name]
    if isinstance(p, CutRule):
        gl = conclusion(p.left, axioms)
        gr = conclusion(p.right, axioms)
        if not gl or not gr:
            raise ProofError("cut premise with empty sequent")
        if gr[0] != negate(gl[-1]):
            raise ProofError(
                f"cut formulas are not dual: {formula_str(gl[-1])} vs {formula_str(gr[0])}"
            )
        return gl[:-1] + gr[1:]
    if isinstance(p, ExchangeRule):
        g = conclusion(p.premise, axioms)
        k = p.pos
        if not 1 <= k < len(g):
            raise ProofError(f"exchange position {k} out of range")
        out = list(g)
        out[k - 1], out[k] = out[k], out[k - 1]
        return tuple(out)
    if isinstance(p, ParRule):
        g = conclusion(p.premise, axioms)
        k = p.pos
        if not 1 <= k < len(g):
            raise ProofError(f"par position {k} out of range")
        return g[: k - 1] + (Par(g[k - 1], g[k]),) + g[k + 1:]
    if isinstance(p, TensorRule):
        gl = conclusion(p.left, axioms)
        gr = conclusion(p.right, axioms)
        if not gl or not gr:
            raise ProofError("tensor premise with empty sequent")
        return gl[:-1] + (Tensor(gl[-1], gr[0]),) + gr[1:]
    raise ProofError(f"not a proof node: {p!r}")


# ------------------------------------------------- rule-level interpretation
#
# These helpers are shared between interpret_proof and the grammar search
# engine so that both always agree on the semantics of each rule.


def interp_cut(sl: cat.Cowordism, gl: Sequent, sr: cat.Cowordism, gr: Sequent,
               env: Interpretation, fast: bool = True) -> cat.Cowordism:
    """Partial pairing over the cut formula (last of ``gl``, first of ``gr``)."""
    x = interp_sequent(gl[:-1], env)
    y = interp_formula(gl[-1], env)
    z = interp_sequent(gr[1:], env)
    glue = cat.cut_glue if fast else cat.partial_pairing
    return glue(sl, sr, x, y, z)


def interp_exchange(s: cat.Cowordism, g: Sequent, k: int,
                    env: Interpretation) -> cat.Cowordism:
    lower = interp_sequent(g[k + 1:], env)
    upper = interp_sequent(g[: k - 1], env)
    bx = interp_formula(g[k - 1], env)
    by = interp_formula(g[k], env)
    swap = cat.tensor(cat.tensor(cat.identity(lower), cat.symmetry(by, bx)),
                      cat.identity(upper))
    return cat.compose(s, swap)


def interp_tensor(sl: cat.Cowordism, gl: Sequent, sr: cat.Cowordism, gr: Sequent,
                  env: Interpretation) -> cat.Cowordism:
    bg = interp_sequent(gl[:-1], env)
    ba = interp_formula(gl[-1], env)
    bb = interp_formula(gr[0], env)
    bd = interp_sequent(gr[1:], env)
    mix = cat.internal_tensor(bg, ba, bb, bd)
    return cat.compose(cat.tensor(sl, sr), mix)


def interpret_proof(p: MllProof, env: Interpretation,
                    lexicon: Mapping[str, cat.Cowordism] | None = None,
                    axioms: Mapping[str, Sequent] | None = None,
                    fast: bool = True) -> cat.Cowordism:
    """Interpret a proof as a cowordism ``1 -> [conclusion]``.

    The boundary of the result is checked against the interpreted
    conclusion at every node.
    """
    lexicon = lexicon or {}
    axioms = axioms or {}

    def go(p: MllProof) -> tuple[cat.Cowordism, Sequent]:
        if isinstance(p, IdAxiom):
            out = cat.copairing(interp_formula(p.formula, env))
            seq: Sequent = (negate(p.formula), p.formula)
        elif isinstance(p, LexAxiom):
            if p.name not in lexicon:
                raise ProofError(f"axiom {p.name!r} has no cowordism")
            out, seq = lexicon[p.name], axioms[p.name]
        elif isinstance(p, CutRule):
            sl, gl = go(p.left)
            sr, gr = go(p.right)
            seq = conclusion(p, axioms)
            out = interp_cut(sl, gl, sr, gr, env, fast=fast)
        elif isinstance(p, ExchangeRule):
            s, g = go(p.premise)
            seq = conclusion(p, axioms)
            out = interp_exchange(s, g, p.pos, env)
        elif isinstance(p, ParRule):
            s, g = go(p.premise)
            seq = conclusion(p, axioms)
            out = s  # the par rule does strictly nothing
        elif isinstance(p, TensorRule):
            sl, gl = go(p.left)
            sr, gr = go(p.right)
            seq = conclusion(p, axioms)
            out = interp_tensor(sl, gl, sr, gr, env)
        else:
            raise ProofError(f"not a proof node: {p!r}")
        want = interp_sequent(seq, env)
        if out.source != EMPTY or out.target != want:
            raise ProofError(
                f"interpretation of {type(p).__name__} has boundary "
                f"{out.target.polarity_string()!r}, expected {want.polarity_string()!r}"
            )
        return out, seq

    return go(p)[0]


def exchange_chain(p: MllProof, swaps: list[int]) -> MllProof:
    for k in swaps:
        p = ExchangeRule(p, k)
    return p


def permutation_swaps(order: list[int]) -> list[int]:
    """Adjacent-swap positions (1-based) realizing ``order`` via bubble sort.

    ``order[j]`` is the index of the item that must end at slot ``j``; the
    returned swaps transform the identity arrangement into ``order``.
    """
    cur = list(range(len(order)))
    swaps = []
    for j, want in enumerate(order):
        i = cur.index(want)
        while i > j:
            cur[i - 1], cur[i] = cur[i], cur[i - 1]
            swaps.append(i)  # 1-based position of the left element
            i -= 1
    return swaps
