"""Linear lambda calculus, linear signatures, and abstract categorial grammars.

Typing derivations are interpreted in the cowordism category (identity,
evaluation, currying-with-a-symmetry), an intuitionistic sequent becomes
the one-sided sequent of its negated hypotheses, and interpreted
signatures turn into lexicons, which is how string and tree ACGs land in
linear logic grammars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from . import category as cat
from . import mll
from .llg import CowordismSignature, Llg
from .multiword import EMPTY, Boundary, Edge, Multiword, Word

# ------------------------------------------------------------------- types


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Arrow:
    arg: "LinType"
    res: "LinType"


LinType = Union[Atom, Arrow]


def arrows(*types: LinType) -> LinType:
    """Right-nested implication ``A1 -o A2 -o ... -o R``."""
    out = types[-1]
    for t in reversed(types[:-1]):
        out = Arrow(t, out)
    return out


def type_str(t: LinType) -> str:
    if isinstance(t, Atom):
        return t.name
    return f"({type_str(t.arg)} -> {type_str(t.res)})"


# ------------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Term"


Term = Union[Var, Const, App, Lam]


def apps(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def term_str(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name
    if isinstance(t, App):
        return f"({term_str(t.fn)} {term_str(t.arg)})"
    return f"(\\{t.var}. {term_str(t.body)})"


def free_vars(t: Term) -> list[str]:
    """Free variables in left-to-right occurrence order."""
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, Const):
        return []
    if isinstance(t, App):
        return free_vars(t.fn) + free_vars(t.arg)
    return [v for v in free_vars(t.body) if v != t.var]


class LinearityError(TypeError):
    pass


def check_linear(t: Term, bound: frozenset[str] = frozenset()) -> None:
    """Raise unless every variable occurs exactly once in its scope."""
    if isinstance(t, Lam):
        occ = free_vars(t.body).count(t.var)
        if occ != 1:
            raise LinearityError(
                f"variable {t.var!r} occurs {occ} times under its binder")
        check_linear(t.body, bound | {t.var})
    elif isinstance(t, App):
        overlap = set(free_vars(t.fn)) & set(free_vars(t.arg))
        if overlap:
            raise LinearityError(f"variables {sorted(overlap)} used on both sides")
        check_linear(t.fn, bound)
        check_linear(t.arg, bound)


_fresh_counter = [0]


def _fresh(base: str) -> str:
    _fresh_counter[0] += 1
    return f"{base}'{_fresh_counter[0]}"


def substitute(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(substitute(t.fn, x, s), substitute(t.arg, x, s))
    if t.var == x:
        return t
    if t.var in free_vars(s):
        fresh = _fresh(t.var)
        body = substitute(t.body, t.var, Var(fresh))
        return Lam(fresh, substitute(body, x, s))
    return Lam(t.var, substitute(t.body, x, s))


def beta_normalize(t: Term) -> Term:
    """Full beta normalization; terminates on linear terms."""
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Lam):
        return Lam(t.var, beta_normalize(t.body))
    fn = beta_normalize(t.fn)
    arg = beta_normalize(t.arg)
    if isinstance(fn, Lam):
        return beta_normalize(substitute(fn.body, fn.var, arg))
    return App(fn, arg)


def eta_contract(t: Term) -> Term:
    """One layer of eta contraction where the bound variable is the sole argument."""
    if isinstance(t, Lam):
        body = eta_contract(t.body)
        if isinstance(body, App) and body.arg == Var(t.var) \
                and t.var not in free_vars(body.fn):
            return body.fn
        return Lam(t.var, body)
    if isinstance(t, App):
        return App(eta_contract(t.fn), eta_contract(t.arg))
    return t


# -------------------------------------------------------------- signatures


@dataclass
class LinearSignature:
    atoms: tuple[str, ...]
    constants: dict[str, LinType]
    # optional cowordism interpretation
    atom_boundary: dict[str, Boundary] = field(default_factory=dict)
    constant_cow: dict[str, cat.Cowordism] = field(default_factory=dict)

    def boundary(self, t: LinType) -> Boundary:
        if isinstance(t, Atom):
            return self.atom_boundary[t.name]
        return cat.hom(self.boundary(t.arg), self.boundary(t.res))

    def validate_interpretation(self) -> list[str]:
        out = []
        for c, ty in self.constants.items():
            cw = self.constant_cow.get(c)
            if cw is None:
                out.append(f"constant {c!r} lacks a cowordism")
            elif cw.source != EMPTY or cw.target != self.boundary(ty):
                out.append(f"constant {c!r} cowordism does not match its type")
        return out


# -------------------------------------------------- checking and semantics


@dataclass(frozen=True)
class Derivation:
    """One node of a natural-deduction typing derivation."""

    rule: str  # "var" | "const" | "app" | "lam"
    context: tuple[tuple[str, LinType], ...]
    term: Term
    type: LinType
    premises: tuple["Derivation", ...] = ()
    lam_pos: int = 0  # 1-based slot of the abstracted variable in the premise


def typecheck(sig: LinearSignature, context: tuple[tuple[str, LinType], ...],
              term: Term, ty: LinType) -> Derivation:
    """Bidirectional checking; the context must list variables in use order."""
    check_linear(term)
    return _check(sig, tuple(context), term, ty)


def typecheck_closed(sig: LinearSignature, term: Term, ty: LinType) -> Derivation:
    return typecheck(sig, (), term, ty)


def _check(sig, ctx, term, ty) -> Derivation:
    if isinstance(term, Lam):
        if not isinstance(ty, Arrow):
            raise LinearityError(f"{term_str(term)} checked against atom {type_str(ty)}")
        fv = free_vars(term.body)
        if term.var not in fv:
            raise LinearityError(f"unused binder {term.var!r}")
        for p in range(len(ctx) + 1):
            inner = ctx[:p] + ((term.var, ty.arg),) + ctx[p:]
            try:
                d = _check(sig, inner, term.body, ty.res)
            except LinearityError:
                continue
            return Derivation("lam", ctx, term, ty, (d,), p + 1)
        raise LinearityError(f"no context slot admits {term.var!r}")
    if isinstance(term, App) and isinstance(term.fn, Lam):
        # beta redex: the argument must synthesize, then check the function
        gamma, delta = _split_context(ctx, term.fn)
        ad = _synth(sig, delta, term.arg)
        fd = _check(sig, gamma, term.fn, Arrow(ad.type, ty))
        return Derivation("app", ctx, term, ty, (fd, ad))
    d = _synth(sig, ctx, term)
    if d.type != ty:
        raise LinearityError(
            f"{term_str(term)} has type {type_str(d.type)}, wanted {type_str(ty)}")
    return d


def _split_context(ctx, fn_term):
    fv_fn = free_vars(fn_term)
    split = 0
    for (v, _ty) in ctx:
        if v in fv_fn:
            split += 1
        else:
            break
    gamma, delta = ctx[:split], ctx[split:]
    if {v for v, _ in gamma} != set(fv_fn):
        raise LinearityError(
            f"context is not split by {term_str(fn_term)} (function part first)")
    return gamma, delta


def _synth(sig, ctx, term) -> Derivation:
    if isinstance(term, Var):
        if len(ctx) != 1 or ctx[0][0] != term.name:
            raise LinearityError(f"context mismatch at variable {term.name!r}")
        return Derivation("var", ctx, term, ctx[0][1])
    if isinstance(term, Const):
        if ctx:
            raise LinearityError(f"constant {term.name!r} under nonempty context")
        if term.name not in sig.constants:
            raise LinearityError(f"unknown constant {term.name!r}")
        return Derivation("const", ctx, term, sig.constants[term.name])
    if isinstance(term, App):
        gamma, delta = _split_context(ctx, term.fn)
        fd = _synth(sig, gamma, term.fn)
        if not isinstance(fd.type, Arrow):
            raise LinearityError(f"applying non-function {term_str(term.fn)}")
        ad = _check(sig, delta, term.arg, fd.type.arg)
        return Derivation("app", ctx, term, fd.type.res, (fd, ad))
    raise LinearityError(
        f"cannot synthesize a type for {term_str(term)}; normalize first")


def context_boundary(sig: LinearSignature, ctx) -> Boundary:
    out = EMPTY
    for _, t in ctx:
        out = out.tensor(sig.boundary(t))
    return out


def interpret_derivation(sig: LinearSignature, d: Derivation) -> cat.Cowordism:
    """The cowordism ``[ctx] -> [type]`` of a typing derivation."""
    if d.rule == "var":
        return cat.identity(sig.boundary(d.type))
    if d.rule == "const":
        return sig.constant_cow[d.term.name]
    if d.rule == "app":
        fd, ad = d.premises
        fn = interpret_derivation(sig, fd)
        arg = interpret_derivation(sig, ad)
        ab = sig.boundary(fd.type.arg)
        bb = sig.boundary(fd.type.res)
        return cat.compose(cat.tensor(fn, arg), cat.evaluation(ab, bb))
    if d.rule == "lam":
        (prem,) = d.premises
        inner = interpret_derivation(sig, prem)
        p = d.lam_pos - 1
        gamma = context_boundary(sig, d.context[:p])
        delta = context_boundary(sig, d.context[p:])
        ab = sig.boundary(prem.context[p][1])
        move = cat.tensor(cat.identity(gamma), cat.symmetry(delta, ab))
        return cat.curry(cat.compose(move, inner), gamma.size + delta.size)
    raise ValueError(f"bad derivation rule {d.rule!r}")


# ------------------------------------------------------- embedding into LL


def ll_formula(t: LinType) -> mll.Formula:
    if isinstance(t, Atom):
        return mll.Lit(t.name)
    return mll.Par(mll.negate(ll_formula(t.arg)), ll_formula(t.res))


def ill_to_ll(context_types: list[LinType], ty: LinType) -> mll.Sequent:
    """``A1, ..., An |- A`` becomes ``|- neg A1, ..., neg An, A``."""
    return tuple(mll.negate(ll_formula(t)) for t in context_types) + (ll_formula(ty),)


def derivation_to_ll_proof(d: Derivation) -> mll.MllProof:
    """Translate a natural-deduction derivation into a one-sided proof.

    Constants become lexicon axioms named after themselves.
    """
    if d.rule == "var":
        return mll.IdAxiom(ll_formula(d.type))
    if d.rule == "const":
        return mll.LexAxiom(d.term.name)
    if d.rule == "app":
        fd, ad = d.premises
        pi1 = derivation_to_ll_proof(fd)
        pi2 = derivation_to_ll_proof(ad)
        b = ll_formula(fd.type.res)
        tens = mll.TensorRule(pi2, mll.IdAxiom(b))
        return mll.CutRule(pi1, tens)
    if d.rule == "lam":
        (prem,) = d.premises
        pi = derivation_to_ll_proof(prem)
        n = len(prem.context)
        # move the abstracted hypothesis just before the conclusion formula
        for k in range(d.lam_pos, n):
            pi = mll.ExchangeRule(pi, k)
        return mll.ParRule(pi, n)
    raise ValueError(f"bad derivation rule {d.rule!r}")


def signature_to_cowordism_signature(sig: LinearSignature,
                                     alphabet: tuple[str, ...]) -> CowordismSignature:
    """One axiom per constant; the lexicon of the signature's LLG image."""
    problems = sig.validate_interpretation()
    if problems:
        raise ValueError("; ".join(problems))
    out = CowordismSignature(
        literals={a: sig.atom_boundary[a] for a in sig.atoms},
        alphabet=alphabet,
    )
    for c in sig.constants:
        seq = (ll_formula(sig.constants[c]),)
        out.add(c, seq, sig.constant_cow[c])
    return out


# --------------------------------------------------------- string signature

STR_ATOM = "O"
POINT = Boundary(1, frozenset({1}))


def string_signature(alphabet: tuple[str, ...]) -> LinearSignature:
    """One atom ``O``; every letter is a constant of type ``O -o O``."""
    sig = LinearSignature(
        atoms=(STR_ATOM,),
        constants={c: Arrow(Atom(STR_ATOM), Atom(STR_ATOM)) for c in alphabet},
        atom_boundary={STR_ATOM: POINT},
    )
    for c in alphabet:
        bnd = cat.hom(POINT, POINT)
        sig.constant_cow[c] = cat.Cowordism(
            EMPTY, bnd, Multiword(bnd, frozenset({Edge(1, (c,), 2)})))
    return sig


STR_TYPE = Arrow(Atom(STR_ATOM), Atom(STR_ATOM))


def rho(w: Word) -> Term:
    """The string term of a word: ``\\x. a1 (... (an x))``."""
    body: Term = Var("x")
    for c in reversed(w):
        body = App(Const(c), body)
    return Lam("x", body)


def unrho(t: Term) -> Word:
    """Read the word back off a string term, up to beta-eta equivalence."""
    t = beta_normalize(t)
    if isinstance(t, Const):
        return (t.name,)
    if not isinstance(t, Lam):
        raise ValueError(f"not a string term: {term_str(t)}")
    out = []
    body = t.body
    while isinstance(body, App):
        if not isinstance(body.fn, Const):
            raise ValueError(f"not a string term: {term_str(t)}")
        out.append(body.fn.name)
        body = body.arg
    if body != Var(t.var):
        raise ValueError(f"not a string term: {term_str(t)}")
    return tuple(out)


def word_cow(w: Word) -> cat.Cowordism:
    bnd = cat.hom(POINT, POINT)
    return cat.Cowordism(EMPTY, bnd, Multiword(bnd, frozenset({Edge(1, tuple(w), 2)})))


# ----------------------------------------------------------- tree signature

TREE_ATOM = "T"

#: a rooted labeled tree: (label, (child, ...))
Tree = tuple[str, tuple]


def tree(label: str, *children: Tree) -> Tree:
    return (label, tuple(children))


def tree_token(label: str, k: int, i: int) -> str:
    return f"{label}{k}_{i}"


def tree_alphabet(labels: tuple[str, ...], branching: int) -> tuple[str, ...]:
    return tuple(tree_token(a, k, i)
                 for a in labels for k in range(branching + 1) for i in range(k + 1))


def encode_tree(t: Tree) -> Word:
    """The word of a tree: root tokens interleaved with encoded children."""
    label, children = t
    k = len(children)
    out = [tree_token(label, k, 0)]
    for i, c in enumerate(children, 1):
        out.extend(encode_tree(c))
        out.append(tree_token(label, k, i))
    return tuple(out)


def decode_tree(w: Word, labels: tuple[str, ...], branching: int) -> Tree | None:
    """Inverse of :func:`encode_tree`; None when the word is not an encoding."""
    token_of = {tree_token(a, k, i): (a, k, i)
                for a in labels for k in range(branching + 1) for i in range(k + 1)}

    def parse(pos: int) -> tuple[Tree, int] | None:
        if pos >= len(w) or w[pos] not in token_of:
            return None
        a, k, i = token_of[w[pos]]
        if i != 0:
            return None
        pos += 1
        children = []
        for want in range(1, k + 1):
            got = parse(pos)
            if got is None:
                return None
            child, pos = got
            if pos >= len(w) or token_of.get(w[pos]) != (a, k, want):
                return None
            pos += 1
            children.append(child)
        return (a, tuple(children)), pos

    got = parse(0)
    if got is None or got[1] != len(w):
        return None
    return got[0]


TREE_BOUNDARY = Boundary(2, frozenset({1}))


def elementary_tree_cow(label: str, k: int) -> cat.Cowordism:
    """The cowordism plugging ``k`` subtrees around a root's tokens."""
    src = EMPTY
    for _ in range(k):
        src = src.tensor(TREE_BOUNDARY)
    tgt = TREE_BOUNDARY
    if k == 0:
        edges = {Edge(1, (tree_token(label, 0, 0),), 2)}
    else:
        edges = {Edge(1, (tree_token(label, k, 0),), 2 * k + 2)}
        for i in range(1, k):
            edges.add(Edge(2 * k + 3 - 2 * i, (tree_token(label, k, i),),
                           2 * k + 2 - 2 * i))
        edges.add(Edge(3, (tree_token(label, k, k),), 2))
    return cat.Cowordism(src, tgt, Multiword(tgt.tensor(src.dual()), frozenset(edges)))


def tree_signature(labels: tuple[str, ...], branching: int) -> LinearSignature:
    """Constants ``A_k : T -o ... -o T`` interpreted by elementary tree cowordisms.

    The k-ary cowordism is stored under its name, i.e. re-typed from the
    unit; the underlying multiword is the same.
    """
    sig = LinearSignature(
        atoms=(TREE_ATOM,),
        constants={},
        atom_boundary={TREE_ATOM: TREE_BOUNDARY},
    )
    for a in labels:
        for k in range(branching + 1):
            ty: LinType = Atom(TREE_ATOM)
            for _ in range(k):
                ty = Arrow(Atom(TREE_ATOM), ty)
            name = f"{a}_{k}"
            sig.constants[name] = ty
            sig.constant_cow[name] = cat.Cowordism(
                EMPTY, sig.boundary(ty), elementary_tree_cow(a, k).body)
    return sig


def rho_tree(t: Tree) -> Term:
    label, children = t
    out: Term = Const(f"{label}_{len(children)}")
    for c in children:
        out = App(out, rho_tree(c))
    return out


def tree_word_cow(t: Tree) -> cat.Cowordism:
    bnd = TREE_BOUNDARY
    return cat.Cowordism(
        EMPTY, bnd, Multiword(bnd, frozenset({Edge(1, encode_tree(t), 2)})))


# --------------------------------------------------------------------- ACG


@dataclass
class SignatureMap:
    type_map: dict[str, LinType]  # abstract atom -> object type
    term_map: dict[str, Term]  # abstract constant -> object term

    def map_type(self, t: LinType) -> LinType:
        if isinstance(t, Atom):
            return self.type_map[t.name]
        return Arrow(self.map_type(t.arg), self.map_type(t.res))

    def map_term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return t
        if isinstance(t, Const):
            return self.term_map[t.name]
        if isinstance(t, App):
            return App(self.map_term(t.fn), self.map_term(t.arg))
        return Lam(t.var, self.map_term(t.body))


@dataclass
class Acg:
    abstract: LinearSignature
    objects: LinearSignature  # must carry an interpretation
    lexicon: SignatureMap
    start: str  # abstract atomic type

    def validate(self) -> list[str]:
        out = self.objects.validate_interpretation()
        for a in self.abstract.atoms:
            if a not in self.lexicon.type_map:
                out.append(f"abstract atom {a!r} missing from the lexicon")
        for c, ty in self.abstract.constants.items():
            img = self.lexicon.term_map.get(c)
            if img is None:
                out.append(f"abstract constant {c!r} missing from the lexicon")
                continue
            try:
                typecheck_closed(self.objects, img, self.lexicon.map_type(ty))
            except LinearityError as e:
                out.append(f"lexicon image of {c!r} does not typecheck: {e}")
        if self.start not in self.abstract.atoms:
            out.append(f"start type {self.start!r} is not an abstract atom")
        return out


def acg_to_llg(acg: Acg, alphabet: tuple[str, ...]) -> Llg:
    """Interpret the abstract signature through the lexicon; name the axioms."""
    problems = acg.validate()
    if problems:
        raise ValueError("; ".join(problems))
    literals = {
        a: acg.objects.boundary(acg.lexicon.map_type(Atom(a)))
        for a in acg.abstract.atoms
    }
    sig = CowordismSignature(literals=literals, alphabet=alphabet)
    for c, ty in acg.abstract.constants.items():
        img = acg.lexicon.term_map[c]
        obj_ty = acg.lexicon.map_type(ty)
        deriv = typecheck_closed(acg.objects, img, obj_ty)
        cow = interpret_derivation(acg.objects, deriv)
        seq = (ll_formula(ty),)
        want = mll.interp_sequent(seq, literals)
        if cow.target != want:
            raise AssertionError(f"axiom {c!r} boundary does not match its type")
        sig.add(c, seq, cat.Cowordism(EMPTY, want, cow.body))
    return Llg(sig, acg.start)
