"""Textual grammar formats: llg, mcfg, cowcfg and acg files.

Every format prints to a canonical form and parses back to an equal
grammar; parse errors carry line and column positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import acg as A
from . import category as cat
from .llg import Axiom, CowordismSignature, Llg
from .mcfg import CowordismCfg, CowProduction, Mcfg, Production
from .mll import Formula, Lit, Par, Sequent, Tensor, negate
from .multiword import EMPTY, Boundary, Multiword, boundary, multiword, word
from .mll import interp_sequent


class GrammarSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass
class GrammarFile:
    kind: str  # "llg" | "mcfg" | "cowcfg" | "acg"
    grammar: object


_TOKEN = re.compile(
    r"\s+|#[^\n]*"
    r"|(?P<str>\"[^\"]*\")"
    r"|(?P<punct>:=|->|[{}():;,=*@^\\.])"
    r"|(?P<word>[^\s{}():;,=*@^\\.\"#]+)"
)


def _tokenize(text: str):
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GrammarSyntaxError(f"stray character {text[pos]!r}", line, col)
        chunk = m.group(0)
        if m.lastgroup == "str":
            out.append(("str", chunk[1:-1], line, col))
        elif m.lastgroup == "punct":
            out.append(("punct", chunk, line, col))
        elif m.lastgroup == "word":
            out.append(("word", chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        pos = m.end()
    out.append(("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str):
        _, _, line, col = self.peek()
        raise GrammarSyntaxError(message, line, col)

    def expect(self, kind: str, value: str | None = None) -> str:
        t, v, line, col = self.peek()
        if t != kind or (value is not None and v != value):
            want = value if value is not None else kind
            raise GrammarSyntaxError(f"expected {want!r}, found {v!r}", line, col)
        self.next()
        return v

    def at(self, kind: str, value: str | None = None) -> bool:
        t, v, _, _ = self.peek()
        return t == kind and (value is None or v == value)

    def word_or_str(self) -> str:
        t, v, line, col = self.peek()
        if t not in ("word", "str"):
            raise GrammarSyntaxError(f"expected a token, found {v!r}", line, col)
        self.next()
        return v

    # -- shared pieces

    def token_list(self) -> tuple[str, ...]:
        out = []
        while self.at("word") or self.at("str"):
            out.append(self.word_or_str())
        return tuple(out)

    def polarities(self) -> Boundary:
        t, v, line, col = self.peek()
        if t != "word" or not v:
            raise GrammarSyntaxError(f"expected a polarity string, found {v!r}",
                                     line, col)
        for i, c in enumerate(v):
            if c not in "lr":
                raise GrammarSyntaxError(
                    f"bad polarity character {c!r} in {v!r}", line, col + i)
        self.next()
        return boundary(v)

    def formula(self) -> Formula:
        left = self.formula_par()
        if self.at("punct", "->"):
            self.next()
            right = self.formula()
            return Par(negate(left), right)
        return left

    def formula_par(self) -> Formula:
        left = self.formula_tensor()
        while self.at("punct", "@"):
            self.next()
            left = Par(left, self.formula_tensor())
        return left

    def formula_tensor(self) -> Formula:
        left = self.formula_atom()
        while self.at("punct", "*"):
            self.next()
            left = Tensor(left, self.formula_atom())
        return left

    def formula_atom(self) -> Formula:
        if self.at("punct", "("):
            self.next()
            f = self.formula()
            self.expect("punct", ")")
        else:
            name = self.expect("word")
            f = Lit(name)
        while self.at("punct", "^"):
            self.next()
            f = negate(f)
        return f

    def body_block(self, bnd: Boundary) -> Multiword:
        self.expect("punct", "{")
        edges = []
        cycles = []
        while not self.at("punct", "}"):
            kw = self.expect("word")
            if kw == "edge":
                src = int(self.expect("word"))
                label = word(self.expect("str"))
                dst = int(self.expect("word"))
                edges.append((src, label, dst))
            elif kw == "loop":
                cycles.append(word(self.expect("str")))
            else:
                self.fail(f"expected 'edge' or 'loop', found {kw!r}")
            self.expect("punct", ";")
        self.expect("punct", "}")
        return multiword(bnd, edges, cycles)


def _quote(tok: str) -> str:
    return tok if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok) else f'"{tok}"'


def _format_word(w) -> str:
    return '"' + " ".join(w) + '"'


def format_formula(f: Formula) -> str:
    def go(f: Formula, outer: int) -> str:
        # precedence: 0 par, 1 tensor, 2 atom
        if isinstance(f, Lit):
            return f.name + ("" if f.positive else "^")
        if isinstance(f, Tensor):
            s = f"{go(f.left, 2)} * {go(f.right, 2)}"
            return f"({s})" if outer > 1 else s
        s = f"{go(f.left, 1)} @ {go(f.right, 1)}"
        return f"({s})" if outer > 0 else s

    return go(f, 0)


# ------------------------------------------------------------------- llg


def print_llg(llg: Llg) -> str:
    sig = llg.signature
    out = ["llg {"]
    out.append("  alphabet: " + " ".join(_quote(t) for t in sig.alphabet) + ";")
    for name in sorted(sig.literals):
        out.append(f"  literal {name} : {sig.literals[name].polarity_string()};")
    out.append(f"  start {llg.start};")
    for name, ax in sig.axioms.items():
        seq = ", ".join(format_formula(f) for f in ax.sequent)
        out.append(f"  axiom {name} : {seq} = {{")
        for e in ax.cow.body.sorted_edges():
            out.append(f"    edge {e.src} {_format_word(e.label)} {e.dst};")
        for c in ax.cow.body.cycles:
            out.append(f"    loop {_format_word(c.tokens)};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def _parse_llg(p: _Parser) -> Llg:
    p.expect("word", "llg")
    p.expect("punct", "{")
    alphabet: tuple[str, ...] = ()
    literals: dict[str, Boundary] = {}
    start = None
    axioms: list[tuple[str, Sequent, Multiword]] = []
    while not p.at("punct", "}"):
        kw = p.expect("word")
        if kw == "alphabet":
            p.expect("punct", ":")
            alphabet = p.token_list()
            p.expect("punct", ";")
        elif kw == "literal":
            name = p.expect("word")
            p.expect("punct", ":")
            literals[name] = p.polarities()
            p.expect("punct", ";")
        elif kw == "start":
            start = p.expect("word")
            p.expect("punct", ";")
        elif kw == "axiom":
            name = p.expect("word")
            p.expect("punct", ":")
            seq = [p.formula()]
            while p.at("punct", ","):
                p.next()
                seq.append(p.formula())
            p.expect("punct", "=")
            bnd = interp_sequent(tuple(seq), literals)
            axioms.append((name, tuple(seq), p.body_block(bnd)))
        else:
            p.fail(f"unexpected keyword {kw!r} in llg block")
    p.expect("punct", "}")
    if start is None:
        p.fail("missing start declaration")
    sig = CowordismSignature(literals, alphabet)
    for name, seq, body in axioms:
        sig.add(name, seq, cat.Cowordism(EMPTY, body.boundary, body))
    return Llg(sig, start)


# ------------------------------------------------------------------ mcfg


def print_mcfg(g: Mcfg) -> str:
    out = ["mcfg {"]
    out.append("  terminals: " + " ".join(_quote(t) for t in g.terminals) + ";")
    for n in sorted(g.nonterminals):
        out.append(f"  arity {n} : {g.nonterminals[n]};")
    out.append(f"  start {g.start};")
    for prod in g.productions:
        args = []
        for w in prod.head_words:
            parts = []
            chunk: list[str] = []
            for t in w:
                if t in g.terminals:
                    chunk.append(t)
                else:
                    if chunk:
                        parts.append(_format_word(chunk))
                        chunk = []
                    parts.append(t)
            if chunk or not parts:
                parts.append(_format_word(chunk))
            args.append(" ".join(parts))
        head = f"{prod.head}({', '.join(args)})"
        body = ", ".join(f"{n}({', '.join(vs)})" for n, vs in prod.body)
        out.append(f"  {head} <- {body};")
    out.append("}")
    return "\n".join(out) + "\n"


def _parse_mcfg(p: _Parser) -> Mcfg:
    p.expect("word", "mcfg")
    p.expect("punct", "{")
    terminals: tuple[str, ...] = ()
    arities: dict[str, int] = {}
    start = None
    prods: list[tuple] = []
    while not p.at("punct", "}"):
        kw = p.expect("word")
        if kw == "terminals":
            p.expect("punct", ":")
            terminals = p.token_list()
            p.expect("punct", ";")
            continue
        if kw == "arity":
            name = p.expect("word")
            p.expect("punct", ":")
            arities[name] = int(p.expect("word"))
            p.expect("punct", ";")
            continue
        if kw == "start":
            start = p.expect("word")
            p.expect("punct", ";")
            continue
        head = kw
        p.expect("punct", "(")
        head_words = []
        while not p.at("punct", ")"):
            wparts: list[str] = []
            while not (p.at("punct", ",") or p.at("punct", ")")):
                if p.at("str"):
                    wparts.extend(word(p.next()[1]))
                else:
                    wparts.append(p.expect("word"))
            head_words.append(tuple(wparts))
            if p.at("punct", ","):
                p.next()
        p.expect("punct", ")")
        p.expect("word", "<-")
        body = []
        while not p.at("punct", ";"):
            name = p.expect("word")
            p.expect("punct", "(")
            vs = []
            while not p.at("punct", ")"):
                vs.append(p.expect("word"))
                if p.at("punct", ","):
                    p.next()
            p.expect("punct", ")")
            body.append((name, tuple(vs)))
            if p.at("punct", ","):
                p.next()
        p.expect("punct", ";")
        prods.append((head, tuple(head_words), tuple(body)))
    p.expect("punct", "}")
    if start is None:
        p.fail("missing start declaration")
    nonterminals = dict(arities)
    for head, hw, body in prods:
        nonterminals.setdefault(head, len(hw))
        for n, vs in body:
            nonterminals.setdefault(n, len(vs))
    g = Mcfg(nonterminals, terminals, start)
    for head, hw, body in prods:
        g.productions.append(Production(list(body), head, hw))
    return g


# ---------------------------------------------------------------- cowcfg


def print_cowcfg(g: CowordismCfg) -> str:
    out = ["cowcfg {"]
    out.append("  alphabet: " + " ".join(_quote(t) for t in g.terminals) + ";")
    for n in sorted(g.types):
        out.append(f"  type {_quote(n)} : {g.types[n].polarity_string() or 'empty'};")
    out.append(f"  start {_quote(g.start)};")
    for prod in g.productions:
        body = " ".join(_quote(b) for b in prod.body) or "1"
        out.append(f"  prod {_quote(prod.name)} : {body} -> {_quote(prod.head)} = {{")
        for e in prod.cow.body.sorted_edges():
            out.append(f"    edge {e.src} {_format_word(e.label)} {e.dst};")
        for c in prod.cow.body.cycles:
            out.append(f"    loop {_format_word(c.tokens)};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def _parse_cowcfg(p: _Parser) -> CowordismCfg:
    p.expect("word", "cowcfg")
    p.expect("punct", "{")
    alphabet: tuple[str, ...] = ()
    types: dict[str, Boundary] = {}
    start = None
    prods: list[CowProduction] = []
    while not p.at("punct", "}"):
        kw = p.expect("word")
        if kw == "alphabet":
            p.expect("punct", ":")
            alphabet = p.token_list()
            p.expect("punct", ";")
        elif kw == "type":
            name = p.word_or_str()
            p.expect("punct", ":")
            if p.at("word", "empty"):
                p.next()
                types[name] = EMPTY
            else:
                types[name] = p.polarities()
            p.expect("punct", ";")
        elif kw == "start":
            start = p.word_or_str()
            p.expect("punct", ";")
        elif kw == "prod":
            name = p.word_or_str()
            p.expect("punct", ":")
            body = []
            while not p.at("punct", "->"):
                b = p.word_or_str()
                if b != "1":
                    body.append(b)
            p.expect("punct", "->")
            head = p.word_or_str()
            p.expect("punct", "=")
            src = EMPTY
            for b in body:
                src = src.tensor(types[b])
            bnd = types[head].tensor(src.dual())
            mw = p.body_block(bnd)
            prods.append(CowProduction(
                name, tuple(body), head,
                cat.Cowordism(src, types[head], mw)))
        else:
            p.fail(f"unexpected keyword {kw!r} in cowcfg block")
    p.expect("punct", "}")
    if start is None:
        p.fail("missing start declaration")
    return CowordismCfg(types, alphabet, start, prods)


# ------------------------------------------------------------------- acg


def print_lin_type(t: A.LinType) -> str:
    if isinstance(t, A.Atom):
        return t.name
    left = print_lin_type(t.arg)
    if isinstance(t.arg, A.Arrow):
        left = f"({left})"
    return f"{left} -> {print_lin_type(t.res)}"


def print_term(t: A.Term) -> str:
    if isinstance(t, A.Var) or isinstance(t, A.Const):
        return t.name
    if isinstance(t, A.Lam):
        return f"\\{t.var}. {print_term(t.body)}"
    parts = []
    cur = t
    while isinstance(cur, A.App):
        parts.append(cur.arg)
        cur = cur.fn
    head = print_term(cur)
    args = []
    for a in reversed(parts):
        s = print_term(a)
        if isinstance(a, (A.App, A.Lam)):
            s = f"({s})"
        args.append(s)
    return " ".join([head] + args)


def print_acg(acg: A.Acg) -> str:
    out = ["acg {"]
    out.append("  abstract {")
    out.append("    types: " + " ".join(acg.abstract.atoms) + ";")
    for c in acg.abstract.constants:
        out.append(f"    const {c} : {print_lin_type(acg.abstract.constants[c])};")
    out.append("  }")
    obj = acg.objects
    if obj.atoms == (A.STR_ATOM,) and all(
            ty == A.STR_TYPE for ty in obj.constants.values()):
        letters = " ".join(_quote(c) for c in obj.constants)
        out.append(f"  object string {{ alphabet: {letters}; }}")
    else:
        raise ValueError("only string-object grammars have a file form")
    out.append("  lexicon {")
    for a in acg.abstract.atoms:
        out.append(f"    {a} := type {print_lin_type(acg.lexicon.type_map[a])};")
    for c in acg.abstract.constants:
        out.append(f"    {c} := {print_term(acg.lexicon.term_map[c])};")
    out.append("  }")
    out.append(f"  start {acg.start};")
    out.append("}")
    return "\n".join(out) + "\n"


def _parse_lin_type(p: _Parser) -> A.LinType:
    if p.at("punct", "("):
        p.next()
        left = _parse_lin_type(p)
        p.expect("punct", ")")
    else:
        name = p.expect("word")
        left = A.Atom(name)
    if p.at("punct", "->"):
        p.next()
        return A.Arrow(left, _parse_lin_type(p))
    return left


def _parse_term(p: _Parser) -> A.Term:
    def atom() -> A.Term:
        if p.at("punct", "("):
            p.next()
            t = _parse_term(p)
            p.expect("punct", ")")
            return t
        if p.at("punct", "\\"):
            p.next()
            v = p.expect("word")
            p.expect("punct", ".")
            return A.Lam(v, _parse_term(p))
        return A.Var(p.word_or_str())

    t = atom()
    while p.at("word") or p.at("str") or p.at("punct", "(") or p.at("punct", "\\"):
        t = A.App(t, atom())
    return t


def _resolve_constants(t: A.Term, constants: set[str],
                       bound: frozenset[str] = frozenset()) -> A.Term:
    if isinstance(t, A.Var):
        return A.Const(t.name) if t.name in constants and t.name not in bound else t
    if isinstance(t, A.Const):
        return t
    if isinstance(t, A.App):
        return A.App(_resolve_constants(t.fn, constants, bound),
                     _resolve_constants(t.arg, constants, bound))
    return A.Lam(t.var, _resolve_constants(t.body, constants, bound | {t.var}))


def _parse_acg(p: _Parser) -> A.Acg:
    p.expect("word", "acg")
    p.expect("punct", "{")
    abstract_atoms: tuple[str, ...] = ()
    abstract_consts: dict[str, A.LinType] = {}
    obj: A.LinearSignature | None = None
    type_map: dict[str, A.LinType] = {}
    term_map: dict[str, A.Term] = {}
    raw_terms: dict[str, A.Term] = {}
    start = None
    while not p.at("punct", "}"):
        kw = p.expect("word")
        if kw == "abstract":
            p.expect("punct", "{")
            while not p.at("punct", "}"):
                k2 = p.expect("word")
                if k2 == "types":
                    p.expect("punct", ":")
                    abstract_atoms = p.token_list()
                    p.expect("punct", ";")
                elif k2 == "const":
                    name = p.expect("word")
                    p.expect("punct", ":")
                    abstract_consts[name] = _parse_lin_type(p)
                    p.expect("punct", ";")
                else:
                    p.fail(f"unexpected {k2!r} in abstract block")
            p.expect("punct", "}")
        elif kw == "object":
            mode = p.expect("word")
            p.expect("punct", "{")
            if mode == "string":
                p.expect("word", "alphabet")
                p.expect("punct", ":")
                letters = p.token_list()
                p.expect("punct", ";")
                obj = A.string_signature(letters)
            elif mode == "tree":
                labels: tuple[str, ...] = ()
                branching = 0
                while not p.at("punct", "}"):
                    k2 = p.expect("word")
                    p.expect("punct", ":")
                    if k2 == "labels":
                        labels = p.token_list()
                    elif k2 == "branching":
                        branching = int(p.expect("word"))
                    else:
                        p.fail(f"unexpected {k2!r} in tree block")
                    p.expect("punct", ";")
                obj = A.tree_signature(labels, branching)
            else:
                p.fail(f"unknown object signature kind {mode!r}")
            p.expect("punct", "}")
        elif kw == "lexicon":
            p.expect("punct", "{")
            while not p.at("punct", "}"):
                name = p.expect("word")
                p.expect("punct", ":=")
                if p.at("word", "type"):
                    p.next()
                    if p.at("word", "str"):
                        p.next()
                        type_map[name] = A.STR_TYPE
                    else:
                        type_map[name] = _parse_lin_type(p)
                else:
                    raw_terms[name] = _parse_term(p)
                p.expect("punct", ";")
            p.expect("punct", "}")
        elif kw == "start":
            start = p.expect("word")
            p.expect("punct", ";")
        else:
            p.fail(f"unexpected keyword {kw!r} in acg block")
    p.expect("punct", "}")
    if obj is None or start is None:
        p.fail("acg file needs an object block and a start declaration")
    consts = set(obj.constants)
    for name, t in raw_terms.items():
        term_map[name] = _resolve_constants(t, consts)
    abstract = A.LinearSignature(abstract_atoms, abstract_consts)
    return A.Acg(abstract, obj, A.SignatureMap(type_map, term_map), start)


# ------------------------------------------------------------- entry points


def parse_grammar_text(text: str) -> GrammarFile:
    p = _Parser(text)
    t, v, line, col = p.peek()
    if t != "word" or v not in ("llg", "mcfg", "cowcfg", "acg"):
        raise GrammarSyntaxError(
            f"expected a grammar kind (llg/mcfg/cowcfg/acg), found {v!r}", line, col)
    parser = {"llg": _parse_llg, "mcfg": _parse_mcfg,
              "cowcfg": _parse_cowcfg, "acg": _parse_acg}[v]
    grammar = parser(p)
    p.expect("eof")
    return GrammarFile(v, grammar)


def parse_grammar(path: str) -> GrammarFile:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar_text(fh.read())


def print_grammar(gf: GrammarFile) -> str:
    printer = {"llg": print_llg, "mcfg": print_mcfg,
               "cowcfg": print_cowcfg, "acg": print_acg}[gf.kind]
    return printer(gf.grammar)
