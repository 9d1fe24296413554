"""Command line surface: check, generate, member, convert, render, demo.

Results go to stdout, diagnostics to stderr.  Exit status 0 on success,
1 when a membership or generation query comes back empty, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import formats, llg as engine, mcfg as mc
from .acg import acg_to_llg
from .fixtures import demo, show_word
from .mll import proof_size
from .multiword import word
from .render import render_dot


def _load(path: str) -> formats.GrammarFile:
    try:
        return formats.parse_grammar(path)
    except FileNotFoundError:
        raise SystemExit2(f"cannot read {path!r}")
    except formats.GrammarSyntaxError as e:
        raise SystemExit2(f"{path}: {e}")


class SystemExit2(Exception):
    pass


def _as_llg(gf: formats.GrammarFile) -> engine.Llg:
    if gf.kind == "llg":
        return gf.grammar
    if gf.kind == "mcfg":
        return mc.cowcfg_to_llg(mc.mcfg_to_cowcfg(gf.grammar))
    if gf.kind == "cowcfg":
        return mc.cowcfg_to_llg(gf.grammar)
    if gf.kind == "acg":
        acg = gf.grammar
        alphabet = tuple(sorted(acg.objects.constants)) \
            if acg.objects.atoms == ("O",) else _tree_alphabet(acg)
        return acg_to_llg(acg, alphabet)
    raise SystemExit2(f"cannot treat a {gf.kind} grammar as an LLG")


def _tree_alphabet(acg):
    letters = set()
    for cw in acg.objects.constant_cow.values():
        for e in cw.body.edges:
            letters.update(e.label)
    return tuple(sorted(letters))


def _budget(args) -> engine.GenerationBudget:
    return engine.GenerationBudget(
        max_axiom_uses=args.max_axioms,
        max_total_word_length=args.max_len,
        max_proof_nodes=args.max_nodes,
    )


def cmd_check(args) -> int:
    gf = _load(args.file)
    if gf.kind == "llg":
        problems = engine.validate(gf.grammar)
    elif gf.kind == "mcfg":
        problems = gf.grammar.validate()
    elif gf.kind == "cowcfg":
        problems = gf.grammar.validate()
    else:
        problems = gf.grammar.validate()
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return 2
    print(f"{args.file}: {gf.kind} grammar is well formed")
    return 0


def cmd_generate(args) -> int:
    llg = _as_llg(_load(args.file))
    res = engine.generate(llg, _budget(args))
    print(f"complete within budget: {'yes' if res.complete else 'no'}")
    for w in res.sorted_words():
        print(f"{show_word(w, args.unicode)}   [{proof_size(res.words[w])} nodes]")
    return 0 if res.words else 1


def cmd_member(args) -> int:
    llg = _as_llg(_load(args.file))
    w = tuple(args.word.split())
    proof = engine.member(llg, w, _budget(args))
    if proof is None:
        print("not found within budget", file=sys.stderr)
        return 1
    print(f"witness proof with {proof_size(proof)} nodes")
    return 0


def cmd_convert(args) -> int:
    gf = _load(args.input)
    if gf.kind != args.source:
        raise SystemExit2(
            f"{args.input} contains a {gf.kind} grammar, not {args.source}")
    try:
        if args.target == "llg":
            out = formats.GrammarFile("llg", _as_llg(gf))
        elif args.target == "cowcfg":
            if gf.kind == "mcfg":
                out = formats.GrammarFile("cowcfg", mc.mcfg_to_cowcfg(gf.grammar))
            elif gf.kind == "llg":
                out = formats.GrammarFile("cowcfg", mc.llg_to_cowcfg(gf.grammar))
            else:
                raise SystemExit2(f"no conversion from {gf.kind} to cowcfg")
        elif args.target == "mcfg":
            if gf.kind == "llg":
                cg = mc.llg_to_cowcfg(gf.grammar)
            elif gf.kind == "cowcfg":
                cg = gf.grammar
            else:
                raise SystemExit2(f"no conversion from {gf.kind} to mcfg")
            if not mc.is_simple(cg):
                cg = mc.simplify(cg)
            out = formats.GrammarFile("mcfg", mc.cowcfg_to_mcfg(cg))
        else:
            raise SystemExit2(f"unknown target {args.target!r}")
    except ValueError as e:
        raise SystemExit2(str(e))
    text = formats.print_grammar(out)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {out.kind} grammar to {args.output}")
    return 0


def cmd_render(args) -> int:
    gf = _load(args.file)
    if gf.kind == "llg":
        axioms = gf.grammar.signature.axioms
    elif gf.kind == "cowcfg":
        axioms = {p.name: p for p in gf.grammar.productions}
    else:
        raise SystemExit2(f"rendering expects an llg or cowcfg file, got {gf.kind}")
    if args.axiom not in axioms:
        raise SystemExit2(f"no axiom named {args.axiom!r}")
    cow = axioms[args.axiom].cow
    sys.stdout.write(render_dot(cow, vertical=args.vertical, name=args.axiom))
    return 0


def cmd_demo(args) -> int:
    try:
        for line in demo(args.name, unicode_bullets=args.unicode):
            print(line)
    except ValueError as e:
        raise SystemExit2(str(e))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cowgram",
        description="Word cobordisms and linear logic grammars",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and validate a grammar file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    def budget_flags(p):
        p.add_argument("--max-axioms", type=int, default=6)
        p.add_argument("--max-len", type=int, default=None)
        p.add_argument("--max-nodes", type=int, default=None)
        p.add_argument("--unicode", action="store_true",
                       help="display '.' separators as bullets")

    p = sub.add_parser("generate", help="enumerate the language within a budget")
    p.add_argument("file")
    budget_flags(p)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("member", help="search for a derivation of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True, help="space-separated tokens")
    budget_flags(p)
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("convert", help="translate between grammar formalisms")
    p.add_argument("--from", dest="source", required=True,
                   choices=["mcfg", "acg", "llg"])
    p.add_argument("--to", dest="target", required=True,
                   choices=["llg", "mcfg", "cowcfg"])
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("render", help="emit a DOT diagram of an axiom")
    p.add_argument("file")
    p.add_argument("--axiom", required=True)
    p.add_argument("--format", choices=["dot"], default="dot")
    p.add_argument("--vertical", action="store_true")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("demo", help="run a built-in example grammar")
    p.add_argument("name", choices=["toy", "wanwbn", "ssp"])
    p.add_argument("--unicode", action="store_true")
    p.set_defaults(fn=cmd_demo)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2 as e:
        print(str(e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
