"""Deterministic DOT rendering of cowordisms.

One node per boundary endpoint, split into an outgoing and an incoming
rank; left endpoints are filled dots, right endpoints receive the
arrowhead; every cyclic word becomes a free-standing loop.
"""

from __future__ import annotations

from .category import Cowordism


def render_dot(cow: Cowordism, vertical: bool = False, name: str = "cowordism") -> str:
    bnd = cow.body.boundary
    ts = cow.target.size
    out = [f"digraph \"{name}\" {{"]
    out.append(f"  rankdir={'TB' if vertical else 'LR'};")
    out.append("  node [shape=point, width=0.12];")

    def node(p: int) -> str:
        return f"p{p}"

    for p in range(1, bnd.size + 1):
        role = "out" if p <= ts else "in"
        fill = "filled" if p in bnd.lefts else "solid"
        color = "black" if p in bnd.lefts else "white"
        out.append(
            f"  {node(p)} [label=\"\", xlabel=\"{p}\", style={fill}, "
            f"fillcolor={color}, group={role}];"
        )
    if ts and ts < bnd.size:
        outs = "; ".join(node(p) for p in range(1, ts + 1))
        ins = "; ".join(node(p) for p in range(ts + 1, bnd.size + 1))
        out.append(f"  {{ rank=source; {ins} }}")
        out.append(f"  {{ rank=sink; {outs} }}")
    for e in cow.body.sorted_edges():
        label = " ".join(e.label)
        out.append(f"  {node(e.src)} -> {node(e.dst)} [label=\"{label}\"];")
    for i, c in enumerate(cow.body.cycles, 1):
        label = " ".join(c.tokens)
        out.append(f"  loop{i} [label=\"\", shape=circle, width=0.2];")
        out.append(f"  loop{i} -> loop{i} [label=\"[{label}]\"];")
    out.append("}")
    return "\n".join(out) + "\n"
