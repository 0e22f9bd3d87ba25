"""
utils/visualization.py
DOT export for automata, orbital transducers, product machines, expansion
acceptors and Büchi acceptors, plus Plotly charts for orbit growth and activity.
"""

from typing import Hashable, Iterable, List, Tuple

import pandas as pd
import plotly.graph_objects as go

from models.automaton import SAutomaton
from models.buchi import BuchiAcceptor
from models.expansion import NFRA, ExpansionState
from models.orbits import OrbitalTransducer, ProductMachine

# ── Palette ─────────────────────────────────────────────────────────────────────
COLORS = {
    "bg":       "#0B0F1A",
    "border":   "#1E2A3B",
    "text":     "#FFFFFF",
    "text_sec": "#C9D1D9",
    "accent":   "#00D4FF",
    "success":  "#00F5A0",
    "warning":  "#FFC107",
    "danger":   "#FF4B4B",
}


def _layout_defaults(**overrides) -> dict:
    defaults = dict(
        template="plotly_dark",
        paper_bgcolor=COLORS["bg"],
        plot_bgcolor="#111827",
        font=dict(family="Inter, Segoe UI, sans-serif", color=COLORS["text_sec"], size=12),
        title_font=dict(color=COLORS["text"], size=15),
        title_x=0.0,
        xaxis=dict(gridcolor=COLORS["border"]),
        yaxis=dict(gridcolor=COLORS["border"]),
        margin=dict(l=40, r=20, t=50, b=40),
    )
    defaults.update(overrides)
    return defaults


# ── DOT ─────────────────────────────────────────────────────────────────────────
def _quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _word(word: Iterable[str]) -> str:
    text = "".join(word)
    return text if text else "ε"


def _digraph(nodes: List[Tuple[str, str]], edges: List[Tuple[str, str, str, bool]], initial: str = None) -> str:
    lines = ["digraph {", "  rankdir=LR;"]
    if initial is not None:
        lines.append('  __start [shape=point];')
        lines.append(f"  __start -> {_quote(initial)};")
    for node, label in nodes:
        lines.append(f"  {_quote(node)} [label={_quote(label)}];")
    for y, z, label, bold in edges:
        style = ", style=bold, color=red" if bold else ""
        lines.append(f"  {_quote(y)} -> {_quote(z)} [label={_quote(label)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def automaton_to_dot(T: SAutomaton) -> str:
    """One node per state; edge label 'a/b'."""
    nodes = [(p, p) for p in T.states]
    edges = [(p, q, f"{a}/{b}", False) for p in T.states for a in T.alphabet for b, q in [T.delta[(p, a)]]]
    return _digraph(nodes, edges)


def orbital_to_dot(O: OrbitalTransducer) -> str:
    """T∘w with edges u --p/(p·u)--> p∘u."""
    nodes = [(_word(u), _word(u)) for u in O.words]
    edges = []
    for u in O.words:
        for p in O.alphabet:
            q, v = O.step(u, p)
            edges.append((_word(u), _word(v), f"{p}/{q}", False))
    return _digraph(nodes, edges, initial=_word(O.root))


def _product_name(x: Tuple) -> str:
    u, c = x
    return f"{_word(u)},C{c}"


def product_to_dot(P: ProductMachine) -> str:
    nodes = []
    for x in P.states:
        label = _product_name(x) + (" ✓" if x[1] in P.accepting_classes else "")
        nodes.append((_product_name(x), label))
    edges = [
        (_product_name(x), _product_name(target), f"{p}/{q}", False)
        for x in P.states
        for p, q, target in P.edges[x]
    ]
    return _digraph(nodes, edges, initial=_product_name(P.root))


def _expansion_name(z: Hashable) -> str:
    if isinstance(z, ExpansionState):
        tag = z.tag if z.tag is not None else "ε"
        return f"({_word(z.word)},{tag},C{z.in_class},C{z.out_class})"
    return str(z)


def nfra_to_dot(A: NFRA) -> str:
    """Transitions as solid edges; acceptance pairs as dashed undirected edges."""
    nodes = [(_expansion_name(z), _expansion_name(z)) for z in A.states]
    edges = sorted((_expansion_name(y), _expansion_name(z), a, False) for y, a, z in A.transitions)
    body = _digraph(nodes, edges, initial=_expansion_name(A.initial)).rstrip("}\n")
    pairs = sorted({tuple(sorted((_expansion_name(y), _expansion_name(z)))) for y, z in A.acceptance})
    extra = [f"  {_quote(y)} -> {_quote(z)} [dir=none, style=dashed];" for y, z in pairs]
    return body + "\n" + "\n".join(extra) + ("\n" if extra else "") + "}\n"


def buchi_to_dot(B: BuchiAcceptor) -> str:
    """Accepting transitions are drawn bold; states are labelled with their representative word."""
    nodes = [(str(y), _word(B.labels[y]) if y in B.labels else str(y)) for y in B.states]
    edges = [(str(y), str(z), a, (y, a, z) in B.accepting) for y, a, z in B.transitions]
    return _digraph(nodes, edges, initial=str(B.initial))


# ── Charts ──────────────────────────────────────────────────────────────────────
def orbit_growth_chart(df: pd.DataFrame, title: str = "R-orbit size along stem·loop^k") -> go.Figure:
    """
    Plot orbit sizes from `models.orbits.orbit_growth`.

    Args:
        df: DataFrame with 'k', 'length' and 'orbit_size' columns.
        title: Chart title.
    """
    fig = go.Figure(
        go.Scatter(
            x=df["k"],
            y=df["orbit_size"],
            mode="lines+markers",
            name="orbit size",
            line=dict(color=COLORS["accent"], width=2),
            marker=dict(size=7),
            customdata=df["length"],
            hovertemplate="k=%{x}<br>|w|=%{customdata}<br>size=%{y}<extra></extra>",
        )
    )
    fig.update_layout(title=title, xaxis_title="k", yaxis_title="|R∘w|", **_layout_defaults())
    return fig


def activity_chart(df: pd.DataFrame, title: str = "Active words per length") -> go.Figure:
    """Bars for the acceptor counts, markers for the brute-force counts when present."""
    fig = go.Figure()
    fig.add_trace(go.Bar(x=df["n"], y=df["acceptor"], name="acceptor", marker_color=COLORS["accent"]))
    if "brute_force" in df:
        fig.add_trace(
            go.Scatter(
                x=df["n"],
                y=df["brute_force"],
                mode="markers",
                name="brute force",
                marker=dict(color=COLORS["success"], size=9, symbol="diamond"),
            )
        )
    fig.update_layout(title=title, xaxis_title="n", yaxis_title="|A(n)|", **_layout_defaults())
    return fig
