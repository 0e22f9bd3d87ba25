"""
tests/test_visualization.py
DOT exports, charts and report rendering.
"""

import plotly.graph_objects as go

from models.activity import activity_profile
from models.buchi import build_orbit_buchi
from models.expansion import build_nfra
from models.nerode import full_language
from models.orbits import orbit_growth, orbital_transducer, product_with_R
from utils.decision import decide_finiteness
from utils.errors import PreconditionError
from utils.reports import error_report, render_json, render_text, verdict_report
from utils.visualization import (
    activity_chart,
    automaton_to_dot,
    buchi_to_dot,
    nfra_to_dot,
    orbit_growth_chart,
    orbital_to_dot,
    product_to_dot,
)


def test_automaton_dot(adding_machine):
    dot = automaton_to_dot(adding_machine)
    assert dot.startswith("digraph {")
    assert '"q" -> "e" [label="0/1"];' in dot


def test_orbital_and_product_dot(adding_machine):
    O = orbital_transducer(adding_machine, ("0",))
    assert "__start" in orbital_to_dot(O)
    dot = product_to_dot(product_with_R(O, full_language(adding_machine.states)))
    assert "✓" in dot


def test_nfra_and_buchi_dot(adding_sa):
    D = full_language(adding_sa.automaton.states)
    A, _ = build_nfra(adding_sa, ("0",), D)
    assert "style=dashed" in nfra_to_dot(A)
    B = build_orbit_buchi(adding_sa, D)
    assert "style=bold" in buchi_to_dot(B)


def test_charts(adding_machine, adding_sa):
    df = orbit_growth(adding_machine, (), ("0",), full_language(adding_machine.states), 3)
    fig = orbit_growth_chart(df)
    assert isinstance(fig, go.Figure)
    assert list(fig.data[0].y) == [1, 2, 4, 8]
    fig = activity_chart(activity_profile(adding_sa, 4))
    assert len(fig.data) == 2


def test_verdict_rendering(adding_sa):
    report = verdict_report(decide_finiteness(adding_sa), "finite")
    assert report["verdict"] == "infinite"
    assert set(report["witness"]) == {"stem", "loop"}
    assert render_text(report).startswith("The decided semigroup is infinite")
    assert render_json(report).endswith("}\n")


def test_error_rendering():
    report = error_report(PreconditionError("suffix-closed R", "qq"), 2)
    assert report["message"] == "suffix-closed R: qq"
    assert render_text(report) == "error (PreconditionError): suffix-closed R: qq\n"
