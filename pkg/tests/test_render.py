from pathlib import Path

from moebius.band import parse_obj
from moebius.render import RenderSpec, render

GOLDEN = Path(__file__).parent / "golden"


def test_empty_matches_golden():
    doc = render(RenderSpec())
    assert doc == (GOLDEN / "empty.svg").read_text()


def test_walk_matches_golden():
    spec = RenderSpec(walks=[parse_obj("M(1/4,3/4)")], cluster_depth=3)
    doc = render(spec)
    assert doc == (GOLDEN / "walk_quarter_threequarter.svg").read_text()


def test_cluster_depth4_matches_golden():
    doc = render(RenderSpec(cluster_depth=4))
    assert doc == (GOLDEN / "cluster_depth4.svg").read_text()


def test_depth4_has_31_dots():
    doc = render(RenderSpec(cluster_depth=4))
    assert doc.count('circle class="cluster"') == 31


def test_walk_has_five_vertices():
    spec = RenderSpec(walks=[parse_obj("M(1/4,3/4)")])
    doc = render(spec)
    assert doc.count('class="walkpt"') == 5
    assert doc.count('class="walk"') == 4
    assert doc.count('class="arrow"') == 4


def test_render_deterministic():
    spec = RenderSpec(walks=[parse_obj("M(1/8,1/4)")], cluster_depth=3)
    assert render(spec) == render(spec)
