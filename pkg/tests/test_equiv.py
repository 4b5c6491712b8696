import pytest

from moebius.band import parse_obj
from moebius.cluster import ClusterPt, STANDARD, object_of, mutate
from moebius.walk import hom_ct_dim
from moebius.strings import word, parse_word, hom_dim_strings, StringWord
from moebius.equiv import (obj_to_string, string_to_obj, simple_object,
                           transport_mor, transport_mor_inverse, DigitPrefix,
                           digits_to_coords, digit_vertex, coords_to_digits,
                           lower_tail_coords, tail_case, g_extend, f_strip)
from moebius.errors import InCluster, InvalidWord, NoMorphism, Unreachable, AllOnesTail

T = ClusterPt
M = parse_obj


def test_obj_to_string_examples():
    assert obj_to_string(M("M(1/2,1/2)")) == word([T(0, 0)])
    assert obj_to_string(M("M(1/4,3/4)")) == parse_word("T(1,0) > T(0,0) > T(1,1)")
    assert obj_to_string(M("M(1/8,1/4)")) == parse_word("T(2,1) < T(1,1) < T(0,0) > T(1,3)")
    with pytest.raises(InCluster):
        obj_to_string(M("M(0,1/2)"))


def test_string_to_obj_examples():
    assert string_to_obj(word([T(0, 0)])) == M("M(1/2,1/2)")
    assert string_to_obj(parse_word("T(1,0) > T(0,0) > T(1,1)")) == M("M(1/4,3/4)")
    assert string_to_obj(word([T(1, 0)])) == M("M(1,3/4)")


def test_simple_objects():
    assert simple_object(T(0, 0)) == M("M(1/2,1/2)")
    assert simple_object(T(1, 0)) == M("M(1,3/4)")
    assert simple_object(T(2, 1)) == M("M(1/2,9/8)")


def test_simple_equals_mutation_flip():
    pts = [T(0, 0)] + [T(n, m) for n in range(1, 4) for m in range(1 << (n + 1))]
    for v in pts:
        _, x_star = mutate(STANDARD, object_of(v))
        assert simple_object(v) == x_star, v


def test_bijection_roundtrip_grid():
    from moebius.checks import grid_off_cluster
    for x in grid_off_cluster(2):
        w = obj_to_string(x)
        assert string_to_obj(w) == x
        assert obj_to_string(string_to_obj(w)) == w


def test_walk_rectangle_carries_exactly_the_word():
    # the closed rectangle spanned by the attach corners holds the support
    # plus the two corners and nothing else
    from moebius.checks import grid_off_cluster
    from moebius.walk import walk_of, support
    from moebius.cluster import enum_in_rect
    from moebius.band import Rect
    for x in grid_off_cluster(2):
        w = walk_of(x)
        lo, hi = w.vertices[0].rep, w.vertices[-1].rep
        rect = Rect.closed(hi[0], lo[0], lo[1], hi[1])
        want = support(x) | {w.vertices[0].pt, w.vertices[-1].pt}
        assert enum_in_rect(rect) == want, x


def test_transport_mor():
    x, y = M("M(1/8,1/4)"), M("M(1/4,3/4)")
    w1, w2, c = transport_mor(x, y, 5)
    assert (w1, w2, c) == (obj_to_string(x), obj_to_string(y), 5)
    assert hom_dim_strings(w1, w2) == 1
    x1, y1, c1 = transport_mor_inverse(w1, w2, 5)
    assert (x1, y1, c1) == (x, y, 5)
    with pytest.raises(NoMorphism):
        transport_mor(y, x, 1)


def test_transport_functorial():
    from moebius.checks import grid_off_cluster
    from moebius.walk import compose_basic_nonzero
    objs = grid_off_cluster(2)
    words = {o: obj_to_string(o) for o in objs}
    triples = 0
    for x in objs[::3]:
        for y in objs[::3]:
            if hom_ct_dim(x, y) != 1:
                continue
            for z in objs[::3]:
                if hom_ct_dim(y, z) != 1:
                    continue
                lhs = compose_basic_nonzero(x, y, z)
                rhs = _string_composite_nonzero(words[x], words[y], words[z])
                assert lhs == rhs, (x, y, z)
                triples += 1
    assert triples > 20


def _string_composite_nonzero(w1, w2, w3):
    # graph maps act as the identity on their overlaps, so the composite
    # is nonzero exactly when the overlaps meet
    from moebius.strings import overlap
    if hom_dim_strings(w1, w2) != 1 or hom_dim_strings(w2, w3) != 1:
        return False
    meets = bool(overlap(w1, w2) & overlap(w2, w3))
    if meets:
        assert hom_dim_strings(w1, w3) == 1
    return meets


def test_digit_examples():
    p = DigitPrefix(T(0, 0), (1,))
    assert tuple(map(str, digits_to_coords(p))) == ("0", "1/2")
    assert digit_vertex(p) == T(1, 0)
    p = DigitPrefix(T(0, 0), (0,))
    assert tuple(map(str, digits_to_coords(p))) == ("-1/2", "0")
    assert digit_vertex(p) == T(1, 3)
    p = DigitPrefix(T(0, 0), (1, 0))
    assert tuple(map(str, digits_to_coords(p))) == ("-1/4", "1/2")
    assert digit_vertex(p) == T(2, 7)


def test_digit_roundtrips():
    for v in (T(0, 0), T(1, 1), T(2, 5)):
        for digits in [(1,), (0,), (1, 0), (0, 1, 1), (1, 0, 0, 1)]:
            p = DigitPrefix(v, digits)
            w = digit_vertex(p)
            assert coords_to_digits(v, w, 8) == p


def test_digit_unreachable():
    with pytest.raises(Unreachable):
        coords_to_digits(T(0, 0), T(1, 1), 8)
    with pytest.raises(Unreachable):
        coords_to_digits(T(2, 1), T(1, 0), 8)


def test_digit_monotone():
    prev = None
    for m in range(0, 9):
        digits = tuple(1 if i % 2 else 0 for i in range(m))
        _, bm = digits_to_coords(DigitPrefix(T(1, 1), digits))
        if prev is not None:
            assert bm >= prev
        prev = bm


def test_lower_tail():
    assert tuple(map(str, lower_tail_coords(DigitPrefix(T(0, 0), (0,))))) == ("0", "-1/2")
    assert tuple(map(str, lower_tail_coords(DigitPrefix(T(0, 0), (1,))))) == ("1/2", "0")
    assert tuple(map(str, lower_tail_coords(DigitPrefix(T(0, 0), (1, 0))))) == ("1/2", "-1/4")


def test_tail_case():
    assert tail_case(DigitPrefix(T(0, 0), (1, 0)), DigitPrefix(T(0, 0), (0, 1))) == "case1"
    assert tail_case(DigitPrefix(T(1, 1), (1, 0)), DigitPrefix(T(1, 1), (1, 0))) == "case2"
    assert tail_case(DigitPrefix(T(1, 1), (0,)), DigitPrefix(T(1, 1), (0, 1))) == "case3"
    assert tail_case(DigitPrefix(T(1, 1), (0,)), DigitPrefix(T(1, 1), (1, 0)), swapped=True) == "case4"
    assert tail_case(DigitPrefix(T(1, 1), (0,)), DigitPrefix(T(1, 1), (0, 1)), swapped=True) == "case5"
    with pytest.raises(AllOnesTail):
        tail_case(DigitPrefix(T(1, 1), (1, 1)), DigitPrefix(T(1, 1), (0,)))
    with pytest.raises(AllOnesTail):
        tail_case(DigitPrefix(T(1, 1), (0, 1)), DigitPrefix(T(1, 1), (1,)))


def test_g_extend_examples():
    w = word([T(0, 0)])
    assert g_extend(w, 0) == parse_word("~T(1,0) > T(0,0) < T(1,2)~")
    assert g_extend(w, 1) == parse_word("~T(2,7) < T(1,0) > T(0,0) < T(1,2) > T(2,3)~")


def test_ray_reps_horizontal():
    # reps along the ray through T(1,0) keep their second coordinate
    from moebius.dyadic import Dyadic
    from moebius.equiv import _step_rep
    cur = (Dyadic(0), Dyadic(1, 1))  # rep of T(1,0)
    chain = [cur]
    for pt in (T(2, 7), T(3, 13)):
        cur = _step_rep(cur, pt, outward=False)
        chain.append(cur)
    assert [tuple(map(str, r)) for r in chain] == [
        ("0", "1/2"), ("-1/4", "1/2"), ("-3/8", "1/2")]


def test_f_strip():
    w = obj_to_string(M("M(1/8,1/4)"))
    for k in range(4):
        assert f_strip(g_extend(w, k)) == w
    assert f_strip(w) == w
    outward = StringWord([T(1, 0), T(2, 7)], [False], lmark=True, rmark=False)
    assert f_strip(outward) is None


def test_g_extend_rejects_marked():
    with pytest.raises(InvalidWord):
        g_extend(g_extend(word([T(0, 0)]), 0), 0)


def test_truncation_objects_converge_to_simple():
    # objects of deeper ray truncations approach the simple from above
    w = word([T(0, 0)])
    want = ["M(3/4,3/4)", "M(5/8,5/8)", "M(9/16,9/16)", "M(17/32,17/32)"]
    for k, text in enumerate(want):
        g = g_extend(w, k)
        assert string_to_obj(StringWord(g.verts, g.directs)) == M(text)
