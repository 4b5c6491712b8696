"""Dictionary between quotient-category objects and string modules, the
simple objects, digit-encoded walk tails, and the truncated ray functors.

An object off the cluster corresponds to the word on its support read along
the walk with letters reversed from the irreducible cluster maps; the
inverse attaches, at each end of a word, the unique incoming arrow from the
triangle not used by the word, and reads the object off the two attach
representatives (northwest and southeast corners of the walk rectangle).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dyadic import Dyadic, ONE
from .band import Obj, Rep, normal_form
from .cluster import ClusterPt, member, object_of, children
from .walk import walk_of
from .strings import StringWord, QArrow, arrows_at, word
from .errors import InCluster, InvalidWord, NoMorphism, Unreachable, AllOnesTail


def _step_rep_maybe(cur: Rep, target: ClusterPt, outward: bool) -> Rep | None:
    """The representative of target adjacent to cur along an irreducible map:
    one shared coordinate, the other strictly larger (outward) or smaller."""
    candidates = []
    for (p0, q0) in object_of(target).reps():
        for axis in (0, 1):
            base = (p0, q0)[axis]
            want = cur[axis]
            diff = want - base
            if diff.exp != 0 or diff.num % 2:
                continue
            p, q = p0 + diff, q0 + diff
            other, other_cur = (q, cur[1]) if axis == 0 else (p, cur[0])
            if outward and other > other_cur:
                candidates.append((p, q))
            if not outward and other < other_cur:
                candidates.append((p, q))
    uniq = set(candidates)
    if len(uniq) > 1:
        raise AssertionError(f"adjacent representative of {target} at {cur} is ambiguous")
    return next(iter(uniq)) if uniq else None


def _step_rep(cur: Rep, target: ClusterPt, outward: bool) -> Rep:
    rep = _step_rep_maybe(cur, target, outward)
    if rep is None:
        raise AssertionError(f"no adjacent representative of {target} at {cur}")
    return rep


@lru_cache(maxsize=None)
def obj_to_string(x: Obj) -> StringWord:
    """Word on the support of x, ordered along the walk, arrows reversed."""
    if member(x) is not None:
        raise InCluster(f"{x} lies in the standard cluster")
    walk = walk_of(x)
    inner = walk.vertices[1:-1]
    if not inner:
        raise AssertionError("empty support off the cluster")
    verts = [v.pt for v in inner]
    directs = []
    for i in range(len(inner) - 1):
        step = walk.steps[i + 1]
        # vertical step: cluster map up v_i -> v_{i+1}, so the arrow reverses
        directs.append(step == "h")
    return StringWord(verts, directs)


def _attach_at(end_vertex: ClusterPt, used_triangle: frozenset) -> QArrow:
    options = [a for a in arrows_at(end_vertex)[0] if a.triangle != used_triangle]
    if len(options) != 1:
        raise InvalidWord(f"attach vertex at {end_vertex} not unique")
    return options[0]


def _word_reps(w: StringWord) -> list[Rep]:
    reps = [object_of(w.verts[0]).reps()[0]]
    for i in range(len(w.directs)):
        nxt = w.verts[i + 1]
        # letter v_i -> v_{i+1} reverses a cluster map v_{i+1} -> v_i (inward);
        # letter v_{i+1} -> v_i reverses a cluster map v_i -> v_{i+1} (outward)
        reps.append(_step_rep(reps[-1], nxt, outward=not w.directs[i]))
    return reps


@lru_cache(maxsize=None)
def string_to_obj(w: StringWord) -> Obj:
    """The object whose support word is w."""
    if w.marked:
        raise InvalidWord("ray-marked words do not name finite objects")
    reps = _word_reps(w)
    if len(w.verts) == 1:
        t1, t2 = (a.triangle for a in arrows_at(w.verts[0])[0])
        att_l = _attach_at(w.verts[0], t2)
        att_r = _attach_at(w.verts[0], t1)
    else:
        att_l = _attach_at(w.verts[0], w.letter(0).triangle)
        att_r = _attach_at(w.verts[-1], w.letter(len(w.directs) - 1).triangle)
    rep_l = _step_rep(reps[0], att_l.src, outward=True)
    rep_r = _step_rep(reps[-1], att_r.src, outward=True)
    (a1, a2), (b1, b2) = sorted((rep_l, rep_r), key=lambda r: r[0].as_fraction())
    if not (a1 < b1 and a2 > b2):
        raise AssertionError(f"attach corners of {w} not in general position")
    return normal_form(b1, a2)


def simple_object(v: ClusterPt) -> Obj:
    return string_to_obj(word([v]))


def transport_mor(src: Obj, dst: Obj, scalar) -> tuple[StringWord, StringWord, object]:
    """Basic quotient morphism to basic graph map, preserving the scalar."""
    from .walk import hom_ct_dim
    if hom_ct_dim(src, dst) != 1:
        raise NoMorphism(f"no basic morphism {src} -> {dst}")
    return (obj_to_string(src), obj_to_string(dst), scalar)


def transport_mor_inverse(w1: StringWord, w2: StringWord, scalar) -> tuple[Obj, Obj, object]:
    from .strings import hom_dim_strings
    if hom_dim_strings(w1, w2) != 1:
        raise NoMorphism(f"no basic morphism {w1} -> {w2}")
    return (string_to_obj(w1), string_to_obj(w2), scalar)


# -- digit encoding of tails --------------------------------------------------

@dataclass(frozen=True)
class DigitPrefix:
    """Truncated binary tail at a base vertex: digit 1 steps to the upper
    child (second coordinate grows), digit 0 to the left child."""
    base: ClusterPt
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(d not in (0, 1) for d in self.digits):
            raise ValueError("digits must be 0 or 1")

    def all_ones(self) -> bool:
        return bool(self.digits) and all(d == 1 for d in self.digits)

    def __str__(self) -> str:
        return f"{self.base}:{''.join(str(d) for d in self.digits)}"


def digits_to_coords(p: DigitPrefix) -> Rep:
    """Coordinates (a_m, b_m) of the vertex reached from the base:
    b_m = b + sum d_i theta/2^i and a_m = b_m - 1 + theta/2^m."""
    a, b = object_of(p.base).reps()[0]
    theta = a + ONE - b
    bm = b
    for i, d in enumerate(p.digits, start=1):
        if d:
            bm = bm + theta.scaled_pow2(i)
    am = bm - ONE + theta.scaled_pow2(len(p.digits))
    if member(normal_form(am, bm)) is None:
        raise AssertionError("digit walk left the cluster")
    return (am, bm)


def digit_vertex(p: DigitPrefix) -> ClusterPt:
    am, bm = digits_to_coords(p)
    return member(normal_form(am, bm))


def coords_to_digits(v: ClusterPt, w: ClusterPt, bound: int) -> DigitPrefix:
    """The unique prefix of length <= bound walking from v to w."""
    rev = []
    cur = w
    while cur != v:
        if len(rev) >= bound or cur.n == 0:
            raise Unreachable(f"{w} not within {bound} digit steps of {v}")
        if cur.m % 2 == 0:
            parent = ClusterPt(cur.n - 1, cur.m // 2)
            digit = 1
        else:
            parent = ClusterPt(cur.n - 1, (cur.m + 1) // 2)
            digit = 0
        if cur not in children(parent):
            raise Unreachable(f"{w} is not on the digit tree below {v}")
        rev.append(digit)
        cur = parent
    p = DigitPrefix(v, tuple(reversed(rev)))
    if digit_vertex(p) != w:
        raise AssertionError("digit climb failed to invert")
    return p


def lower_tail_coords(p: DigitPrefix) -> Rep:
    """Mirror tail from the base going the other way: digit 1 keeps the
    second coordinate (a horizontal step right), digit 0 keeps the first
    (a vertical step down)."""
    from .cluster import neighbors
    cur = object_of(p.base).reps()[0]
    cur_pt = p.base
    prev_tri = None
    for d in p.digits:
        opts = []
        for tri in neighbors(cur_pt):
            tri_set = frozenset(tri)
            if prev_tri is not None and tri_set == prev_tri:
                continue
            for cand, outward in ((tri[0], False), (tri[2], True)):
                rep = _step_rep_maybe(cur, cand, outward)
                if rep is not None:
                    opts.append((cand, rep, tri_set))
        horiz = [(c, r, t) for (c, r, t) in opts if r[1] == cur[1] and r[0] > cur[0]]
        vert = [(c, r, t) for (c, r, t) in opts if r[0] == cur[0] and r[1] < cur[1]]
        pick = horiz if d == 1 else vert
        if len(pick) != 1:
            raise AssertionError(f"mirror tail step not unique at {cur_pt}")
        cur_pt, cur, prev_tri = pick[0][0], pick[0][1], pick[0][2]
    return cur


def tail_case(first: DigitPrefix, second: DigitPrefix, swapped: bool = False) -> str:
    """Region tag of a truncated tail pair based at a common vertex.

    Tags: case1 at the depth-zero base; otherwise case2/case3 by whether
    the mirror tail starts horizontally or vertically, and case4/case5 for
    the same configurations with the coordinate roles swapped.
    """
    if first.base != second.base:
        raise ValueError("tail pair must share its base vertex")
    if first.all_ones() or second.all_ones():
        raise AllOnesTail("tails that are eventually all ones are excluded")
    if first.base.n == 0:
        return "case1"
    if not second.digits:
        raise ValueError("mirror tail needs at least one digit")
    horizontal_first = second.digits[0] == 1
    if not swapped:
        return "case2" if horizontal_first else "case3"
    return "case4" if horizontal_first else "case5"


# -- truncated ray functors ---------------------------------------------------

def _other_triangle_arrow(v: ClusterPt, used: frozenset, incoming: bool) -> QArrow:
    ins, outs = arrows_at(v)
    pool = ins if incoming else outs
    options = [a for a in pool if a.triangle != used]
    if len(options) != 1:
        raise AssertionError(f"ray continuation at {v} not unique")
    return options[0]


def g_extend(w: StringWord, k: int) -> StringWord:
    """Attach the outward vertex at each end and extend it by k outward ray
    steps; the truncation points are marked."""
    if w.marked:
        raise InvalidWord("word already carries ray markers")
    if len(w.verts) == 1:
        t1, t2 = (a.triangle for a in arrows_at(w.verts[0])[0])
        att_l = _attach_at(w.verts[0], t2)
        att_r = _attach_at(w.verts[0], t1)
    else:
        att_l = _attach_at(w.verts[0], w.letter(0).triangle)
        att_r = _attach_at(w.verts[-1], w.letter(len(w.directs) - 1).triangle)

    def ray(att: QArrow):
        chain = [att.src]
        used = att.triangle
        for _ in range(k):
            nxt = _other_triangle_arrow(chain[-1], used, incoming=False)
            chain.append(nxt.dst)
            used = nxt.triangle
        return chain

    left = ray(att_l)
    right = ray(att_r)
    verts = tuple(reversed(left)) + w.verts + tuple(right)
    # Ray letters point outward (toward the marked end); the attach letters
    # point into the original word.
    directs = (tuple([False] * k) + (True,)) + w.directs + ((False,) + tuple([True] * k))
    return StringWord(verts, directs, lmark=True, rmark=True)


def f_strip(w: StringWord) -> StringWord | None:
    """Delete every vertex with a directed path inside the word to a marked
    end; identity on unmarked words, None when nothing survives."""
    if not w.marked:
        return w
    n = len(w.verts)
    doomed = set()
    frontier = set()
    if w.lmark:
        frontier.add(0)
    if w.rmark:
        frontier.add(n - 1)
    while frontier:
        i = frontier.pop()
        doomed.add(i)
        if i > 0 and w.directs[i - 1] and (i - 1) not in doomed:
            frontier.add(i - 1)
        if i < n - 1 and not w.directs[i] and (i + 1) not in doomed:
            frontier.add(i + 1)
    keep = [i for i in range(n) if i not in doomed]
    if not keep:
        return None
    if keep != list(range(keep[0], keep[-1] + 1)):
        raise AssertionError("stripped word not contiguous")
    return StringWord(tuple(w.verts[i] for i in keep),
                      tuple(w.directs[i] for i in range(keep[0], keep[-1])))
