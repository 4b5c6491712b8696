"""String combinatorics over the quiver of the cluster.

The quiver has the cluster points as vertices; each of the two triangles at
a chord contributes one in- and one out-arrow, reversed relative to the
irreducible cluster maps, and the composition of two arrows of the same
triangle is zero.  Finite-length modules are direct sums of standard string
modules, one dimension per vertex of a reduced word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .cluster import ClusterPt, neighbors, parse_cluster_pt
from .errors import InvalidWord, NoMorphism, NotAModule, ParseError


@dataclass(frozen=True)
class QArrow:
    src: ClusterPt
    dst: ClusterPt
    triangle: frozenset[ClusterPt]


@lru_cache(maxsize=None)
def arrows_at(v: ClusterPt) -> tuple[tuple[QArrow, QArrow], tuple[QArrow, QArrow]]:
    """(incoming, outgoing) quiver arrows at v, one of each per triangle."""
    ins, outs = [], []
    for a, _, c in neighbors(v):
        tri = frozenset((a, v, c))
        # cluster maps a -> v -> c -> a reverse to arrows v -> a, c -> v, a -> c
        outs.append(QArrow(v, a, tri))
        ins.append(QArrow(c, v, tri))
    return (tuple(ins), tuple(outs))


@lru_cache(maxsize=None)
def arrow_between(u: ClusterPt, v: ClusterPt) -> QArrow | None:
    """The quiver arrow u -> v if the two chords share a triangle that orients
    this way; two cluster points share at most one triangle."""
    for arr in arrows_at(u)[1]:
        if arr.dst == v:
            return arr
    return None


class StringWord:
    """Reduced word: distinct vertices and, between consecutive ones, the
    direction of the unique arrow (True for v_i -> v_{i+1}).  Words equal
    their reversals; construction canonicalizes the orientation.  Ray
    markers flag truncated infinite tails at either end."""

    __slots__ = ("verts", "directs", "lmark", "rmark")

    def __init__(self, verts, directs, lmark: bool = False, rmark: bool = False):
        verts, directs = tuple(verts), tuple(bool(d) for d in directs)
        if len(directs) != max(len(verts) - 1, 0):
            raise InvalidWord("letter count must be one less than vertex count")
        if not verts:
            raise InvalidWord("empty word")
        fwd = (tuple((p.n, p.m) for p in verts), directs, (lmark, rmark))
        rev_verts = verts[::-1]
        rev_directs = tuple(not d for d in directs[::-1])
        rev = (tuple((p.n, p.m) for p in rev_verts), rev_directs, (rmark, lmark))
        if rev < fwd:
            verts, directs, (lmark, rmark) = rev_verts, rev_directs, (rmark, lmark)
        object.__setattr__(self, "verts", verts)
        object.__setattr__(self, "directs", directs)
        object.__setattr__(self, "lmark", lmark)
        object.__setattr__(self, "rmark", rmark)

    def __setattr__(self, name, value):
        raise AttributeError("StringWord is immutable")

    def _key(self):
        return (self.verts, self.directs, self.lmark, self.rmark)

    def __eq__(self, other) -> bool:
        return isinstance(other, StringWord) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self) -> int:
        return len(self.verts)

    @property
    def marked(self) -> bool:
        return self.lmark or self.rmark

    def support(self) -> frozenset[ClusterPt]:
        return frozenset(self.verts)

    def letter(self, i: int) -> QArrow:
        if self.directs[i]:
            arr = arrow_between(self.verts[i], self.verts[i + 1])
        else:
            arr = arrow_between(self.verts[i + 1], self.verts[i])
        if arr is None:
            raise InvalidWord(f"no arrow between {self.verts[i]} and {self.verts[i + 1]}")
        return arr

    def reversed_copy(self) -> tuple[tuple[ClusterPt, ...], tuple[bool, ...]]:
        return (self.verts[::-1], tuple(not d for d in self.directs[::-1]))

    def __str__(self) -> str:
        parts = ["~" if self.lmark else ""]
        for i, v in enumerate(self.verts):
            if i:
                parts.append(" > " if self.directs[i - 1] else " < ")
            parts.append(str(v))
        parts.append("~" if self.rmark else "")
        return "".join(parts)

    __repr__ = __str__


def word(verts, directs=None, lmark=False, rmark=False) -> StringWord:
    """Build a word, inferring letter directions from the quiver when omitted."""
    verts = tuple(verts)
    if directs is None:
        directs = []
        for u, v in zip(verts, verts[1:]):
            if arrow_between(u, v):
                directs.append(True)
            elif arrow_between(v, u):
                directs.append(False)
            else:
                raise InvalidWord(f"no arrow between {u} and {v}")
    w = StringWord(verts, directs, lmark, rmark)
    ok, reason = validate_word(w)
    if not ok:
        raise InvalidWord(reason)
    return w


def validate_word(w: StringWord) -> tuple[bool, str]:
    """Letters must exist, vertices be distinct, and consecutive letters
    neither backtrack nor compose inside one triangle."""
    if len(set(w.verts)) != len(w.verts):
        return (False, "repeated vertex")
    letters = []
    for i in range(len(w.directs)):
        try:
            letters.append(w.letter(i))
        except InvalidWord as exc:
            return (False, str(exc))
    for i in range(len(letters) - 1):
        l1, l2, d1, d2 = letters[i], letters[i + 1], w.directs[i], w.directs[i + 1]
        if d1 == d2 and l1.triangle == l2.triangle:
            return (False, f"letters {i},{i + 1} compose inside a triangle")
        if l1 == l2:
            return (False, f"letters {i},{i + 1} backtrack")
    return (True, "")


# -- graph maps ---------------------------------------------------------------

def _occurrences(w1: StringWord, w2: StringWord):
    """Common subwords that are a factor of w1 and a submodule of w2.

    Boundary conditions: in w1 the adjacent letters point out of the
    subword, in w2 they point into it.
    """
    if w1.marked or w2.marked:
        raise InvalidWord("graph maps are defined on unmarked words")
    occs = []
    seen = set()
    variants = [(w2.verts, w2.directs, False)]
    rv, rd = w2.reversed_copy()
    variants.append((rv, rd, True))
    n1, n2 = len(w1.verts), len(w2.verts)
    for i1 in range(n1):
        for j1 in range(i1, n1):
            seg_v = w1.verts[i1:j1 + 1]
            seg_d = w1.directs[i1:j1]
            # factor conditions in w1
            if i1 > 0 and w1.directs[i1 - 1]:
                continue  # arrow points into the subword: not a factor
            if j1 < n1 - 1 and not w1.directs[j1]:
                continue
            for verts2, directs2, is_rev in variants:
                for i2 in range(n2 - (j1 - i1)):
                    j2 = i2 + (j1 - i1)
                    if verts2[i2:j2 + 1] != seg_v or directs2[i2:j2] != seg_d:
                        continue
                    # submodule conditions in w2
                    if i2 > 0 and not directs2[i2 - 1]:
                        continue
                    if j2 < n2 - 1 and directs2[j2]:
                        continue
                    lo, hi = (n2 - 1 - j2, n2 - 1 - i2) if is_rev else (i2, j2)
                    key = (i1, j1, lo, hi)
                    if key not in seen:
                        seen.add(key)
                        occs.append((i1, j1, lo, hi))
    return occs


@lru_cache(maxsize=None)
def hom_dim_strings(w1: StringWord, w2: StringWord) -> int:
    """Graph-map dimension; 0 or 1 over this quiver (asserted)."""
    occs = _occurrences(w1, w2)
    if len(occs) > 1:
        raise AssertionError(f"hom space not at most one dimensional: {w1} -> {w2}")
    return len(occs)


def overlap(w1: StringWord, w2: StringWord) -> frozenset[ClusterPt]:
    """Support of the unique graph map w1 -> w2."""
    occs = _occurrences(w1, w2)
    if not occs:
        raise NoMorphism(f"no basic morphism {w1} -> {w2}")
    i1, j1, _, _ = occs[0]
    return frozenset(w1.verts[i1:j1 + 1])


def _subword(w: StringWord, i: int, j: int) -> StringWord:
    return StringWord(w.verts[i:j + 1], w.directs[i:j])


def kernel_cokernel_strings(w1: StringWord, w2: StringWord) -> tuple[list[StringWord], list[StringWord]]:
    """Kernel and cokernel words of the basic graph map w1 -> w2: the
    connected components left after deleting the overlap."""
    occs = _occurrences(w1, w2)
    if not occs:
        raise NoMorphism(f"no basic morphism {w1} -> {w2}")
    i1, j1, i2, j2 = occs[0]
    ker = []
    if i1 > 0:
        ker.append(_subword(w1, 0, i1 - 1))
    if j1 < len(w1.verts) - 1:
        ker.append(_subword(w1, j1 + 1, len(w1.verts) - 1))
    cok = []
    if i2 > 0:
        cok.append(_subword(w2, 0, i2 - 1))
    if j2 < len(w2.verts) - 1:
        cok.append(_subword(w2, j2 + 1, len(w2.verts) - 1))
    total = sum(len(k) for k in ker) - len(w1) + len(w2) - sum(len(c) for c in cok)
    if total != 0:
        raise AssertionError("dimension count broken in string kernel/cokernel")
    return (ker, cok)


# -- representations ----------------------------------------------------------

class RepFin:
    """Finite-dimensional representation: dimensions per vertex and one
    rational matrix per arrow between supported vertices (absent = zero)."""

    __slots__ = ("dims", "mats")

    def __init__(self, dims: dict[ClusterPt, int], mats: dict[tuple[ClusterPt, ClusterPt], linalg.Matrix]):
        object.__setattr__(self, "dims", {v: d for v, d in dims.items() if d > 0})
        object.__setattr__(self, "mats", dict(mats))

    def __setattr__(self, name, value):
        raise AttributeError("RepFin is immutable")

    def dim(self, v: ClusterPt) -> int:
        return self.dims.get(v, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def matrix(self, u: ClusterPt, v: ClusterPt) -> linalg.Matrix:
        m = self.mats.get((u, v))
        if m is None:
            return linalg.zeros(self.dim(v), self.dim(u))
        return m

    def arrows(self):
        """Quiver arrows between supported vertices."""
        for u in self.dims:
            for arr in arrows_at(u)[1]:
                if arr.dst in self.dims:
                    yield arr

    def check_relations(self):
        for u in self.dims:
            for a1 in arrows_at(u)[1]:
                v = a1.dst
                if v not in self.dims:
                    continue
                for a2 in arrows_at(v)[1]:
                    w2 = a2.dst
                    if w2 not in self.dims or a2.triangle != a1.triangle:
                        continue
                    prod = linalg.matmul(self.matrix(v, w2), self.matrix(u, v))
                    if any(x != 0 for row in prod for x in row):
                        raise NotAModule(f"relation broken along {u} -> {v} -> {w2}")


def to_rep(w: StringWord) -> RepFin:
    """Standard string module: one dimension per vertex, identities on letters."""
    if w.marked:
        raise InvalidWord("marked words have no finite representation")
    dims = {v: 1 for v in w.verts}
    mats = {}
    one = linalg.identity(1)
    for i in range(len(w.directs)):
        arr = w.letter(i)
        mats[(arr.src, arr.dst)] = one
    return RepFin(dims, mats)


def direct_sum(reps: list[RepFin]) -> tuple[RepFin, list[dict[ClusterPt, linalg.Matrix]]]:
    """Direct sum plus, per summand, the inclusion blocks at each vertex."""
    verts = sorted({v for r in reps for v in r.dims}, key=lambda p: (p.n, p.m))
    dims = {v: sum(r.dim(v) for r in reps) for v in verts}
    offsets = []
    run = {v: 0 for v in verts}
    for r in reps:
        offsets.append(dict(run))
        for v in verts:
            run[v] += r.dim(v)
    mats = {}
    for v in verts:
        for arr in arrows_at(v)[1]:
            u = arr.dst
            if u not in dims:
                continue
            rows, cols = dims[u], dims[v]
            if rows == 0 or cols == 0:
                continue
            block = [[Fraction(0)] * cols for _ in range(rows)]
            nz = False
            for r, off in zip(reps, offsets):
                sub = r.mats.get((v, u))
                if sub is None:
                    continue
                nz = True
                for i in range(len(sub)):
                    for j in range(len(sub[0])):
                        block[off[u] + i][off[v] + j] = sub[i][j]
            if nz:
                mats[(v, u)] = tuple(tuple(row) for row in block)
    incls = []
    for r, off in zip(reps, offsets):
        blocks = {}
        for v in r.dims:
            m = [[Fraction(0)] * r.dim(v) for _ in range(dims[v])]
            for i in range(r.dim(v)):
                m[off[v] + i][i] = Fraction(1)
            blocks[v] = tuple(tuple(row) for row in m)
        incls.append(blocks)
    return (RepFin(dims, mats), incls)


# -- decomposition ------------------------------------------------------------

def _candidate_words(supp: list[ClusterPt]) -> list[StringWord]:
    adj = {v: [] for v in supp}
    sset = set(supp)
    for v in supp:
        for arr in arrows_at(v)[1]:
            if arr.dst in sset:
                adj[v].append(arr.dst)
                adj[arr.dst].append(v)
    words = set()
    for start in supp:
        stack = [(start,)]
        while stack:
            path = stack.pop()
            try:
                words.add(word(path))
            except InvalidWord:
                continue
            for nxt in adj[path[-1]]:
                if nxt not in path:
                    stack.append(path + (nxt,))
    key = lambda w: (-len(w), tuple((p.n, p.m) for p in w.verts), w.directs)
    return sorted(words, key=key)


def _hom_word_to_rep(w: StringWord, rep: RepFin) -> list[dict[ClusterPt, tuple[Fraction, ...]]]:
    """Basis of module maps from the standard module of w into rep,
    each given by its vector at every vertex of w."""
    wsupp = list(w.verts)
    if any(rep.dim(v) == 0 for v in wsupp):
        return []
    offs, total = {}, 0
    for v in wsupp:
        offs[v] = total
        total += rep.dim(v)
    letters = {}
    for i in range(len(w.directs)):
        arr = w.letter(i)
        letters[(arr.src, arr.dst)] = True
    rows = []

    def add_rows(mat_block):
        rows.extend(mat_block)

    for v in wsupp:
        for arr in arrows_at(v)[1]:
            u = arr.dst
            if rep.dim(u) == 0:
                continue
            a = rep.matrix(v, u)  # rep map M_v -> M_u
            if u in offs:
                block = [[Fraction(0)] * total for _ in range(rep.dim(u))]
                for i in range(rep.dim(u)):
                    for j in range(rep.dim(v)):
                        block[i][offs[v] + j] = a[i][j]
                if letters.get((v, u)):
                    for i in range(rep.dim(u)):
                        block[i][offs[u] + i] -= Fraction(1)
                add_rows(block)
            else:
                # arrow leaves the word support: image must vanish
                block = [[Fraction(0)] * total for _ in range(rep.dim(u))]
                for i in range(rep.dim(u)):
                    for j in range(rep.dim(v)):
                        block[i][offs[v] + j] = a[i][j]
                add_rows(block)
    basis = linalg.nullspace(tuple(tuple(r) for r in rows), total)
    out = []
    for vec in basis:
        out.append({v: tuple(vec[offs[v] + i] for i in range(rep.dim(v))) for v in wsupp})
    return out


def _hom_rep_to_word(rep: RepFin, w: StringWord) -> list[dict[ClusterPt, tuple[Fraction, ...]]]:
    """Basis of module maps rep -> standard module of w, as row functionals."""
    wsupp = list(w.verts)
    if any(rep.dim(v) == 0 for v in wsupp):
        return []
    offs, total = {}, 0
    for v in wsupp:
        offs[v] = total
        total += rep.dim(v)
    letters = {}
    for i in range(len(w.directs)):
        arr = w.letter(i)
        letters[(arr.src, arr.dst)] = True
    rows = []
    for v in rep.dims:
        for arr in arrows_at(v)[1]:
            u = arr.dst
            if u not in offs or rep.dim(v) == 0:
                continue
            a = rep.matrix(v, u)
            # psi_u . M_alpha = [letter] psi_v   (row constraints, one per coord of M_v)
            block = [[Fraction(0)] * total for _ in range(rep.dim(v))]
            for j in range(rep.dim(v)):
                for i in range(rep.dim(u)):
                    block[j][offs[u] + i] = a[i][j]
                if v in offs and letters.get((v, u)):
                    block[j][offs[v] + j] -= Fraction(1)
            rows.extend(block)
    basis = linalg.nullspace(tuple(tuple(r) for r in rows), total)
    out = []
    for vec in basis:
        out.append({v: tuple(vec[offs[v] + i] for i in range(rep.dim(v))) for v in wsupp})
    return out


def decompose_rep(rep: RepFin) -> list[tuple[StringWord, dict[ClusterPt, tuple[Fraction, ...]]]]:
    """Split into standard string summands; each comes with its embedding
    vector at every support vertex.  Peels one split summand at a time."""
    rep.check_relations()
    acc = {v: linalg.identity(rep.dim(v)) for v in rep.dims}
    out = []
    current = rep
    while current.total_dim() > 0:
        supp = sorted((v for v in current.dims), key=lambda p: (p.n, p.m))
        split = None
        for w in _candidate_words(supp):
            phis = _hom_word_to_rep(w, current)
            if not phis:
                continue
            psis = _hom_rep_to_word(current, w)
            for phi in phis:
                for psi in psis:
                    pairing = None
                    consistent = True
                    for v in w.verts:
                        s = sum((a * b for a, b in zip(psi[v], phi[v])), Fraction(0))
                        if pairing is None:
                            pairing = s
                        elif s != pairing:
                            consistent = False
                    if not consistent or not pairing:
                        continue
                    split = (w, phi, {v: tuple(x / pairing for x in row) for v, row in psi.items()})
                    break
                if split:
                    break
            if split:
                break
        if split is None:
            raise NotAModule("representation does not split into strings")
        w, phi, psi = split
        out.append((w, {v: _apply(acc[v], phi[v]) for v in w.verts}))
        current, acc = _peel(current, acc, w, psi)
    return out


def _apply(m: linalg.Matrix, vec) -> tuple[Fraction, ...]:
    return tuple(sum((m[i][j] * vec[j] for j in range(len(vec))), Fraction(0)) for i in range(len(m)))


def _peel(rep: RepFin, acc, w: StringWord, psi):
    new_basis = {}
    for v in rep.dims:
        if v in psi:
            row = (psi[v],)
            kern = linalg.nullspace(row, rep.dim(v))
            new_basis[v] = linalg.from_columns(kern, rep.dim(v)) if kern else linalg.zeros(rep.dim(v), 0)
        else:
            new_basis[v] = linalg.identity(rep.dim(v))
    dims = {v: (len(new_basis[v][0]) if new_basis[v] else 0) for v in rep.dims}
    mats = {}
    for arr in rep.arrows():
        u, vv = arr.src, arr.dst
        if dims.get(u, 0) == 0 or dims.get(vv, 0) == 0:
            continue
        image = linalg.matmul(rep.matrix(u, vv), new_basis[u])
        coords = linalg.solve(new_basis[vv], image)
        if coords is None:
            raise AssertionError("kernel not arrow-stable")
        if any(x != 0 for row in coords for x in row):
            mats[(u, vv)] = coords
    new_acc = {v: linalg.matmul(acc[v], new_basis[v]) for v in rep.dims if dims.get(v, 0) > 0}
    return (RepFin(dims, mats), new_acc)


_WORD_TOKEN = re.compile(r"\s*(~?)\s*(T\(\s*\d+\s*,\s*-?\d+\s*\))\s*(~?)\s*")


def parse_word(text: str) -> StringWord:
    """Parse "T(1,0) > T(0,0) < T(1,1)" with optional ~ ray markers at the ends."""
    s = text.strip()
    lmark = s.startswith("~")
    if lmark:
        s = s[1:]
    rmark = s.endswith("~")
    if rmark:
        s = s[:-1]
    parts = re.split(r"([<>])", s)
    verts, directs = [], []
    for i, part in enumerate(parts):
        part = part.strip()
        if i % 2 == 0:
            if not part:
                raise ParseError(f"malformed word: {text!r}")
            verts.append(parse_cluster_pt(part))
        else:
            directs.append(part == ">")
    try:
        w = StringWord(verts, directs, lmark, rmark)
    except InvalidWord as exc:
        raise ParseError(str(exc))
    ok, reason = validate_word(w)
    if not ok:
        raise ParseError(reason)
    return w
