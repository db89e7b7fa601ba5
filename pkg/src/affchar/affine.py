"""Affine coroots, the level-k dot action, weight classification, integral
Weyl groups, orbits and block decompositions.

A weight at level k is a point of the affine subspace t* + c*; in
coordinates it is a tuple of Fractions in the fundamental-weight basis
plus the level.  Real affine coroots are pairs (gamma, m) standing for
gamma + m (kappa/kappa_b) c with gamma a finite coroot (simple-coroot
coordinates) and m an integer.  All shifted pairings use the closed form

    <lam + rho_hat, (gamma, m)> = <lam + rho, gamma> + m (k + h_dual),

so the affine rho element is never materialized.

Elements of the affine Weyl group are stored as exact affine maps on
weight coordinates (linear part plus translation).  Two elements are
equal iff their dot actions agree, which at a noncritical level is a
faithful test; comparing the stored maps is equivalent to comparing
values on generic test weights.
"""

from fractions import Fraction
from dataclasses import dataclass
from math import gcd

from .errors import DomainError
from .rootdata import Level

F = Fraction


@dataclass(frozen=True)
class LevelWeight:
    rs: object
    lam: tuple
    level: Level

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(F(a) for a in self.lam))
        if len(self.lam) != self.rs.rank:
            raise DomainError("weight has wrong number of coordinates")

    def with_lam(self, lam):
        return LevelWeight(self.rs, lam, self.level)

    @property
    def k(self):
        return self.level.k

    def shif(self):
        """lam + rho in omega-coordinates."""
        return tuple(a + 1 for a in self.lam)


@dataclass(frozen=True)
class AffineCoroot:
    gamma: tuple
    m: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(F(g) for g in self.gamma))
        object.__setattr__(self, "m", int(self.m))

    def negate(self):
        return AffineCoroot(tuple(-g for g in self.gamma), -self.m)

    def is_positive(self):
        if self.m != 0:
            return self.m > 0
        for g in self.gamma:
            if g != 0:
                return g > 0
        raise DomainError("zero coroot has no sign")


def simple_affine_coroots(rs, index_set=None):
    """alphacheck_i for i in {0} u I; index 0 is -theta_check + (k/kb) c."""
    out = {0: AffineCoroot(tuple(-t for t in rs.theta_check), 1)}
    for i in range(rs.rank):
        e = tuple(F(int(i == j)) for j in range(rs.rank))
        out[i + 1] = AffineCoroot(e, 0)
    return out


def is_real_coroot(rs, cr):
    """Closed-form membership test; agrees with the reflection-orbit
    oracle (tested)."""
    g = cr.gamma
    ng = tuple(-x for x in g)
    return g in rs.positive_coroots or ng in rs.positive_coroots


def real_coroot_orbit(rs, m_bound):
    """Orbit of the simple affine coroots under the linear reflections,
    truncated to |m| <= m_bound.  Reflection-closure oracle of record for
    the set of real coroots."""
    simples = list(simple_affine_coroots(rs).values())
    seen = set()
    frontier = []
    for cr in simples:
        key = (cr.gamma, cr.m)
        seen.add(key)
        seen.add((cr.negate().gamma, cr.negate().m))
        frontier.append(cr)
        frontier.append(cr.negate())
    while frontier:
        nxt = []
        for cr in frontier:
            for s in simples:
                img = reflect_coroot(rs, s, cr)
                if abs(img.m) > m_bound:
                    continue
                key = (img.gamma, img.m)
                if key not in seen:
                    seen.add(key)
                    nxt.append(img)
        frontier = nxt
    return {AffineCoroot(g, m) for g, m in seen}


def reflect_coroot(rs, refl, cr):
    """Linear action of the reflection in `refl` on the coroot `cr`:
    x -> x - <gamma_refl, x> * refl, where the pairing only sees the
    finite parts."""
    groot = rs.root_of_coroot(refl.gamma)
    p = rs.pair_root_coroot(groot, cr.gamma)
    return AffineCoroot(
        tuple(d - p * g for d, g in zip(cr.gamma, refl.gamma)),
        cr.m - int(p) * refl.m)


# ---------------------------------------------------------------------------
# pairings and reflections on weights
# ---------------------------------------------------------------------------

def dot_pair(lw, cr, shifted=True):
    """<lam + rho_hat, cr> (shifted) or <lam, cr> (unshifted)."""
    rs = lw.rs
    if shifted:
        base = rs.pair_weight_coroot(lw.shif(), cr.gamma)
        return base + cr.m * (lw.k + rs.h_dual)
    base = rs.pair_weight_coroot(lw.lam, cr.gamma)
    return base + cr.m * lw.k


def dot_reflect(lw, cr):
    """Dot reflection of the weight in the real affine coroot cr."""
    rs = lw.rs
    if not is_real_coroot(rs, cr):
        raise DomainError("%r is not a real affine coroot" % (cr,))
    p = dot_pair(lw, cr)
    groot = rs.root_of_coroot(cr.gamma)
    gw = rs.root_to_weight_coords(groot)
    return lw.with_lam(tuple(a - p * g for a, g in zip(lw.lam, gw)))


# ---------------------------------------------------------------------------
# the affine Weyl group as exact affine maps
# ---------------------------------------------------------------------------

class AffineWeylElt:
    """An element of W acting on the level-k affine subspace.

    Stored as the exact affine map lam -> M lam + t of the dot action.
    The linear part M is the finite component of the element; t carries
    the translation datum.
    """

    __slots__ = ("group", "word", "length", "mat", "trans")

    def __init__(self, group, word, mat, trans, length=None):
        self.group = group
        self.word = word
        self.length = len(word) if length is None else length
        self.mat = mat
        self.trans = trans

    @property
    def key(self):
        return (self.mat, self.trans)

    def act(self, lw):
        n = len(lw.lam)
        lam = tuple(
            sum(self.mat[r][c] * lw.lam[c] for c in range(n)) + self.trans[r]
            for r in range(n))
        return lw.with_lam(lam)

    def compose(self, other):
        """self o other (apply other first)."""
        n = len(self.trans)
        mat = tuple(
            tuple(sum(self.mat[r][k] * other.mat[k][c] for k in range(n))
                  for c in range(n))
            for r in range(n))
        trans = tuple(
            sum(self.mat[r][k] * other.trans[k] for k in range(n)) + self.trans[r]
            for r in range(n))
        return AffineWeylElt(self.group, self.word + other.word, mat, trans,
                             length=None)

    def __eq__(self, other):
        return isinstance(other, AffineWeylElt) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "W[%s]" % ("".join(str(i) for i in self.word) or "e")

    def finite_translation_decomposition(self):
        """(linear matrix, translation vector) of the affine dot map."""
        return self.mat, self.trans


class AffineWeylGroup:
    """The affine Weyl group of rs acting at a fixed noncritical level."""

    def __init__(self, rs, level):
        level.require_noncritical(rs)
        if level.k + rs.h_dual == 0:
            raise DomainError("level must be noncritical for a faithful action")
        self.rs = rs
        self.level = level
        self.simple_coroots = simple_affine_coroots(rs)
        n = rs.rank
        ident = tuple(tuple(F(int(i == j)) for j in range(n)) for i in range(n))
        self.identity = AffineWeylElt(self, (), ident,
                                      tuple(F(0) for _ in range(n)))
        self._simple_elts = {
            i: self.reflection_element(cr, word=(i,))
            for i, cr in self.simple_coroots.items()}

    def reflection_element(self, cr, word=()):
        """The reflection in a real affine coroot as an affine map."""
        rs = self.rs
        if not is_real_coroot(rs, cr):
            raise DomainError("%r is not a real affine coroot" % (cr,))
        n = rs.rank
        groot = rs.root_of_coroot(cr.gamma)
        gw = rs.root_to_weight_coords(groot)
        mat = tuple(
            tuple(F(int(r == c)) - gw[r] * cr.gamma[c] for c in range(n))
            for r in range(n))
        const = (rs.pair_weight_coroot(rs.rho, cr.gamma)
                 + cr.m * (self.level.k + rs.h_dual))
        trans = tuple(-const * gw[r] for r in range(n))
        return AffineWeylElt(self, word, mat, trans)

    def simple(self, i):
        return self._simple_elts[i]

    def from_word(self, word):
        el = self.identity
        for i in word:
            if i not in self._simple_elts:
                raise DomainError("unknown simple reflection index %r" % (i,))
            el = el.compose(self._simple_elts[i])
        return AffineWeylElt(self, tuple(word), el.mat, el.trans)

    def dot_act(self, w, lw):
        if isinstance(w, (tuple, list)):
            w = self.from_word(w)
        return w.act(lw)

    def ball(self, length_bound):
        """All elements of length <= length_bound keyed by affine map,
        words reduced (BFS layers are Coxeter lengths)."""
        out = {self.identity.key: self.identity}
        layer = [self.identity]
        for _ in range(length_bound):
            nxt = []
            for el in layer:
                for i in sorted(self._simple_elts):
                    new = el.compose(self._simple_elts[i])
                    if new.key not in out:
                        new.length = el.length + 1
                        out[new.key] = new
                        nxt.append(new)
            layer = nxt
        return out


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    antidominant: bool
    dominant: bool
    regular: bool
    walls: list
    simple_pairings: dict
    ball_radius: int
    search_complete: bool = True

    def to_json_dict(self):
        return {
            "antidominant": self.antidominant,
            "dominant": self.dominant,
            "regular": self.regular,
            "walls": [{"gamma": [str(g) for g in cr.gamma], "m": cr.m}
                      for cr in self.walls],
            "simple_pairings": {str(i): str(v)
                                for i, v in sorted(self.simple_pairings.items())},
            "ball_radius": self.ball_radius,
            "search_complete": self.search_complete,
        }


def _is_positive_integer(x):
    return x.denominator == 1 and x > 0


def _is_negative_integer(x):
    return x.denominator == 1 and x < 0


def classify_weight(lw, ball_radius=10):
    """Antidominance and dominance on the simple affine pairings;
    regularity through the per-coroot closed form (complete: each finite
    coroot vanishes for at most one central multiplicity)."""
    rs = lw.rs
    pairings = {}
    for i, cr in simple_affine_coroots(rs).items():
        pairings[i] = dot_pair(lw, cr)
    anti = not any(_is_positive_integer(v) for v in pairings.values())
    dom = not any(_is_negative_integer(v) for v in pairings.values())
    walls = []
    denom = lw.k + rs.h_dual
    for gamma in rs.positive_coroots:
        p0 = rs.pair_weight_coroot(lw.shif(), gamma)
        mstar = -p0 / denom
        if mstar.denominator == 1:
            walls.append(AffineCoroot(gamma, int(mstar)))
    walls.sort(key=lambda cr: (abs(cr.m), cr.m, cr.gamma))
    return Classification(
        antidominant=anti,
        dominant=dom,
        regular=not walls,
        walls=walls,
        simple_pairings=pairings,
        ball_radius=ball_radius,
    )


# ---------------------------------------------------------------------------
# integral Weyl group data
# ---------------------------------------------------------------------------

def integrality_progression(pair_value, k):
    """{m in Z : pair_value + m k in Z} as (residue, step), or None.

    Closed form used to cross-check the ball enumeration.
    """
    pv = F(pair_value)
    k = F(k)
    if k == 0:
        return (0, 1) if pv.denominator == 1 else None
    p, q = k.numerator, k.denominator
    b = pv.denominator
    if q % b != 0:
        return None
    a_mod = (-pv.numerator * (q // b)) % q
    g = gcd(p, q)
    if a_mod % g != 0:
        return None
    pp, qq, aa = p // g, q // g, a_mod // g
    m0 = (aa * pow(pp, -1, qq)) % qq if qq > 1 else 0
    return (m0, qq)


@dataclass
class IntegralSystem:
    positive_coroots: list
    simples: list
    progressions: dict
    coxeter_matrix: list
    height_bound: int

    def to_json_dict(self):
        enc = lambda cr: {"gamma": [str(g) for g in cr.gamma], "m": cr.m}
        return {
            "positive_integral_coroots": [enc(c) for c in self.positive_coroots],
            "simples": [enc(c) for c in self.simples],
            "coxeter_matrix": self.coxeter_matrix,
            "height_bound": self.height_bound,
        }


def integral_system(lw, height_bound):
    """Integral positive real coroots within |m| <= height_bound and the
    subset acting as simple reflections of W_lambda in the ball."""
    rs = lw.rs
    positives = []
    progs = {}
    for gamma in rs.positive_coroots:
        for sign in (1, -1):
            g = tuple(sign * x for x in gamma)
            pv = rs.pair_weight_coroot(lw.lam, g)
            prog = integrality_progression(pv, lw.k)
            progs[(g, sign)] = prog
            if prog is None:
                continue
            m0, step = prog
            lo = 1 if sign == -1 else 0
            m = m0 + step * ((lo - m0 + step - 1) // step)
            while m <= height_bound:
                if m > 0 or (m == 0 and sign == 1):
                    positives.append(AffineCoroot(g, m))
                m += step
    positives.sort(key=lambda cr: (cr.m, cr.gamma))

    simples = []
    for cand in positives:
        ok = True
        for other in positives:
            if other == cand:
                continue
            img = reflect_coroot(rs, cand, other)
            if not img.is_positive():
                ok = False
                break
        if ok:
            simples.append(cand)

    cox = _coxeter_matrix_of(rs, simples)
    return IntegralSystem(positives, simples, progs, cox, height_bound)


def _coxeter_matrix_of(rs, coroots):
    """Bond orders between reflections from Cartan-pairing products."""
    order_of = {0: 2, 1: 3, 2: 4, 3: 6}
    n = len(coroots)
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            gi = rs.root_of_coroot(coroots[i].gamma)
            gj = rs.root_of_coroot(coroots[j].gamma)
            nij = (rs.pair_root_coroot(gi, coroots[j].gamma)
                   * rs.pair_root_coroot(gj, coroots[i].gamma))
            m[i][j] = m[j][i] = order_of.get(int(nij), 0)
    return m


# ---------------------------------------------------------------------------
# orbits and blocks
# ---------------------------------------------------------------------------

@dataclass
class OrbitResult:
    points: list
    representative: object
    representative_kind: str
    distance: object
    truncated: bool
    unique_in_ball: bool
    walls: list

    def to_json_dict(self):
        return {
            "orbit_size_in_ball": len(self.points),
            "representative": None if self.representative is None
            else [str(a) for a in self.representative.lam],
            "representative_kind": self.representative_kind,
            "distance": self.distance,
            "truncated": self.truncated,
            "unique_in_ball": self.unique_in_ball,
            "walls": len(self.walls),
        }


def orbit_and_representative(lw, length_bound):
    """BFS of the dot orbit over simple reflections; returns the unique
    antidominant (negative level) or dominant (otherwise) element of the
    ball if one exists."""
    if length_bound < 1:
        raise DomainError("length_bound must be >= 1")
    rs = lw.rs
    negative = lw.level.is_negative(rs)
    kind = "antidominant" if negative else "dominant"
    simples = simple_affine_coroots(rs)
    seen = {lw.lam: 0}
    order = [lw]
    frontier = [lw]
    found = []
    cls0 = classify_weight(lw)
    if getattr(cls0, kind):
        found.append((lw, 0))
    for dist in range(1, length_bound + 1):
        nxt = []
        for w in frontier:
            for i in sorted(simples):
                img = dot_reflect(w, simples[i])
                if img.lam not in seen:
                    seen[img.lam] = dist
                    order.append(img)
                    nxt.append(img)
                    c = classify_weight(img)
                    if getattr(c, kind):
                        found.append((img, dist))
        frontier = nxt
    rep, d = (found[0][0], found[0][1]) if found else (None, None)
    distinct = {w.lam for w, _ in found}
    return OrbitResult(
        points=order,
        representative=rep,
        representative_kind=kind,
        distance=d,
        truncated=rep is None,
        unique_in_ball=len(distinct) == 1 if found else False,
        walls=cls0.walls,
    )


@dataclass
class Block:
    representative_word: tuple
    representative_weight: tuple
    simple_labels: list
    truncated: bool

    def to_json_dict(self):
        return {
            "representative_word": list(self.representative_word),
            "representative_weight": [str(a) for a in self.representative_weight],
            "simple_labels": [
                {"word": list(w), "weight": [str(a) for a in lam]}
                for w, lam in self.simple_labels],
            "truncated": self.truncated,
        }


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def finite_dot_orbit(rs, lam):
    """The W_f dot orbit of a finite weight (omega-coordinates)."""
    lam = tuple(F(a) for a in lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rs.rank):
                p = w[i] + 1
                ai = rs.simple_roots[i]
                img = tuple(a - p * b for a, b in zip(w, ai))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def finite_dominant_representative(rs, lam):
    """Canonical element of the finite dot orbit: the one in the closed
    dominant chamber (shifted); lexicographically largest on ties, which
    cannot occur but keeps the choice total."""
    orbit = finite_dot_orbit(rs, lam)
    dom = [w for w in orbit if all(w[i] + 1 >= 0 for i in range(rs.rank))]
    if not dom:
        raise AssertionError("finite dot orbit lacks a dominant element")
    return max(dom)


def block_decomposition(lw, length_bound, height_bound=None):
    """Double cosets W_f \\ W / W_lambda among ball elements, each with
    its minimal-length representative and simple-label coset list."""
    rs = lw.rs
    cls = classify_weight(lw)
    if not (cls.antidominant and cls.regular and lw.level.is_negative(rs)):
        raise DomainError(
            "block decomposition requires a regular antidominant weight at "
            "negative level; classification: %s" % (cls.to_json_dict(),))
    if height_bound is None:
        height_bound = length_bound
    isys = integral_system(lw, height_bound)
    group = AffineWeylGroup(rs, lw.level)
    ball = group.ball(length_bound)
    refls = [group.reflection_element(cr) for cr in isys.simples]

    uf = _UnionFind()
    truncated_roots = set()
    finite_idx = range(1, rs.rank + 1)
    for key, el in ball.items():
        uf.find(key)
        for i in finite_idx:
            left = group.simple(i).compose(el)
            if left.key in ball:
                uf.union(key, left.key)
            else:
                truncated_roots.add(key)
        for r in refls:
            right = el.compose(r)
            if right.key in ball:
                uf.union(key, right.key)
            else:
                truncated_roots.add(key)

    comps = {}
    for key, el in ball.items():
        comps.setdefault(uf.find(key), []).append(el)

    blocks = []
    for members in comps.values():
        members.sort(key=lambda e: (e.length, e.word))
        rep = members[0]
        truncated = any(m.key in truncated_roots for m in members)
        by_coset = {}
        for m in members:
            lam = m.act(lw).lam
            ckey = finite_dominant_representative(rs, lam)
            cur = by_coset.get(ckey)
            if cur is None or (m.length, m.word) < (cur.length, cur.word):
                by_coset[ckey] = m
        labels = [(by_coset[ck].word, ck) for ck in sorted(by_coset)]
        labels.sort(key=lambda t: (len(t[0]), t[0]))
        blocks.append(Block(rep.word, rep.act(lw).lam, labels, truncated))
    blocks.sort(key=lambda b: (len(b.representative_word), b.representative_word))
    return blocks
