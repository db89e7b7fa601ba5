"""Bruhat order, Kazhdan-Lusztig polynomials, and parabolic canonical bases.

Hecke algebra normalization: standard basis H_w over Z[v, v^{-1}] with

    (H_s - v^{-1}) (H_s + v) = 0,

so H_s^2 = (v^{-1} - v) H_s + 1 and bar(H_s) = H_s^{-1} = H_s + v - v^{-1}.
The canonical basis element b_w = sum_y h_{y,w}(v) H_y has h_{w,w} = 1 and
h_{y,w} in v Z[v] for y < w; classical polynomials are recovered by
h_{y,w}(v) = v^{l(w)-l(y)} P_{y,w}(v^{-2}), i.e. q = v^{-2}.

Coxeter groups are realized through the integer reflection representation
of a generalized Cartan matrix chosen per bond label (2, 3, 4, 6, or
infinity, encoded as 0).  Group elements are keyed by their exact integer
matrix, which is a faithful invariant.

Two independent routes are provided for every canonical-basis quantity:
the mu-recursion (production) and a dense linear solve of the
bar-invariance plus degree-bound system (oracle).  Tests require them to
agree.
"""

from fractions import Fraction

from .errors import DomainError, BallExhausted

F = Fraction

INFINITE_BOND = 0
_BOND_TO_GCM = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3),
                INFINITE_BOND: (-2, -2)}


class LaurentPoly:
    """Laurent polynomial with integer coefficients, variable-agnostic."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {}
        if coeffs:
            for p, a in coeffs.items():
                if a:
                    self.c[int(p)] = int(a)

    @classmethod
    def term(cls, coeff, power=0):
        return cls({power: coeff})

    def __add__(self, other):
        out = dict(self.c)
        for p, a in other.c.items():
            out[p] = out.get(p, 0) + a
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({p: -a for p, a in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({p: a * other for p, a in self.c.items()})
        out = {}
        for p, a in self.c.items():
            for q, b in other.c.items():
                out[p + q] = out.get(p + q, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def bar(self):
        """v -> v^{-1}."""
        return LaurentPoly({-p: a for p, a in self.c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    @property
    def is_zero(self):
        return not self.c

    def coeff(self, power):
        return self.c.get(power, 0)

    def eval_at_one(self):
        return sum(self.c.values())

    def min_power(self):
        return min(self.c) if self.c else 0

    def max_power(self):
        return max(self.c) if self.c else 0

    def coeff_list(self):
        """[lowest power, coefficients ascending]; [0] for the zero poly."""
        if not self.c:
            return [0]
        lo, hi = self.min_power(), self.max_power()
        return [lo] + [self.c.get(p, 0) for p in range(lo, hi + 1)]

    def __repr__(self):
        if not self.c:
            return "0"
        bits = []
        for p in sorted(self.c):
            a = self.c[p]
            if p == 0:
                bits.append(str(a))
            else:
                s = "" if a == 1 else ("-" if a == -1 else str(a))
                bits.append("%sx^%d" % (s, p) if p != 1 else "%sx" % s)
        return " + ".join(bits).replace("+ -", "- ")


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})


def _validate_coxeter_matrix(m):
    n = len(m)
    for i in range(n):
        if len(m[i]) != n:
            raise DomainError("Coxeter matrix is not square")
        if m[i][i] != 1:
            raise DomainError("Coxeter matrix diagonal must be 1")
        for j in range(n):
            if i == j:
                continue
            e = m[i][j]
            if e in (None, float("inf")):
                e = INFINITE_BOND
            if e not in _BOND_TO_GCM:
                raise DomainError(
                    "unsupported bond label %r (want 2,3,4,6 or infinity)" % (e,))
            if (m[j][i] if m[j][i] not in (None, float("inf")) else INFINITE_BOND) != e:
                raise DomainError("Coxeter matrix must be symmetric")
    return [[1 if i == j else
             (INFINITE_BOND if m[i][j] in (None, float("inf")) else m[i][j])
             for j in range(n)] for i in range(n)]


class BallElement:
    __slots__ = ("word", "length", "mat", "key")

    def __init__(self, word, mat):
        self.word = word
        self.length = len(word)
        self.mat = mat
        self.key = mat

    def __repr__(self):
        return "w[%s]" % ("".join(str(i) for i in self.word) or "e")


class BruhatBall:
    """All elements of a Coxeter group up to a length bound, with Bruhat
    order, built from an exact integer reflection representation."""

    def __init__(self, coxeter_matrix, length_bound):
        m = _validate_coxeter_matrix(coxeter_matrix)
        self.coxeter_matrix = tuple(tuple(row) for row in m)
        self.n_gens = len(m)
        self.length_bound = length_bound
        # generalized Cartan matrix realizing the bonds
        n = self.n_gens
        gcm = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a, b = _BOND_TO_GCM[m[i][j]]
                gcm[i][j], gcm[j][i] = a, b
        self.gcm = tuple(tuple(row) for row in gcm)
        self._id = tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n))
        self.elements = {}
        self._build()
        self._leq_cache = {}

    # reflection action: columns are images of the simple roots
    def _gen_matrix(self, i):
        n = self.n_gens
        mat = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for j in range(n):
            mat[i][j] -= self.gcm[i][j]
        return tuple(tuple(row) for row in mat)

    @staticmethod
    def _matmul(a, b):
        n = len(a)
        return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n))
                           for c in range(n)) for r in range(n))

    def _build(self):
        self._gens = [self._gen_matrix(i) for i in range(self.n_gens)]
        e = BallElement((), self._id)
        self.elements[self._id] = e
        layer = [e]
        for _ in range(self.length_bound):
            nxt = []
            for el in layer:
                for i in range(self.n_gens):
                    mat = self._matmul(el.mat, self._gens[i])
                    if mat not in self.elements:
                        new = BallElement(el.word + (i,), mat)
                        self.elements[mat] = new
                        nxt.append(new)
            layer = nxt

    # -- element access -------------------------------------------------------

    def element_by_word(self, word):
        mat = self._id
        for i in word:
            if not 0 <= i < self.n_gens:
                raise DomainError("generator index %r out of range" % (i,))
            mat = self._matmul(mat, self._gens[i])
        el = self.elements.get(mat)
        if el is None:
            raise BallExhausted(
                "element of word %r lies outside the length-%d ball"
                % (word, self.length_bound))
        return el

    def all_elements(self):
        return sorted(self.elements.values(), key=lambda e: (e.length, e.word))

    def counts_by_length(self):
        out = {}
        for el in self.elements.values():
            out[el.length] = out.get(el.length, 0) + 1
        return [out.get(l, 0) for l in range(self.length_bound + 1)]

    def left_mult(self, i, el):
        mat = self._matmul(self._gens[i], el.mat)
        got = self.elements.get(mat)
        if got is None:
            raise BallExhausted("left multiplication left the ball")
        return got

    def right_mult(self, el, i):
        mat = self._matmul(el.mat, self._gens[i])
        got = self.elements.get(mat)
        if got is None:
            raise BallExhausted("right multiplication left the ball")
        return got

    def inverse(self, el):
        mat = self._id
        for i in reversed(el.word):
            mat = self._matmul(mat, self._gens[i])
        got = self.elements.get(mat)
        if got is None:
            raise BallExhausted("inverse left the ball")
        return got

    def left_longer(self, i, el):
        """True iff l(s_i el) > l(el).  Sound at the ball boundary: a
        product missing from the ball must be the longer neighbor."""
        mat = self._matmul(self._gens[i], el.mat)
        got = self.elements.get(mat)
        return got is None or got.length > el.length

    def right_longer(self, el, i):
        mat = self._matmul(el.mat, self._gens[i])
        got = self.elements.get(mat)
        return got is None or got.length > el.length

    def left_descents(self, el):
        return [i for i in range(self.n_gens) if not self.left_longer(i, el)]

    def right_descents(self, el):
        return [i for i in range(self.n_gens) if not self.right_longer(el, i)]

    # -- Bruhat order -------------------------------------------------------

    def leq(self, x, y):
        """Bruhat order, by the descent recursion."""
        if x.length > y.length:
            return False
        if x.key == y.key:
            return True
        if y.length == 0:
            return False
        key = (x.key, y.key)
        got = self._leq_cache.get(key)
        if got is not None:
            return got
        # y.word[0] is a left descent since the word is reduced
        s = y.word[0]
        sy = self.left_mult(s, y)
        if self.left_longer(s, x):
            res = self.leq(x, sy)
        else:
            res = self.leq(self.left_mult(s, x), sy)
        self._leq_cache[key] = res
        return res

    def covers(self):
        """All Bruhat covering pairs (x, y) with l(y) = l(x) + 1 inside
        the ball."""
        by_len = {}
        for el in self.elements.values():
            by_len.setdefault(el.length, []).append(el)
        out = []
        for l, xs in sorted(by_len.items()):
            for y in by_len.get(l + 1, []):
                for x in xs:
                    if self.leq(x, y):
                        out.append((x, y))
        return out

    def interval_below(self, y):
        return [z for z in self.all_elements()
                if z.length <= y.length and self.leq(z, y)]


def build_ball(coxeter_matrix, length_bound):
    return BruhatBall(coxeter_matrix, length_bound)


# ---------------------------------------------------------------------------
# Hecke algebra elements: dict key -> LaurentPoly in v
# ---------------------------------------------------------------------------

def _hecke_right_mult_gen(ball, h, i):
    """(sum c_x H_x) * H_s exactly."""
    out = {}
    for key, poly in h.items():
        if poly.is_zero:
            continue
        x = ball.elements[key]
        xs = ball.right_mult(x, i)
        if xs.length > x.length:
            out[xs.key] = out.get(xs.key, _ZERO) + poly
        else:
            out[xs.key] = out.get(xs.key, _ZERO) + poly
            extra = poly * LaurentPoly({-1: 1, 1: -1})  # (v^{-1} - v)
            out[key] = out.get(key, _ZERO) + extra
    return {k: p for k, p in out.items() if not p.is_zero}


def bar_standard_basis(ball, w):
    """Expansion of bar(H_w) in the standard basis, as {key: poly}."""
    shift = LaurentPoly({1: 1, -1: -1})  # (v - v^{-1})
    h = {ball.elements[ball._id].key: _ONE}
    for i in w.word:
        # multiply by bar(H_s) = H_s + (v - v^{-1})
        a = _hecke_right_mult_gen(ball, h, i)
        for key, poly in h.items():
            a[key] = a.get(key, _ZERO) + poly * shift
        h = {k: p for k, p in a.items() if not p.is_zero}
    return h


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig polynomials: mu-recursion (production path)
# ---------------------------------------------------------------------------

class KLContext:
    """Memoized classical KL recursion over a fixed ball.

    Polynomials are returned in the variable q.  The cache is a plain
    dict: entries are immutable and recomputation is idempotent, so
    concurrent duplicate computation under the interpreter lock is
    harmless (single-atomic-map semantics).
    """

    def __init__(self, ball):
        self.ball = ball
        self._p = {}

    def polynomial(self, x, y):
        if x.key not in self.ball.elements or y.key not in self.ball.elements:
            raise BallExhausted("KL recursion requires both elements in the ball")
        return self._pol(x, y)

    def _pol(self, x, y):
        if not self.ball.leq(x, y):
            return _ZERO
        if x.key == y.key:
            return _ONE
        key = (x.key, y.key)
        got = self._p.get(key)
        if got is not None:
            return got
        ball = self.ball
        s = y.word[0]
        sy = ball.left_mult(s, y)
        sx = ball.left_mult(s, x)
        if sx.length > x.length:
            res = self._pol(sx, y)
        else:
            res = self._pol(sx, sy) + LaurentPoly({1: 1}) * self._pol(x, sy)
            for z in ball.interval_below(sy):
                if z.length >= y.length:
                    continue
                if ball.left_mult(s, z).length > z.length:
                    continue
                if not ball.leq(x, z):
                    continue
                mu = self.mu(z, sy)
                if mu == 0:
                    continue
                d2 = y.length - z.length
                if d2 % 2 != 0:
                    raise AssertionError("odd exponent in KL recursion")
                res = res - LaurentPoly({d2 // 2: mu}) * self._pol(x, z)
        self._p[key] = res
        return res

    def mu(self, z, w):
        """Coefficient of q^{(l(w)-l(z)-1)/2} in P_{z,w}; 0 for even gaps."""
        d = w.length - z.length
        if d <= 0 or d % 2 == 0:
            return 0
        return self._pol(z, w).coeff((d - 1) // 2)


def kl_polynomial(ball, x, y):
    """P_{x,y} as a polynomial in q, via the mu-recursion."""
    if isinstance(x, tuple):
        x = ball.element_by_word(x)
    if isinstance(y, tuple):
        y = ball.element_by_word(y)
    ctx = getattr(ball, "_kl_ctx", None)
    if ctx is None:
        ctx = KLContext(ball)
        ball._kl_ctx = ctx
    if not ball.leq(x, y):
        raise DomainError("kl_polynomial requires x <= y in Bruhat order")
    return ctx.polynomial(x, y)


def kl_degree_bound_ok(ball, x, y, poly):
    d = (y.length - x.length - 1) // 2 if y.length > x.length else 0
    return poly.max_power() <= max(d, 0)


# ---------------------------------------------------------------------------
# Bar-involution linear-solve oracle for the canonical basis of H
# ---------------------------------------------------------------------------

def _solve_fraction_system(rows, rhs):
    """Solve rows * t = rhs exactly; raise if singular/inconsistent.

    rows: list of lists of Fractions, rhs: list of Fractions.  The system
    may be overdetermined but must have a unique solution.
    """
    m = [list(map(F, r)) + [F(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        d = m[r][c]
        m[r] = [x / d for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != ncols:
        raise DomainError("bar-invariance system is underdetermined")
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            raise DomainError("bar-invariance system is inconsistent")
    sol = [F(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol

def canonical_basis_via_solve(ball, w):
    """b_w = H_w + sum_{y<w} c_y H_y with c_y in vZ[v], solved directly
    from bar-invariance.  Independent of the mu-recursion."""
    below = [z for z in ball.interval_below(w) if z.key != w.key]
    bars = {z.key: bar_standard_basis(ball, z) for z in below + [w]}
    # unknowns: t[(y, d)] = coefficient of v^d in c_y, 1 <= d <= l(w)-l(y)
    unknowns = []
    for y in below:
        for d in range(1, w.length - y.length + 1):
            unknowns.append((y.key, d))
    index = {u: i for i, u in enumerate(unknowns)}
    ncol = len(unknowns)
    # bar(b_w) - b_w = 0: collect coefficients per (basis key, power of v)
    eq = {}

    def add(key, power, col, val):
        row = eq.setdefault((key, power), [F(0)] * (ncol + 1))
        row[col] += val
    # contribution of H_w (coefficient 1)
    for key, poly in bars[w.key].items():
        for p, a in poly.c.items():
            add(key, p, ncol, F(a))
    for key2, poly in {w.key: _ONE}.items():
        for p, a in poly.c.items():
            add(key2, p, ncol, F(-a))
    for y in below:
        for d in range(1, w.length - y.length + 1):
            col = index[(y.key, d)]
            # bar(c_y) bar(H_y): c_y has v^d -> bar gives v^{-d}
            for key, poly in bars[y.key].items():
                for p, a in poly.c.items():
                    add(key, p - d, col, F(a))
            add(y.key, d, col, F(-1))
    rows = []
    rhs = []
    for (key, p), coeffs in sorted(eq.items(), key=lambda kv: (str(kv[0][0]), kv[0][1])):
        rows.append(coeffs[:ncol])
        rhs.append(-coeffs[ncol])
    sol = _solve_fraction_system(rows, rhs)
    out = {w.key: _ONE}
    for (ykey, d), i in index.items():
        val = sol[i]
        if val != 0:
            if val.denominator != 1:
                raise DomainError("non-integer canonical basis coefficient")
            out[ykey] = out.get(ykey, _ZERO) + LaurentPoly({d: int(val)})
    return out


def kl_polynomial_via_solve(ball, x, y):
    """P_{x,y} in q extracted from the linear-solve canonical basis."""
    if isinstance(x, tuple):
        x = ball.element_by_word(x)
    if isinstance(y, tuple):
        y = ball.element_by_word(y)
    basis = canonical_basis_via_solve(ball, y)
    h = basis.get(x.key, _ZERO)
    # h_{x,y}(v) = v^{l(y)-l(x)} P(v^{-2})
    out = {}
    base = y.length - x.length
    for p, a in h.c.items():
        rel = base - p
        if rel % 2 != 0 or rel < 0:
            raise DomainError("canonical basis coefficient violates parity")
        out[rel // 2] = a
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# Antispherical / parabolic module
# ---------------------------------------------------------------------------

class ParabolicModule:
    """One-dimensionally induced right H-module on minimal coset
    representatives of W_J \\ W.

    ``param`` picks the one-dimensional H_J-representation through which
    the induction happens, named by the Deodhar specialization it
    computes:

    * ``"q"``:  H_s acts by v^{-1} on the inducing line,
    * ``"-1"``: H_s acts by -v.

    Both are implemented; callers pin the one their multiplicity
    convention requires.
    """

    def __init__(self, ball, parabolic_gens, param="q"):
        if param not in ("q", "-1"):
            raise DomainError("parabolic parameter must be 'q' or '-1'")
        self.ball = ball
        self.parabolic = tuple(sorted(set(parabolic_gens)))
        for i in self.parabolic:
            if not 0 <= i < ball.n_gens:
                raise DomainError("parabolic generator %r out of range" % (i,))
        self.param = param
        self._eps = (LaurentPoly({-1: 1}) if param == "q"
                     else LaurentPoly({1: -1}))
        self._nbasis = {}

    def is_minimal(self, el):
        return all(self.ball.left_longer(i, el) for i in self.parabolic)

    def minimal_elements(self):
        return [el for el in self.ball.all_elements() if self.is_minimal(el)]

    def act_gen(self, vec, i):
        """Right action of H_{s_i} on {key: poly} over minimal reps."""
        out = {}

        def bump(key, poly):
            if not poly.is_zero:
                out[key] = out.get(key, _ZERO) + poly

        for key, poly in vec.items():
            y = self.ball.elements[key]
            ys = self.ball.right_mult(y, i)
            if ys.length < y.length:
                bump(ys.key, poly)
                bump(key, poly * LaurentPoly({-1: 1, 1: -1}))
            elif self.is_minimal(ys):
                bump(ys.key, poly)
            else:
                bump(key, poly * self._eps)
        return {k: p for k, p in out.items() if not p.is_zero}

    def act_b_gen(self, vec, i):
        """Right action of b_s = H_s + v."""
        out = self.act_gen(vec, i)
        for key, poly in vec.items():
            extra = poly * LaurentPoly({1: 1})
            out[key] = out.get(key, _ZERO) + extra
        return {k: p for k, p in out.items() if not p.is_zero}

    def bar_standard(self, y):
        """bar(N_y) expanded over the standard basis N_z."""
        shift = LaurentPoly({1: 1, -1: -1})
        vec = {self.ball.elements[self.ball._id].key: _ONE}
        for i in y.word:
            a = self.act_gen(vec, i)
            for key, poly in vec.items():
                a[key] = a.get(key, _ZERO) + poly * shift
            vec = {k: p for k, p in a.items() if not p.is_zero}
        return vec

    # -- canonical basis: production recursion -----------------------------

    def canonical_basis(self, w):
        """n_w over the standard basis via the inductive mu-correction
        algorithm.  w must be a minimal coset representative."""
        if isinstance(w, tuple):
            w = self.ball.element_by_word(w)
        if not self.is_minimal(w):
            raise DomainError("w is not minimal in its coset")
        got = self._nbasis.get(w.key)
        if got is not None:
            return got
        if w.length == 0:
            res = {w.key: _ONE}
            self._nbasis[w.key] = res
            return res
        # peel a right descent keeping minimality
        i = next(i for i in w.word[::-1]
                 if self.ball.right_mult(w, i).length < w.length
                 and self.is_minimal(self.ball.right_mult(w, i)))
        w1 = self.ball.right_mult(w, i)
        cand = self.act_b_gen(self.canonical_basis(w1), i)
        # subtract constant terms from the top down
        for y in sorted((self.ball.elements[k] for k in cand),
                        key=lambda e: -e.length):
            if y.key == w.key:
                continue
            c0 = cand.get(y.key, _ZERO).coeff(0)
            if c0 != 0:
                lower = self.canonical_basis(y)
                for key, poly in lower.items():
                    cand[key] = cand.get(key, _ZERO) - poly * c0
        cand = {k: p for k, p in cand.items() if not p.is_zero}
        if cand.get(w.key, _ZERO) != _ONE:
            raise AssertionError("canonical basis recursion lost its head term")
        for key, poly in cand.items():
            if key != w.key and poly.min_power() < 1:
                raise AssertionError("canonical basis coefficient not in vZ[v]")
        self._nbasis[w.key] = cand
        return cand

    # -- canonical basis: direct bar-invariance solve (oracle) -------------

    def canonical_basis_via_solve(self, w):
        if isinstance(w, tuple):
            w = self.ball.element_by_word(w)
        if not self.is_minimal(w):
            raise DomainError("w is not minimal in its coset")
        below = [z for z in self.minimal_elements()
                 if z.length <= w.length and self.ball.leq(z, w)
                 and z.key != w.key]
        bars = {z.key: self.bar_standard(z) for z in below + [w]}
        unknowns = []
        for y in below:
            for d in range(1, w.length - y.length + 1):
                unknowns.append((y.key, d))
        index = {u: i for i, u in enumerate(unknowns)}
        ncol = len(unknowns)
        eq = {}

        def add(key, power, col, val):
            eq.setdefault((key, power), [F(0)] * (ncol + 1))
            eq[(key, power)][col] += val

        for key, poly in bars[w.key].items():
            for p, a in poly.c.items():
                add(key, p, ncol, F(a))
        add(w.key, 0, ncol, F(-1))
        for y in below:
            for d in range(1, w.length - y.length + 1):
                col = index[(y.key, d)]
                for key, poly in bars[y.key].items():
                    for p, a in poly.c.items():
                        add(key, p - d, col, F(a))
                add(y.key, d, col, F(-1))
        rows, rhs = [], []
        for (key, p), coeffs in sorted(
                eq.items(), key=lambda kv: (str(kv[0][0]), kv[0][1])):
            rows.append(coeffs[:ncol])
            rhs.append(-coeffs[ncol])
        if not unknowns:
            for r in rhs:
                if r != 0:
                    raise DomainError("inconsistent trivial system")
            return {w.key: _ONE}
        sol = _solve_fraction_system(rows, rhs)
        out = {w.key: _ONE}
        for (ykey, d), i in index.items():
            val = sol[i]
            if val != 0:
                if val.denominator != 1:
                    raise DomainError("non-integer parabolic coefficient")
                out[ykey] = out.get(ykey, _ZERO) + LaurentPoly({d: int(val)})
        return out


def antispherical_basis(ball, parabolic_gens, w, param="q"):
    """Canonical-basis coefficients y -> n_{y,w} of the parabolic module.

    Returns a dict mapping BallElement y (minimal coset representatives
    y <= w) to LaurentPoly in v.
    """
    mod = ParabolicModule(ball, parabolic_gens, param)
    if isinstance(w, tuple):
        w = ball.element_by_word(w)
    n = mod.canonical_basis(w)
    return {ball.elements[key]: poly for key, poly in n.items()}


# ---------------------------------------------------------------------------
# exact unitriangular inversion
# ---------------------------------------------------------------------------

def inverse_multiplicity_matrix(matrix):
    """Exact inverse of an integer unitriangular matrix (upper triangular
    with unit diagonal in the given ordering)."""
    n = len(matrix)
    for i in range(n):
        if len(matrix[i]) != n:
            raise DomainError("matrix is not square")
        if matrix[i][i] != 1:
            raise DomainError("matrix is not unitriangular: diagonal != 1")
        for j in range(i):
            if matrix[i][j] != 0:
                raise DomainError("matrix is not unitriangular: lower part != 0")
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            s = -sum(matrix[i][k] * inv[k][j] for k in range(i + 1, j + 1))
            inv[i][j] = s
    return inv


def kl_table_tsv(ball, pairs, convention="q=v^-2,Hs:(Hs-v^-1)(Hs+v)=0"):
    """TSV dump of KL polynomials: y-word, w-word, coefficient list,
    convention tag."""
    lines = ["y\tw\tcoeffs\tconvention"]
    for x, y in pairs:
        p = kl_polynomial(ball, x, y)
        xw = "".join(str(i) for i in (x.word if isinstance(x, BallElement) else x)) or "e"
        yw = "".join(str(i) for i in (y.word if isinstance(y, BallElement) else y)) or "e"
        lines.append("%s\t%s\t%s\t%s" % (
            xw, yw, ",".join(str(c) for c in p.coeff_list()), convention))
    return "\n".join(lines) + "\n"
