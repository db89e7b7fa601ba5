"""Finite root-system data over exact rationals.

Conventions used throughout the package:

* Weights are row vectors of Fractions in the fundamental-weight basis
  (omega-coordinates), coweights in the fundamental-coweight basis.
  Roots are also kept in simple-root coordinates internally, coroots in
  simple-coroot coordinates; with these choices every canonical pairing
  ``<weight, coroot>`` and ``<root, coweight>`` is a plain dot product
  against integer data.
* The Cartan matrix is ``A[i][j] = <alpha_j, alphacheck_i>``.
* The invariant form on t* is normalized so the highest root has squared
  length 2; equivalently the basic form on t gives short coroots squared
  length 2.  ``halfsq[i]`` stores (alpha_i, alpha_i)/2 in that scale.

Everything is immutable after construction and safe to share.
"""

from fractions import Fraction
from dataclasses import dataclass

from .errors import DomainError

F = Fraction

_LETTERS = "ABCDEFG"


def _chain(n):
    """Tridiagonal simply-laced Cartan matrix of size n."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    return a


def _cartan_and_lengths(letter, rank):
    """Return (Cartan matrix, half squared lengths) for a simple type.

    Raises DomainError on an invalid (letter, rank) combination.
    """
    n = rank
    if letter == "A":
        if n < 1:
            raise DomainError("type A requires rank >= 1")
        return _chain(n), [F(1)] * n
    if letter == "B":
        if n < 2:
            raise DomainError("type B requires rank >= 2")
        a = _chain(n)
        a[n - 1][n - 2] = -2  # alpha_n short
        r = [F(1)] * (n - 1) + [F(1, 2)]
        return a, r
    if letter == "C":
        if n < 2:
            raise DomainError("type C requires rank >= 2")
        a = _chain(n)
        a[n - 2][n - 1] = -2  # alpha_n long
        r = [F(1, 2)] * (n - 1) + [F(1)]
        return a, r
    if letter == "D":
        if n < 3:
            raise DomainError("type D requires rank >= 3")
        a = _chain(n)
        # detach node n from the chain, fork it off node n-2
        a[n - 1][n - 2] = 0
        a[n - 2][n - 1] = 0
        a[n - 1][n - 3] = -1
        a[n - 3][n - 1] = -1
        return a, [F(1)] * n
    if letter == "E":
        if n not in (6, 7, 8):
            raise DomainError("type E requires rank in {6,7,8}")
        # Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4.
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
        for i, j in edges:
            a[i - 1][j - 1] = -1
            a[j - 1][i - 1] = -1
        return a, [F(1)] * n
    if letter == "F":
        if n != 4:
            raise DomainError("type F requires rank 4")
        a = [
            [2, -1, 0, 0],
            [-1, 2, -1, 0],
            [0, -2, 2, -1],
            [0, 0, -1, 2],
        ]
        return a, [F(1), F(1), F(1, 2), F(1, 2)]
    if letter == "G":
        if n != 2:
            raise DomainError("type G requires rank 2")
        # alpha_1 short, alpha_2 long
        return [[2, -3], [-1, 2]], [F(1, 3), F(1)]
    raise DomainError("unknown simple type %r" % (letter,))


def _mat_inv(a):
    """Exact inverse of a square Fraction matrix via Gauss elimination."""
    n = len(a)
    m = [[F(x) for x in row] + [F(i == j) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        d = m[col][col]
        m[col] = [x / d for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class Level:
    """A level kappa = k * kappa_b, as the exact ratio k."""

    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "k", F(self.k))

    def is_critical(self, rs):
        return self.k == -rs.h_dual

    def is_negative(self, rs):
        # positive levels are kappa_c + Q>=0 * kappa_b
        return self.k + rs.h_dual < 0

    def require_noncritical(self, rs):
        if self.is_critical(rs):
            raise DomainError(
                "critical level k = -h_dual = %s is excluded" % (-rs.h_dual,))


class RootSystem:
    """Cartan data of one simple factor, all entries exact rationals."""

    def __init__(self, letter, rank):
        if letter not in _LETTERS:
            raise DomainError("unknown simple type %r" % (letter,))
        cartan, halfsq = _cartan_and_lengths(letter, rank)
        self.letter = letter
        self.rank = rank
        self.cartan = tuple(tuple(row) for row in cartan)
        self.cartan_inv = tuple(tuple(row) for row in _mat_inv(cartan))
        self.halfsq = tuple(halfsq)

        self.positive_roots = self._close_positive_roots()
        nroots = 2 * len(self.positive_roots)
        self.dim = nroots + rank
        heights = [int(sum(b)) for b in self.positive_roots]
        self.coxeter_number = max(heights) + 1
        # exponents: d occurs as often as the height profile stays >= its level
        profile = [0] * (max(heights) + 1)
        for ht in heights:
            profile[ht] += 1
        exps = []
        for m in range(1, len(profile)):
            exps.extend([m] * (profile[m] - (profile[m + 1] if m + 1 < len(profile) else 0)))
        self.exponents = tuple(sorted(exps))

        # highest root theta and its coroot
        self.theta = max(self.positive_roots, key=sum)
        self.theta_check = self.coroot_of_root(self.theta)
        self.h_dual = int(1 + sum(self.theta_check))

        self.rho = tuple(F(1) for _ in range(rank))        # omega-basis
        self.rho_check = tuple(F(1) for _ in range(rank))  # omega-check basis

        # simple (co)roots expressed in the weight / coweight bases
        self.simple_roots = tuple(
            tuple(F(self.cartan[i][j]) for i in range(rank)) for j in range(rank))
        self.simple_coroots = tuple(
            tuple(F(self.cartan[j][i]) for i in range(rank)) for j in range(rank))

        self.positive_coroots = tuple(
            self.coroot_of_root(b) for b in self.positive_roots)

        self._gram_weight = self._weight_gram()
        self._gram_coweight = self._coweight_gram()

    # -- construction helpers -------------------------------------------

    def _close_positive_roots(self):
        simples = [tuple(F(i == j) for i in range(self.rank))
                   for j in range(self.rank)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(self.rank):
                    p = sum(b[j] * self.cartan[i][j] for j in range(self.rank))
                    rb = list(b)
                    rb[i] -= p
                    rb = tuple(rb)
                    if all(x >= 0 for x in rb) and rb not in seen:
                        seen.add(rb)
                        nxt.append(rb)
            frontier = nxt
        return tuple(sorted(seen, key=lambda b: (sum(b), b)))

    def _weight_gram(self):
        n = self.rank
        ainv = self.cartan_inv
        # (alpha_m, alpha_l) = A[m][l] * halfsq[m]
        g = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                g[i][j] = sum(
                    ainv[m][i] * ainv[l][j] * self.cartan[m][l] * self.halfsq[m]
                    for m in range(n) for l in range(n))
        return tuple(tuple(row) for row in g)

    def _coweight_gram(self):
        n = self.rank
        ainv = self.cartan_inv
        # kappa_b(acheck_m, acheck_l) = A[m][l] / halfsq[l]
        g = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                g[i][j] = sum(
                    ainv[i][m] * ainv[j][l] * self.cartan[m][l] / self.halfsq[l]
                    for m in range(n) for l in range(n))
        return tuple(tuple(row) for row in g)

    # -- coordinate changes and pairings ---------------------------------

    def root_to_weight_coords(self, beta):
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(
            sum(F(b) * self.cartan[i][j] for j, b in enumerate(beta))
            for i in range(self.rank))

    def coroot_of_root(self, beta):
        """Coroot of a root given in simple-root coordinates, in
        simple-coroot coordinates."""
        rb = self.root_halfsq(beta)
        return tuple(F(b) * self.halfsq[i] / rb for i, b in enumerate(beta))

    def root_of_coroot(self, gamma):
        """Root whose coroot has the given simple-coroot coordinates,
        in simple-root coordinates."""
        nu = [F(g) / self.halfsq[i] for i, g in enumerate(gamma)]
        sq = self.coweight_form_on_coroots(gamma, gamma)
        return tuple(2 * x / sq for x in nu)

    def root_halfsq(self, beta):
        """(beta, beta)/2 for beta in simple-root coordinates."""
        return sum(
            F(beta[i]) * F(beta[j]) * self.cartan[i][j] * self.halfsq[i]
            for i in range(self.rank) for j in range(self.rank)) / 2

    def coweight_form_on_coroots(self, x, y):
        """kappa_b(x, y) for x, y in simple-coroot coordinates."""
        return sum(
            F(x[i]) * F(y[j]) * self.cartan[i][j] / self.halfsq[j]
            for i in range(self.rank) for j in range(self.rank))

    def pair_weight_coroot(self, lam, gamma):
        """<lam, gamma> with lam in omega-coordinates, gamma in
        simple-coroot coordinates."""
        return sum(F(a) * F(b) for a, b in zip(lam, gamma))

    def pair_root_coroot(self, beta, gamma):
        """<beta, gamma> with beta in simple-root, gamma in simple-coroot
        coordinates."""
        return sum(
            F(beta[j]) * F(gamma[i]) * self.cartan[i][j]
            for i in range(self.rank) for j in range(self.rank))

    def pair_weight_coweight(self, lam, x):
        """<lam, x> with lam in omega- and x in omega-check coordinates."""
        ainv = self.cartan_inv
        return sum(
            F(lam[i]) * F(x[j]) * ainv[j][i]
            for i in range(self.rank) for j in range(self.rank))

    def coweight_to_coroot_coords(self, x):
        """Fundamental-coweight coordinates -> simple-coroot coordinates."""
        ainv = self.cartan_inv
        return tuple(
            sum(F(x[j]) * ainv[j][m] for j in range(self.rank))
            for m in range(self.rank))

    # -- forms ------------------------------------------------------------

    def weight_form(self, lam, mu):
        """(lam, mu) in the (theta, theta) = 2 normalization, both in
        omega-coordinates."""
        return sum(
            F(lam[i]) * F(mu[j]) * self._gram_weight[i][j]
            for i in range(self.rank) for j in range(self.rank))

    def coweight_form(self, x, y):
        """kappa_b(x, y), both arguments in omega-check coordinates."""
        return sum(
            F(x[i]) * F(y[j]) * self._gram_coweight[i][j]
            for i in range(self.rank) for j in range(self.rank))

    def rho_check_normsq(self):
        """(rho_check, rho_check) under the basic form."""
        return self.coweight_form(self.rho_check, self.rho_check)

    def rho_pair_rho_check(self):
        """<rho, rho_check>."""
        return self.pair_weight_coweight(self.rho, self.rho_check)

    # -- presentation ------------------------------------------------------

    @property
    def cartan_type(self):
        return "%s%d" % (self.letter, self.rank)

    def __repr__(self):
        return "RootSystem(%s)" % self.cartan_type

    def to_json_dict(self):
        return {
            "type": self.letter,
            "rank": self.rank,
            "exponents": list(self.exponents),
            "coxeter_number": self.coxeter_number,
            "dual_coxeter_number": self.h_dual,
            "dim": self.dim,
        }


def build_root_system(type_label, rank):
    """Construct the root system of a simple type, e.g. ('A', 2)."""
    return RootSystem(type_label, int(rank))


class SemisimpleData:
    """A semisimple algebra as a list of simple factors with per-factor
    levels.  Level predicates and Casimir data restrict factorwise; the
    rest of the package works with one simple factor at a time."""

    def __init__(self, factors):
        self.factors = tuple((rs, Level(F(lvl.k if isinstance(lvl, Level)
                                           else lvl)))
                             for rs, lvl in factors)
        if not self.factors:
            raise DomainError("need at least one simple factor")

    def is_noncritical(self):
        return all(not lvl.is_critical(rs) for rs, lvl in self.factors)

    def is_negative(self):
        return all(lvl.is_negative(rs) for rs, lvl in self.factors)

    def is_positive(self):
        return all(not lvl.is_negative(rs) for rs, lvl in self.factors)

    def casimir_eigenvalue(self, lam_per_factor):
        if len(lam_per_factor) != len(self.factors):
            raise DomainError("one weight per simple factor required")
        return sum(casimir_eigenvalue(rs, lam)
                   for (rs, _), lam in zip(self.factors, lam_per_factor))

    def form_value(self, xs, ys):
        if len(xs) != len(self.factors) or len(ys) != len(self.factors):
            raise DomainError("one coweight per simple factor required")
        return sum(form_value(rs, lvl, x, y)
                   for (rs, lvl), x, y in zip(self.factors, xs, ys))


def form_value(rs, level, x, y):
    """kappa(x, y) = k * kappa_b(x, y) on coweights in omega-check
    coordinates."""
    if len(x) != rs.rank or len(y) != rs.rank:
        raise DomainError("coweight dimension mismatch with rank %d" % rs.rank)
    return level.k * rs.coweight_form(x, y)


def casimir_eigenvalue(rs, lam):
    """c1(Lam) = (Lam, Lam + 2 rho) under the basic-form normalization.

    The Casimir defined with respect to kappa = k * kappa_b acts on a
    highest-weight module of highest weight Lam by c1(Lam) / k.
    """
    lam = tuple(F(a) for a in lam)
    shifted = tuple(a + 2 * r for a, r in zip(lam, rs.rho))
    return rs.weight_form(lam, shifted)
