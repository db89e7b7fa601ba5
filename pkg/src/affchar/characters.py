"""Character-level content: Harish-Chandra projection, Verma characters on
both sides of the Drinfeld-Sokolov transform, simple characters from
parabolic canonical bases, and the label map of the reduction functor.

Energy offsets, with c1 = casimir_eigenvalue(Lam) and k the level ratio:

    E_Delta = c1 / (2(k + h_dual)) - (k/2) (rho_check, rho_check)
    E_M     = c1 / (2(k + h_dual)) - ((k + h_dual)/2) (rho_check, rho_check)
              + <rho, rho_check>

E_Delta is the lowest energy of the large-side Verma (offset against the
eta power -dim g), E_M of the W-algebra Verma (offset against -rank g).
The transform multiplies by q^{E_M - E_Delta} * prod (1-q^i)^{dim-rank},
whose exponent depends on the root system only.  These forms are
equivalent to the kappa/(2(kappa-kappa_c)) expressions because
kappa = k kappa_b and kappa_c = -h_dual kappa_b; the truncated-module
oracle in affchar.sugawara pins the conformal-weight summand.
"""

from fractions import Fraction
from dataclasses import dataclass

from .errors import DomainError
from .rootdata import Level, casimir_eigenvalue
from .qseries import QSeries, eta_factor
from .affine import (AffineWeylGroup, classify_weight, integral_system,
                     finite_dot_orbit, finite_dominant_representative)
from .hecke import (BruhatBall, ParabolicModule, inverse_multiplicity_matrix,
                    kl_polynomial)

F = Fraction


class CentralCharLabel:
    """A central character as the canonical (finite-dot-dominant) orbit
    representative of a weight, at a fixed level."""

    __slots__ = ("rs", "level", "rep")

    def __init__(self, rs, level, rep):
        self.rs = rs
        self.level = level
        self.rep = tuple(F(a) for a in rep)

    def __eq__(self, other):
        return (isinstance(other, CentralCharLabel)
                and self.rep == other.rep
                and self.level.k == other.level.k
                and self.rs.cartan_type == other.rs.cartan_type)

    def __hash__(self):
        return hash((self.rep, self.level.k, self.rs.cartan_type))

    def __repr__(self):
        return "chi[%s @ k=%s]" % (",".join(str(a) for a in self.rep),
                                   self.level.k)

    def orbit(self):
        return finite_dot_orbit(self.rs, self.rep)

    def to_json_dict(self):
        return {"representative": [str(a) for a in self.rep],
                "level": str(self.level.k)}


def hc_project(rs, lam, level):
    """pi(Lam): the finite dot orbit, labeled by its canonical element."""
    return CentralCharLabel(rs, level, finite_dominant_representative(rs, lam))


def finite_antidominant_element(rs, lam):
    """The w0-dot translate of lam: the antidominant element of its
    finite dot orbit."""
    orbit = finite_dot_orbit(rs, lam)
    anti = [w for w in orbit if all(w[i] + 1 <= 0 for i in range(rs.rank))]
    if not anti:
        raise AssertionError("finite dot orbit lacks an antidominant element")
    return min(anti)


@dataclass(frozen=True)
class EnergyOffsets:
    conformal_weight: Fraction  # c1 / (2(k + h_dual))
    e_delta: Fraction
    e_m: Fraction


def energy_offsets(chi):
    rs, level = chi.rs, chi.level
    level.require_noncritical(rs)
    c1 = casimir_eigenvalue(rs, chi.rep)
    denom = 2 * (level.k + rs.h_dual)
    conf = c1 / denom
    rr = rs.rho_check_normsq()
    e_delta = conf - level.k / 2 * rr
    e_m = conf - (level.k + rs.h_dual) / 2 * rr + rs.rho_pair_rho_check()
    return EnergyOffsets(conf, e_delta, e_m)


def ds_exponent(rs):
    """Level-independent prefactor exponent of the character transform."""
    return (-F(rs.h_dual, 2) * rs.rho_check_normsq()
            + rs.rho_pair_rho_check())


def ch_verma_Oprime(chi, trunc):
    """q^{E_Delta} * prod_{i>=1} (1 - q^i)^{-dim g}."""
    off = energy_offsets(chi)
    return eta_factor(1, -chi.rs.dim, trunc).shift(off.e_delta)


def ch_verma_W(chi, trunc):
    """q^{E_M} * prod_{i>=1} (1 - q^i)^{-rank g}."""
    off = energy_offsets(chi)
    return eta_factor(1, -chi.rs.rank, trunc).shift(off.e_m)


def ds_transform(series, rs, level=None):
    """Multiply a character by the Drinfeld-Sokolov prefactor
    q^{ds_exponent} * prod (1 - q^i)^{dim - rank}."""
    pref = eta_factor(1, rs.dim - rs.rank, series.trunc).shift(ds_exponent(rs))
    return series * pref


# ---------------------------------------------------------------------------
# module labels and the reduction functor on labels
# ---------------------------------------------------------------------------

VERMA, SIMPLE, DUAL_VERMA = "verma", "simple", "dual_verma"
KAC_MOODY, BABY_WHITTAKER, W_ALGEBRA = "kac_moody", "baby_whittaker", "w_algebra"


@dataclass(frozen=True)
class ModuleLabel:
    kind: str
    side: str
    parameter: object  # weight tuple on the Kac-Moody side, else a label
    level: Level

    def __post_init__(self):
        if self.kind not in (VERMA, SIMPLE, DUAL_VERMA):
            raise DomainError("unknown module kind %r" % (self.kind,))
        if self.side not in (KAC_MOODY, BABY_WHITTAKER, W_ALGEBRA):
            raise DomainError("unknown side %r" % (self.side,))
        if self.side == W_ALGEBRA and not isinstance(self.parameter,
                                                     CentralCharLabel):
            raise DomainError("W-algebra labels carry central characters")


class PsiZero:
    """The zero module as a label."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Zero"


ZERO = PsiZero()


def psi_s_label(rs, label, w0_twist=False):
    """Where the reduction functor sends a Kac-Moody-side label.

    Vermas go to Vermas and dual Vermas to dual Vermas with the projected
    central character.  A simple of highest weight Lam survives exactly
    when no finite simple pairing <Lam, alphacheck_i> is a nonnegative
    integer; otherwise it dies.  With ``w0_twist`` the survival condition
    is read off the antidominant orbit translate of Lam, the convention
    for the non-abstract Cartan.
    """
    if label.side != KAC_MOODY:
        raise DomainError("psi_s_label expects a Kac-Moody-side label")
    lam = tuple(F(a) for a in label.parameter)
    chi = hc_project(rs, lam, label.level)
    if label.kind == VERMA:
        return ModuleLabel(VERMA, W_ALGEBRA, chi, label.level)
    if label.kind == DUAL_VERMA:
        return ModuleLabel(DUAL_VERMA, W_ALGEBRA, chi, label.level)
    test = finite_antidominant_element(rs, lam) if w0_twist else lam
    for i in range(rs.rank):
        v = F(test[i])
        if v.denominator == 1 and v >= 0:
            return ZERO
    return ModuleLabel(SIMPLE, W_ALGEBRA, chi, label.level)


# ---------------------------------------------------------------------------
# simple characters from the parabolic canonical basis
# ---------------------------------------------------------------------------

@dataclass
class SimpleCharacter:
    series: QSeries
    w_word: tuple
    contributions: list   # (y word, integer coefficient, CentralCharLabel)
    minimal_words: list
    multiplicity_matrix: list
    inverse_matrix: list
    multiplicity_rule: str

    def to_json_dict(self):
        return {
            "w": list(self.w_word),
            "series": self.series.to_json_dict(),
            "contributions": [
                {"y": list(w), "coefficient": c, "chi": chi.to_json_dict()}
                for w, c, chi in self.contributions],
            "multiplicity_rule": self.multiplicity_rule,
        }


def ch_simple_W(lw, w_word, trunc, length_bound=8, height_bound=None,
                multiplicities="kl"):
    """ch L_w = sum_y c_{y,w} ch M_{pi(y . lam)} in the regular
    antidominant negative-level regime, where [c] inverts the
    Verma-to-simple multiplicity matrix at v = 1.

    ``multiplicities`` selects the rule producing [M_y : L_w]:

    * ``"kl"`` (default): P_{w,y}(1) on minimal coset representatives.
      This is what exactness of the reduction functor forces: it sends
      the large-side Vermas to Vermas, kills exactly the simples whose
      orbit element is not coset-minimal, and the negative-level
      large-side multiplicities are the KL values at 1.
    * ``"parabolic:q"`` / ``"parabolic:-1"``: the parabolic canonical
      basis of the corresponding one-dimensional induction, specialized
      at v = 1.  On the rank-one chain all three rules coincide; they
      differ in general and are kept for cross-convention comparison.
    """
    rs = lw.rs
    cls = classify_weight(lw)
    if not (cls.antidominant and cls.regular and lw.level.is_negative(rs)):
        raise DomainError(
            "simple characters are only computed for regular antidominant "
            "weights of negative level; classification: %s"
            % (cls.to_json_dict(),))
    if multiplicities not in ("kl", "parabolic:q", "parabolic:-1"):
        raise DomainError("unknown multiplicity rule %r" % (multiplicities,))
    if height_bound is None:
        height_bound = length_bound
    isys = integral_system(lw, height_bound)
    if not isys.simples:
        # trivial integral Weyl group: the block is a single Verma
        if tuple(w_word):
            raise DomainError(
                "trivial integral Weyl group: only w = e exists")
        chi = hc_project(rs, lw.lam, lw.level)
        return SimpleCharacter(ch_verma_W(chi, trunc), (), [((), 1, chi)],
                               [()], [[1]], [[1]], multiplicities)
    ball = BruhatBall(isys.coxeter_matrix, length_bound)
    parabolic = [i for i, cr in enumerate(isys.simples) if cr.m == 0]
    mod = ParabolicModule(ball, parabolic, "q")
    w_el = ball.element_by_word(tuple(w_word))
    if not mod.is_minimal(w_el):
        raise DomainError("w is not minimal in its finite coset")

    ideal = [y for y in mod.minimal_elements()
             if y.length <= w_el.length and ball.leq(y, w_el)]
    ideal.sort(key=lambda e: (e.length, e.word))
    pos = {y.key: i for i, y in enumerate(ideal)}
    n = len(ideal)
    mult = [[0] * n for _ in range(n)]
    if multiplicities == "kl":
        for j, w in enumerate(ideal):
            for i, y in enumerate(ideal):
                if ball.leq(y, w):
                    mult[i][j] = kl_polynomial(ball, y, w).eval_at_one()
    else:
        pmod = ParabolicModule(ball, parabolic, multiplicities.split(":")[1])
        for j, w in enumerate(ideal):
            basis = pmod.canonical_basis(w)
            for key, poly in basis.items():
                i = pos.get(key)
                if i is None:
                    raise AssertionError("canonical basis outside the ideal")
                mult[i][j] = poly.eval_at_one()
    cmat = inverse_multiplicity_matrix(mult)

    group = AffineWeylGroup(rs, lw.level)
    refls = [group.reflection_element(cr) for cr in isys.simples]

    def affine_of(word):
        el = group.identity
        for i in word:
            el = el.compose(refls[i])
        return el

    jcol = pos[w_el.key]
    series = None
    contributions = []
    for i, y in enumerate(ideal):
        coeff = cmat[i][jcol]
        if coeff == 0:
            continue
        mu = affine_of(y.word).act(lw)
        chi = hc_project(rs, mu.lam, lw.level)
        term = coeff * ch_verma_W(chi, trunc)
        series = term if series is None else series + term
        contributions.append((y.word, coeff, chi))
    return SimpleCharacter(series, tuple(w_word), contributions,
                           [y.word for y in ideal], mult, cmat,
                           multiplicities)
