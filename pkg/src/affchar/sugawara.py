"""Desk-scale oracle: truncated affine sl2 Verma modules with exact
normal-ordered Sugawara operators and spectral flow.

The module tracks PBW monomials

    f_0^j * prod e_{-n}^{a_n} h_{-n}^{b_n} f_{-n}^{c_n} |Lam>

with total depth sum n (a_n + b_n + c_n) <= depth_bound and j <= f0_bound.
Operator applications are straightened symbolically in the enveloping
algebra first and truncated only on the final PBW expression, so a
result is either exact or raises TruncationOverflow; no silent loss.

The Sugawara field is S(z) = sum S_n z^{-n-2} with

    S_n = 1/(2(k + h_dual)) * sum_j ( :e_j f_{n-j}: + :f_j e_{n-j}:
                                      + 1/2 :h_j h_{n-j}: ),

positive modes to the right; on any tracked vector only finitely many
terms act.  Spectral flow by an integral coweight lam_check of the
adjoint torus sends e_m -> e_{m+p}, f_m -> f_{m-p} (p = <alpha,
lam_check>) and h_0 -> h_0 + kappa(h, lam_check); the sign convention
matches the adolescent-Whittaker one (flag `flip_sign` gives the
opposite, Arakawa-style flow).

Structure constants are tabulated per letter so the construction is not
tied to rank one, but only the sl2 instance is exercised.
"""

from fractions import Fraction
from dataclasses import dataclass, field

from .errors import DomainError, TruncationOverflow
from .rootdata import build_root_system, casimir_eigenvalue

F = Fraction

# finite sl2 structure: [x, y] = sum coeff * letter, plus kappa_b(x, y)
_BRACKET = {
    ("e", "f"): ((1, "h"),),
    ("f", "e"): ((-1, "h"),),
    ("h", "e"): ((2, "e"),),
    ("e", "h"): ((-2, "e"),),
    ("h", "f"): ((-2, "f"),),
    ("f", "h"): ((2, "f"),),
    ("e", "e"): (),
    ("f", "f"): (),
    ("h", "h"): (),
}
_KAPPA_B = {("e", "f"): F(1), ("f", "e"): F(1), ("h", "h"): F(2)}
_RANK = {"e": 0, "h": 1, "f": 2}
_WEIGHT = {"e": 2, "h": 0, "f": -2}


def _key(gen):
    letter, mode = gen
    return (-mode, _RANK[letter])


def _is_creation(gen):
    letter, mode = gen
    return mode < 0 or (letter == "f" and mode == 0)


class GradedModule:
    """Truncated Verma module for affine sl2 at level k with highest
    weight Lam = a * omega."""

    def __init__(self, a, k, depth_bound, f0_bound):
        if depth_bound > 8:
            est = self._size_estimate(depth_bound, f0_bound)
            raise DomainError(
                "depth bound %d exceeds the supported window "
                "(estimated basis size %d)" % (depth_bound, est))
        self.rs = build_root_system("A", 1)
        self.a = F(a)
        self.k = F(k)
        if self.k == -2:
            raise DomainError("critical level k = -2 is excluded")
        self.depth_bound = depth_bound
        self.f0_bound = f0_bound
        self._nf_cache = {}
        self._smode_cache = {}
        self.basis = self._enumerate_basis()

    @staticmethod
    def _size_estimate(depth_bound, f0_bound):
        # coefficients of prod (1-q^i)^{-3} times the zero-mode tail
        coeffs = [1] + [0] * depth_bound
        for i in range(1, depth_bound + 1):
            for _ in range(3):
                for n in range(i, depth_bound + 1):
                    coeffs[n] += coeffs[n - i]
        return sum(coeffs) * (f0_bound + 1)

    def _enumerate_basis(self):
        by_depth = {0: [()]}
        gens = [("e", -n) for n in range(1, self.depth_bound + 1)]
        gens += [("h", -n) for n in range(1, self.depth_bound + 1)]
        gens += [("f", -n) for n in range(1, self.depth_bound + 1)]
        gens.sort(key=_key)

        def extend(prefix, start, depth_left):
            out = [tuple(prefix)]
            for gi in range(start, len(gens)):
                g = gens[gi]
                if -g[1] <= depth_left:
                    prefix.append(g)
                    out.extend(extend(prefix, gi, depth_left + g[1]))
                    prefix.pop()
            return out

        monos = extend([], 0, self.depth_bound)
        basis = []
        for j in range(self.f0_bound + 1):
            head = (("f", 0),) * j
            for m in monos:
                basis.append(head + m)
        basis.sort(key=lambda m: (self.depth(m), m))
        return basis

    # -- gradings ---------------------------------------------------------

    @staticmethod
    def depth(mono):
        return -sum(mode for _, mode in mono)

    def weight(self, mono):
        return self.a + sum(_WEIGHT[l] for l, _ in mono)

    def f0_count(self, mono):
        return sum(1 for g in mono if g == ("f", 0))

    # -- exact straightening ------------------------------------------------

    def _vacuum_action(self, gen):
        """Value of a non-creation generator on |Lam>: scalar or zero."""
        letter, mode = gen
        if mode > 0:
            return F(0)
        if letter == "h":   # mode == 0
            return self.a
        return F(0)  # e_0 kills the highest weight vector
        # (f_0 is a creation operator and never reaches here)

    def _bracket(self, g1, g2):
        """[g1, g2] as (list of (coeff, gen), central scalar)."""
        (l1, m1), (l2, m2) = g1, g2
        terms = [(F(c), (l, m1 + m2)) for c, l in _BRACKET[(l1, l2)]]
        central = F(0)
        if m1 + m2 == 0:
            central = F(m1) * self.k * _KAPPA_B.get((l1, l2), F(0))
        return terms, central

    def apply_gen(self, g, mono):
        """Exact PBW expansion of g . mono in the untruncated Verma
        module; memoized, no window check."""
        key = (g, mono)
        got = self._nf_cache.get(key)
        if got is not None:
            return got
        res = self._apply_gen_uncached(g, mono)
        self._nf_cache[key] = res
        return res

    def _apply_gen_uncached(self, g, mono):
        if not mono:
            if _is_creation(g):
                return {(g,): F(1)}
            val = self._vacuum_action(g)
            return {(): val} if val != 0 else {}
        head = mono[0]
        if _is_creation(g) and _key(g) <= _key(head):
            return {(g,) + mono: F(1)}
        rest = mono[1:]
        out = {}
        # g . head . rest = head . (g . rest) + [g, head] . rest
        for m, c in self.apply_gen(g, rest).items():
            for m2, c2 in self.apply_gen(head, m).items():
                out[m2] = out.get(m2, F(0)) + c * c2
        terms, central = self._bracket(g, head)
        for coeff, t in terms:
            for m, c in self.apply_gen(t, rest).items():
                out[m] = out.get(m, F(0)) + coeff * c
        if central != 0:
            out[rest] = out.get(rest, F(0)) + central
        return {m: c for m, c in out.items() if c != 0}

    def _check_window(self, vec, context):
        for mono, c in vec.items():
            if c == 0:
                continue
            if (self.depth(mono) > self.depth_bound
                    or self.f0_count(mono) > self.f0_bound):
                raise TruncationOverflow(
                    "result of %s leaves the tracked window at %r"
                    % (context, mono), witness=mono)
        return vec

    def apply_word(self, word, mono):
        """Exact action of a product of generator modes on a basis
        monomial; raises TruncationOverflow if the exact result has
        support outside the window.  Intermediate states are exact PBW
        vectors of the full Verma module, so the check cannot fire
        spuriously."""
        vec = {tuple(mono): F(1)}
        for g in reversed(tuple(word)):
            nxt = {}
            for m, c in vec.items():
                for m2, c2 in self.apply_gen(g, m).items():
                    nxt[m2] = nxt.get(m2, F(0)) + c * c2
            vec = nxt
        vec = {m: c for m, c in vec.items() if c != 0}
        return self._check_window(vec, word)

    def apply_word_vec(self, word, vec):
        out = {}
        for mono, c in vec.items():
            for m2, c2 in self.apply_word(word, mono).items():
                out[m2] = out.get(m2, F(0)) + c * c2
        return {m: c for m, c in out.items() if c != 0}

    # -- sampled bracket verification ----------------------------------------

    def verify_brackets(self, modes=(-1, 0, 1), letters=("e", "h", "f"),
                        sample_vectors=None):
        """Check [X_m, Y_n] v = (bracket) v on sample vectors; returns the
        number of identities checked, raising on any mismatch."""
        if sample_vectors is None:
            sample_vectors = [m for m in self.basis
                              if self.depth(m) <= max(1, self.depth_bound - 2)
                              and self.f0_count(m) < self.f0_bound][:12]
        checked = 0
        for l1 in letters:
            for l2 in letters:
                for m1 in modes:
                    for m2 in modes:
                        g1, g2 = (l1, m1), (l2, m2)
                        terms, central = self._bracket(g1, g2)
                        for v in sample_vectors:
                            try:
                                lhs = self.apply_word((g1, g2), v)
                                rhs0 = self.apply_word((g2, g1), v)
                            except TruncationOverflow:
                                continue
                            rhs = {m: -c for m, c in rhs0.items()}
                            for m, c in lhs.items():
                                rhs[m] = rhs.get(m, F(0)) + c
                            expect = {}
                            for coeff, g in terms:
                                for m, c in self.apply_word((g,), v).items():
                                    expect[m] = expect.get(m, F(0)) + coeff * c
                            if central != 0:
                                expect[v] = expect.get(v, F(0)) + central
                            rhs = {m: c for m, c in rhs.items() if c != 0}
                            expect = {m: c for m, c in expect.items() if c != 0}
                            if rhs != expect:
                                raise AssertionError(
                                    "bracket mismatch for %s,%s on %r"
                                    % (g1, g2, v))
                            checked += 1
        return checked


def build_truncated_verma(a, k, depth_bound, f0_bound):
    """Verma module oracle with explicit truncation window; build-time
    sampled bracket verification."""
    m = GradedModule(a, k, depth_bound, f0_bound)
    m.verify_brackets(modes=(-1, 1), letters=("e", "f"))
    return m


# ---------------------------------------------------------------------------
# coweight data for twists
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoweightData:
    """An integral coweight of the adjoint torus for spectral flow."""

    coords: tuple  # fundamental-coweight coordinates

    def pairing_with_root(self, rs):
        alpha = rs.root_to_weight_coords((F(1),))
        p = rs.pair_weight_coweight(alpha, self.coords)
        if p.denominator != 1:
            raise DomainError(
                "coweight %r is not a cocharacter of the adjoint torus"
                % (self.coords,))
        return int(p)

    def h_coefficient(self, rs):
        """lam_check = x * alphacheck; returns x."""
        return rs.coweight_to_coroot_coords(self.coords)[0]

    def kappa_with_h(self, rs, k):
        """kappa(alphacheck, lam_check)."""
        acheck = rs.simple_coroots[0]
        return F(k) * rs.coweight_form(acheck, self.coords)

    def kappa_self(self, rs, k):
        return F(k) * rs.coweight_form(self.coords, self.coords)


RHO_CHECK = CoweightData((F(1),))
ALPHA_CHECK = CoweightData((F(2),))
TWO_RHO_CHECK = CoweightData((F(2),))


class SpectralFlow:
    """The automorphism Ad_{t^{lam_check}} on generator modes.

    ``flip_sign`` selects the opposite flow (the Arakawa and
    Frenkel-Kac-Wakimoto convention), i.e. the flow of -lam_check.
    """

    def __init__(self, module, lam_check, flip_sign=False):
        self.module = module
        if flip_sign:
            lam_check = CoweightData(tuple(-c for c in lam_check.coords))
        self.lam_check = lam_check
        rs = module.rs
        self.p = lam_check.pairing_with_root(rs)
        self.h_shift = lam_check.kappa_with_h(rs, module.k)
        self.kappa_self = lam_check.kappa_self(rs, module.k)

    def gen_image(self, gen):
        """Ad(gen) as [(coeff, gen or None)]; None marks a scalar."""
        letter, mode = gen
        if letter == "e":
            return [(F(1), ("e", mode + self.p))]
        if letter == "f":
            return [(F(1), ("f", mode - self.p))]
        out = [(F(1), ("h", mode))]
        if mode == 0 and self.h_shift != 0:
            out.append((self.h_shift, None))
        return out

    def apply_twisted_word(self, word, mono):
        """Exact action of Ad(word gens) on a basis monomial."""
        expansions = [self.gen_image(g) for g in word]
        out = {}

        def rec(idx, gens, scalar):
            if idx == len(expansions):
                for m, c in self.module.apply_word(tuple(gens), mono).items():
                    out[m] = out.get(m, F(0)) + scalar * c
                return
            for coeff, g in expansions[idx]:
                if g is None:
                    rec(idx + 1, gens, scalar * coeff)
                else:
                    gens.append(g)
                    rec(idx + 1, gens, scalar * coeff)
                    gens.pop()

        rec(0, [], F(1))
        return {m: c for m, c in out.items() if c != 0}


class TwistedModule:
    """The underlying space of a GradedModule with the action composed
    with a spectral flow."""

    def __init__(self, module, lam_check, flip_sign=False):
        self.module = module
        self.flow = SpectralFlow(module, lam_check, flip_sign)
        self.basis = module.basis

    def apply_word(self, word, mono):
        return self.flow.apply_twisted_word(word, mono)


def spectral_flow_twist(module, lam_check, flip_sign=False):
    if not isinstance(lam_check, CoweightData):
        lam_check = CoweightData(tuple(lam_check))
    lam_check.pairing_with_root(module.rs)  # validates integrality
    return TwistedModule(module, lam_check, flip_sign)


# ---------------------------------------------------------------------------
# Sugawara modes
# ---------------------------------------------------------------------------

def _sugawara_terms(n, lo, hi):
    """The normal-ordered quadratic terms of S_n with first-acting mode
    in [lo, hi]: list of (scale, (gen_left, gen_right)).  The h-tower is
    folded over j <-> n-j so each unordered pair appears once."""
    out = []
    for j in range(lo, hi + 1):
        for l1, l2 in (("e", "f"), ("f", "e")):
            g1, g2 = (l1, j), (l2, n - j)
            if j <= n - j:
                out.append((F(1), (g1, g2)))
            else:
                out.append((F(1), (g2, g1)))
        if 2 * j <= n and n - j <= hi:
            scale = F(1, 2) if 2 * j == n else F(1)
            out.append((scale, (("h", j), ("h", n - j))))
    return out


class ModeOperator:
    """A mode operator with sparse action on the module basis."""

    def __init__(self, module, label, degree, apply_fn):
        self.module = module
        self.label = label
        self.degree = degree
        self._apply = apply_fn
        self._table = None

    def apply(self, mono):
        return self._apply(mono)

    def apply_vec(self, vec):
        out = {}
        for mono, c in vec.items():
            for m2, c2 in self.apply(mono).items():
                out[m2] = out.get(m2, F(0)) + c * c2
        return {m: c for m, c in out.items() if c != 0}

    def table(self):
        """Sparse action table; entries that overflow the window map to
        the TruncationOverflow marker."""
        if self._table is None:
            t = {}
            for mono in self.module.basis:
                try:
                    t[mono] = self.apply(mono)
                except TruncationOverflow as exc:
                    t[mono] = exc
            self._table = t
        return self._table

    def __repr__(self):
        return "ModeOperator(%s)" % (self.label,)


def sugawara_mode(module, n, twist=None):
    """S_n as an exact operator; with `twist`, the flowed operator
    Ad_{t^{lam_check}} S_n (each factor flowed, same index set)."""
    if abs(n) > module.depth_bound:
        raise DomainError("|n| exceeds the depth window")
    pref = 1 / (2 * (module.k + module.rs.h_dual))
    # a term is nonzero only if its first-acting flowed mode is at most
    # the depth; flowing shifts e/f indices by at most |p|
    pad = 0 if twist is None else abs(twist.flow.p)

    shift = {"e": 0, "f": 0, "h": 0}
    if twist is not None:
        shift = {"e": twist.flow.p, "f": -twist.flow.p, "h": 0}
    images = (None if twist is None
              else {})

    def gen_images(g):
        if twist is None:
            return [(F(1), g)]
        got = images.get(g)
        if got is None:
            got = twist.flow.gen_image(g)
            images[g] = got
        return got

    def compute(mono):
        d = module.depth(mono)
        lo, hi = n - d - pad, d + pad
        apply_gen = module.apply_gen
        out = {}
        for scale, (g1, g2) in _sugawara_terms(n, lo, hi):
            # the rightmost factor acts first; if its (flowed) mode
            # exceeds the depth it annihilates the vector exactly
            if g2[1] + shift[g2[0]] > d:
                continue
            coeff = pref * scale
            for c2, h2 in gen_images(g2):
                inter = {mono: F(1)} if h2 is None else apply_gen(h2, mono)
                for c1, h1 in gen_images(g1):
                    cc = coeff * c1 * c2
                    if h1 is None:
                        for m, c in inter.items():
                            out[m] = out.get(m, F(0)) + cc * c
                    else:
                        for m, c in inter.items():
                            for m2, c2b in apply_gen(h1, m).items():
                                out[m2] = out.get(m2, F(0)) + cc * c * c2b
        out = {m: c for m, c in out.items() if c != 0}
        # the accumulated dict is the exact expansion in the untruncated
        # Verma module; only now does the window matter
        return module._check_window(out, "S_%d" % n)

    if twist is None:
        def apply_fn(mono):
            key = (n, mono)
            got = module._smode_cache.get(key)
            if got is None:
                try:
                    got = compute(mono)
                except TruncationOverflow as exc:
                    module._smode_cache[key] = exc
                    raise
                module._smode_cache[key] = got
            elif isinstance(got, TruncationOverflow):
                raise got
            return got
    else:
        apply_fn = compute

    label = "S_%d" % n if twist is None else "Ad S_%d" % n
    return ModeOperator(module, label, n, apply_fn)


def coweight_mode(module, lam_check, n):
    """lam_check_n = x h_n for lam_check = x alphacheck."""
    x = lam_check.h_coefficient(module.rs)

    def apply_fn(mono):
        return {m: x * c for m, c in module.apply_word((("h", n),), mono).items()}

    return ModeOperator(module, "lam_%d" % n, n, apply_fn)


# ---------------------------------------------------------------------------
# the spectral-flow identity check
# ---------------------------------------------------------------------------

@dataclass
class DssReport:
    lam_check: tuple
    n: int
    k: Fraction
    depth_bound: int
    tested: int = 0
    skipped: int = 0
    mismatches: list = field(default_factory=list)
    hw_expected: Fraction = None
    hw_actual: Fraction = None

    @property
    def passed(self):
        return (not self.mismatches and self.tested > 0
                and self.hw_expected == self.hw_actual)

    def to_json_dict(self):
        return {
            "lam_check": [str(c) for c in self.lam_check],
            "n": self.n,
            "k": str(self.k),
            "depth": self.depth_bound,
            "tested": self.tested,
            "skipped": self.skipped,
            "mismatches": len(self.mismatches),
            "hw_shift_expected": str(self.hw_expected),
            "hw_shift_actual": str(self.hw_actual),
            "passed": self.passed,
        }


def check_dss(module, lam_check, n, flip_sign=False):
    """Assert Ad_{t^{lam_check}} S_n = S_n + lam_check_n
    + delta_{n,0} kappa(lam_check, lam_check)/2 on every window vector
    where both sides act exactly, and pin the flowed energy of the
    highest-weight line."""
    if not isinstance(lam_check, CoweightData):
        lam_check = CoweightData(tuple(lam_check))
    twisted = spectral_flow_twist(module, lam_check, flip_sign)
    lhs_op = sugawara_mode(module, n, twist=twisted)
    rhs_s = sugawara_mode(module, n)
    rhs_l = coweight_mode(module, lam_check, n)
    const = twisted.flow.kappa_self / 2 if n == 0 else F(0)

    report = DssReport(lam_check.coords, n, module.k, module.depth_bound)
    for mono in module.basis:
        try:
            lhs = lhs_op.apply(mono)
            rhs = dict(rhs_s.apply(mono))
            for m, c in rhs_l.apply(mono).items():
                rhs[m] = rhs.get(m, F(0)) + c
            if const != 0:
                rhs[mono] = rhs.get(mono, F(0)) + const
            rhs = {m: c for m, c in rhs.items() if c != 0}
        except TruncationOverflow:
            report.skipped += 1
            continue
        if lhs != rhs:
            report.mismatches.append((mono, lhs, rhs))
        report.tested += 1

    # Flowed conformal weight of the unit line: twist by -lam_check and
    # apply S_0 + lam_check_0; the eigenvalue drops by kappa(l,l)/2.
    neg = CoweightData(tuple(-c for c in lam_check.coords))
    tw_neg = spectral_flow_twist(module, neg)
    s0 = sugawara_mode(module, 0, twist=tw_neg)
    l0 = coweight_mode(module, lam_check, 0)
    vac = ()
    vec = dict(s0.apply(vac))
    # lam_check_0 twisted by -lam_check: h_0 picks up -kappa(h, lam_check)
    for m, c in tw_neg.apply_word((("h", 0),), vac).items():
        x = lam_check.h_coefficient(module.rs)
        vec[m] = vec.get(m, F(0)) + x * c
    actual = vec.get(vac, F(0))
    if set(m for m, c in vec.items() if c != 0) - {vac}:
        raise AssertionError("flowed energy operator does not fix the unit line")
    c1 = casimir_eigenvalue(module.rs, (module.a,))
    expected = (c1 / (2 * (module.k + module.rs.h_dual))
                - lam_check.kappa_self(module.rs, module.k) / 2)
    report.hw_expected = expected
    report.hw_actual = actual
    return report
