"""Effective formulas and the main counting/search experiments.

Covers the Galois parameters (N, genus) with both bookkeeping tracks, the
Geyer-Jarden Chebotarev lower bound, the explicit application bound with
its threshold, exhaustive irreducible-specialization counting over all
lines x = a*t + b, and the constructive simultaneous-specialization search.

Bound comparisons are carried out on outward-rounded rational enclosures,
never on floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .bivar import BivariatePoly, is_smooth
from .errors import DegreeTooSmall, HypothesisViolation, NotFoundWithinBudget
from .field import make_field
from .intervals import mul_bounds, q_pow_half_bounds, q_pow_quarter_bounds, sqrt_bounds
from .parallel import pmap
from .unipoly import UnivariatePoly, factor, is_irreducible


# ---------------------------------------------------------------------------
# Galois parameters


@dataclass
class GaloisData:
    degrees: tuple
    N: int
    genus_closure: int
    genus_sanity: int | None      # independent oracle, n = 1, d = 2 only
    branch_degrees: tuple         # 2 g_i - 2 + 2 d_i
    discrepancy: bool

    def as_dict(self):
        return {
            "degrees": list(self.degrees),
            "N": self.N,
            "genus_closure": self.genus_closure,
            "genus_sanity": self.genus_sanity,
            "branch_degrees": list(self.branch_degrees),
            "discrepancy": self.discrepancy,
        }


def galois_parameters(curves) -> GaloisData:
    """N and genus data for a list of curves (degrees, or CurveReports)."""
    degrees = tuple(c if isinstance(c, int) else c.d for c in curves)
    if not degrees or any(d < 2 for d in degrees):
        raise HypothesisViolation("all curve degrees must be >= 2")
    N = 1
    for d in degrees:
        N *= factorial(d)
    genus_each = [((d - 1) * (d - 2)) // 2 for d in degrees]
    total = sum(g - 1 + d for g, d in zip(genus_each, degrees))
    genus_closure = 1 - N + N * total
    genus_sanity = None
    if len(degrees) == 1 and degrees[0] == 2:
        # a degree-2 cover is its own Galois closure: genus of the conic
        genus_sanity = 0
    branch_degrees = tuple(2 * g - 2 + 2 * d
                           for g, d in zip(genus_each, degrees))
    return GaloisData(
        degrees, N, genus_closure, genus_sanity, branch_degrees,
        discrepancy=(genus_sanity is not None and genus_sanity != genus_closure))


def genus_closed_form(d: int, N: int) -> int:
    """Closed form g = 1 + (N/2)(d-2)(d+1) for a single degree-d curve."""
    num = N * (d - 2) * (d + 1)
    assert num % 2 == 0
    return 1 + num // 2


# ---------------------------------------------------------------------------
# Bounds


def geyer_jarden_rhs_bounds(q, s, N, g):
    """Outward enclosure of (1/N)(q^s - (N+2g)q^{s/2} - N q^{s/4} - 2(g+N))."""
    half = q_pow_half_bounds(q, s)
    quarter = q_pow_quarter_bounds(q, s)
    qs = Fraction(q) ** s
    lo = (qs - (N + 2 * g) * half[1] - N * quarter[1] - 2 * (g + N)) / N
    hi = (qs - (N + 2 * g) * half[0] - N * quarter[0] - 2 * (g + N)) / N
    return lo, hi


def geyer_jarden_rhs(q, s, N, g) -> float:
    lo, hi = geyer_jarden_rhs_bounds(q, s, N, g)
    return float((lo + hi) / 2)


@dataclass
class BoundReport:
    q: int
    d: int
    N: int
    app_threshold_ok: bool
    app_bound: float
    app_bound_lo: Fraction
    app_bound_hi: Fraction
    positive: bool

    def as_dict(self):
        return {
            "q": self.q,
            "d": self.d,
            "N": self.N,
            "app_threshold_ok": self.app_threshold_ok,
            "app_bound": self.app_bound,
            "positive": self.positive,
        }


def application_bound(q: int, d: int) -> BoundReport:
    """(1/d!)(q - d^4/2)(q - 3(d(d-1)d! + 2) sqrt(q) - d!), with threshold
    q > 9 (d(d-1)d! + 2)^2."""
    if d < 2:
        raise DegreeTooSmall("the application bound needs d >= 2")
    dfact = factorial(d)
    K = d * (d - 1) * dfact + 2
    threshold_ok = q > 9 * K * K
    f1 = Fraction(q) - Fraction(d ** 4, 2)
    sq = sqrt_bounds(q)
    f2 = (Fraction(q) - 3 * K * sq[1] - dfact,
          Fraction(q) - 3 * K * sq[0] - dfact)
    lo, hi = mul_bounds((f1, f1), f2)
    lo, hi = lo / dfact, hi / dfact
    return BoundReport(
        q=q, d=d, N=dfact,
        app_threshold_ok=threshold_ok,
        app_bound=float((lo + hi) / 2),
        app_bound_lo=lo, app_bound_hi=hi,
        positive=lo > 0,
    )


# ---------------------------------------------------------------------------
# Exhaustive counting over lines x = a t + b


@dataclass
class CountReport:
    q: int
    total_pairs: int
    count_full_degree: int
    count_inclusive: int
    mode: str

    def as_dict(self):
        return {
            "q": self.q,
            "total_pairs": self.total_pairs,
            "count_full_degree": self.count_full_degree,
            "count_inclusive": self.count_inclusive,
            "density": self.count_inclusive / self.total_pairs,
            "mode": self.mode,
        }


def _check_char(f: BivariatePoly):
    d = f.total_degree()
    if d < 2:
        raise HypothesisViolation("counting needs total degree >= 2")
    if (d * (d - 1)) % f.field.p == 0:
        raise HypothesisViolation(
            f"characteristic {f.field.p} divides d(d-1) = {d * (d - 1)}")


def count_irreducible_pairs(f: BivariatePoly, E, mode: str = "inclusive",
                            threads: int = 1) -> CountReport:
    """Exact counts of (a, b) in E^2 with f(t, a t + b) irreducible.

    count_full_degree additionally requires deg_t = d; count_inclusive
    admits any irreducible specialization of degree >= 1.
    """
    _check_char(f)
    if f.field != E:
        f = f.map_to(E)
    d = f.total_degree()
    if E.k == 1 and d <= 3:
        full, incl = _count_prime_fast(f, E, threads)
    else:
        full, incl = _count_generic(f, E, threads)
    return CountReport(q=E.q, total_pairs=E.q ** 2,
                       count_full_degree=full, count_inclusive=incl,
                       mode=mode)


def _count_generic(f: BivariatePoly, E, threads: int):
    d = f.total_degree()

    def work(ai):
        a = E.element_at(ai)
        full = incl = 0
        for bi in range(E.q):
            g = f.restrict_to_line(a, E.element_at(bi))
            dg = g.degree()
            if dg < 1:
                continue
            if _is_irreducible_small(g):
                incl += 1
                if dg == d:
                    full += 1
        return full, incl

    parts = pmap(work, range(E.q), threads)
    return sum(p[0] for p in parts), sum(p[1] for p in parts)


def _is_irreducible_small(g: UnivariatePoly) -> bool:
    E = g.field
    dg = g.degree()
    if dg == 1:
        return True
    if dg == 2:
        a0, a1, a2 = g.coeffs
        disc = E.sub(E.mul(a1, a1), E.scalar(4, E.mul(a0, a2)))
        return disc != E.zero and not E.is_square(disc)
    if dg == 3:
        if not g.gcd(g.derivative()).is_constant():
            return False
        x = UnivariatePoly.x(E)
        return (x.pow_mod(E.q, g) - x).gcd(g).degree() == 0
    return is_irreducible(g)


def _coeff_polys_in_b(f: BivariatePoly, a_int: int, p: int):
    """For fixed a over a prime field: the coefficient of t^m in
    f(t, a t + b) as an integer-coefficient polynomial in b (low-to-high)."""
    from math import comb
    d = f.total_degree()
    polys = [[0] * (d + 1) for _ in range(d + 1)]
    apow = [1] * (d + 1)
    for l in range(1, d + 1):
        apow[l] = (apow[l - 1] * a_int) % p
    for (i, j), c in f.terms.items():
        ci = c[0]
        for l in range(j + 1):
            m = i + l
            polys[m][j - l] = (polys[m][j - l]
                               + ci * comb(j, l) * apow[l]) % p
    return polys


def _count_prime_fast(f: BivariatePoly, E, threads: int):
    """numpy fast path for prime fields and d <= 3."""
    p = E.p
    d = f.total_degree()
    B = np.arange(p, dtype=np.int64)
    nonsquare = np.ones(p, dtype=bool)
    nonsquare[(B * B) % p] = False
    curve_b = None
    if d == 3:
        t_pts, x_pts = _curve_points_prime(f, p)

    def eval_poly(coeffs):
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(coeffs):
            acc = (acc * B + c) % p
        return acc

    def work(a):
        polys = _coeff_polys_in_b(f, a, p)
        full = incl = 0
        lead = polys[d][0]  # coefficient of t^d is b-independent
        if d == 3 and lead:
            has_root = np.zeros(p, dtype=bool)
            if t_pts.size:
                has_root[(x_pts - a * t_pts) % p] = True
            n_irr = int(p - np.count_nonzero(has_root))
            return n_irr, n_irr
        # degrees <= 2 (either d == 2, or the cubic coefficient vanished)
        c2 = eval_poly(polys[2]) if d >= 2 else np.zeros(p, dtype=np.int64)
        c1 = eval_poly(polys[1])
        c0 = eval_poly(polys[0])
        quad = c2 != 0
        disc = (c1 * c1 - 4 * c0 * c2) % p
        irr2 = quad & nonsquare[disc]
        n2 = int(np.count_nonzero(irr2))
        lin = (~quad) & (c1 != 0)
        incl = n2 + int(np.count_nonzero(lin))
        full = n2 if d == 2 else 0
        return full, incl

    parts = pmap(work, range(p), threads)
    return sum(w[0] for w in parts), sum(w[1] for w in parts)


def _curve_points_prime(f: BivariatePoly, p: int):
    """All affine points of f = 0 over F_p as (t_array, x_array)."""
    slices = f.x_coefficients()  # coefficient of x^j as poly in t
    xs = np.arange(p, dtype=np.int64)
    chunk = max(1, (1 << 22) // p)
    t_out, x_out = [], []
    for start in range(0, p, chunk):
        ts = np.arange(start, min(start + chunk, p), dtype=np.int64)
        cj = []
        for poly in slices:
            acc = np.zeros(ts.shape[0], dtype=np.int64)
            for c in reversed(poly.coeffs):
                acc = (acc * ts + c[0]) % p
            cj.append(acc)
        vals = np.zeros((ts.shape[0], p), dtype=np.int64)
        for arr in reversed(cj):
            vals = (vals * xs[np.newaxis, :] + arr[:, np.newaxis]) % p
        ti, xi = np.nonzero(vals == 0)
        t_out.append(ts[ti])
        x_out.append(xs[xi])
    return np.concatenate(t_out), np.concatenate(x_out)


# ---------------------------------------------------------------------------
# Hypothesis checks and the simultaneous-specialization search


def check_hypotheses(fs, E):
    """Raise HypothesisViolation unless every curve satisfies the
    hypotheses (p odd, p does not divide d(d-1), smooth, certified
    irreducible) and the curves are pairwise non-proportional."""
    from .lifting import bivariate_irreducible
    if E.p == 2:
        raise HypothesisViolation("the characteristic must be odd")
    for f in fs:
        d = f.total_degree()
        if d < 2:
            raise HypothesisViolation("curve degrees must be >= 2")
        if (d * (d - 1)) % E.p == 0:
            raise HypothesisViolation(
                f"characteristic {E.p} divides d(d-1) = {d * (d - 1)}")
        smooth, witness = is_smooth(f)
        if not smooth:
            raise HypothesisViolation(
                f"curve {f.format()} is singular at {witness.point}")
        cert = bivariate_irreducible(f)
        if cert.status == "reducible":
            raise HypothesisViolation(
                f"curve {f.format()} is reducible: {cert.factor.format()}")
        if cert.status == "inconclusive":
            raise HypothesisViolation(
                f"irreducibility of {f.format()} could not be certified")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if _proportional(fs[i], fs[j]):
                raise HypothesisViolation(
                    "curves must be pairwise non-proportional")


def _proportional(f: BivariatePoly, g: BivariatePoly) -> bool:
    if set(f.terms) != set(g.terms):
        return False
    E = f.field
    key = next(iter(f.terms))
    ratio = E.mul(g.terms[key], E.inv(f.terms[key]))
    return all(E.mul(c, ratio) == g.terms[ij] for ij, c in f.terms.items())


@dataclass
class SpecializationResult:
    s: int
    a: tuple
    b: tuple
    witnesses: list               # per-curve factorization summaries

    def as_dict(self):
        return {
            "witness": {"s": self.s, "a": list(self.a), "b": list(self.b)},
            "verification": self.witnesses,
        }


def find_specialization(fs, base_field, s_max: int, mode: str = "full",
                        threads: int = 1) -> SpecializationResult:
    """Smallest s <= s_max and lexicographically first (a, b) in F_{q^s}^2
    making every f(t, a t + b) irreducible (at full degree unless
    mode='inclusive'); witnesses are re-verified through factor()."""
    if isinstance(fs, BivariatePoly):
        fs = [fs]
    check_hypotheses(fs, base_field)
    degrees = [f.total_degree() for f in fs]
    for s in range(1, s_max + 1):
        E = make_field(base_field.p, base_field.k * s)
        fsE = [f.map_to(E) for f in fs]

        def try_a(ai):
            a = E.element_at(ai)
            for bi in range(E.q):
                b = E.element_at(bi)
                ok = True
                for fE, d in zip(fsE, degrees):
                    g = fE.restrict_to_line(a, b)
                    dg = g.degree()
                    if mode == "full" and dg != d:
                        ok = False
                        break
                    if dg < 1 or not _is_irreducible_small(g):
                        ok = False
                        break
                if ok:
                    return ai, bi
            return None

        hits = [h for h in pmap(try_a, range(E.q), threads) if h is not None]
        if hits:
            ai, bi = min(hits)
            a, b = E.element_at(ai), E.element_at(bi)
            witnesses = []
            for fE in fsE:
                g = fE.restrict_to_line(a, b)
                unit, facs = factor(g)
                assert len(facs) == 1 and facs[0][1] == 1
                witnesses.append({
                    "restriction": g.format("t"),
                    "irreducible_factor": facs[0][0].format("t"),
                    "degree": g.degree(),
                })
            return SpecializationResult(s, a, b, witnesses)
    raise NotFoundWithinBudget(
        f"no witness up to s = {s_max}; raise s_max")


# ---------------------------------------------------------------------------
# End-to-end application verdict


def verify_application(f: BivariatePoly, E, threads: int = 1) -> dict:
    """Bundle of hypothesis checks, threshold, bound and exhaustive count."""
    from .lifting import bivariate_irreducible
    report = {"q": E.q}
    d = f.total_degree()
    report["d"] = d
    try:
        _check_char(f)
        smooth, witness = is_smooth(f)
        cert = bivariate_irreducible(f)
        report["smooth"] = smooth
        report["irreducible"] = cert.status
        if not smooth or cert.status != "irreducible":
            report["verdict"] = "HYPOTHESIS_FAIL"
            return report
    except HypothesisViolation as exc:
        report["verdict"] = "HYPOTHESIS_FAIL"
        report["reason"] = str(exc)
        return report
    bound = application_bound(E.q, d)
    counts = count_irreducible_pairs(f, E, threads=threads)
    report["app_threshold_ok"] = bound.app_threshold_ok
    report["app_bound"] = bound.app_bound
    report["count_full_degree"] = counts.count_full_degree
    report["count_inclusive"] = counts.count_inclusive
    if not bound.app_threshold_ok:
        report["verdict"] = "THRESHOLD_NOT_MET"
    elif bound.app_bound_hi <= 0:
        report["verdict"] = "PASS"
        report["note"] = "bound nonpositive: vacuously satisfied"
    elif Fraction(counts.count_inclusive) >= bound.app_bound_hi:
        report["verdict"] = "PASS"
    elif Fraction(counts.count_inclusive) < bound.app_bound_lo:
        report["verdict"] = "FAIL"
    else:
        report["verdict"] = "PASS"
        report["note"] = "count inside the enclosure of the bound"
    return report
