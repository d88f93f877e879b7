"""Univariate polynomials over a finite field.

Coefficients are field elements (tuples), stored low degree first, always
trimmed; the zero polynomial has coeffs == [zero].  Provides Euclidean
arithmetic, modular powering, Rabin irreducibility, square-free / distinct
degree / equal degree factorization, resultants and discriminants.
"""

from __future__ import annotations

import random

import sympy

from .errors import InseparableInput, ZeroOrConstant
from .field import element_key


class UnivariatePoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        zero = field.zero
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == zero:
            coeffs.pop()
        if not coeffs:
            coeffs = [zero]
        self.field = field
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, [field.zero])

    @classmethod
    def one(cls, field):
        return cls(field, [field.one])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def monomial(cls, field, deg, coeff=None):
        c = field.one if coeff is None else coeff
        return cls(field, [field.zero] * deg + [c])

    # -- basic queries --------------------------------------------------------

    def degree(self):
        """Degree; -1 for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == self.field.zero:
            return -1
        return len(self.coeffs) - 1

    def is_zero(self):
        return self.degree() == -1

    def is_constant(self):
        return self.degree() <= 0

    def leading(self):
        return self.coeffs[-1]

    def is_monic(self):
        return self.coeffs[-1] == self.field.one

    def __eq__(self, other):
        return (isinstance(other, UnivariatePoly)
                and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def sort_key(self):
        """Canonical order: by degree, then coefficient keys high to low."""
        return (self.degree(),
                tuple(element_key(c) for c in reversed(self.coeffs)))

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UnivariatePoly(F, out)

    def __sub__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        zero = F.zero
        out = []
        for i in range(n):
            x = self.coeffs[i] if i < len(self.coeffs) else zero
            y = other.coeffs[i] if i < len(other.coeffs) else zero
            out.append(F.sub(x, y))
        return UnivariatePoly(F, out)

    def __neg__(self):
        F = self.field
        return UnivariatePoly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return UnivariatePoly.zero(F)
        a, b = self.coeffs, other.coeffs
        zero, add, mul = F.zero, F.add, F.mul
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj != zero:
                    out[i + j] = add(out[i + j], mul(ai, bj))
        return UnivariatePoly(F, out)

    def scale(self, c):
        F = self.field
        if c == F.zero:
            return UnivariatePoly.zero(F)
        return UnivariatePoly(F, [F.mul(c, a) for a in self.coeffs])

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading()))

    def shift(self, n):
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return UnivariatePoly(self.field, [self.field.zero] * n + self.coeffs)

    def divmod(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db = other.degree()
        if self.degree() < db:
            return UnivariatePoly.zero(F), self
        inv_lc = F.inv(other.leading())
        rem = list(self.coeffs)
        q = [F.zero] * (len(rem) - db)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == F.zero:
                continue
            c = F.mul(c, inv_lc)
            q[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]))
        return UnivariatePoly(F, q), UnivariatePoly(F, rem[:db] or [F.zero])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other):
        q, r = self.divmod(other)
        assert r.is_zero(), "exact_div with nonzero remainder"
        return q

    def gcd(self, other):
        F = self.field
        if getattr(F, "_idx_mul", None) is not None:
            return _idx_gcd(self, other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def pow_mod(self, e, modulus):
        F = self.field
        result = UnivariatePoly.one(F)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def derivative(self):
        F = self.field
        if self.degree() < 1:
            return UnivariatePoly.zero(F)
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.scalar(i, self.coeffs[i]))
        return UnivariatePoly(F, out)

    def evaluate(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose_linear(self, a, b):
        """self(a*x + b) by Horner in the outer variable."""
        F = self.field
        lin = UnivariatePoly(F, [b, a])
        acc = UnivariatePoly.zero(F)
        for c in reversed(self.coeffs):
            acc = acc * lin + UnivariatePoly(F, [c])
        return acc

    def map_coeffs(self, fn, new_field):
        return UnivariatePoly(new_field, [fn(c) for c in self.coeffs])

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"UnivariatePoly({self.field!r}, {self.format()})"

    def format(self, var="x"):
        F = self.field
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            if F.k == 1:
                cs = str(c[0])
            else:
                cs = "(" + _elem_str(F, c) + ")"
            if i == 0:
                parts.append(cs)
            else:
                pre = "" if c == F.one else cs + "*"
                parts.append(f"{pre}{var}" + (f"^{i}" if i > 1 else ""))
        return "+".join(parts)


def _elem_str(F, e):
    parts = []
    for j in range(F.k - 1, -1, -1):
        c = e[j]
        if c == 0:
            continue
        if j == 0:
            parts.append(str(c))
        else:
            pre = "" if c == 1 else str(c) + "*"
            parts.append(f"{pre}y" + (f"^{j}" if j > 1 else ""))
    return "+".join(parts) if parts else "0"


def _idx_gcd(f: UnivariatePoly, g: UnivariatePoly) -> UnivariatePoly:
    """Euclidean gcd in the small-field integer-index representation."""
    F = f.field
    q = F.q
    mul, sub, inv = F._idx_mul, F._idx_sub, F._idx_inv
    iof = F._idx_of
    a = [iof[c] for c in f.coeffs]
    b = [iof[c] for c in g.coeffs]
    while len(b) > 1 or b[0]:
        db = len(b) - 1
        if db == 0:
            a, b = [1], [0]
            break
        if len(a) > db:
            binv = inv[b[-1]]
            a = list(a)
            for top in range(len(a) - 1, db - 1, -1):
                c = a[top]
                if c:
                    cb = mul[c * q + binv]
                    off = top - db
                    cbq = cb * q
                    for i in range(db):
                        bi = b[i]
                        if bi:
                            a[off + i] = sub[a[off + i] * q + mul[cbq + bi]]
                    a[top] = 0
            while len(a) > 1 and not a[-1]:
                a.pop()
        a, b = b, a
    lead = a[-1]
    if lead > 1:
        il = inv[lead] * q
        a = [mul[il + c] if c else 0 for c in a]
    elems = F._idx_elem
    return UnivariatePoly(F, [elems[c] for c in a])


# ---------------------------------------------------------------------------
# Irreducibility (Rabin) and factorization


def is_irreducible(f: UnivariatePoly) -> bool:
    """Rabin's test: x^{q^n} == x mod f and gcd(x^{q^{n/l}} - x, f) = 1."""
    F = f.field
    n = f.degree()
    if n <= 0:
        raise ZeroOrConstant("irreducibility is undefined for constants")
    if n == 1:
        return True
    f = f.monic()
    q = F.q
    x = UnivariatePoly.x(F)
    # iterated Frobenius images of x modulo f
    frob = {}
    h = x
    for i in range(1, n + 1):
        h = h.pow_mod(q, f) if i == 1 else _frobenius_step(h, frob1, f)
        if i == 1:
            frob1 = h
        frob[i] = h
    if frob[n] != x % f:
        return False
    for ell in sympy.primefactors(n):
        g = (frob[n // ell] - x).gcd(f)
        if not g.is_constant():
            return False
    return True


def _frobenius_step(h, frob1, f):
    """h(x)^q mod f given frob1 = x^q mod f.

    Coefficients are fixed by the q-power Frobenius, so h^q = h(x^q) and the
    step is modular composition by Horner.
    """
    F = f.field
    acc = UnivariatePoly.zero(F)
    for c in reversed(h.coeffs):
        acc = (acc * frob1) % f
        acc = acc + UnivariatePoly(F, [c])
    return acc % f


def squarefree_part(f: UnivariatePoly) -> UnivariatePoly:
    """Monic product of the distinct irreducible factors of f."""
    out = UnivariatePoly.one(f.field)
    for g, _ in squarefree_decomposition(f.monic()):
        out = out * g
    return out


def squarefree_decomposition(f: UnivariatePoly):
    """Yu's recursive characteristic-p square-free decomposition.

    Returns a list of (g_i, m_i) with f = prod g_i^{m_i} (f monic), the g_i
    pairwise coprime and square-free.
    """
    F = f.field
    p = F.p
    f = f.monic()
    result = []

    def merge(g, m):
        for idx, (h, e) in enumerate(result):
            if e == m:
                result[idx] = (h * g, m)
                return
        result.append((g, m))

    def rec(f, mult):
        if f.is_constant():
            return
        df = f.derivative()
        if df.is_zero():
            # f is a p-th power: take p-th roots of coefficients
            root = _pth_root_poly(f)
            rec(root, mult * p)
            return
        c = f.gcd(df)
        w = f.exact_div(c)
        i = 1
        while not w.is_constant():
            y = w.gcd(c)
            fac = w.exact_div(y)
            if not fac.is_constant():
                merge(fac.monic(), mult * i)
            w = y
            c = c.exact_div(y)
            i += 1
        if not c.is_constant():
            rec(c, mult)

    rec(f, 1)
    result.sort(key=lambda gm: (gm[1], gm[0].sort_key()))
    return result


def _pth_root_poly(f: UnivariatePoly) -> UnivariatePoly:
    """g with g^p = f, for f whose exponents are all multiples of p."""
    F = f.field
    p = F.p
    out = []
    for i in range(0, len(f.coeffs), p):
        c = f.coeffs[i]
        # c^{1/p} = c^{p^{k-1}} in F_{p^k}
        out.append(F.pow(c, p ** (F.k - 1)) if F.k > 1 else c)
    return UnivariatePoly(F, out)


_DDF_NUMPY_MIN = 8


def _distinct_degree(f: UnivariatePoly):
    """DDF for square-free monic f: list of (product, degree)."""
    from .polycore import FrobCtx, from_array, to_array

    F = f.field
    q = F.q
    x = UnivariatePoly.x(F)
    out = []
    h = x
    g = f
    d = 0
    ctx = None
    while g.degree() > 2 * (d + 1) - 1 and g.degree() > 0:
        d += 1
        if g.degree() >= _DDF_NUMPY_MIN:
            if ctx is None:
                ctx = FrobCtx(to_array(g.coeffs, F), F)
            h = UnivariatePoly(
                F, from_array(ctx.frobenius(to_array(h.coeffs, F)), F))
        else:
            h = h.pow_mod(q, g)
        gd = (h - x).gcd(g)
        if not gd.is_constant():
            out.append((gd, d))
            g = g.exact_div(gd)
            h = h % g
            ctx = None
    if g.degree() > 0:
        out.append((g, g.degree()))
    return out


def _equal_degree(f: UnivariatePoly, d: int, rng):
    """Split a square-free product of degree-d irreducibles (Cantor/Zassenhaus)."""
    F = f.field
    n = f.degree()
    if n == d:
        return [f.monic()]
    q = F.q
    ctx = None
    if n >= _DDF_NUMPY_MIN:
        from .polycore import ModCtx, from_array, to_array

        ctx = ModCtx(to_array(f.coeffs, F), F)
    while True:
        a = UnivariatePoly(
            F, [F.element_at(rng.randrange(q)) for _ in range(n)])
        if a.degree() < 1:
            continue
        g = a.gcd(f)
        if not g.is_constant():
            break
        if F.p == 2:
            # trace map T(a) = a + a^2 + ... + a^{2^{kd-1}}
            t = UnivariatePoly.zero(F)
            b = a % f
            for _ in range(F.k * d):
                t = (t + b) % f
                if ctx is not None:
                    b = UnivariatePoly(
                        F,
                        from_array(ctx.mulmod(to_array(b.coeffs, F),
                                              to_array(b.coeffs, F)), F))
                else:
                    b = (b * b) % f
            g = t.gcd(f)
        else:
            e = (q ** d - 1) // 2
            if ctx is not None:
                b = UnivariatePoly(
                    F, from_array(ctx.powmod(to_array(a.coeffs, F), e), F))
            else:
                b = a.pow_mod(e, f)
            g = (b - UnivariatePoly.one(F)).gcd(f)
        if g.is_constant() or g.degree() == n:
            continue
        break
    return (_equal_degree(g, d, rng)
            + _equal_degree(f.exact_div(g), d, rng))


def factor(f: UnivariatePoly, seed: int = 0):
    """Full factorization: (unit, [(irreducible monic, multiplicity), ...]).

    Factors are sorted canonically (degree, then coefficients compared from
    the top down), so the output is deterministic regardless of seed.
    """
    F = f.field
    if f.degree() < 1:
        raise ZeroOrConstant("cannot factor a constant polynomial")
    unit = f.leading()
    rng = random.Random(seed ^ 0x5EED)
    factors = []
    for g, mult in squarefree_decomposition(f):
        for prod, d in _distinct_degree(g):
            for irr in _equal_degree(prod, d, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: fm[0].sort_key())
    return unit, factors


def roots_in_field(f: UnivariatePoly):
    """Sorted roots of f in its coefficient field (without multiplicity)."""
    F = f.field
    if f.degree() < 1:
        return []
    x = UnivariatePoly.x(F)
    g = x.pow_mod(F.q, f) - x
    g = g.gcd(f)
    if g.degree() < 1:
        return []
    roots = []
    _, facs = factor(g)
    for irr, _ in facs:
        if irr.degree() == 1:
            roots.append(F.neg(irr.coeffs[0]))
    roots.sort(key=element_key)
    return roots


# ---------------------------------------------------------------------------
# Resultants and discriminants


def resultant(f: UnivariatePoly, g: UnivariatePoly):
    """Res(f, g) via the Euclidean polynomial remainder sequence."""
    F = f.field
    if f.is_zero() or g.is_zero():
        return F.zero
    res = F.one
    a, b = f, g
    while b.degree() > 0:
        r = a % b
        da, db = a.degree(), b.degree()
        lc = b.leading()
        dr = r.degree() if not r.is_zero() else -1
        # Res(a,b) = (-1)^{da*db} lc(b)^{da-dr} Res(b, r)
        sign = F.one if (da * db) % 2 == 0 else F.neg(F.one)
        res = F.mul(res, F.mul(sign, F.pow(lc, da - max(dr, 0))))
        if r.is_zero():
            return F.zero
        a, b = b, r
    # b is a nonzero constant
    res = F.mul(res, F.pow(b.coeffs[0], a.degree()))
    return res


def discriminant(f: UnivariatePoly):
    """disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)."""
    F = f.field
    d = f.degree()
    if d < 1:
        raise ZeroOrConstant("discriminant needs degree >= 1")
    df = f.derivative()
    if df.is_zero():
        raise InseparableInput("derivative vanishes identically")
    r = resultant(f, df)
    r = F.mul(r, F.inv(f.leading()))
    if (d * (d - 1) // 2) % 2 == 1:
        r = F.neg(r)
    return r


# ---------------------------------------------------------------------------
# Exhaustive irreducible counting

_COUNT_CHUNK = 1 << 16


def count_monic_irreducibles(field, n: int) -> int:
    """Number of monic irreducible polynomials of degree n, by enumeration.

    Every monic degree-n polynomial is tested with a vectorized form of the
    Rabin criterion.  After discarding polynomials with a root in the field,
    a survivor f satisfies x^{q^n} = x mod f exactly when all its factor
    degrees divide n; for n <= 6 the only such factorizations besides the
    irreducible one use a single repeated degree n/l (any mixed combination
    of part sizes needs a linear part), so the remaining gcd conditions
    reduce to the equality tests x^{q^{n/l}} != x mod f.
    """
    import numpy as np

    from .errors import DegreeOutOfRange

    q = field.q
    if n < 1:
        raise DegreeOutOfRange("degree must be positive")
    if n == 1:
        return q
    if n > 6:
        raise DegreeOutOfRange("exhaustive counting is limited to degree 6")

    total = 0
    for start in range(0, q ** n, _COUNT_CHUNK):
        stop = min(start + _COUNT_CHUNK, q ** n)
        total += _count_chunk(field, n, np.arange(start, stop))
    return total


def _count_chunk(field, n, idx):
    """Count irreducibles among the monic polynomials with these indices."""
    import numpy as np

    q, p, k = field.q, field.p, field.k
    w = 2 * k - 1
    elems = np.array([field.element_at(i) for i in range(q)], dtype=np.int16)

    # z-packed coefficients: digit w*i + u holds component u of coefficient i
    coeffs = np.zeros((idx.size, n * w), dtype=np.int16)
    for i in range(n):
        coeffs[:, w * i : w * i + k] = elems[(idx // q ** i) % q]

    # Discard polynomials with a root in the base field.
    has_root = np.zeros(idx.size, dtype=bool)
    for a_idx in range(q):
        a = field.element_at(a_idx)
        powers = [field.one]
        for _ in range(n):
            powers.append(field.mul(powers[-1], a))
        value = np.zeros((idx.size, w), dtype=np.int16)
        value[:, :k] = np.array(powers[n], dtype=np.int16)
        for i in range(n):
            for v in range(k):
                pv = int(powers[i][v])
                if pv:
                    value[:, v : v + k] += pv * coeffs[:, w * i : w * i + k]
        _zfold(value, field, w)
        has_root |= ~value[:, :k].any(axis=1)
    flow = coeffs[~has_root]

    # Iterated Frobenius images H_m = x^{q^m} mod f.  All proper divisors
    # of n are at most ceil(n/2), so the chain can stop there and finish
    # with one modular composition H_n = H_a(H_b), a + b = n, when that is
    # cheaper than stepping all the way (H_a has coefficients in F_q, so
    # H_a(H_b) = H_a^{q^b} = H_{a+b} mod f).
    r = np.zeros((flow.shape[0], n * w), dtype=np.int16)
    r[:, w : w + k] = np.array(field.one, dtype=np.int16)
    x_arr = r.copy()
    step_cost = q.bit_length() + bin(q).count("1") - 2
    top = (n + 1) // 2 if (n - (n + 1) // 2) * step_cost > n - 1 else n
    fixed = {}
    chain = {}
    for m in range(1, top + 1):
        r = _zpow(r, q, flow, field, n)
        chain[m] = r
        if n % m == 0:
            fixed[m] = (r == x_arr).all(axis=1)
    if top < n:
        r = _zcompose(chain[n - top], chain[top], flow, field, n)
        fixed[n] = (r == x_arr).all(axis=1)
    good = fixed[n]
    for ell in sympy.primefactors(n):
        if n // ell > 1:
            good &= ~fixed[n // ell]
    return int(good.sum())


def _zfold(arr, field, w):
    """In place: fold generator powers y^k..y^{2k-2} in every stride, mod p."""
    p, k = field.p, field.k
    if k > 1:
        red = field._red_np
        for excess in range(k, w):
            col = arr[:, excess::w]
            if col.any():
                for v in range(k):
                    rv = int(red[excess - k, v])
                    if rv:
                        block = arr[:, v::w]
                        block[:, : col.shape[1]] += rv * col
                arr[:, excess::w] = 0
    arr %= p


def _zmulmod(a, b, flow, field, n):
    """Batched product of z-packed residues modulo monic moduli.

    flow holds the z-packed low coefficients of each modulus; the leading
    coefficient 1 of x^n is implicit.
    """
    import numpy as np

    p, k = field.p, field.k
    w = 2 * k - 1
    width = n * w
    # only digits below (2n-1)*w can be hit (residues carry no excess
    # generator digits), but pad so the top-stride slices stay in bounds
    wide = np.zeros((a.shape[0], 2 * n * w - 1), dtype=np.int16)
    for i in range(width):
        col = a[:, i]
        if col.any():
            wide[:, i : i + width] += col[:, None] * b
    _zfold(wide, field, w)
    for jj in range(2 * n - 2, n - 1, -1):
        base = jj * w
        for u in range(k):
            c = wide[:, base + u]
            if c.any():
                lo = (jj - n) * w + u
                wide[:, lo : lo + width] += (p - c)[:, None] * flow
        wide[:, base : base + k] = 0
        _zfold(wide[:, : base + k], field, w)
    return wide[:, :width]


def _zpow(a, e, flow, field, n):
    """Batched a^e modulo the moduli in flow, by square and multiply."""
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else _zmulmod(
                result, base, flow, field, n)
        e >>= 1
        if e:
            base = _zmulmod(base, base, flow, field, n)
    return result

def _zcompose(g, h, flow, field, n):
    """Batched modular composition g(h) by Horner, z-packed operands."""
    import numpy as np

    p, k = field.p, field.k
    w = 2 * k - 1
    acc = np.zeros_like(g)
    acc[:, :k] = g[:, (n - 1) * w : (n - 1) * w + k]
    for j in range(n - 2, -1, -1):
        acc = _zmulmod(acc, h, flow, field, n)
        acc[:, :k] = (acc[:, :k] + g[:, j * w : j * w + k]) % p
    return acc
