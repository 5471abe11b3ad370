"""Exact arithmetic: rationals, cyclotomic numbers, exact linear algebra.

Scalars live in Q(zeta_q).  A CycNum stores rational coefficients on the
power basis zeta_q^0 .. zeta_q^{phi(q)-1}; reduction modulo the q-th
cyclotomic polynomial makes the representation canonical, so equality of
values is equality of coefficient dicts (at a common order).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, cos, sin, pi, isqrt


class ExactError(ValueError):
    pass


# ---------------------------------------------------------------------------
# cyclotomic polynomials

@lru_cache(maxsize=None)
def cyclotomic_poly(q):
    """Integer coefficient list of Phi_q, lowest degree first."""
    if q == 1:
        return (-1, 1)
    # Phi_q = (x^q - 1) / prod_{d|q, d<q} Phi_d, exact polynomial division
    num = [0] * (q + 1)
    num[0], num[q] = -1, 1
    for d in range(1, q):
        if q % d:
            continue
        den = cyclotomic_poly(d)
        quot = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(den) - 1]
            quot[i] = c
            if c:
                for j, dj in enumerate(den):
                    rem[i + j] -= c * dj
        assert not any(rem), "inexact cyclotomic division"
        num = quot
    return tuple(num)


def _euler_phi(q):
    return len(cyclotomic_poly(q)) - 1


def _prime_factors(q):
    out = set()
    d = 2
    while d * d <= q:
        while q % d == 0:
            out.add(d)
            q //= d
        d += 1
    if q > 1:
        out.add(q)
    return out


def _reduce(q, coeffs):
    """Canonicalize {exponent: Fraction} at order q: exponents mod q, then
    remainder mod Phi_q.  Returns dict on exponents < phi(q), no zeros."""
    dense = [Fraction(0)] * q
    for e, c in coeffs.items():
        dense[e % q] += c
    phi = cyclotomic_poly(q)
    deg = len(phi) - 1
    for i in range(q - 1, deg - 1, -1):
        c = dense[i]
        if c:
            dense[i] = Fraction(0)
            for j in range(deg):
                dense[i - deg + j] -= c * phi[j]
    return {e: c for e, c in enumerate(dense[:deg]) if c}


class CycNum:
    """Exact element of Q(zeta_q), canonical at its stored order."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q, coeffs, reduce=True):
        if q < 1:
            raise ExactError("order must be positive")
        self.q = q
        self.coeffs = _reduce(q, coeffs) if reduce else coeffs

    # -- constructors

    @classmethod
    def from_rat(cls, value):
        c = Fraction(value)
        return cls(1, {0: c} if c else {}, reduce=False)

    @classmethod
    def zeta(cls, q, e=1):
        return cls(q, {e: Fraction(1)})

    # -- predicates / views

    def is_zero(self):
        return not self.coeffs

    def is_rational(self):
        return all(e == 0 for e in self.coeffs)

    def rational_value(self):
        if not self.is_rational():
            raise ExactError("not a rational value")
        return self.coeffs.get(0, Fraction(0))

    def is_integer(self):
        return self.is_rational() and self.rational_value().denominator == 1

    def to_order(self, q2):
        """Embed into Q(zeta_q2); q must divide q2."""
        if q2 == self.q:
            return self
        if q2 % self.q:
            raise ExactError("order mismatch")
        step = q2 // self.q
        return CycNum(q2, {e * step: c for e, c in self.coeffs.items()})

    def key(self):
        """Hashable canonical key, independent of the storage order."""
        if self.is_rational():
            v = self.rational_value()
            return (1, ((0, v),) if v else ())
        x = self._minimal_order()
        return (x.q, tuple(sorted(x.coeffs.items())))

    def _minimal_order(self):
        """Re-express in the smallest cyclotomic field Q(zeta_d), d | q."""
        x = self
        changed = True
        while changed:
            changed = False
            q = x.q
            for p in sorted(_prime_factors(q)):
                d = q // p
                if d < 2:
                    continue
                fixed = all(x.galois(t) == x for t in range(1, q)
                            if gcd(t, q) == 1 and t % d == 1)
                if fixed:
                    x = x._descend(d)
                    changed = True
                    break
        return x

    def _descend(self, d):
        """Rewrite in the power basis of Q(zeta_d); assumes membership."""
        phi_q, phi_d = _euler_phi(self.q), _euler_phi(d)
        A = [[Fraction(0)] * phi_d for _ in range(phi_q)]
        for f in range(phi_d):
            emb = CycNum(d, {f: Fraction(1)}).to_order(self.q)
            for e, c in emb.coeffs.items():
                A[e][f] = c
        b = [self.coeffs.get(e, Fraction(0)) for e in range(phi_q)]
        sol = rat_solve(A, b)
        return CycNum(d, {f: sol[f] for f in range(phi_d) if sol[f]},
                      reduce=False)

    # -- arithmetic

    def _common(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rat(other)
        q = lcm(self.q, other.q)
        return self.to_order(q), other.to_order(q)

    def __add__(self, other):
        a, b = self._common(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return CycNum(a.q, {e: c for e, c in out.items() if c}, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.q, {e: -c for e, c in self.coeffs.items()}, reduce=False)

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        out = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CycNum(a.q, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = CycNum.from_rat(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        return CycNum(self.q, {(-e) % self.q: c for e, c in self.coeffs.items()})

    def galois(self, t):
        """Apply zeta -> zeta^t; t must be coprime to q."""
        if gcd(t, self.q) != 1:
            raise ExactError("galois exponent not coprime to order")
        return CycNum(self.q, {(t * e) % self.q: c for e, c in self.coeffs.items()})

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.is_rational():
            return CycNum.from_rat(1 / self.rational_value())
        # multiply by all nontrivial Galois conjugates; the product with self
        # is the field norm, a nonzero rational
        prod = CycNum.from_rat(1)
        for t in range(2, self.q):
            if gcd(t, self.q) == 1:
                prod = prod * self.galois(t)
        norm = (self * prod).rational_value()
        return prod * CycNum.from_rat(Fraction(1) / norm)

    def __truediv__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.from_rat(other)
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rat(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(self.key())

    def embed(self):
        """Double-precision complex value, zeta_q = exp(2*pi*i/q)."""
        re = im = 0.0
        for e, c in self.coeffs.items():
            t = 2.0 * pi * e / self.q
            re += c * cos(t)
            im += c * sin(t)
        return complex(re, im)

    def root_of_unity_factor(self):
        """If self = mu * w with mu a positive integer and w a root of unity,
        return (mu, w); otherwise None."""
        if self.is_zero():
            return None
        n2 = (self * self.conj())
        if not n2.is_rational():
            return None
        n2 = n2.rational_value()
        if n2.denominator != 1:
            return None
        mu = isqrt(n2.numerator)
        if mu * mu != n2.numerator:
            return None
        w = self * Fraction(1, mu)
        # roots of unity in Q(zeta_q) are +-zeta_q^e
        for e in range(w.q):
            z = CycNum.zeta(w.q, e)
            if w == z or w == -z:
                return mu, w
        return None

    def __repr__(self):
        return "CycNum(%s)" % format_cyc(self)


def cyc_arith(a, b, op):
    """Strict same-order arithmetic; callers embed to a common order first."""
    if a.q != b.q:
        raise ExactError("order mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ExactError("unknown op %r" % (op,))


def cyc_conj(a):
    return a.conj()


def cyc_embed(a):
    return a.embed()


# ---------------------------------------------------------------------------
# literal grammar: entry := term (('+'|'-') term)*
#                  term  := coeff | coeff '*' root | root
#                  coeff := int | int '/' posint
#                  root  := 'z' posint ['^' int]

def parse_cyc(text):
    s = text.strip()
    if not s:
        raise ExactError("syntax error at position 0: empty literal")
    pos = 0
    total = CycNum.from_rat(0)

    def fail(msg):
        raise ExactError("syntax error at position %d: %s" % (pos, msg))

    def read_int(signed=True):
        nonlocal pos
        start = pos
        if signed and pos < len(s) and s[pos] in "+-":
            pos += 1
        if pos >= len(s) or not s[pos].isdigit():
            fail("expected integer")
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        return int(s[start:pos])

    first = True
    while pos < len(s):
        sign = 1
        if not first:
            if s[pos] == "+":
                pos += 1
            elif s[pos] == "-":
                sign = -1
                pos += 1
            else:
                fail("expected '+' or '-'")
        elif s[pos] == "-":
            sign = -1
            pos += 1
        first = False
        if pos >= len(s):
            fail("dangling sign")
        coeff = Fraction(1)
        have_coeff = False
        if s[pos].isdigit():
            num = read_int(signed=False)
            den = 1
            if pos < len(s) and s[pos] == "/":
                pos += 1
                den = read_int(signed=False)
                if den == 0:
                    fail("zero denominator")
            coeff = Fraction(num, den)
            have_coeff = True
            if pos < len(s) and s[pos] == "*":
                pos += 1
                if pos >= len(s) or s[pos] != "z":
                    fail("expected root after '*'")
        if pos < len(s) and s[pos] == "z":
            pos += 1
            q = read_int(signed=False)
            if q < 1:
                fail("order out of range")
            e = 1
            if pos < len(s) and s[pos] == "^":
                pos += 1
                e = read_int(signed=True)
            term = CycNum(q, {e % q: coeff})
        elif have_coeff:
            term = CycNum.from_rat(coeff)
        else:
            fail("expected term")
        total = total + (term if sign > 0 else -term)
    return total


def format_cyc(a):
    """Canonical text form; format_cyc(parse_cyc(t)) parses back equal."""
    if a.is_zero():
        return "0"
    parts = []
    for e in sorted(a.coeffs):
        c = a.coeffs[e]
        mag = -c if c < 0 else c
        body = str(mag) if e == 0 else (
            "z%d^%d" % (a.q, e) if mag == 1 else "%s*z%d^%d" % (mag, a.q, e))
        parts.append(("-" if c < 0 else "+") + body)
    out = "".join(parts)
    return out[1:] if out[0] == "+" else out


# ---------------------------------------------------------------------------
# exact rational linear algebra

class RatMatrix:
    """Dense matrix of Fractions."""

    def __init__(self, entries):
        self.entries = [[Fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if self.rows == 0 or self.cols == 0:
            raise ExactError("empty matrix")
        if any(len(r) != self.cols for r in self.entries):
            raise ExactError("ragged matrix")

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]


def _int_rows(entries):
    """Scale each row to integers (clears denominators, divides by gcd)."""
    out = []
    for row in entries:
        m = 1
        for x in row:
            m = m * x.denominator // gcd(m, x.denominator)
        ints = [int(x * m) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _echelon(m):
    """Fraction-free (Bareiss-flavoured) row echelon on integer rows, in
    place.  Returns list of pivot columns."""
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            f = m[i][c]
            if not f:
                continue
            row = m[i]
            top = m[r]
            for j in range(cols):
                row[j] = row[j] * piv - f * top[j]
            # strip common content to keep the integers small
            g = 0
            for v in row:
                g = gcd(g, v)
            if g > 1:
                m[i] = [v // g for v in row]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rat_kernel(M):
    """Exact basis of the right kernel of M; list of Fraction vectors."""
    if isinstance(M, RatMatrix):
        entries = M.entries
    else:
        entries = [[Fraction(x) for x in row] for row in M]
    m = _int_rows(entries)
    cols = len(m[0])
    pivots = _echelon(m)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        # back-substitute pivot rows (echelon, so bottom-up)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = Fraction(0)
            for c in range(pc + 1, cols):
                if v[c]:
                    s += m[r][c] * v[c]
            v[pc] = -s / m[r][pc]
        basis.append(v)
    return basis


def rat_rank(M):
    entries = M.entries if isinstance(M, RatMatrix) else [
        [Fraction(x) for x in row] for row in M]
    m = _int_rows(entries)
    return len(_echelon(m))


def rat_solve(A, b):
    """Solve A x = b exactly.  Returns the unique solution vector, raises
    ExactError("inconsistent") or ExactError("underdetermined")."""
    entries = A.entries if isinstance(A, RatMatrix) else [
        [Fraction(x) for x in row] for row in A]
    rows = len(entries)
    cols = len(entries[0])
    aug = [list(entries[i]) + [Fraction(b[i])] for i in range(rows)]
    m = _int_rows(aug)
    pivots = _echelon(m)
    if cols in pivots:
        raise ExactError("inconsistent")
    if len(pivots) < cols:
        raise ExactError("underdetermined")
    x = [Fraction(0)] * cols
    for r in range(cols - 1, -1, -1):
        pc = pivots[r]
        s = Fraction(m[r][cols])
        for c in range(pc + 1, cols):
            s -= m[r][c] * x[c]
        x[pc] = s / m[r][pc]
    return x


def rat_inverse(A):
    """Exact inverse of a square Fraction matrix (list of lists)."""
    entries = A.entries if isinstance(A, RatMatrix) else [
        [Fraction(x) for x in row] for row in A]
    n = len(entries)
    aug = [list(entries[i]) + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise ExactError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def cyc_matrix_inverse(rows):
    """Exact inverse of a square CycNum matrix (Gauss-Jordan)."""
    n = len(rows)
    zero, one = CycNum.from_rat(0), CycNum.from_rat(1)
    aug = [[x for x in rows[i]] + [one if i == j else zero for j in range(n)]
           for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if not aug[i][c].is_zero()), None)
        if p is None:
            raise ExactError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        piv_inv = aug[c][c].inv()
        aug[c] = [x * piv_inv for x in aug[c]]
        for i in range(n):
            if i != c and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]

# ---------------------------------------------------------------------------
# linear algebra over GF(p), p prime

def gf_echelon(rows, p):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = [[int(x) % p for x in row] for row in rows]
    if not m:
        return m, []
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def gf_rank(rows, p):
    return len(gf_echelon(rows, p)[1])


def gf_kernel(rows, p):
    """Right kernel basis mod p (vectors of ints in [0, p))."""
    m, pivots = gf_echelon(rows, p)
    cols = len(m[0]) if m else 0
    pivset = set(pivots)
    basis = []
    for fc in (c for c in range(cols) if c not in pivset):
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r][fc]) % p
        basis.append(v)
    return basis
