"""Based rings from structure constants alone: identity and trace recovery,
axiom verification, products, closed subsets, subring extraction.

Convention: b_i b_j = sum_m N[i,j,m] b_m with an integer tensor N, an
involutive basis permutation tilde, and an identity e that in general only
exists in the complexification (its coefficients are rational here since N
is integral).
"""

from fractions import Fraction

import numpy as np

from .exact import CycNum, ExactError, rat_solve


class RingError(ValueError):
    pass


class FormatError(ValueError):
    pass


class FusionRing:
    """Free Z-module with basis 0..n-1 and distinguished multiplication."""

    def __init__(self, n, N, tilde):
        self.n = n
        self.N = N
        self.tilde = tilde
        self.eCoeffs = None   # set by identity_coefficients
        self.q = None

    def basis_product(self, i, j):
        return RingElement.from_ints(self.N[i, j])

    def __repr__(self):
        return "FusionRing(n=%d)" % self.n


class RingElement:
    """Coefficient vector over the basis of the ambient ring."""

    def __init__(self, coeffs):
        self.coeffs = [c if isinstance(c, CycNum) else CycNum.from_rat(c)
                       for c in coeffs]

    @classmethod
    def from_ints(cls, vec):
        return cls([CycNum.from_rat(int(v)) for v in vec])

    @classmethod
    def basis(cls, n, i):
        return cls([1 if j == i else 0 for j in range(n)])

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return len(self) == len(other) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def integer_vector(self):
        """Numpy int64 vector, or None if some coefficient is not integral."""
        out = np.zeros(len(self.coeffs), dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            if not c.is_integer():
                return None
            out[i] = int(c.rational_value())
        return out

    def __repr__(self):
        from .exact import format_cyc
        return "RingElement([%s])" % ", ".join(format_cyc(c) for c in self.coeffs)


class VerifyReport:
    """Ordered axiom results; witness = indices of the first failure."""

    def __init__(self):
        self.entries = []

    def add(self, axiom, passed, witness=None):
        self.entries.append((axiom, passed, witness))

    @property
    def all_pass(self):
        return all(p for _, p, _ in self.entries)

    def failures(self):
        return [(a, w) for a, p, w in self.entries if not p]

    def __str__(self):
        lines = []
        for axiom, passed, witness in self.entries:
            tail = "" if witness is None else "  witness %s" % (witness,)
            lines.append("%-24s %s%s" % (axiom, "pass" if passed else "FAIL", tail))
        return "\n".join(lines)


def ring_from_tensor(n, N, tilde):
    N = np.asarray(N, dtype=np.int64)
    if N.shape != (n, n, n):
        raise RingError("shape mismatch")
    tilde = tuple(int(t) for t in tilde)
    if sorted(tilde) != list(range(n)):
        raise RingError("tilde not a permutation")
    if any(tilde[tilde[i]] != i for i in range(n)):
        raise RingError("tilde not an involution")
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        i, j, m = map(int, np.argwhere(N != N.transpose(1, 0, 2))[0])
        raise RingError("not commutative at (%d,%d,%d)" % (i, j, m))
    return FusionRing(n, N, tilde)


def identity_coefficients(ring):
    """Solve (sum_i e_i b_i) b_j = b_j for all j: n^2 exact linear conditions
    on the n unknowns e_i."""
    n = ring.n
    rows, rhs = [], []
    for j in range(n):
        for m in range(n):
            rows.append([Fraction(int(ring.N[i, j, m])) for i in range(n)])
            rhs.append(Fraction(int(j == m)))
    try:
        sol = rat_solve(rows, rhs)
    except ExactError as exc:
        if "inconsistent" in str(exc):
            raise RingError("no identity in R(x)C") from exc
        raise RingError("identity not unique") from exc
    ring.eCoeffs = [CycNum.from_rat(c) for c in sol]
    ring.q = 1
    return ring.eCoeffs


def trace_eval(ring, r):
    """tau(r) = sum_i conj(e_i) r_i."""
    if ring.eCoeffs is None:
        raise RingError("eCoeffs missing; run identity_coefficients first")
    total = CycNum.from_rat(0)
    for e_i, r_i in zip(ring.eCoeffs, r.coeffs):
        total = total + e_i.conj() * r_i
    return total


def multiply(ring, r1, r2):
    v1, v2 = r1.integer_vector(), r2.integer_vector()
    if v1 is not None and v2 is not None:
        out = np.einsum("i,j,ijm->m", v1, v2, ring.N)
        return RingElement.from_ints(out)
    n = ring.n
    out = [CycNum.from_rat(0)] * n
    for i, c1 in enumerate(r1.coeffs):
        if c1.is_zero():
            continue
        for j, c2 in enumerate(r2.coeffs):
            if c2.is_zero():
                continue
            cc = c1 * c2
            for m in range(n):
                v = int(ring.N[i, j, m])
                if v:
                    out[m] = out[m] + cc * v
    return RingElement(out)


def _first_mismatch(a, b):
    idx = np.argwhere(a != b)
    return tuple(int(x) for x in idx[0]) if len(idx) else None


def verify_axioms(ring):
    """Check, in order: commutativity, associativity, involution
    compatibility, identity existence, e~ = e, duality tau(b~_i b_j) = d_ij."""
    rep = VerifyReport()
    N = ring.N
    n = ring.n
    tl = list(ring.tilde)

    w = _first_mismatch(N, N.transpose(1, 0, 2))
    rep.add("commutativity", w is None, w)

    # regular-representation identity: (b_i b_j) b_k = b_i (b_j b_k)
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    w = _first_mismatch(lhs, rhs)
    rep.add("associativity", w is None, w)

    w = _first_mismatch(N[np.ix_(tl, tl)][:, :, tl], N)
    rep.add("involution compatibility", w is None, w)

    try:
        e = ring.eCoeffs if ring.eCoeffs is not None else identity_coefficients(ring)
        rep.add("identity existence", True)
    except RingError as exc:
        rep.add("identity existence", False, str(exc))
        rep.add("e~ = e", False, "no identity")
        rep.add("duality", False, "no identity")
        return rep

    w = next((i for i in range(n) if e[i].conj() != e[tl[i]]), None)
    rep.add("e~ = e", w is None, w)

    # tau(b~_i b_j) = sum_m conj(e_m) N[~i, j, m]
    w = None
    for i in range(n):
        for j in range(n):
            t = CycNum.from_rat(0)
            for m in range(n):
                v = int(N[tl[i], j, m])
                if v:
                    t = t + e[m].conj() * v
            if t != int(i == j):
                w = (i, j)
                break
        if w:
            break
    rep.add("duality", w is None, w)
    return rep


def _involutive_permutations(n):
    """All permutations p with p(p(i)) = i, as tuples."""
    def build(rest):
        if not rest:
            yield {}
            return
        i = rest[0]
        for partner in rest:
            if partner == i:
                for rec in build(rest[1:]):
                    rec = dict(rec)
                    rec[i] = i
                    yield rec
            else:
                tail = [x for x in rest[1:] if x != partner]
                for rec in build(tail):
                    rec = dict(rec)
                    rec[i] = partner
                    rec[partner] = i
                    yield rec
    for mapping in build(list(range(n))):
        yield tuple(mapping[i] for i in range(n))


def search_involution(n, N):
    """Factorial search (n <= 12) over involutive permutations for a tilde
    making all axioms pass.  Returns (tilde, report) or None."""
    if n > 12:
        raise RingError("involution search limited to n <= 12")
    N = np.asarray(N, dtype=np.int64)
    for cand in _involutive_permutations(n):
        ring = FusionRing(n, N, cand)
        rep = verify_axioms(ring)
        if rep.all_pass:
            return cand, rep
    return None


def tau_power_search(ring, i):
    """Smallest m >= 1 with tau(b_i^m) != 0; search bounded by 2n+2."""
    if ring.eCoeffs is None:
        identity_coefficients(ring)
    bound = 2 * ring.n + 2
    b = RingElement.basis(ring.n, i)
    power = b
    for m in range(1, bound + 1):
        if not trace_eval(ring, power).is_zero():
            return m
        power = multiply(ring, power, b)
    raise RingError("bound exceeded")


def is_closed_subset(ring, S):
    S = sorted(set(S))
    if not S or S[0] < 0 or S[-1] >= ring.n:
        raise RingError("S must be a nonempty subset of the basis")
    comp = [m for m in range(ring.n) if m not in set(S)]
    if not comp:
        return True
    return not np.any(ring.N[np.ix_(S, S, comp)])


def subring_restrict(ring, S):
    S = sorted(set(S))
    if not is_closed_subset(ring, S):
        raise RingError("S not closed")
    sset = set(S)
    if any(ring.tilde[i] not in sset for i in S):
        raise RingError("S not tilde-stable")
    pos = {b: a for a, b in enumerate(S)}
    sub_n = len(S)
    sub_N = ring.N[np.ix_(S, S, S)].copy()
    sub_tilde = tuple(pos[ring.tilde[b]] for b in S)
    return ring_from_tensor(sub_n, sub_N, sub_tilde)


# ---------------------------------------------------------------------------
# text format
#   zbrng 1 / n <n> / involution p_0 .. p_{n-1} / n blocks "N <i>" each with
#   n lines of n integers (row j, column m)

def ring_to_text(ring):
    lines = ["zbrng 1", "n %d" % ring.n,
             "involution " + " ".join(str(t) for t in ring.tilde)]
    for i in range(ring.n):
        lines.append("N %d" % i)
        for j in range(ring.n):
            lines.append(" ".join(str(int(v)) for v in ring.N[i, j]))
    return "\n".join(lines) + "\n"


def ring_from_text(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "zbrng 1":
        raise FormatError("missing 'zbrng 1' header")
    try:
        if not lines[1].startswith("n "):
            raise FormatError("missing size line")
        n = int(lines[1].split()[1])
        if not lines[2].startswith("involution"):
            raise FormatError("missing involution line")
        tilde = [int(t) for t in lines[2].split()[1:]]
        if len(tilde) != n:
            raise FormatError("involution length != n")
        N = np.zeros((n, n, n), dtype=np.int64)
        at = 3
        for i in range(n):
            if lines[at] != "N %d" % i:
                raise FormatError("expected 'N %d' at line %d" % (i, at + 1))
            at += 1
            for j in range(n):
                row = [int(v) for v in lines[at].split()]
                if len(row) != n:
                    raise FormatError("row length != n at line %d" % (at + 1))
                N[i, j] = row
                at += 1
        if at != len(lines):
            raise FormatError("trailing content")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError("malformed ring file: %s" % exc) from exc
    return ring_from_tensor(n, N, tilde)
