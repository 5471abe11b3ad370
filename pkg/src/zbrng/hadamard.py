"""Hadamard matrix pipeline: the associated ring with b_i^2 = k b_0,
profiles and their mod-8 congruence, xi-sets, closed subsets, W-matrices,
exact and mod-3 reconstruction of the matrix from the tensor, the dimension
4k algebra over GF(2), v-matrix rank, and an equivalence screen.

Indices are 0-based throughout; column 0 is the all-ones column.
"""

from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .exact import gf_kernel, gf_rank, rat_kernel
from .rng_core import FormatError, is_closed_subset, ring_from_tensor


class HadamardError(ValueError):
    pass


class HadamardMatrix:
    """Normalized +-1 matrix of order n = 4k with orthogonal rows and
    all-ones first column."""

    def __init__(self, array):
        self.array = array
        self.n = array.shape[0]
        self.k = self.n // 4

    def __repr__(self):
        return "HadamardMatrix(n=%d)" % self.n


def normalize_hadamard(M):
    """Negate rows whose first entry is -1; column order preserved."""
    a = np.asarray(M, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise HadamardError("not square")
    n = a.shape[0]
    if not np.all(np.abs(a) == 1):
        raise HadamardError("entries not +-1")
    if n % 4 != 0:
        raise HadamardError("order not divisible by 4")
    if not np.array_equal(a @ a.T, n * np.eye(n, dtype=np.int64)):
        raise HadamardError("not orthogonal")
    a = a * a[:, :1]
    return HadamardMatrix(a)


def xi_sets(H):
    """xi_i = rows where column i is -1; |xi_0| = 0, |xi_i| = 2k."""
    a = H.array
    return [frozenset(int(j) for j in np.nonzero(a[:, i] == -1)[0])
            for i in range(H.n)]


def ring_from_hadamard(H):
    """Tensor N_ij^m = (1/4) sum_l s_li s_lj s_lm; tilde = identity."""
    a = H.array
    raw = np.einsum("li,lj,lm->ijm", a, a, a)
    if np.any(raw % 4):
        raise HadamardError("non-integral structure constants (corrupt input)")
    N = raw // 4
    return ring_from_tensor(H.n, N, tuple(range(H.n)))


class Profile:
    """Counts of p = |sum_q s_qi s_qj s_ql s_qm| over 4-column subsets."""

    def __init__(self, counts, n, k):
        self.counts = counts
        self.n = n
        self.k = k

    def total(self):
        return sum(self.counts.values())

    def __repr__(self):
        body = ", ".join("%d: %d" % kv for kv in sorted(self.counts.items()))
        return "Profile({%s})" % body


def profile(H):
    a = H.array
    n, k = H.n, H.k
    pairs = list(combinations(range(n), 2))
    pidx = {pq: t for t, pq in enumerate(pairs)}
    pmat = np.array([a[:, i] * a[:, j] for i, j in pairs], dtype=np.int64)
    gram = pmat @ pmat.T
    counts = {}
    for i, j, l, m in combinations(range(n), 4):
        p = int(abs(gram[pidx[(i, j)], pidx[(l, m)]]))
        if (p - 4 * k) % 8:
            raise HadamardError(
                "profile congruence violation at columns (%d,%d,%d,%d)"
                % (i, j, l, m))
        counts[p] = counts.get(p, 0) + 1
    prof = Profile(counts, n, k)
    assert prof.total() == comb(n, 4)
    return prof


def sum_squares_check(ring, i, j):
    """sum_m (N_ij^m)^2 == k^2, a consequence of N_i^2 = k^2 I."""
    k = int(ring.N[0, 0, 0])
    return int(np.sum(ring.N[i, j].astype(np.int64) ** 2)) == k * k


def triangular_bound(k):
    """Partitions of the (k-3)/2-th triangular number into nonzero
    triangular numbers; bounds the census size for odd k."""
    if k % 2 == 0:
        raise HadamardError("k must be odd")
    if k < 3:
        raise HadamardError("k must be >= 3")
    j = (k - 3) // 2
    target = j * (j + 1) // 2
    parts = []
    t, i = 1, 2
    while t <= target:
        parts.append(t)
        t += i
        i += 1
    ways = [1] + [0] * target
    for part in parts:
        for v in range(part, target + 1):
            ways[v] += ways[v - part]
    return ways[target]


def multiset_census(ring):
    """Distinct multisets {|N_ij^m| : m not in {0,i,j}} over pairs of
    distinct nonzero i, j, encoded as count vectors indexed by value."""
    N, n = ring.N, ring.n
    k = int(N[0, 0, 0])
    out = set()
    for i in range(1, n):
        for j in range(i + 1, n):
            counts = [0] * (k + 1)
            for m in range(n):
                if m in (0, i, j):
                    continue
                v = abs(int(N[i, j, m]))
                if v > k:
                    raise HadamardError("entry exceeds k")
                counts[v] += 1
            out.add(tuple(counts))
    if k % 2 and k >= 3 and len(out) > triangular_bound(k):
        raise HadamardError("census exceeds triangular bound")
    return out


def census_values(entry):
    """Decode a count vector to a descending value tuple."""
    vals = []
    for v in range(len(entry) - 1, -1, -1):
        vals.extend([v] * entry[v])
    return tuple(vals)


def had_closed_subsets(ring):
    """For odd k: the 4k subsets {0} and {0,i} plus the full set, each
    re-verified; also checks no triple {0,i,j} is closed."""
    n = ring.n
    k = int(ring.N[0, 0, 0])
    if k % 2 == 0:
        raise HadamardError("k must be odd")
    sets = [(0,)] + [(0, i) for i in range(1, n)] + [tuple(range(n))]
    for S in sets:
        if not is_closed_subset(ring, S):
            raise HadamardError("verification failure: %r not closed" % (S,))
    for i in range(1, n):
        for j in range(i + 1, n):
            if is_closed_subset(ring, (0, i, j)):
                raise HadamardError(
                    "verification failure: triple (0,%d,%d) closed" % (i, j))
    return sets


def wmatrix(ring, i):
    """[[A+I, A-I], [A-I, -A-I]] with A = N_i minus rows/columns 0 and i;
    size 8k-4, orthogonal rows of norm 2k^2+2, no zero entries."""
    if i == 0:
        raise HadamardError("i must be nonzero")
    if not 0 < i < ring.n:
        raise HadamardError("i out of range")
    N = ring.N
    k = int(N[0, 0, 0])
    keep = [j for j in range(ring.n) if j not in (0, i)]
    A = N[i][np.ix_(keep, keep)]
    eye = np.eye(len(keep), dtype=np.int64)
    W = np.block([[A + eye, A - eye], [A - eye, -A - eye]])
    want = (2 * k * k + 2) * np.eye(W.shape[0], dtype=np.int64)
    if not np.array_equal(W @ W.T, want):
        raise HadamardError("orthogonality failure")
    if np.any(W == 0):
        raise HadamardError("orthogonality failure: zero entry")
    return W


# ---------------------------------------------------------------------------
# reconstruction

def pm_split_rows(N, k):
    """Exact common-eigenspace splitting of the matrices M_i = N_i^T with
    eigenvalues +-k; returns the sorted character rows (entries +-k)."""
    n = N.shape[0]
    M = [[[int(N[i, j, m]) for j in range(n)] for m in range(n)]
         for i in range(n)]

    def matvec(i, v):
        return [sum(M[i][m][j] * v[j] for j in range(n) if v[j])
                for m in range(n)]

    spaces = [[[Fraction(int(r == c)) for r in range(n)] for c in range(n)]]
    spaces = [list(map(list, zip(*spaces[0])))]  # columns as vectors
    for i in range(n):
        if all(len(sp) == 1 for sp in spaces):
            break
        nxt = []
        for cols in spaces:
            d = len(cols)
            if d == 1:
                nxt.append(cols)
                continue
            img = [matvec(i, v) for v in cols]
            rows_p = [[img[c][r] - k * cols[c][r] for c in range(d)]
                      for r in range(n)]
            rows_m = [[img[c][r] + k * cols[c][r] for c in range(d)]
                      for r in range(n)]
            kp = rat_kernel(rows_p)
            km = rat_kernel(rows_m)
            if len(kp) + len(km) != d:
                raise HadamardError("non-+-k eigenvalue at basis %d" % i)
            for ker in (kp, km):
                if not ker:
                    continue
                nxt.append([[sum(co[c] * cols[c][r] for c in range(d))
                             for r in range(n)] for co in ker])
        spaces = nxt
    if any(len(sp) != 1 for sp in spaces):
        raise HadamardError("splitting stalls")

    rows = []
    for cols in spaces:
        v = cols[0]
        p = next(r for r in range(n) if v[r])
        row = []
        for i in range(n):
            chi = Fraction(matvec(i, v)[p], 1) / v[p]
            if chi.denominator != 1 or abs(chi) != k:
                raise HadamardError("non-+-k eigenvalue at basis %d" % i)
            row.append(int(chi))
        rows.append(row)
    rows.sort()
    return rows


def reconstruct_exact(ring, k=None):
    """Recover the Hadamard matrix from its ring tensor, up to row
    permutation, by exact rational +-k eigenspace splitting."""
    N, n = ring.N, ring.n
    if k is None:
        k = int(N[0, 0, 0])
    if list(ring.tilde) != list(range(n)):
        raise HadamardError("tilde must be identity")
    want = np.zeros(n, dtype=np.int64)
    want[0] = k
    if any(not np.array_equal(N[i, i], want) for i in range(n)):
        raise HadamardError("b_i^2 != k b_0")
    rows = pm_split_rows(N, k)
    a = np.array(rows, dtype=np.int64) // k
    return normalize_hadamard(a)


def reconstruct_mod3(tensor, k):
    """Same splitting over GF(3), eigenvalues +-1 (valid when k = 1 mod 3);
    returns a +-1 sign matrix equal to the source matrix up to row
    permutation."""
    if k % 3 != 1:
        raise HadamardError("k must be 1 mod 3")
    N = getattr(tensor, "N", tensor)
    N3 = np.asarray(N, dtype=np.int64) % 3
    n = N3.shape[0]
    M = [N3[i].T.tolist() for i in range(n)]

    def matvec(i, v):
        return [sum(M[i][m][j] * v[j] for j in range(n)) % 3
                for m in range(n)]

    spaces = [[[int(r == c) for r in range(n)] for c in range(n)]]
    for i in range(n):
        if all(len(sp) == 1 for sp in spaces):
            break
        nxt = []
        for cols in spaces:
            d = len(cols)
            if d == 1:
                nxt.append(cols)
                continue
            img = [matvec(i, v) for v in cols]
            rows_p = [[(img[c][r] - cols[c][r]) % 3 for c in range(d)]
                      for r in range(n)]
            rows_m = [[(img[c][r] + cols[c][r]) % 3 for c in range(d)]
                      for r in range(n)]
            kp = gf_kernel(rows_p, 3)
            km = gf_kernel(rows_m, 3)
            if len(kp) + len(km) != d:
                raise HadamardError("splitting stalls")
            for ker in (kp, km):
                if not ker:
                    continue
                nxt.append([[sum(co[c] * cols[c][r] for c in range(d)) % 3
                             for r in range(n)] for co in ker])
        spaces = nxt
    if any(len(sp) != 1 for sp in spaces):
        raise HadamardError("splitting stalls")

    rows = []
    for cols in spaces:
        v = cols[0]
        p = next(r for r in range(n) if v[r])
        vp_inv = pow(v[p], -1, 3)
        row = []
        for i in range(n):
            chi = (matvec(i, v)[p] * vp_inv) % 3
            if chi not in (1, 2):
                raise HadamardError("splitting stalls")
            row.append(1 if chi == 1 else -1)
        rows.append(row)
    rows.sort()
    return np.array(rows, dtype=np.int64)


# ---------------------------------------------------------------------------
# the GF(2) algebra and the v-matrix

def f2_tensor(k):
    """4k-dimensional GF(2) tensor: N_ij^0 = N_0i^j = N_i0^j = delta_ij,
    N_ij^m = 1 for four distinct indices including 0, else 0."""
    n = 4 * k
    i, j, m = np.indices((n, n, n))
    N = ((i != 0) & (j != 0) & (m != 0) & (i != j) & (i != m)
         & (j != m)).astype(np.uint8)
    for t in range(n):
        N[t, t, 0] = 1
        N[0, t, t] = 1
        N[t, 0, t] = 1
    return N


def f2_algebra_check(k, tensor=None):
    """Commutativity and associativity of the tensor over GF(2)."""
    N = f2_tensor(k) if tensor is None else np.asarray(tensor, dtype=np.uint8)
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        return False
    N64 = N.astype(np.int64)
    lhs = np.einsum("ijm,mkl->ijkl", N64, N64) % 2
    rhs = np.einsum("jkm,iml->ijkl", N64, N64) % 2
    return bool(np.array_equal(lhs, rhs))


def v_rank(H):
    """Rank over GF(2) of v_ij = (1 - s_ij)/2; at most 4k-2."""
    v = ((1 - H.array) // 2).tolist()
    r = gf_rank(v, 2)
    if r > H.n - 2:
        raise HadamardError("rank bound violated")
    return r


# ---------------------------------------------------------------------------
# equivalence screening

def _invariants(H):
    ring = ring_from_hadamard(H)
    prof = tuple(sorted(profile(H).counts.items()))
    census = tuple(sorted(multiset_census(ring)))
    rowsums = tuple(sorted(int(np.sum(np.abs(ring.N[i])))
                           for i in range(ring.n)))
    return prof, census, rowsums


def equiv_screen(H1, H2):
    """'inequivalent' when any canonical invariant differs, else
    'indistinguishable' (no completeness claim)."""
    if H1.n != H2.n:
        raise HadamardError("order mismatch")
    return "inequivalent" if _invariants(H1) != _invariants(H2) \
        else "indistinguishable"


# ---------------------------------------------------------------------------
# file format: '+'/'-' rows or whitespace-separated +-1 integers

def hadamard_from_text(text):
    rows = []
    for ln_no, ln in enumerate(text.splitlines(), 1):
        s = ln.strip()
        if not s:
            continue
        if any(ch.isspace() for ch in s):
            try:
                row = [int(t) for t in s.split()]
            except ValueError as exc:
                raise FormatError("bad entry on line %d" % ln_no) from exc
            if any(x not in (1, -1) for x in row):
                raise FormatError("entries not +-1 on line %d" % ln_no)
        else:
            if any(ch not in "+-" for ch in s):
                raise FormatError("bad character on line %d" % ln_no)
            row = [1 if ch == "+" else -1 for ch in s]
        rows.append(row)
    if not rows:
        raise FormatError("empty matrix")
    if any(len(r) != len(rows) for r in rows):
        raise FormatError("matrix not square")
    return np.array(rows, dtype=np.int64)


def hadamard_to_text(H):
    a = H.array if isinstance(H, HadamardMatrix) else np.asarray(H)
    return "\n".join("".join("+" if x == 1 else "-" for x in row)
                     for row in a.tolist()) + "\n"
