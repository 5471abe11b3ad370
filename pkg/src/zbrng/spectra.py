"""s-matrix computations: Verlinde structure constants, orthogonality,
Fourier normalization, involution recovery, numeric diagonalization of a
tensor, closed-subset read-off and heuristic search.

Columns of an s-matrix are the basis images under the splitting isomorphism,
so the componentwise product of columns i and j decomposes over the columns
with coefficients N_ij^m.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from .exact import (CycNum, ExactError, cyc_matrix_inverse, format_cyc,
                    parse_cyc, rat_inverse)
from .rng_core import FormatError


class SpectraError(ValueError):
    pass


class SMatrix:
    """Square matrix over CycNum (exact) or complex floats (numeric)."""

    def __init__(self, mode, n, data, q=None):
        self.mode = mode
        self.n = n
        if mode == "exact":
            self.rows = data
            self.q = q
        else:
            self.array = data

    @classmethod
    def exact(cls, rows):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise SpectraError("s-matrix must be square")
        conv = [[e if isinstance(e, CycNum) else CycNum.from_rat(e) for e in r]
                for r in rows]
        q = 1
        for r in conv:
            for e in r:
                q = lcm(q, e.q)
        conv = [[e.to_order(q) for e in r] for r in conv]
        return cls("exact", n, conv, q=q)

    @classmethod
    def numeric(cls, array):
        a = np.asarray(array, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise SpectraError("s-matrix must be square")
        return cls("numeric", a.shape[0], a)

    def column(self, i):
        if self.mode == "exact":
            return [self.rows[l][i] for l in range(self.n)]
        return self.array[:, i]

    def to_numeric(self):
        if self.mode == "numeric":
            return self.array
        return np.array([[e.embed() for e in row] for row in self.rows],
                        dtype=np.complex128)

    def entry(self, l, i):
        return self.rows[l][i] if self.mode == "exact" else self.array[l, i]

    def __repr__(self):
        return "SMatrix(%s, n=%d)" % (self.mode, self.n)


class VerlindeResult:
    """Integer tensor plus integrality/nonnegativity diagnostics."""

    def __init__(self, tensor, nonnegative, max_deviation, mode):
        self.tensor = tensor
        self.integral = True
        self.nonnegative = nonnegative
        self.max_deviation = max_deviation
        self.mode = mode


def verlinde_tensor(s, tol=1e-6):
    """N_ij^m = sum_l s_li s_lj s'_ml with s' = s^{-1}; errors if any entry
    is not an integer (within tol in numeric mode)."""
    n = s.n
    if s.mode == "exact":
        N = np.zeros((n, n, n), dtype=np.int64)
        if s.q == 1:
            A = [[e.rational_value() for e in row] for row in s.rows]
            Ainv = rat_inverse(A)
            cols = [[A[l][i] for l in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(i, n):
                    w = [cols[i][l] * cols[j][l] for l in range(n)]
                    for m in range(n):
                        c = sum(Ainv[m][l] * w[l] for l in range(n) if w[l])
                        if c.denominator != 1:
                            raise SpectraError(
                                "non-integral structure constant at (%d,%d,%d)"
                                % (i, j, m))
                        N[i, j, m] = N[j, i, m] = c
        else:
            try:
                Ainv = cyc_matrix_inverse(s.rows)
            except ExactError as exc:
                raise SpectraError("singular matrix") from exc
            cols = [s.column(i) for i in range(n)]
            for i in range(n):
                for j in range(i, n):
                    w = [cols[i][l] * cols[j][l] for l in range(n)]
                    for m in range(n):
                        c = CycNum.from_rat(0)
                        for l in range(n):
                            if not w[l].is_zero():
                                c = c + Ainv[m][l] * w[l]
                        if not c.is_integer():
                            raise SpectraError(
                                "non-integral structure constant at (%d,%d,%d)"
                                % (i, j, m))
                        N[i, j, m] = N[j, i, m] = int(c.rational_value())
        return VerlindeResult(N, bool(np.all(N >= 0)), 0.0, "exact")

    a = s.array
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[-1] <= tol * max(1.0, sv[0]):
        raise SpectraError("singular matrix")
    ainv = np.linalg.inv(a)
    raw = np.einsum("li,lj,ml->ijm", a, a, ainv)
    rounded = np.round(raw.real)
    dev = float(np.max(np.abs(raw - rounded)))
    if dev > tol:
        i, j, m = map(int, np.unravel_index(
            np.argmax(np.abs(raw - rounded)), raw.shape))
        raise SpectraError(
            "non-integral structure constant at (%d,%d,%d)" % (i, j, m))
    N = rounded.astype(np.int64)
    return VerlindeResult(N, bool(np.all(N >= 0)), dev, "numeric")


def row_orthogonality_check(s, tilde, tol=1e-9):
    """sum_i s_li s_{m,~i} = 0 for l != m.  Returns (ok, max deviation)."""
    n = s.n
    tl = list(tilde)
    if s.mode == "exact":
        worst = 0.0
        ok = True
        for l in range(n):
            for m in range(l + 1, n):
                t = CycNum.from_rat(0)
                for i in range(n):
                    t = t + s.rows[l][i] * s.rows[m][tl[i]]
                if not t.is_zero():
                    ok = False
                    worst = max(worst, abs(t.embed()))
        return ok, worst
    a = s.array
    g = a @ a[:, tl].T
    off = g - np.diag(np.diag(g))
    dev = float(np.max(np.abs(off))) if n > 1 else 0.0
    return dev <= tol, dev


def fourier_matrix(s, tol=1e-9):
    """Rows scaled to unit hermitian norm by positive square roots; refuses
    input whose rows are not mutually orthogonal."""
    a = s.to_numeric()
    g = a @ a.conj().T
    norms = np.abs(np.diag(g))
    if np.any(norms <= tol):
        raise SpectraError("zero row")
    scale = float(np.max(norms))
    off = g - np.diag(np.diag(g))
    if s.n > 1 and float(np.max(np.abs(off))) > tol * max(1.0, scale):
        raise SpectraError("rows not orthogonal")
    f = a / np.sqrt(norms)[:, None]
    if float(np.max(np.abs(f @ f.conj().T - np.eye(s.n)))) > 1e-9:
        raise SpectraError("normalization failed unitarity check")
    return f


def involution_from_smatrix(s, tol=1e-9):
    """The unique permutation with column ~i = conjugate of column i; the
    candidate must also give orthogonal rows, which rules out matrices that
    merely happen to be conjugation-stable (e.g. any real non-orthogonal
    matrix via the identity)."""
    n = s.n
    perm = []
    if s.mode == "exact":
        keys = {}
        for j in range(n):
            key = tuple(e.key() for e in s.column(j))
            if key in keys:
                raise SpectraError("no conjugation permutation exists")
            keys[key] = j
        for i in range(n):
            target = tuple(e.conj().key() for e in s.column(i))
            if target not in keys:
                raise SpectraError("no conjugation permutation exists")
            perm.append(keys[target])
    else:
        a = s.array
        scale = max(1.0, float(np.max(np.abs(a))))
        for i in range(n):
            want = a[:, i].conj()
            hits = [j for j in range(n)
                    if float(np.max(np.abs(a[:, j] - want))) <= tol * scale]
            if len(hits) != 1:
                raise SpectraError("no conjugation permutation exists")
            perm.append(hits[0])
    if sorted(perm) != list(range(n)):
        raise SpectraError("no conjugation permutation exists")
    if not row_orthogonality_check(s, perm, tol=tol)[0]:
        raise SpectraError("no conjugation permutation exists")
    return tuple(perm)


# ---------------------------------------------------------------------------
# s-matrix from a tensor

def _orthonormal(cols):
    """Orthonormal basis (columns) of the span of the given columns."""
    q, r = np.linalg.qr(cols)
    keep = np.abs(np.diag(r)) > 1e-12 * max(1.0, float(np.max(np.abs(r))))
    return q[:, keep]


def _hadamard_type(ring):
    """k if the tensor matches b_i^2 = k b_0, N_0 = k I, tilde = id."""
    N, n = ring.N, ring.n
    if list(ring.tilde) != list(range(n)):
        return None
    k = int(N[0, 0, 0])
    if k < 1:
        return None
    want = np.zeros(n, dtype=np.int64)
    want[0] = k
    if any(not np.array_equal(N[i, i], want) for i in range(n)):
        return None
    if not np.array_equal(N[0], k * np.eye(n, dtype=np.int64)):
        return None
    return k


def smatrix_from_tensor(ring, tol=1e-8):
    """Characters of the ring as rows, by iterative common-eigenspace
    splitting of the commuting regular-representation matrices; exact +-k
    path for Hadamard-type tensors, numeric otherwise."""
    n, N = ring.n, ring.N
    k = _hadamard_type(ring)
    if k is not None:
        from .hadamard import pm_split_rows
        rows = pm_split_rows(N, k)
        rows.sort()
        return SMatrix.exact([[int(v) for v in row] for row in rows])

    M = [N[i].T.astype(np.complex128) for i in range(n)]
    spaces = [np.eye(n, dtype=np.complex128)]
    for i in range(n):
        if all(sp.shape[1] == 1 for sp in spaces):
            break
        nxt = []
        for sp in spaces:
            d = sp.shape[1]
            if d == 1:
                nxt.append(sp)
                continue
            b = sp.conj().T @ (M[i] @ sp)
            vals, vecs = np.linalg.eig(b)
            order = np.lexsort((vals.imag.round(9), vals.real.round(9)))
            atol = tol * max(1.0, float(np.max(np.abs(vals))))
            clusters = []
            for idx in order:
                if clusters and abs(vals[idx] - vals[clusters[-1][-1]]) <= atol:
                    clusters[-1].append(idx)
                else:
                    clusters.append([idx])
            if len(clusters) == 1:
                nxt.append(sp)
                continue
            for cl in clusters:
                nxt.append(_orthonormal(sp @ vecs[:, cl]))
        spaces = nxt
    if any(sp.shape[1] != 1 for sp in spaces):
        raise SpectraError("splitting failed")

    rows = np.zeros((n, n), dtype=np.complex128)
    for r, sp in enumerate(spaces):
        v = sp[:, 0]
        nv = float(np.real(v.conj() @ v))
        for i in range(n):
            rows[r, i] = (v.conj() @ (M[i] @ v)) / nv

    # character property: s_ki s_kj = sum_m N_ijm s_km
    lhs = np.einsum("ki,kj->kij", rows, rows)
    rhs = np.einsum("ijm,km->kij", N.astype(np.complex128), rows)
    scale = max(1.0, float(np.max(np.abs(lhs))))
    if float(np.max(np.abs(lhs - rhs))) > 1e-6 * scale:
        raise SpectraError("splitting failed")

    order = sorted(range(n), key=lambda r: tuple(
        (round(rows[r, i].real, 6), round(rows[r, i].imag, 6))
        for i in range(n)))
    return SMatrix.numeric(rows[order])


# ---------------------------------------------------------------------------
# closed subsets from the s-matrix

def _row_keys(s, cols, tol):
    """Hashable per-row keys of the column submatrix, plus nonzero flags."""
    keys, nonzero = [], []
    if s.mode == "exact":
        for l in range(s.n):
            ents = [s.rows[l][c] for c in cols]
            keys.append(tuple(e.key() for e in ents))
            nonzero.append(any(not e.is_zero() for e in ents))
    else:
        dec = max(1, int(round(-np.log10(max(tol, 1e-12)))))
        for l in range(s.n):
            ents = s.array[l, cols]
            keys.append(tuple(np.round(ents, dec).tolist()))
            nonzero.append(bool(np.max(np.abs(ents)) > tol))
    return keys, nonzero


def _pair_test(s, cols, tol):
    """|distinct nonzero rows of the column submatrix| == |cols|?"""
    keys, nonzero = _row_keys(s, list(cols), tol)
    distinct = {k for k, nz in zip(keys, nonzero) if nz}
    return len(distinct) == len(cols)


class ClosedSubsetResult:
    def __init__(self, sets, flags):
        self.sets = sets
        self.flags = flags

    def __iter__(self):
        return iter(self.sets)


class _Decomposer:
    """Exact (or numeric) coefficients of col_i * col_j over the columns;
    supports the closedness check even when the integer Verlinde tensor
    does not exist (non-integral constants)."""

    def __init__(self, s, tol):
        self.s = s
        self.tol = tol
        self.cache = {}
        if s.mode == "exact":
            if s.q == 1:
                A = [[e.rational_value() for e in row] for row in s.rows]
                self.cols = [[A[l][i] for l in range(s.n)]
                             for i in range(s.n)]
                self.Ainv = rat_inverse(A)
            else:
                try:
                    self.Ainv = cyc_matrix_inverse(s.rows)
                except ExactError as exc:
                    raise SpectraError("singular matrix") from exc
        else:
            a = s.array
            sv = np.linalg.svd(a, compute_uv=False)
            if sv[-1] <= tol * max(1.0, sv[0]):
                raise SpectraError("singular matrix")
            self.Ainv = np.linalg.inv(a)
            self.scale = max(1.0, float(np.max(np.abs(a))) ** 2)

    def support(self, i, j):
        """Indices m with a nonzero coefficient in col_i * col_j."""
        key = (i, j) if i <= j else (j, i)
        if key in self.cache:
            return self.cache[key]
        s, n = self.s, self.s.n
        if s.mode == "exact":
            if s.q == 1:
                ci, cj = self.cols[key[0]], self.cols[key[1]]
                w = [ci[l] * cj[l] for l in range(n)]
                sup = frozenset(
                    m for m in range(n)
                    if sum(self.Ainv[m][l] * w[l] for l in range(n) if w[l]))
            else:
                ci, cj = s.column(key[0]), s.column(key[1])
                w = [ci[l] * cj[l] for l in range(n)]
                sup = set()
                for m in range(n):
                    c = CycNum.from_rat(0)
                    for l in range(n):
                        if not w[l].is_zero():
                            c = c + self.Ainv[m][l] * w[l]
                    if not c.is_zero():
                        sup.add(m)
                sup = frozenset(sup)
        else:
            w = s.array[:, key[0]] * s.array[:, key[1]]
            coeff = self.Ainv @ w
            sup = frozenset(int(m) for m in
                            np.nonzero(np.abs(coeff) >
                                       self.tol * self.scale)[0])
        self.cache[key] = sup
        return sup

    def closed(self, S):
        sset = set(S)
        if len(sset) == self.s.n:
            return True
        return all(self.support(i, j) <= sset for i in S for j in S if i <= j)


def closed_subset_heuristic(s, tol=1e-8):
    """Per row pair, candidate = columns where the rows agree; accept iff the
    submatrix has exactly |candidate| distinct nonzero rows; close the
    accepted family under pairwise intersection; verify every set by exact
    decomposition of its column products."""
    n = s.n
    if s.mode == "exact":
        entry_keys = [[e.key() for e in row] for row in s.rows]
        def agree(l, m):
            return tuple(c for c in range(n)
                         if entry_keys[l][c] == entry_keys[m][c])
    else:
        a = s.array
        scale = max(1.0, float(np.max(np.abs(a))))
        def agree(l, m):
            return tuple(c for c in range(n)
                         if abs(a[l, c] - a[m, c]) <= tol * scale)

    family = set()
    for l in range(n):
        for m in range(l, n):
            cand = agree(l, m)
            if cand and _pair_test(s, cand, tol):
                family.add(cand)

    # close under pairwise intersection, re-testing each new set
    while True:
        new = set()
        members = sorted(family)
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                inter = tuple(sorted(set(members[x]) & set(members[y])))
                if inter and inter not in family and inter not in new:
                    if _pair_test(s, inter, tol):
                        new.add(inter)
        if not new:
            break
        family |= new

    dec = _Decomposer(s, tol)
    sets, flags = [], []
    for cand in sorted(family, key=lambda t: (len(t), t)):
        if dec.closed(cand):
            sets.append(cand)
            flags.append(True)
    return ClosedSubsetResult(sets, flags)


def subring_smatrix(s, S, tol=1e-8):
    """Distinct nonzero rows of the column submatrix on a closed S."""
    S = sorted(set(S))
    if S and (S[0] < 0 or S[-1] >= s.n):
        raise SpectraError("index out of range")
    if not _Decomposer(s, tol).closed(S):
        raise SpectraError("S not closed")
    keys, nonzero = _row_keys(s, S, tol)
    seen, picked = set(), []
    for l in range(s.n):
        if nonzero[l] and keys[l] not in seen:
            seen.add(keys[l])
            picked.append(l)
    if len(picked) != len(S):
        raise SpectraError("subring read-off failed: %d distinct nonzero rows,"
                           " expected %d" % (len(picked), len(S)))
    if s.mode == "exact":
        rows = [[s.rows[l][c] for c in S] for l in picked]
        rows.sort(key=lambda r: tuple(
            (round(e.embed().real, 6), round(e.embed().imag, 6)) for e in r))
        return SMatrix.exact(rows)
    rows = s.array[np.ix_(picked, S)]
    order = sorted(range(len(picked)), key=lambda r: tuple(
        (round(rows[r, c].real, 6), round(rows[r, c].imag, 6))
        for c in range(len(S))))
    return SMatrix.numeric(rows[order])


def mu_uniformity_check(s, tol=1e-8):
    """Common |mu| when every column is mu_i times a root-of-unity vector."""
    n = s.n
    mus = []
    if s.mode == "exact":
        for i in range(n):
            col_mu = None
            for e in s.column(i):
                f = e.root_of_unity_factor()
                if f is None:
                    raise SpectraError("column not of root-of-unity type")
                if col_mu is None:
                    col_mu = f[0]
                elif col_mu != f[0]:
                    raise SpectraError("column not of root-of-unity type")
            mus.append(col_mu)
    else:
        a = np.abs(s.array)
        scale = max(1.0, float(np.max(a)))
        for i in range(n):
            col = a[:, i]
            mu = float(np.mean(col))
            if np.max(np.abs(col - mu)) > tol * scale or mu <= tol:
                raise SpectraError("column not of root-of-unity type")
            mu_int = int(round(mu))
            if abs(mu - mu_int) > tol * scale:
                raise SpectraError("column not of root-of-unity type")
            mus.append(mu_int)
    if len(set(mus)) != 1:
        raise SpectraError("moduli differ")
    return mus[0]


# ---------------------------------------------------------------------------
# text format

def smatrix_to_text(s):
    if s.mode == "exact":
        lines = ["smatrix 1", "n %d %d" % (s.n, s.n)]
        for row in s.rows:
            lines.append(" ".join(format_cyc(e) for e in row))
    else:
        lines = ["smatrix-numeric 1", "n %d %d" % (s.n, s.n)]
        for row in s.array:
            lines.append(" ".join(repr(complex(v)) for v in row))
    return "\n".join(lines) + "\n"


def smatrix_from_text(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] not in ("smatrix 1", "smatrix-numeric 1"):
        raise FormatError("missing 'smatrix 1' header")
    numeric = lines[0].startswith("smatrix-numeric")
    try:
        parts = lines[1].split()
        if parts[0] != "n":
            raise FormatError("missing size line")
        rows, cols = int(parts[1]), int(parts[2])
    except (IndexError, ValueError) as exc:
        raise FormatError("malformed size line") from exc
    if rows != cols:
        raise FormatError("s-matrix must be square")
    if len(lines) != 2 + rows:
        raise FormatError("expected %d data rows" % rows)
    data = []
    for ln in lines[2:]:
        toks = ln.split()
        if len(toks) != cols:
            raise FormatError("row has %d entries, expected %d"
                              % (len(toks), cols))
        if numeric:
            data.append([complex(t) for t in toks])
        else:
            try:
                data.append([parse_cyc(t) for t in toks])
            except ExactError as exc:
                raise FormatError(str(exc)) from exc
    return SMatrix.numeric(np.array(data)) if numeric else SMatrix.exact(data)
