"""Spectral decompositions of Hermitian / symmetric dual matrices.

The constructive pipeline: diagonalize the standard part, kill cross-cluster
infinitesimal couplings with a first-order corrector P = I + eps*C (which is
exactly unitary / T-orthogonal because eps**2 = 0), then resolve each cluster's
residual infinitesimal block with the appropriate real spectral backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual import Dual
from .errors import NotHermitian, NotSquare, NotSymmetric
from .linalg import (
    FLAVOR_STAR,
    FLAVOR_T,
    DualMatrix,
    gram_schmidt,
    structure_residual,
)
from .realspec import skew_block_diag, sym_eig

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass
class SpectralBlock:
    """One diagonal block of a *-spectral Sigma.

    size 1: the scalar block (sigma).  size 2: the rotation-like block
    [[sigma, -eps*sigma_prime], [eps*sigma_prime, sigma]] with sigma_prime > 0.
    """

    sigma: float
    sigma_prime: float
    size: int


@dataclass
class SpectralDecomposition:
    """M = v Sigma v*  (star flavor)  or  M = v D v^T  (T flavor)."""

    v: DualMatrix
    flavor: str
    blocks: list | None = None  # star flavor
    diag: list | None = None  # T flavor

    @property
    def n(self) -> int:
        return self.v.shape[0]

    def sigma_matrix(self) -> DualMatrix:
        """Assemble the canonical middle factor."""
        if self.flavor == FLAVOR_T:
            return DualMatrix.diagonal(self.diag)
        n = self.n
        out = DualMatrix.zeros(n, n)
        p = 0
        for b in self.blocks:
            if b.size == 1:
                out.std[p, p] = b.sigma
            else:
                out.std[p, p] = out.std[p + 1, p + 1] = b.sigma
                out.inf[p, p + 1] = -b.sigma_prime
                out.inf[p + 1, p] = b.sigma_prime
            p += b.size
        return out


def eigenvalue_multiset(d: SpectralDecomposition):
    """The invariant eigenvalue multiset, as a sorted list of (sigma, signed
    sigma_prime) pairs.  A star 2x2 block contributes the conjugate pair."""
    pairs = []
    if d.flavor == FLAVOR_T:
        for z in d.diag:
            pairs.append((z.std, z.inf))
    else:
        for b in d.blocks:
            if b.size == 1:
                pairs.append((b.sigma, 0.0))
            else:
                pairs.append((b.sigma, b.sigma_prime))
                pairs.append((b.sigma, -b.sigma_prime))
    return sorted(pairs)


def _clusters(d: np.ndarray, cluster_tol: float):
    """Group indices of a descending real sequence into near-equal clusters."""
    n = len(d)
    scale = max(1.0, float(np.abs(d).max())) if n else 1.0
    groups = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and abs(d[j] - d[j + 1]) <= cluster_tol * scale:
            j += 1
        groups.append(list(range(i, j + 1)))
        i = j + 1
    return groups


def _embed(real: np.ndarray) -> DualMatrix:
    return DualMatrix(real)


def _decompose(m: DualMatrix, flavor: str, tol: float, cluster_tol: float):
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"spectral decomposition needs a square matrix: {m.shape}")
    n = m.shape[0]
    scale = max(1.0, m.norm())
    if flavor == FLAVOR_STAR:
        if structure_residual(m, "hermitian") > tol * scale:
            raise NotHermitian("matrix is not Hermitian within tolerance")
    else:
        if structure_residual(m, "symmetric") > tol * scale:
            raise NotSymmetric("matrix is not symmetric within tolerance")
    if n == 0:
        empty = DualMatrix(np.zeros((0, 0)))
        if flavor == FLAVOR_STAR:
            return SpectralDecomposition(empty, flavor, blocks=[])
        return SpectralDecomposition(empty, flavor, diag=[])

    a0 = 0.5 * (m.std + m.std.T)
    spec = sym_eig(a0)
    s = spec.q.T  # s a0 s^T is diagonal, eigenvalues descending
    sd = _embed(s)
    mp = sd @ m @ sd.T
    d = np.diag(mp.std).copy()
    groups = _clusters(d, cluster_tol)

    # First-order corrector: C_ab = inf(M')_ab / (d_a - d_b) across clusters.
    # C is symmetric for the star flavor (inf part skew) and skew for T
    # (inf part symmetric), which makes P = I + eps*C exactly an isometry.
    c = np.zeros((n, n))
    group_of = np.empty(n, dtype=int)
    for gi, g in enumerate(groups):
        for a in g:
            group_of[a] = gi
    for a in range(n):
        for b in range(n):
            if group_of[a] != group_of[b]:
                c[a, b] = mp.inf[a, b] / (d[a] - d[b])
    p = DualMatrix(np.eye(n), c)
    padj = p.star() if flavor == FLAVOR_STAR else p.T
    mpp = p @ mp @ padj

    # Resolve each cluster's infinitesimal block with a real backend.
    qs = []
    blocks = []
    diag = []
    for g in groups:
        idx = np.array(g)
        b_ii = mpp.inf[np.ix_(idx, idx)]
        lam_vals = d[idx]
        if flavor == FLAVOR_STAR:
            b_ii = 0.5 * (b_ii - b_ii.T)
            # Rotation parameters below 1e-9 of the matrix scale collapse to
            # scalar blocks; keeping them would emit near-boundary 2x2 blocks.
            mu_floor = 1e-9 * scale / max(1.0, float(np.abs(b_ii).max() or 0.0))
            sb = skew_block_diag(b_ii, tol=mu_floor)
            q_i = sb.q.T if sb.q.size else np.zeros((len(g), len(g)))
            qs.append(q_i)
            lam_rot = q_i @ np.diag(lam_vals) @ q_i.T
            pos = 0
            for mu in sb.mus:
                sigma = 0.5 * (lam_rot[pos, pos] + lam_rot[pos + 1, pos + 1])
                blocks.append(SpectralBlock(sigma, mu, 2))
                pos += 2
            for _ in range(sb.zero_count):
                blocks.append(SpectralBlock(lam_rot[pos, pos], 0.0, 1))
                pos += 1
        else:
            b_ii = 0.5 * (b_ii + b_ii.T)
            es = sym_eig(b_ii)
            q_i = es.q.T
            qs.append(q_i)
            lam_rot = q_i @ np.diag(lam_vals) @ q_i.T
            for k in range(len(g)):
                diag.append(Dual(lam_rot[k, k], es.eigenvalues[k]))

    g_full = np.zeros((n, n))
    pos = 0
    for q_i in qs:
        k = q_i.shape[0]
        g_full[pos : pos + k, pos : pos + k] = q_i
        pos += k
    gd = _embed(g_full)

    # w = G P S is an isometry; M = w^adj Sigma w, so v = w^adj.
    w = gd @ p @ sd
    v = w.star() if flavor == FLAVOR_STAR else w.T

    if flavor == FLAVOR_STAR:
        dec = SpectralDecomposition(v, flavor, blocks=blocks)
    else:
        dec = SpectralDecomposition(v, flavor, diag=diag)

    kind = "unitary" if flavor == FLAVOR_STAR else "t_orthogonal"
    if structure_residual(v, kind) > 1e-11 * max(1.0, v.norm()):
        cols = gram_schmidt(v.columns(), flavor)
        dec.v = DualMatrix.from_columns(cols, rows=n)
    return dec


def star_spectral(
    m: DualMatrix, tol: float = 1e-8, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> SpectralDecomposition:
    """Decompose a Hermitian dual matrix as M = V Sigma V* with unitary V."""
    return _decompose(m, FLAVOR_STAR, tol, cluster_tol)


def t_spectral(
    m: DualMatrix, tol: float = 1e-8, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> SpectralDecomposition:
    """Decompose a symmetric dual matrix as M = V D V^T with T-orthogonal V."""
    return _decompose(m, FLAVOR_T, tol, cluster_tol)
