"""Canonical QR decomposition under left multiplication by unitaries.

The R factor produced here is a complete invariant for the left action of
the unitary group: two square matrices A, B satisfy B = UA for some unitary
U exactly when their canonical R factors coincide. On top of the
decomposition this module provides the equivalence test and the
measurement-simulability certificate built from it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matops import (
    DEFAULT_TOL,
    Tolerances,
    as_square,
    complete_orthonormal,
    max_abs,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalQR:
    """Result of the canonical QR decomposition.

    q is unitary, r is upper triangular with the first nonzero entry of each
    row real and positive, and column_ranks[j] is the rank of the first j+1
    columns of the input. Entries of r below row column_ranks[j] vanish in
    column j; rows beyond the total rank are exactly zero.
    """

    q: np.ndarray
    r: np.ndarray
    column_ranks: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.column_ranks[-1] if self.column_ranks else 0


def canonical_qr(a, tol: Tolerances = DEFAULT_TOL) -> CanonicalQR:
    """Canonical QR decomposition of a square complex matrix.

    Gram-Schmidt over columns with reorthogonalization; a column whose
    residual norm is <= rank_tol contributes no new Q column, so its R column
    holds only the projection coefficients onto previously accepted
    directions. Q is completed to a full unitary and row phases of R are
    absorbed into Q so each leading row entry is real positive.
    """
    a = as_square(a)
    n = a.shape[0]
    q = np.zeros((n, n), dtype=complex)
    r = np.zeros((n, n), dtype=complex)
    ranks = []
    rank = 0
    for j in range(n):
        v = a[:, j].astype(complex)
        if rank:
            qk = q[:, :rank]
            coef = qk.conj().T @ v
            v = v - qk @ coef
            corr = qk.conj().T @ v
            v = v - qk @ corr
            r[:rank, j] = coef + corr
        nrm = np.linalg.norm(v)
        if nrm > tol.rank_tol:
            q[:, rank] = v / nrm
            r[rank, j] = nrm
            rank += 1
        ranks.append(rank)
    complete_orthonormal(q, rank)

    # Normalize row phases: rows whose leading entry is below rank_tol carry
    # no phase convention and stay as computed (zero rows are exactly zero).
    for i in range(rank):
        row = r[i]
        nz = np.nonzero(np.abs(row) > tol.rank_tol)[0]
        if nz.size == 0:
            continue
        lead = row[nz[0]]
        phase = lead / abs(lead)
        if abs(phase - 1.0) > 0:
            r[i] *= np.conj(phase)
            q[:, i] *= phase
    return CanonicalQR(q=q, r=r, column_ranks=tuple(ranks))


def canonical_form(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """The canonical R factor: depends only on the left-unitary class of A."""
    return canonical_qr(a, tol).r


def unitarily_equivalent(a, b, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff B = UA for some unitary U, decided via canonical forms.

    Borderline cases (canonical forms within (eq_tol, 10*eq_tol]) are
    reported unequal, fail-closed, with a diagnostic log entry.
    """
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    dist = max_abs(canonical_form(a, tol) - canonical_form(b, tol))
    if dist <= tol.eq_tol:
        return True
    if dist <= 10 * tol.eq_tol:
        log.warning(
            "canonical forms differ by %.3e, within 10x eq_tol; reporting unequal",
            dist,
        )
    return False


def _padded_operators(target, base) -> tuple[list[np.ndarray], list[np.ndarray]]:
    ops_t = [as_square(m) for m in target.operators]
    ops_b = [as_square(m) for m in base.operators]
    dims = {m.shape for m in ops_t + ops_b}
    if len(dims) != 1:
        raise DimensionError(f"operator dimensions differ: {sorted(dims)}")
    n = ops_t[0].shape[0]
    m = max(len(ops_t), len(ops_b))
    zero = np.zeros((n, n), dtype=complex)
    ops_t = ops_t + [zero] * (m - len(ops_t))
    ops_b = ops_b + [zero] * (m - len(ops_b))
    return ops_t, ops_b


def _perfect_matching(compat: np.ndarray) -> tuple[int, ...] | None:
    m = compat.shape[0]
    match = [-1] * m
    used = [False] * m

    def extend(k: int) -> bool:
        if k == m:
            return True
        for j in range(m):
            if compat[k, j] and not used[j]:
                used[j] = True
                match[k] = j
                if extend(k + 1):
                    return True
                used[j] = False
        return False

    return tuple(match) if extend(0) else None


def can_simulate(target, base, tol: Tolerances = DEFAULT_TOL) -> tuple[int, ...] | None:
    """Reordering j(k) with F(target_k) = F(base_j(k)) for all k, if any.

    The shorter operator list is padded with zero operators first. Returns
    the permutation as a tuple of 0-based base indices, or None when the
    target measurement cannot be enacted from the base one by conditional
    unitary controls.
    """
    ops_t, ops_b = _padded_operators(target, base)
    forms_t = [canonical_form(op, tol) for op in ops_t]
    forms_b = [canonical_form(op, tol) for op in ops_b]
    m = len(ops_t)
    compat = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            compat[i, j] = max_abs(forms_t[i] - forms_b[j]) <= tol.eq_tol
    return _perfect_matching(compat)


def simulation_controls(
    target, base, permutation: tuple[int, ...], tol: Tolerances = DEFAULT_TOL
) -> list[np.ndarray]:
    """Witness unitaries U_k with U_k @ base_j(k) = target_k.

    Built from the Q factors of the canonical decompositions of the matched
    operators.
    """
    ops_t, ops_b = _padded_operators(target, base)
    controls = []
    for k, j in enumerate(permutation):
        q_t = canonical_qr(ops_t[k], tol).q
        q_b = canonical_qr(ops_b[j], tol).q
        controls.append(q_t @ q_b.conj().T)
    return controls
