"""Dense complex linear algebra primitives shared by all modules.

Everything here is a pure function on immutable values; matrices are plain
complex numpy arrays and randomness is fully determined by explicit seeds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotHermitianError, NotUnitaryError


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds for the package's equality / positivity / rank tests.

    eq_tol bounds entrywise deviations still treated as equal, psd_tol is how
    far an eigenvalue may dip below zero before a matrix stops counting as
    positive semidefinite, and rank_tol is the column-norm threshold below
    which a direction counts as linearly dependent.
    """

    eq_tol: float = 1e-10
    psd_tol: float = 1e-10
    rank_tol: float = 1e-10

    def __post_init__(self):
        for name in ("eq_tol", "psd_tol", "rank_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly in (0, 1), got {value}")


DEFAULT_TOL = Tolerances()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex array."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of ndim {a.ndim}")
    return a


def as_square(a) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def basis_vector(n: int, i: int) -> np.ndarray:
    """The i-th standard basis vector of C^n (0-indexed)."""
    e = np.zeros(n, dtype=complex)
    e[i] = 1.0
    return e


def max_abs(a) -> float:
    """Largest entrywise modulus."""
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def is_unitary(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff max-entry |A^dag A - I| <= eq_tol. Raises on non-square input."""
    a = as_square(a)
    n = a.shape[0]
    return max_abs(a.conj().T @ a - np.eye(n)) <= tol.eq_tol


def is_hermitian(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = as_square(a)
    return max_abs(a - a.conj().T) <= tol.eq_tol


def is_scalar_matrix(a, eps: float) -> bool:
    """True iff A agrees entrywise with A[0,0] * I within eps."""
    a = as_square(a)
    return max_abs(a - a[0, 0] * np.eye(a.shape[0])) <= eps


@dataclass(frozen=True)
class HermitianEigen:
    """Spectral decomposition of a Hermitian matrix.

    eigenvalues are real and sorted descending; eigenvectors holds the
    matching orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(a, tol: Tolerances = DEFAULT_TOL) -> HermitianEigen:
    """Eigendecomposition for Hermitian input, eigenvalues descending.

    Raises NotHermitianError if the input is not Hermitian within eq_tol.
    """
    a = as_square(a)
    if not is_hermitian(a, tol):
        raise NotHermitianError(
            f"matrix is not Hermitian (defect {max_abs(a - a.conj().T):.3e})"
        )
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    order = np.argsort(w)[::-1]
    return HermitianEigen(eigenvalues=w[order], eigenvectors=v[:, order])


def trace_distance(rho, sigma) -> float:
    """Half the sum of the absolute eigenvalues of rho - sigma."""
    rho = as_square(rho)
    sigma = as_square(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    diff = rho - sigma
    diff = (diff + diff.conj().T) / 2
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def commutator(a, b) -> np.ndarray:
    """AB - BA."""
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return a @ b - b @ a


def complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    """Array of independent standard circular complex Gaussians."""
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def _haar_from_rng(n: int, rng: np.random.Generator) -> np.ndarray:
    # Gaussian matrix followed by the canonical QR: the positive-diagonal R
    # factor makes Q Haar-distributed.
    from .canonical import canonical_qr

    g = complex_gaussian((n, n), rng)
    return canonical_qr(g).q


def haar_random_unitary(n: int, seed: int) -> np.ndarray:
    """Deterministic Haar-distributed n x n unitary for the given seed."""
    if n < 1:
        raise DimensionError(f"dimension must be >= 1, got {n}")
    return _haar_from_rng(n, np.random.default_rng(seed))


def complete_orthonormal(q: np.ndarray, rank: int) -> np.ndarray:
    """Fill columns rank..n-1 of q with an orthonormal completion.

    The first `rank` columns must already be orthonormal; they are left
    untouched. Completion is deterministic: standard basis vectors are
    orthogonalized in order and accepted greedily.
    """
    n = q.shape[0]
    k = rank
    # With this threshold a single pass over the basis always finds enough
    # independent directions (the residual mass left over is n - rank >= 1).
    threshold = 0.5 / np.sqrt(n)
    for i in range(n):
        if k == n:
            break
        v = basis_vector(n, i)
        for _ in range(2):
            v = v - q[:, :k] @ (q[:, :k].conj().T @ v)
        nrm = np.linalg.norm(v)
        if nrm > threshold:
            q[:, k] = v / nrm
            k += 1
    if k != n:
        raise RuntimeError("orthonormal completion failed")  # pragma: no cover
    return q


def unitary_mapping(source: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Deterministic unitary U with U @ source = target (unit vectors).

    Acts as a rotation inside span{source, target} and as the identity on the
    orthogonal complement.
    """
    x = np.asarray(source, dtype=complex).ravel()
    y = np.asarray(target, dtype=complex).ravel()
    if x.shape != y.shape:
        raise DimensionError(f"vector length mismatch {x.shape} vs {y.shape}")
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    n = x.size
    c = np.vdot(x, y)
    r = y - c * x
    r = r - x * np.vdot(x, r)  # re-orthogonalize against x
    s = np.linalg.norm(r)
    if s <= 1e-12:
        # Target parallel to source: pure phase on the source direction.
        phase = c / abs(c) if abs(c) > 0 else 1.0
        return np.eye(n, dtype=complex) + (phase - 1.0) * np.outer(x, x.conj())
    u2 = r / s
    u = np.eye(n, dtype=complex)
    u += (c - 1.0) * np.outer(x, x.conj())
    u += s * np.outer(u2, x.conj())
    u += -s * np.outer(x, u2.conj())
    u += (np.conj(c) - 1.0) * np.outer(u2, u2.conj())
    return u


def require_unitary(a, tol: Tolerances = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    a = as_square(a)
    if not is_unitary(a, tol):
        raise NotUnitaryError(f"{what} is not unitary within {tol.eq_tol}")
    return a


def matrix_to_json(a) -> dict:
    """Serialize to {"rows": n, "cols": m, "data": [[re, im], ...]} row-major."""
    a = as_matrix(a)
    data = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise DimensionError(
            f"matrix JSON declares {rows}x{cols} but carries {len(data)} entries"
        )
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return flat.reshape(rows, cols)
