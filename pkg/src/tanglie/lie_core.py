"""Finite-dimensional real Lie algebras given by structure constants.

Conventions used throughout the package:

* an algebra of dimension ``n`` stores a dense rank-3 tensor ``c`` with
  ``c[i, j, k]`` the coefficient of ``X_k`` in ``[X_i, X_j]``;
* vectors are plain 1-d numpy arrays of coefficients in the stored basis;
* linear maps are ``(n, n)`` arrays whose columns are the images of the
  basis vectors, acting on coefficient vectors by matrix multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimension, NonPositiveDefinite, SingularMap

# Default tolerances. All checks accept an explicit override.
EPS_JACOBI = 1e-9
EPS_SYM = 1e-9
EPS_PD = 1e-12
CHECK_TOL = 1e-8


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LieAlgebra:
    """A real Lie algebra encoded by its structure-constant tensor.

    Antisymmetry in the first two tensor slots is exact by construction:
    both constructors symmetrize the input, so only the Jacobi identity
    remains a nontrivial property (see :func:`jacobi_defect`).
    """

    dim: int
    basis_labels: tuple[str, ...]
    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim <= 0:
            raise InvalidDimension(f"dimension must be positive, got {self.dim}")
        if len(self.basis_labels) != self.dim:
            raise InvalidDimension(
                f"{len(self.basis_labels)} labels for dimension {self.dim}"
            )
        c = np.asarray(self.c, dtype=float)
        if c.shape != (self.dim,) * 3:
            raise InvalidDimension(
                f"structure tensor shape {c.shape}, expected {(self.dim,) * 3}"
            )
        object.__setattr__(self, "c", _freeze(0.5 * (c - c.transpose(1, 0, 2))))
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        entries: dict[tuple[int, int, int], float],
        labels: tuple[str, ...] | None = None,
    ) -> "LieAlgebra":
        """Build from sparse entries ``{(i, j, k): value}`` with ``i < j``.

        The ``j > i`` orientation is filled in by negation, which makes
        antisymmetry structurally impossible to violate.
        """
        c = np.zeros((dim, dim, dim))
        for (i, j, k), v in entries.items():
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise InvalidDimension(f"bracket entry ({i},{j},{k}) out of range")
            c[i, j, k] = v
            c[j, i, k] = -v
        if labels is None:
            labels = tuple(f"X{i + 1}" for i in range(dim))
        return cls(dim, tuple(labels), c)

    @classmethod
    def from_tensor(
        cls, c: np.ndarray, labels: tuple[str, ...] | None = None
    ) -> "LieAlgebra":
        c = np.asarray(c, dtype=float)
        dim = c.shape[0]
        if labels is None:
            labels = tuple(f"X{i + 1}" for i in range(dim))
        return cls(dim, tuple(labels), c)

    def vector(self, x) -> np.ndarray:
        """Validate and return ``x`` as a coefficient vector of this algebra."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise InvalidDimension(f"vector shape {x.shape}, algebra dim {self.dim}")
        return x

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[i] = 1.0
        return e


@dataclass(frozen=True)
class Metric:
    """Inner product on a Lie algebra, stored as its Gram matrix.

    Construction validates symmetry (within ``eps_sym``) and positive
    definiteness (every Cholesky pivot above ``eps_pd``), then stores the
    exactly symmetrized matrix.
    """

    g: np.ndarray = field(repr=False)

    def __init__(self, g, eps_sym: float = EPS_SYM, eps_pd: float = EPS_PD):
        g = np.asarray(g, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InvalidDimension(f"metric must be square, got shape {g.shape}")
        if np.max(np.abs(g - g.T)) > eps_sym:
            raise NonPositiveDefinite(
                f"metric asymmetry {np.max(np.abs(g - g.T)):.3e} exceeds {eps_sym:.1e}"
            )
        g = 0.5 * (g + g.T)
        try:
            chol = np.linalg.cholesky(g)
        except np.linalg.LinAlgError:
            raise NonPositiveDefinite("metric is not positive-definite") from None
        if np.min(np.diag(chol)) ** 2 <= eps_pd:
            raise NonPositiveDefinite(
                f"smallest Cholesky pivot {np.min(np.diag(chol)) ** 2:.3e} "
                f"not above {eps_pd:.1e}"
            )
        object.__setattr__(self, "g", _freeze(g))

    @property
    def dim(self) -> int:
        return self.g.shape[0]

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.g @ np.asarray(y))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x), 0.0)))

    def inv(self) -> np.ndarray:
        return np.linalg.inv(self.g)

    @classmethod
    def identity(cls, dim: int) -> "Metric":
        return cls(np.eye(dim))


# ---------------------------------------------------------------------------
# Bracket and adjoint operations
# ---------------------------------------------------------------------------


def bracket(algebra: LieAlgebra, x, y) -> np.ndarray:
    """Lie bracket [x, y] of two coefficient vectors."""
    x = algebra.vector(x)
    y = algebra.vector(y)
    return np.einsum("i,j,ijk->k", x, y, algebra.c)


def ad_matrix(algebra: LieAlgebra, x) -> np.ndarray:
    """Matrix of ad(x): y -> [x, y] acting on coefficient vectors."""
    x = algebra.vector(x)
    return np.einsum("i,ijk->kj", x, algebra.c)


def ad_star(algebra: LieAlgebra, metric: Metric, x) -> np.ndarray:
    """Metric adjoint of ad(x): the unique map with g(ad*(x) y, z) = g(y, [x, z])."""
    if metric.dim != algebra.dim:
        raise InvalidDimension("metric dimension does not match algebra")
    adx = ad_matrix(algebra, x)
    return metric.inv() @ adx.T @ metric.g


def jacobi_defect(algebra: LieAlgebra) -> float:
    """Max-abs residual of the Jacobi identity over all index quadruples."""
    c = algebra.c
    t = np.einsum("ijm,mkl->ijkl", c, c)
    resid = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(resid)))


def center(algebra: LieAlgebra, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis of the center {y : [x, y] = 0 for all x}.

    The kernel of the stacked adjoint matrices is computed by SVD; columns
    are sign-fixed (largest-magnitude entry positive) for determinism.
    """
    n = algebra.dim
    stacked = algebra.c.transpose(0, 2, 1).reshape(n * n, n)  # rows: ad(X_i)
    _, s, vt = np.linalg.svd(stacked)
    rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
    basis = []
    for row in vt[rank:]:
        lead = np.argmax(np.abs(row))
        if row[lead] < 0:
            row = -row
        basis.append(row.copy())
    return basis


def is_automorphism(algebra: LieAlgebra, tau, tol: float = CHECK_TOL) -> bool:
    """True iff tau is invertible and commutes with the bracket within tol."""
    tau = np.asarray(tau, dtype=float)
    n = algebra.dim
    if tau.shape != (n, n):
        raise InvalidDimension(f"map shape {tau.shape}, algebra dim {n}")
    if np.linalg.matrix_rank(tau) < n:
        return False
    c = algebra.c
    lhs = np.einsum("ijm,km->ijk", c, tau)  # tau([X_i, X_j])
    rhs = np.einsum("pi,qj,pqk->ijk", tau, tau, c)  # [tau X_i, tau X_j]
    return float(np.max(np.abs(lhs - rhs))) <= tol


def pullback_metric(metric: Metric, tau) -> Metric:
    """Pullback tau^T g tau of a metric by an invertible linear map."""
    tau = np.asarray(tau, dtype=float)
    if tau.shape != (metric.dim, metric.dim):
        raise InvalidDimension(f"map shape {tau.shape}, metric dim {metric.dim}")
    if np.linalg.matrix_rank(tau) < metric.dim:
        raise SingularMap("pullback by a singular map")
    return Metric(tau.T @ metric.g @ tau)


def change_basis_constants(algebra: LieAlgebra, b, labels=None) -> LieAlgebra:
    """Structure constants of the same algebra in a new basis.

    Columns of ``b`` are the new basis vectors in old coordinates.  For a
    diagonal rescaling ``b = diag(1/sqrt(lambda_i))`` the new constants are
    ``sqrt(lambda_k / (lambda_i lambda_j))`` times the old ones.
    """
    b = np.asarray(b, dtype=float)
    n = algebra.dim
    if b.shape != (n, n):
        raise InvalidDimension(f"basis-change shape {b.shape}, algebra dim {n}")
    if np.linalg.matrix_rank(b) < n:
        raise SingularMap("basis change must be invertible")
    binv = np.linalg.inv(b)
    d = np.einsum("pi,qj,pqm,km->ijk", b, b, algebra.c, binv)
    return LieAlgebra.from_tensor(d, labels or algebra.basis_labels)
