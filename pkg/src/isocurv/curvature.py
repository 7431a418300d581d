"""Curvature tensors in orthonormal bases and the isotropic-curvature probe.

Provides dense curvature tensors for constant-curvature spaces, Riemannian
products of space-form factors, and hypersurface tensors obtained from the
Gauss equation with a diagonal shape operator.  On top of those sit the
frame functional

    K(e1,e3) + K(e1,e4) + K(e2,e3) + K(e2,e4) - 2 R(e1,e2,e3,e4)

evaluated on orthonormal 4-frames, and a seeded random-frame probe that
tests whether the functional is constant over frames.

Sign convention: components are stored so that the sectional curvature of
span(X, Y) is R(X, Y, Y, X) / area^2, positive on round spheres.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ORTHO_TOL = 1e-12        # frame acceptance: |<e_a, e_b> - delta_ab|
REDRAW_RESIDUAL = 1e-8   # Gram-Schmidt residual below which a vector is re-drawn
DEGENERATE_PLANE = 1e-14
DEFAULT_FRAMES = 1000
DEFAULT_PROBE_TOL = 1e-8
DEFAULT_SEED = 42

FACTOR_KINDS = ("sphere", "hyperbolic", "flat")


class FrameError(ValueError):
    """Raised for frames that are not orthonormal in the required dimension."""


@dataclass(frozen=True)
class CurvatureTensor:
    """Dense components R[i,j,k,l] of a curvature tensor in an orthonormal basis.

    Invariant under construction: antisymmetry in the first and second index
    pairs, symmetry under pair exchange, and the first Bianchi identity.
    The component array is read-only; tensors are safe to share.
    """

    dim: int
    comp: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"tensor dimension must be >= 1, got {self.dim}")
        arr = np.array(self.comp, dtype=float, copy=True)
        if arr.shape != (self.dim,) * 4:
            raise ValueError(f"component array must have shape {(self.dim,) * 4}, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "comp", arr)


@dataclass(frozen=True)
class OrthoFrame4:
    """Four orthonormal vectors (rows of a (4, n) array)."""

    vectors: np.ndarray

    def __post_init__(self):
        arr = np.array(self.vectors, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != 4:
            raise FrameError(f"expected 4 row vectors, got array of shape {arr.shape}")
        gram = arr @ arr.T
        err = np.max(np.abs(gram - np.eye(4)))
        if err > ORTHO_TOL:
            raise FrameError(f"frame is not orthonormal: max |<e_a,e_b> - delta_ab| = {err:.3e}")
        arr.setflags(write=False)
        object.__setattr__(self, "vectors", arr)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class Factor:
    """One factor of a Riemannian product: kind, dimension, curvature."""

    kind: str
    dim: int
    curvature: float

    def __post_init__(self):
        if self.kind not in FACTOR_KINDS:
            raise ValueError(f"factor kind must be one of {FACTOR_KINDS}, got {self.kind!r}")
        if self.dim < 1:
            raise ValueError(f"factor dimension must be >= 1, got {self.dim}")
        if self.kind == "sphere" and not self.curvature > 0:
            raise ValueError("sphere factors need curvature > 0")
        if self.kind == "hyperbolic" and not self.curvature < 0:
            raise ValueError("hyperbolic factors need curvature < 0")
        if self.kind == "flat" and self.curvature != 0:
            raise ValueError("flat factors need curvature 0")


@dataclass(frozen=True)
class ProductSpec:
    """Ordered factors of a Riemannian product; total dimension must be >= 4."""

    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("product needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.total_dim < 4:
            raise ValueError(f"total dimension must be >= 4, got {self.total_dim}")

    @property
    def total_dim(self) -> int:
        return sum(f.dim for f in self.factors)


@dataclass(frozen=True)
class ProbeReport:
    """Summary of the isotropic-curvature values over sampled frames."""

    samples: int
    min: float
    max: float
    mean: float
    is_constant: bool

    def __post_init__(self):
        if not (self.min <= self.mean + 1e-15 and self.mean <= self.max + 1e-15):
            raise ValueError("probe report requires min <= mean <= max")


@dataclass(frozen=True)
class SymmetryReport:
    """Worst violation of each algebraic curvature-tensor symmetry."""

    antisymmetry: float
    pair_symmetry: float
    bianchi: float

    @property
    def max_residual(self) -> float:
        return max(self.antisymmetry, self.pair_symmetry, self.bianchi)

    def ok(self, tol: float = 1e-12) -> bool:
        return self.max_residual <= tol


# ---------------------------------------------------------------------------
# constructors


def build_constant_curvature(n: int, k: float) -> CurvatureTensor:
    """Curvature tensor of the n-dimensional space form of curvature k.

    Every 2-plane has sectional curvature k; all genuinely mixed components
    vanish.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    eye = np.eye(n)
    comp = k * (np.einsum("il,jk->ijkl", eye, eye) - np.einsum("ik,jl->ijkl", eye, eye))
    return CurvatureTensor(n, comp)


def build_product(spec: ProductSpec) -> CurvatureTensor:
    """Block-diagonal curvature tensor of a Riemannian product.

    Each factor contributes its constant-curvature block; every component
    with indices spanning two factors is zero.  One-dimensional factors
    carry no curvature.
    """
    n = spec.total_dim
    comp = np.zeros((n, n, n, n))
    offset = 0
    for f in spec.factors:
        if f.dim >= 2 and f.curvature != 0:
            block = build_constant_curvature(f.dim, f.curvature).comp
            sl = slice(offset, offset + f.dim)
            comp[sl, sl, sl, sl] = block
        offset += f.dim
    return CurvatureTensor(n, comp)


def build_from_shape(c: float, lambdas: Sequence[float]) -> CurvatureTensor:
    """Hypersurface curvature tensor from ambient curvature and principal curvatures.

    Applies the Gauss equation in a basis diagonalizing the shape operator:
    sectional(e_i, e_j) = c + lambda_i * lambda_j, and components whose index
    pairs {i,j}, {k,l} differ as unordered pairs vanish.
    """
    lams = np.asarray(lambdas, dtype=float)
    n = lams.size
    if n < 4:
        raise ValueError(f"need at least 4 principal curvatures, got {n}")
    eye = np.eye(n)
    kmat = c + np.outer(lams, lams)
    comp = np.einsum("ij,il,jk->ijkl", kmat, eye, eye) - np.einsum("ij,ik,jl->ijkl", kmat, eye, eye)
    return CurvatureTensor(n, comp)


# ---------------------------------------------------------------------------
# evaluation


def sectional(t: CurvatureTensor, x: Sequence[float], y: Sequence[float]) -> float:
    """Sectional curvature of the plane spanned by x and y.

    Rejects (numerically) dependent spans: the Gram determinant of (x, y)
    must exceed 1e-14.
    """
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    area2 = float(xv @ xv) * float(yv @ yv) - float(xv @ yv) ** 2
    if area2 < DEGENERATE_PLANE:
        raise ValueError(f"degenerate plane: Gram determinant {area2:.3e} < {DEGENERATE_PLANE}")
    num = float(np.einsum("ijkl,i,j,k,l->", t.comp, xv, yv, yv, xv, optimize=True))
    return num / area2


def _as_frame_array(frame, dim: int) -> np.ndarray:
    if isinstance(frame, OrthoFrame4):
        arr = frame.vectors
    else:
        arr = OrthoFrame4(np.asarray(frame, dtype=float)).vectors
    if arr.shape[1] != dim:
        raise FrameError(f"frame lives in dimension {arr.shape[1]}, tensor in {dim}")
    return arr


def _isotropic_batch(comp: np.ndarray, frames: np.ndarray) -> np.ndarray:
    """Frame functional for a batch of frames of shape (m, 4, n)."""

    def r(a, b, c, d):
        return np.einsum(
            "ijkl,mi,mj,mk,ml->m",
            comp,
            frames[:, a],
            frames[:, b],
            frames[:, c],
            frames[:, d],
            optimize=True,
        )

    return r(0, 2, 2, 0) + r(0, 3, 3, 0) + r(1, 2, 2, 1) + r(1, 3, 3, 1) - 2.0 * r(0, 1, 2, 3)


def isotropic_component(t: CurvatureTensor, frame) -> float:
    """K13 + K14 + K23 + K24 - 2 R(e1,e2,e3,e4) on an orthonormal 4-frame."""
    arr = _as_frame_array(frame, t.dim)
    return float(_isotropic_batch(t.comp, arr[None, :, :])[0])


# ---------------------------------------------------------------------------
# frame sampling


def _orthonormalize(raw: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Two-pass modified Gram-Schmidt over a batch of (m, 4, n) vectors.

    Any vector whose residual norm after projection falls below
    REDRAW_RESIDUAL is re-drawn from the generator, so the procedure
    succeeds with probability one.
    """
    m, _, n = raw.shape
    q = np.array(raw, dtype=float)
    for _ in range(2):  # second sweep keeps Gram error at machine precision
        for a in range(4):
            v = q[:, a, :].copy()
            for b in range(a):
                v -= np.einsum("mi,mi->m", v, q[:, b, :])[:, None] * q[:, b, :]
            norms = np.linalg.norm(v, axis=1)
            for idx in np.flatnonzero(norms < REDRAW_RESIDUAL):
                while True:
                    w = rng.standard_normal(n)
                    for b in range(a):
                        w = w - (w @ q[idx, b]) * q[idx, b]
                    nw = np.linalg.norm(w)
                    if nw >= REDRAW_RESIDUAL:
                        v[idx] = w
                        norms[idx] = nw
                        break
            q[:, a, :] = v / norms[:, None]
    return q


def _frame_array(n: int, count: int, seed: int) -> np.ndarray:
    if n < 4:
        raise ValueError(f"4-frames need dimension >= 4, got {n}")
    if count < 1:
        raise ValueError(f"frame count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, 4, n))
    return _orthonormalize(raw, rng)


def sample_frames(n: int, count: int, seed: int = DEFAULT_SEED) -> list[OrthoFrame4]:
    """Deterministic random orthonormal 4-frames in dimension n.

    Frames are obtained by Gram-Schmidt on seeded standard-Gaussian vectors,
    which makes the distribution rotation invariant.  The result depends
    only on (n, count, seed).
    """
    return [OrthoFrame4(v) for v in _frame_array(n, count, seed)]


def cic_probe(
    t: CurvatureTensor,
    count: int = DEFAULT_FRAMES,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_PROBE_TOL,
) -> ProbeReport:
    """Sample the frame functional and report its spread.

    is_constant is True exactly when max - min <= tol over the sampled
    frames; for the tensors built here, constant and non-constant cases
    separate by many orders of magnitude.
    """
    if count < 2:
        raise ValueError(f"probe needs at least 2 frames, got {count}")
    frames = _frame_array(t.dim, count, seed)
    vals = _isotropic_batch(t.comp, frames)
    vmin = float(vals.min())
    vmax = float(vals.max())
    return ProbeReport(
        samples=count,
        min=vmin,
        max=vmax,
        mean=float(vals.mean()),
        is_constant=bool(vmax - vmin <= tol),
    )


# ---------------------------------------------------------------------------
# diagnostics and serialization


def check_symmetries(t: CurvatureTensor) -> SymmetryReport:
    """Max violation of antisymmetry, pair symmetry, and first Bianchi."""
    r = t.comp
    anti = max(
        float(np.max(np.abs(r + np.swapaxes(r, 0, 1)))),
        float(np.max(np.abs(r + np.swapaxes(r, 2, 3)))),
    )
    pair = float(np.max(np.abs(r - np.transpose(r, (2, 3, 0, 1)))))
    bianchi = float(np.max(np.abs(r + np.transpose(r, (0, 2, 3, 1)) + np.transpose(r, (0, 3, 1, 2)))))
    return SymmetryReport(antisymmetry=anti, pair_symmetry=pair, bianchi=bianchi)


def tensor_to_json(t: CurvatureTensor) -> str:
    """Serialize to the canonical JSON form.

    Only nonzero components with i < j, k < l and (i, j) <= (k, l)
    lexicographically are listed (0-based indices); everything else follows
    from the symmetries.
    """
    entries = []
    n = t.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    if (i, j) <= (k, l) and t.comp[i, j, k, l] != 0.0:
                        entries.append([i, j, k, l, float(t.comp[i, j, k, l])])
    return json.dumps({"dim": n, "components": entries})


def tensor_from_json(text: str) -> CurvatureTensor:
    """Rebuild a tensor from its canonical JSON form by unfolding symmetries."""
    data = json.loads(text)
    n = int(data["dim"])
    comp = np.zeros((n, n, n, n))
    for i, j, k, l, v in data["components"]:
        for (a, b, c, d), sign in (
            ((i, j, k, l), 1.0),
            ((j, i, k, l), -1.0),
            ((i, j, l, k), -1.0),
            ((j, i, l, k), 1.0),
        ):
            comp[a, b, c, d] = sign * v
            comp[c, d, a, b] = sign * v
    return CurvatureTensor(n, comp)
