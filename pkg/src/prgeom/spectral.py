"""Adjacency spectra, (n, d, lambda) profiles, tensor spectra and the expander mixing check."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from prgeom import kernels
from prgeom.graph import ColoredGraph, Graph

JACOBI_TOL = 1e-12

_profile_cache: dict[str, "SpectralProfile"] = {}


@dataclass(frozen=True)
class SpectralProfile:
    """Certified (n, d, lambda) parameters of a graph.

    For a non-regular graph ``d`` is the maximum degree, ``regular`` is False and
    ``degree_spread`` records max - min degree.
    """

    n: int
    d: int
    lam: float
    regular: bool
    spectrum: tuple[float, ...] = field(repr=False, default=())
    degree_spread: int = 0
    top: float = 0.0
    sweeps: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def ratio(self) -> float:
        """lambda * n / d, the set size above which the graph sees every pair of large sets."""
        if self.d == 0:
            return math.inf
        return self.lam * self.n / self.d

    def to_dict(self, with_spectrum: bool = True) -> dict:
        out = asdict(self)
        out["lambda"] = out.pop("lam")
        out["spectrum"] = list(self.spectrum) if with_spectrum else None
        out["warnings"] = list(self.warnings)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> SpectralProfile:
        data = dict(data)
        data["lam"] = data.pop("lambda")
        data["spectrum"] = tuple(data.get("spectrum") or ())
        data["warnings"] = tuple(data.get("warnings") or ())
        return cls(**data)


def eigh(g: Graph | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of the adjacency matrix."""
    a = g.matrix(np.float64) if isinstance(g, Graph) else np.asarray(g, dtype=np.float64)
    w, v, _ = kernels.jacobi_eigh(a, JACOBI_TOL)
    return w, v


def spectrum(g: Graph, *, use_cache: bool = True) -> SpectralProfile:
    if g.n == 0:
        raise ValueError("spectrum of an empty graph is undefined")
    key = g.content_hash()
    if use_cache and key in _profile_cache:
        return _profile_cache[key]
    w, _, sweeps = kernels.jacobi_eigh(g.matrix(np.float64), JACOBI_TOL)
    desc = w[::-1]
    deg = g.degrees
    regular = g.is_regular()
    d = int(deg.max())
    warnings = []
    if regular:
        lam = float(max(abs(desc[1]), abs(desc[-1]))) if g.n > 1 else 0.0
        if abs(desc[0] - d) > 1e-8 * max(d, 1):
            warnings.append("top eigenvalue differs from degree")
    else:
        # second-largest absolute eigenvalue, measured against the max degree
        mags = np.sort(np.abs(desc))[::-1]
        lam = float(mags[1]) if g.n > 1 else 0.0
        warnings.append(f"not regular: degrees in [{int(deg.min())}, {d}]")
    prof = SpectralProfile(
        n=g.n,
        d=d,
        lam=min(lam, float(d)) if regular else lam,
        regular=regular,
        spectrum=tuple(float(x) for x in desc),
        degree_spread=int(deg.max() - deg.min()),
        top=float(desc[0]),
        sweeps=int(sweeps),
        warnings=tuple(warnings),
    )
    if use_cache:
        _profile_cache[key] = prof
    return prof


def layer_profiles(g: ColoredGraph, colors=None) -> dict:
    colors = g.colors if colors is None else colors
    return {c: spectrum(g.layer(c)) for c in colors}


def clear_cache() -> None:
    _profile_cache.clear()


@dataclass
class TensorSpectrumReport:
    passed: bool
    max_mismatch: float
    tol: float
    size: int


def tensor_spectrum_check(g1: Graph, g2: Graph, tol: float = 1e-6) -> TensorSpectrumReport:
    """Compare spectrum(G1 x G2) with all pairwise products of the factor spectra."""
    from prgeom.graph import tensor_product

    s1 = np.array(spectrum(g1).spectrum)
    s2 = np.array(spectrum(g2).spectrum)
    predicted = np.sort(np.outer(s1, s2).ravel())
    w, _ = eigh(tensor_product(g1, g2))
    mismatch = float(np.abs(np.sort(w) - predicted).max())
    return TensorSpectrumReport(passed=mismatch <= tol, max_mismatch=mismatch, tol=tol, size=predicted.size)


@dataclass
class MixingReport:
    lhs_error: float
    rhs_bound: float
    passed: bool


def mixing_discrepancy(g: Graph, f, gfun, profile: SpectralProfile | None = None,
                       slack: float = 1e-9) -> MixingReport:
    """|<f, A g> - d |V| E(f) E(g)| against lambda ||f||_2 ||g||_2."""
    profile = profile or spectrum(g)
    f = np.asarray(f, dtype=np.float64)
    gv = np.asarray(gfun, dtype=np.float64)
    n = g.n
    inner = float(f @ (g.matrix(np.float64) @ gv))
    lhs = abs(inner - profile.d * n * (f.sum() / n) * (gv.sum() / n))
    rhs = profile.lam * float(np.linalg.norm(f)) * float(np.linalg.norm(gv))
    return MixingReport(lhs_error=lhs, rhs_bound=rhs, passed=lhs <= rhs + slack)
