"""Momentum-space symbols, plane-wave eigensolutions, and block solves.

On a periodic lattice every plane wave exp(2 pi i p.k/N) is an eigenvector
of the forward differences, with delta_mu acting as multiplication by
z_mu = exp(2 pi i p_mu/N_mu) - 1.  Substituting those scalars into the
d_c/delta_c stencils turns the operator into an independent 16 x 16 block
per momentum, which gives exact plane-wave solutions (from eigenpairs of
the block) and a direct solver for the massive equation with a source.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import blades
from .calculus import DELTA_TERMS, D_TERMS
from .fields import FormField, plane_wave
from .lattice import LatticeDims


def _symbol_block(z) -> np.ndarray:
    """Assemble the symbol of d_c + delta_c from per-axis multipliers.

    z is a 4-sequence of scalars or broadcastable arrays; the result has
    the broadcast shape plus trailing (16, 16) axes.
    """
    shape = np.broadcast_shapes(*(np.shape(zi) for zi in z))
    out = np.zeros(shape + (blades.NUM_BLADES, blades.NUM_BLADES), dtype=np.complex128)
    for out_b, sign, axis, in_b in D_TERMS + DELTA_TERMS:
        out[..., out_b, in_b] += sign * z[axis]
    return out


def _z_scalars(p, dims: LatticeDims) -> tuple:
    if len(p) != 4:
        raise ValueError(f"momentum must have four components, got {p!r}")
    p = tuple(int(c) % n for c, n in zip(p, dims.shape))
    return p, tuple(np.exp(2j * np.pi * p[mu] / dims.extent(mu)) - 1.0 for mu in blades.AXES)


@dataclass(frozen=True)
class SymbolMatrix:
    """16 x 16 momentum-space block of d_c + delta_c at one momentum."""

    p: tuple
    dims: LatticeDims
    matrix: np.ndarray

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=np.complex128, copy=True)
        if arr.shape != (16, 16):
            raise ValueError(f"symbol must be 16 x 16, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)


def build_symbol(p, dims: LatticeDims) -> SymbolMatrix:
    """Symbol of d_c + delta_c at integer momentum p."""
    p, z = _z_scalars(p, dims)
    return SymbolMatrix(p=p, dims=dims, matrix=_symbol_block(z))


def symbol_stack(dims: LatticeDims) -> np.ndarray:
    """Symbols at every momentum, shape (N0, N1, N2, N3, 16, 16)."""
    z = []
    for mu in blades.AXES:
        n = dims.extent(mu)
        axis_z = np.exp(2j * np.pi * np.arange(n) / n) - 1.0
        shape = [1, 1, 1, 1]
        shape[mu] = n
        z.append(axis_z.reshape(shape))
    return _symbol_block(tuple(z))


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue and unit-norm amplitude of i times a symbol block."""

    eigenvalue: complex
    amplitude: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitude, dtype=np.complex128, copy=True)
        if amp.shape != (16,):
            raise ValueError(f"amplitude must have shape (16,), got {amp.shape}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitude", amp)
        object.__setattr__(self, "eigenvalue", complex(self.eigenvalue))


class EigenSolveError(RuntimeError):
    """Raised when the dense eigensolver fails to converge at a momentum."""


def eigen_solve(symbol: SymbolMatrix) -> list[EigenPair]:
    """All 16 eigenpairs of i * symbol, sorted by (re, im) of the eigenvalue.

    Each eigenpair yields an exact plane-wave solution of the massive
    equation with the eigenvalue as its (generally complex) mass.
    """
    try:
        values, vectors = np.linalg.eig(1j * symbol.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"eigensolver failed at momentum {symbol.p}") from exc
    order = np.lexsort((values.imag, values.real))
    return [EigenPair(eigenvalue=values[i],
                      amplitude=vectors[:, i] / np.linalg.norm(vectors[:, i]))
            for i in order]


def build_dk_solution(p, pair: EigenPair, dims: LatticeDims):
    """Plane-wave solution field for an eigenpair; returns (field, mass)."""
    return plane_wave(dims, p, pair.amplitude), pair.eigenvalue


def all_momenta(dims: LatticeDims):
    """All integer momenta in row-major order, matching the site order."""
    from .lattice import site_iter
    return site_iter(dims)


class SingularBlockError(ValueError):
    """Mass coincides with an eigenvalue of some momentum block."""

    def __init__(self, momentum, eigenvalue, mass):
        self.momentum = tuple(int(c) for c in momentum)
        self.eigenvalue = complex(eigenvalue)
        self.mass = complex(mass)
        super().__init__(
            f"mass {format_complex(mass)} matches eigenvalue "
            f"{format_complex(eigenvalue)} of the momentum block p={self.momentum}")


def format_complex(z: complex) -> str:
    return f"{z.real:.17g},{z.imag:.17g}"


def propagator_solve(source: FormField, mass: complex) -> FormField:
    """Solve (i (d_c + delta_c) - m) omega = source by momentum blocks.

    The source is transformed momentum by momentum, each 16 x 16 block
    (i D(p) - m I) is solved directly, and the result is transformed back.
    Raises SingularBlockError when m is an eigenvalue of any block.
    """
    mass = complex(mass)
    dims = source.dims
    stack = 1j * symbol_stack(dims)
    eigenvalues = np.linalg.eigvals(stack)
    distances = np.abs(eigenvalues - mass)
    tol = 1e-12 * max(1.0, abs(mass))
    if distances.min() <= tol:
        flat = np.unravel_index(int(np.argmin(distances)), distances.shape)
        raise SingularBlockError(momentum=flat[:4], eigenvalue=eigenvalues[flat], mass=mass)
    blocks = stack - mass * np.eye(16)
    transformed = np.fft.fftn(source.coeffs, axes=(0, 1, 2, 3))
    solved = np.linalg.solve(blocks, transformed[..., None])[..., 0]
    return FormField(dims, np.fft.ifftn(solved, axes=(0, 1, 2, 3)))


def spectrum_rows(dims: LatticeDims, momenta):
    """Eigenvalue rows (p0, p1, p2, p3, re_lambda, im_lambda), 16 per momentum."""
    for p in momenta:
        symbol = build_symbol(p, dims)
        for pair in eigen_solve(symbol):
            yield symbol.p + (pair.eigenvalue.real, pair.eigenvalue.imag)


def write_spectrum_csv(fh, dims: LatticeDims, momenta) -> None:
    """Write the spectrum as CSV with a header row."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["p0", "p1", "p2", "p3", "re_lambda", "im_lambda"])
    for p0, p1, p2, p3, re_l, im_l in spectrum_rows(dims, momenta):
        writer.writerow([p0, p1, p2, p3, format(re_l, ".17g"), format(im_l, ".17g")])
