"""Degreewise invariant rings, transfer images, and ideal slices.

Everything is computed one degree at a time: the matrix of a generator
power on the degree-d slice is assembled recursively from the degree-(d-1)
slice, invariants are the fixed vectors of the generator, and the transfer
image is the row space of the summed powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import gradedla as la
from .gradedla import GradedBasis, MatFp
from .poly import Poly, monomial_index, monomials_of_degree, num_monomials, var_mono
from .rep import CpRep, _generator_power_images, is_invariant


@lru_cache(maxsize=None)
def _mono_parents(nvars: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """For each degree-d monomial: the first variable with a positive
    exponent, and the index of the monomial divided by it in degree d-1."""
    if degree < 1:
        raise ValueError("parents exist only from degree 1 up")
    monos = monomials_of_degree(nvars, degree)
    below = monomial_index(nvars, degree - 1)
    var_of = np.empty(len(monos), dtype=np.intp)
    parent = np.empty(len(monos), dtype=np.intp)
    for i, m in enumerate(monos):
        v = next(idx for idx, e in enumerate(m) if e)
        var_of[i] = v
        reduced = list(m)
        reduced[v] -= 1
        parent[i] = below[tuple(reduced)]
    return var_of, parent


def _next_degree_matrix(rep: CpRep, k: int, degree: int, prev: np.ndarray) -> np.ndarray:
    """Matrix of the k-th generator power on the degree-d slice (rows act:
    image of monomial i is row i), built from the degree-(d-1) matrix."""
    p, n = rep.p.value, rep.nvars
    width = num_monomials(n, degree)
    var_of, parent = _mono_parents(n, degree)
    images = _generator_power_images(rep, k)
    acc = np.zeros((width, width), dtype=np.int64)
    prev64 = prev.astype(np.int64)
    for v in range(n):
        rows_v = np.nonzero(var_of == v)[0]
        if rows_v.size == 0:
            continue
        block = prev64[parent[rows_v]]
        for target, coeff in images[v]:
            colmap = la._mult_colmap(n, degree - 1, var_mono(n, target))
            acc[np.ix_(rows_v, colmap)] += coeff * block
    return (acc % p).astype(np.uint8)


@dataclass(frozen=True)
class InvariantRingSlice:
    """Invariant polynomials, one echelon basis per degree up to a bound."""

    rep: CpRep
    max_degree: int
    basis: GradedBasis

    def dims(self) -> list[int]:
        return self.basis.dims()


@dataclass(frozen=True)
class TransferIdealSlice:
    """Image of the transfer map, one echelon basis per degree."""

    rep: CpRep
    max_degree: int
    basis: GradedBasis

    def dims(self) -> list[int]:
        return self.basis.dims()


@lru_cache(maxsize=16)
def _slices(rep: CpRep, max_degree: int) -> tuple[GradedBasis, GradedBasis]:
    """One sweep computing invariant and transfer-image bases per degree."""
    p, n = rep.p.value, rep.nvars
    inv_mats = [MatFp.identity(p, 1)]
    tra_mats = [MatFp(p, np.zeros((0, 1), dtype=np.uint8), ())]
    prev = {k: np.ones((1, 1), dtype=np.uint8) for k in range(1, p)}
    for d in range(1, max_degree + 1):
        cur = {k: _next_degree_matrix(rep, k, d, prev[k]) for k in range(1, p)}
        width = num_monomials(n, d)
        fixed = (cur[1].astype(np.int64).T - np.eye(width, dtype=np.int64)) % p
        inv_mats.append(la.kernel(MatFp(p, fixed.astype(np.uint8))))
        total = np.eye(width, dtype=np.int64)
        for k in range(1, p):
            total += cur[k]
        tra_mats.append(la.image(MatFp(p, (total % p).astype(np.uint8))))
        prev = cur
    return GradedBasis(p, n, inv_mats), GradedBasis(p, n, tra_mats)


def invariant_slice(rep: CpRep, max_degree: int) -> InvariantRingSlice:
    """Echelon bases of the invariant ring in degrees 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    inv, _ = _slices(rep, max_degree)
    return InvariantRingSlice(rep, max_degree, inv)


def transfer_slice(rep: CpRep, max_degree: int) -> TransferIdealSlice:
    """Echelon bases of the transfer image in degrees 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    _, tra = _slices(rep, max_degree)
    return TransferIdealSlice(rep, max_degree, tra)


def ideal_slice(ring: InvariantRingSlice, gens: Sequence[Poly], max_degree: int | None = None) -> GradedBasis:
    """Degree slices of the ideal the given invariants generate inside the
    invariant ring: each slice is spanned by generator times invariant
    basis elements of the complementary degree."""
    rep = ring.rep
    bound = ring.max_degree if max_degree is None else max_degree
    if bound > ring.max_degree:
        raise ValueError(f"requested degree {bound} above the slice bound {ring.max_degree}")
    checked = []
    for g in gens:
        rep.check_poly(g)
        if not g.is_homogeneous():
            raise ValueError("ideal generators must be homogeneous")
        if not is_invariant(rep, g):
            raise ValueError("ideal generators must be invariant")
        if not g.is_zero():
            checked.append(g)
    p, n = rep.p.value, rep.nvars
    mats = []
    for d in range(bound + 1):
        pieces = []
        for g in checked:
            e = g.homogeneous_degree()
            if e <= d and ring.basis.dim(d - e):
                pieces.append(la.mult_map(ring.basis.mat(d - e), g, d - e).a)
        if pieces:
            mats.append(la.rref(MatFp(p, np.vstack(pieces))))
        else:
            mats.append(MatFp(p, np.zeros((0, num_monomials(n, d)), dtype=np.uint8), ()))
    return GradedBasis(p, n, mats)


@dataclass(frozen=True)
class HilbertData:
    """Dimension counts per degree, index = degree."""

    dims: tuple[int, ...]

    def dim(self, degree: int) -> int:
        return self.dims[degree]

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def as_list(self) -> list[int]:
        return [int(d) for d in self.dims]


def quotient_dims(ambient: GradedBasis, sub: GradedBasis) -> HilbertData:
    """Degreewise dimensions of ambient/sub, after verifying the inclusion
    sub <= ambient in every stored degree."""
    if not la.graded_le(sub, ambient):
        bad = [d for d in range(sub.max_degree + 1)
               if not la.subspace_le(sub.mats[d], ambient.mats[d])]
        raise ValueError(f"subspace inclusion fails in degrees {bad}")
    return HilbertData(tuple(ambient.dim(d) - sub.dim(d) for d in range(ambient.max_degree + 1)))


def finite_difference(values: Sequence[int], step: int, order: int) -> list[int]:
    """Iterated difference a(d) - a(d - step); entries below index
    step*order are dropped."""
    seq = [int(v) for v in values]
    for _ in range(order):
        seq = [seq[i] - seq[i - step] for i in range(step, len(seq))]
    return seq


def dimension_growth_check(dims: Sequence[int], order: int, step: int, window_start: int) -> tuple[bool, list[int]]:
    """Evidence that the dimension sequence is eventually a quasi-polynomial
    of degree < order with period ``step``: the order-fold step-difference
    must vanish from ``window_start`` on.  Returns (ok, offending degrees)."""
    diffs = finite_difference(dims, step, order)
    offset = step * order
    bad = [i + offset for i, v in enumerate(diffs) if v != 0 and i + offset >= window_start]
    return not bad, bad
