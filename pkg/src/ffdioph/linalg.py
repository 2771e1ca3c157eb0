"""Dense Gaussian elimination over F_q.

Two code paths behind one API: a generic one driven by an ``Fq`` context and
a bit-packed one for GF(2) where each row is a Python int (bit j = column j).
Basis vectors come out in a canonical order (free columns ascending, unit
entry at the free column), so results are deterministic.
"""

from __future__ import annotations

from .field import Fq


def _rref_generic(field: Fq, rows: list[list[int]], ncols: int):
    R = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(R)):
            if R[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        R[rank], R[sel] = R[sel], R[rank]
        inv = field.inv(R[rank][col])
        if inv != 1:
            R[rank] = [field.mul(inv, c) for c in R[rank]]
        for r in range(len(R)):
            if r != rank and R[r][col] != 0:
                f = R[r][col]
                row_r, row_p = R[r], R[rank]
                for j in range(col, len(row_r)):
                    if row_p[j]:
                        row_r[j] = field.sub(row_r[j], field.mul(f, row_p[j]))
        pivots.append(col)
        rank += 1
        if rank == len(R):
            break
    return R, pivots


def _rref_gf2(rows: list[int], ncols: int):
    R = list(rows)
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        sel = None
        for r in range(rank, len(R)):
            if R[r] & bit:
                sel = r
                break
        if sel is None:
            continue
        R[rank], R[sel] = R[sel], R[rank]
        piv = R[rank]
        for r in range(len(R)):
            if r != rank and R[r] & bit:
                R[r] ^= piv
        pivots.append(col)
        rank += 1
        if rank == len(R):
            break
    return R, pivots


def _pack_gf2(rows: list[list[int]]) -> list[int]:
    out = []
    for row in rows:
        v = 0
        for j, c in enumerate(row):
            if c:
                v |= 1 << j
        out.append(v)
    return out


def nullspace(field: Fq, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Canonical basis of {x : A x = 0}."""
    if field.is_gf2():
        R, pivots = _rref_gf2(_pack_gf2(rows), ncols)
        pivset = set(pivots)
        basis = []
        for free in range(ncols):
            if free in pivset:
                continue
            vec = [0] * ncols
            vec[free] = 1
            fbit = 1 << free
            for r, pc in enumerate(pivots):
                if R[r] & fbit:
                    vec[pc] = 1
            basis.append(vec)
        return basis
    R, pivots = _rref_generic(field, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, pc in enumerate(pivots):
            if R[r][free]:
                vec[pc] = field.neg(R[r][free])
        basis.append(vec)
    return basis


def solve_affine(
    field: Fq, rows: list[list[int]], rhs: list[int], ncols: int
):
    """Solve A x = b; returns (particular solution or None, nullspace basis).

    The nullspace basis of A is returned even when the system is
    inconsistent, since callers often need it anyway.
    """
    if field.is_gf2():
        aug = _pack_gf2(rows)
        for i, b in enumerate(rhs):
            if b:
                aug[i] |= 1 << ncols
        R, pivots = _rref_gf2(aug, ncols)
        pivset = set(pivots)
        rank = len(pivots)
        rhs_bit = 1 << ncols
        inconsistent = any(R[r] & rhs_bit for r in range(rank, len(R)))
        basis = []
        for free in range(ncols):
            if free in pivset:
                continue
            vec = [0] * ncols
            vec[free] = 1
            fbit = 1 << free
            for r, pc in enumerate(pivots):
                if R[r] & fbit:
                    vec[pc] = 1
            basis.append(vec)
        if inconsistent:
            return None, basis
        x = [0] * ncols
        for r, pc in enumerate(pivots):
            if R[r] & rhs_bit:
                x[pc] = 1
        return x, basis
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = _rref_generic(field, aug, ncols)
    pivset = set(pivots)
    rank = len(pivots)
    inconsistent = any(R[r][ncols] != 0 for r in range(rank, len(R)))
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, pc in enumerate(pivots):
            if R[r][free]:
                vec[pc] = field.neg(R[r][free])
        basis.append(vec)
    if inconsistent:
        return None, basis
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][ncols]
    return x, basis


def matvec_mod(field: Fq, rows: list[list[int]], x: list[int]) -> list[int]:
    """A x over F_q, for verification in tests."""
    out = []
    for row in rows:
        acc = 0
        for c, xi in zip(row, x):
            if c and xi:
                acc = field.add(acc, field.mul(c, xi))
        out.append(acc)
    return out
