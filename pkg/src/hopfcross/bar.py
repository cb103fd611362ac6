"""Brute-force bar-complex oracles.

These complexes are the independent reference route for everything else in
the package: normalized Hochschild chains M (x) Ebar^n and cochains
Hom(Ebar^n, M) for any algebra, their leg-count filtrations for a crossed
product, and the canonical complexes computing the (co)homology of a Hopf
algebra with module coefficients.  Nothing here touches the reduced
complexes or the resolution.
"""

from __future__ import annotations

from .algebras import AlgebraData
from .complexes import COHOMOLOGY, HOMOLOGY, ChainComplex, FilteredComplex
from .crossed import BimoduleData, CrossedProductData
from .linalg import ExactMatrix
from .tensors import TensorSpace


def _chain_space(dim_m: int, dim_ebar: int, n: int) -> TensorSpace:
    return TensorSpace((dim_m,) + (dim_ebar,) * n)


def hochschild_chain_complex(
    e: AlgebraData, m: BimoduleData, cap: int
) -> ChainComplex:
    """(M (x) Ebar^*, b): the normalized Hochschild chain complex, degrees 0..cap."""
    field = e.field
    dim_ebar = e.dim - 1
    dims = [m.dim * dim_ebar**n for n in range(cap + 1)]
    maps: list = [None]
    for n in range(1, cap + 1):
        src = _chain_space(m.dim, dim_ebar, n)
        tgt = _chain_space(m.dim, dim_ebar, n - 1)
        cols: list[dict] = []
        for key in src:
            mi = key[0]
            legs = [x + 1 for x in key[1:]]  # section reps in E
            col: dict = {}

            def put(midx, tail, coef):
                idx = tgt.index((midx,) + tuple(t - 1 for t in tail))
                w = field.add(col.get(idx, field.zero), coef)
                if field.is_zero(w):
                    col.pop(idx, None)
                else:
                    col[idx] = w

            for mj, c in m.right[mi][legs[0]].items():
                put(mj, legs[1:], c)
            sign = field.one
            for i in range(1, n):
                sign = field.neg(sign)
                for k, c in e.mult[legs[i - 1]][legs[i]].items():
                    if k == 0:
                        continue  # class of the unit dies in Ebar
                    put(mi, legs[: i - 1] + [k] + legs[i + 1 :], field.mul(sign, c))
            sign = field.neg(sign)
            for mj, c in m.left[legs[-1]][mi].items():
                put(mj, legs[:-1], field.mul(sign, c))
            cols.append(col)
        maps.append(ExactMatrix(field, dims[n - 1], dims[n], cols))
    return ChainComplex(field, dims, maps, HOMOLOGY)


def hochschild_cochain_complex(
    e: AlgebraData, m: BimoduleData, cap: int
) -> ChainComplex:
    """(Hom(Ebar^*, M), b*): the normalized Hochschild cochain complex.

    Basis of Hom(Ebar^n, M): pairs (argument tensor t, value basis index),
    flat index t * dim(M) + value.
    """
    field = e.field
    dim_ebar = e.dim - 1
    dims = [dim_ebar**n * m.dim for n in range(cap + 1)]
    maps: list = [None]
    for n in range(1, cap + 1):
        arg_space = TensorSpace((dim_ebar,) * n)
        prev_args = TensorSpace((dim_ebar,) * (n - 1))
        cols: list[dict] = [{} for _ in range(dims[n - 1])]

        def add(col_idx, row_idx, coef):
            col = cols[col_idx]
            w = field.add(col.get(row_idx, field.zero), coef)
            if field.is_zero(w):
                col.pop(row_idx, None)
            else:
                col[row_idx] = w

        for t in arg_space:
            legs = [x + 1 for x in t]
            row_base = arg_space.index(t) * m.dim
            # term 0: x1 . phi(x2..xn)
            cidx = prev_args.index(t[1:]) * m.dim
            for mi in range(m.dim):
                for mj, c in m.left[legs[0]][mi].items():
                    add(cidx + mi, row_base + mj, c)
            # middle merges
            sign = field.one
            for i in range(1, n):
                sign = field.neg(sign)
                for k, c in e.mult[legs[i - 1]][legs[i]].items():
                    if k == 0:
                        continue
                    merged = t[: i - 1] + (k - 1,) + t[i + 1 :]
                    cidx = prev_args.index(merged) * m.dim
                    for mi in range(m.dim):
                        add(cidx + mi, row_base + mi, field.mul(sign, c))
            # last term: phi(x1..x_{n-1}) . xn
            sign = field.neg(sign)
            cidx = prev_args.index(t[:-1]) * m.dim
            for mi in range(m.dim):
                for mj, c in m.right[mi][legs[-1]].items():
                    add(cidx + mi, row_base + mj, field.mul(sign, c))
        maps.append(ExactMatrix(field, dims[n], dims[n - 1], cols))
    return ChainComplex(field, dims, maps, COHOMOLOGY)


# filtrations by legs outside A ---------------------------------------------

def _legs_outside_a(cp: CrossedProductData, ebar_tuple) -> int:
    count = 0
    for x in ebar_tuple:
        _, h_idx = cp.e_unrank(x + 1)
        if h_idx != 0:
            count += 1
    return count


def hochschild_chain_filtered(
    cp: CrossedProductData, m: BimoduleData, cap: int
) -> FilteredComplex:
    """The chain oracle with F^i = span of tensors having at most i legs outside A#1."""
    cx = hochschild_chain_complex(cp.e, m, cap)
    dim_ebar = cp.e.dim - 1
    filtration = []
    for n in range(cap + 1):
        space = _chain_space(m.dim, dim_ebar, n)
        level_of = [_legs_outside_a(cp, key[1:]) for key in space]
        levels = []
        for i in range(n + 1):
            levels.append(tuple(j for j, lv in enumerate(level_of) if lv <= i))
        filtration.append(levels)
    return FilteredComplex(cx, filtration)


def hochschild_cochain_filtered(
    cp: CrossedProductData, m: BimoduleData, cap: int
) -> FilteredComplex:
    """The cochain oracle with the decreasing filtration F_i = maps vanishing
    whenever fewer than i legs lie outside A#1."""
    cx = hochschild_cochain_complex(cp.e, m, cap)
    dim_ebar = cp.e.dim - 1
    filtration = []
    for n in range(cap + 1):
        arg_space = TensorSpace((dim_ebar,) * n)
        level_of = []
        for t in arg_space:
            lv = _legs_outside_a(cp, t)
            level_of.extend([lv] * m.dim)
        levels = []
        for i in range(n + 2):
            levels.append(tuple(j for j, lv in enumerate(level_of) if lv >= i))
        filtration.append(levels)
    return FilteredComplex(cx, filtration)


# Hopf-algebra (co)homology with module coefficients -------------------------

def h_module_homology_complex(h, module, cap: int) -> ChainComplex:
    """Complex Hbar^s (x) N computing the homology of H with left-module coefficients.

    module = (dim_n, rho) with rho[h_index] an ExactMatrix acting on N for
    every full H-basis index (rho[0] the identity).
    """
    field = h.field
    dim_n, rho = module
    dim_hbar = h.dim - 1
    dims = [dim_hbar**s * dim_n for s in range(cap + 1)]
    maps: list = [None]
    for s in range(1, cap + 1):
        src = TensorSpace((dim_hbar,) * s + (dim_n,))
        tgt = TensorSpace((dim_hbar,) * (s - 1) + (dim_n,))
        cols: list[dict] = []
        for key in src:
            legs = [x + 1 for x in key[:-1]]
            ni = key[-1]
            col: dict = {}

            def put(tail, nvec, coef):
                for nj, c in nvec.items():
                    idx = tgt.index(tuple(t - 1 for t in tail) + (nj,))
                    w = field.add(col.get(idx, field.zero), field.mul(coef, c))
                    if field.is_zero(w):
                        col.pop(idx, None)
                    else:
                        col[idx] = w

            put(legs[1:], {ni: field.one}, h.counit[legs[0]])
            sign = field.one
            for i in range(1, s):
                sign = field.neg(sign)
                for k, c in h.algebra.mult[legs[i - 1]][legs[i]].items():
                    if k == 0:
                        continue
                    put(legs[: i - 1] + [k] + legs[i + 1 :], {ni: field.one}, field.mul(sign, c))
            sign = field.neg(sign)
            put(legs[:-1], rho[legs[-1]].column(ni), sign)
            cols.append(col)
        maps.append(ExactMatrix(field, dims[s - 1], dims[s], cols))
    return ChainComplex(field, dims, maps, HOMOLOGY)


def h_module_cohomology_complex(h, module, cap: int) -> ChainComplex:
    """Complex Hom(Hbar^s, N) computing the cohomology of H with right-module
    coefficients; module = (dim_n, rho) with rho[h_index] the right action."""
    field = h.field
    dim_n, rho = module
    dim_hbar = h.dim - 1
    dims = [dim_hbar**s * dim_n for s in range(cap + 1)]
    maps: list = [None]
    for s in range(1, cap + 1):
        arg_space = TensorSpace((dim_hbar,) * s)
        prev_args = TensorSpace((dim_hbar,) * (s - 1))
        cols: list[dict] = [{} for _ in range(dims[s - 1])]

        def add(col_idx, row_idx, coef):
            col = cols[col_idx]
            w = field.add(col.get(row_idx, field.zero), coef)
            if field.is_zero(w):
                col.pop(row_idx, None)
            else:
                col[row_idx] = w

        for t in arg_space:
            legs = [x + 1 for x in t]
            row_base = arg_space.index(t) * dim_n
            eps = h.counit[legs[0]]
            if not field.is_zero(eps):
                cidx = prev_args.index(t[1:]) * dim_n
                for ni in range(dim_n):
                    add(cidx + ni, row_base + ni, eps)
            sign = field.one
            for i in range(1, s):
                sign = field.neg(sign)
                for k, c in h.algebra.mult[legs[i - 1]][legs[i]].items():
                    if k == 0:
                        continue
                    cidx = prev_args.index(t[: i - 1] + (k - 1,) + t[i + 1 :]) * dim_n
                    for ni in range(dim_n):
                        add(cidx + ni, row_base + ni, field.mul(sign, c))
            sign = field.neg(sign)
            cidx = prev_args.index(t[:-1]) * dim_n
            for ni in range(dim_n):
                for nj, c in rho[legs[-1]].column(ni).items():
                    add(cidx + ni, row_base + nj, field.mul(sign, c))
        maps.append(ExactMatrix(field, dims[s], dims[s - 1], cols))
    return ChainComplex(field, dims, maps, COHOMOLOGY)


def trivial_left_module(h) -> tuple[int, list]:
    """k with h acting by the counit."""
    field = h.field
    rho = []
    for i in range(h.dim):
        c = h.counit[i]
        rho.append(ExactMatrix.from_entries(field, 1, 1, {(0, 0): c}))
    return 1, rho
