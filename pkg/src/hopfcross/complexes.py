"""Chain/cochain complexes, filtered complexes, spectral-sequence pages.

Complexes are truncated at a degree cap; homology at the cap degree is never
reported because the incoming boundary there is unknown.  All page dimensions
come from the explicit subquotient description of a filtered complex
(cycles-over-boundaries with exact subspace sums and intersections); there are
no homotopy-theoretic shortcuts.

Filtration levels are stored as cumulative tuples of coordinate indices: every
filtration in this package is spanned by basis vectors, which the page
formulas exploit (quotients become row deletions, images become column
selections).
"""

from __future__ import annotations

from .algebras import Report
from .linalg import ExactMatrix, SpanSolver


class BoundaryNotSquareZero(Exception):
    def __init__(self, degree: int, detail: str = ""):
        super().__init__(f"d o d != 0 entering degree {degree} {detail}")
        self.degree = degree


HOMOLOGY = "homology"
COHOMOLOGY = "cohomology"


class ChainComplex:
    """Graded dimensions with exact boundary matrices, truncated at a cap.

    direction == "homology":   maps[n] : C_n -> C_{n-1}   (n = 1..cap)
    direction == "cohomology": maps[n] : C_{n-1} -> C_n   (n = 1..cap)
    maps[0] is always None.
    """

    def __init__(self, field, dims: list[int], maps: list, direction: str = HOMOLOGY):
        if direction not in (HOMOLOGY, COHOMOLOGY):
            raise ValueError(f"bad direction {direction!r}")
        if len(maps) != len(dims):
            raise ValueError("need one map slot per degree (maps[0] unused)")
        self.field = field
        self.dims = list(dims)
        self.maps = list(maps)
        self.direction = direction
        self.cap = len(dims) - 1
        for n in range(1, self.cap + 1):
            m = maps[n]
            lo, hi = dims[n - 1], dims[n]
            expect = (lo, hi) if direction == HOMOLOGY else (hi, lo)
            if (m.nrows, m.ncols) != expect:
                raise ValueError(f"map {n} has shape {(m.nrows, m.ncols)}, expected {expect}")

    def check_square_zero(self) -> None:
        for n in range(1, self.cap):
            if self.direction == HOMOLOGY:
                comp = self.maps[n] @ self.maps[n + 1]
            else:
                comp = self.maps[n + 1] @ self.maps[n]
            if not comp.is_zero():
                raise BoundaryNotSquareZero(n + 1)

    def outgoing(self, n: int) -> ExactMatrix | None:
        """The differential leaving degree n (None when it is the zero edge map)."""
        if self.direction == HOMOLOGY:
            return self.maps[n] if n >= 1 else None
        return self.maps[n + 1] if n + 1 <= self.cap else None

    def incoming(self, n: int) -> ExactMatrix | None:
        """The differential arriving at degree n."""
        if self.direction == HOMOLOGY:
            return self.maps[n + 1] if n + 1 <= self.cap else None
        return self.maps[n] if n >= 1 else None


def homology_dims(c: ChainComplex, check: bool = True) -> list[int]:
    """dim H_n for n = 0..cap-1 (the cap degree is untrusted and not reported)."""
    if check:
        c.check_square_zero()
    out = []
    for n in range(c.cap):
        og = c.outgoing(n)
        cycles = c.dims[n] - og.rank() if og is not None else c.dims[n]
        inc = c.incoming(n)
        boundaries = inc.rank() if inc is not None else 0
        out.append(cycles - boundaries)
    return out


def homology_representatives(c: ChainComplex, n: int):
    """(reps, boundary_basis): cycle representatives of a homology basis at degree n.

    Deterministic: boundary columns are registered first, then kernel-basis
    columns that stay independent become representatives, in order.
    """
    field = c.field
    og = c.outgoing(n)
    if og is not None:
        cycle_basis = og.kernel_basis()
    else:
        cycle_basis = ExactMatrix.identity(field, c.dims[n])
    inc = c.incoming(n)
    if inc is not None:
        boundary_basis = inc.column_space_basis()
    else:
        boundary_basis = ExactMatrix.zeros(field, c.dims[n], 0)
    solver = SpanSolver(boundary_basis)
    reps = []
    for col in cycle_basis.cols:
        if not solver.contains(col):
            # extend the registry so later columns are reduced mod chosen reps too
            vec = dict(col)
            p = boundary_basis._reduce_against(solver.registry, vec, None)
            solver.registry[p] = (vec, None)
            reps.append(dict(col))
    return ExactMatrix.from_columns(field, c.dims[n], reps), boundary_basis


class HomologyLift:
    """Cached representatives and solver for inducing maps on H_n."""

    def __init__(self, c: ChainComplex, n: int):
        self.complex = c
        self.n = n
        self.reps, self.boundaries = homology_representatives(c, n)
        self.rank = self.reps.ncols
        if self.rank or self.boundaries.ncols:
            stacked = ExactMatrix.hstack([self.reps, self.boundaries])
        else:
            stacked = ExactMatrix.zeros(c.field, c.dims[n], 0)
        self._solver = SpanSolver(stacked, track_combos=True)

    def induced(self, chain_map: ExactMatrix) -> ExactMatrix:
        """Matrix induced on H_n by a chain map given at degree n.

        Lifts through the chosen representatives: solve image = reps*x +
        boundaries*y and keep x.  The solve is consistent exactly because the
        input is a chain map and the representatives are cycles.
        """
        field = self.complex.field
        cols = []
        for j in range(self.rank):
            image = chain_map.apply(self.reps.cols[j])
            coords = self._solver.coordinates(image)
            if coords is None:
                raise ValueError(
                    f"map does not preserve cycles mod boundaries at degree {self.n}"
                )
            cols.append(
                {i: coords[i] for i in range(self.rank) if not field.is_zero(coords[i])}
            )
        return ExactMatrix(field, self.rank, self.rank, cols)


def induced_on_homology(c: ChainComplex, n: int, chain_map: ExactMatrix) -> ExactMatrix:
    return HomologyLift(c, n).induced(chain_map)


class FilteredComplex:
    """A complex plus nested coordinate filtrations.

    filtration[n] lists cumulative index tuples per level.  For homology the
    levels increase (F^0 included in F^1 ...), for cohomology they decrease
    (F_0 contains F_1 ...); either way filtration[n][i] is the span of level i
    and the chain at each degree ends (homology) or starts (cohomology) with
    the full space.
    """

    def __init__(self, complex: ChainComplex, filtration: list):
        self.complex = complex
        self.filtration = [
            [tuple(sorted(level)) for level in per_degree] for per_degree in filtration
        ]
        if len(self.filtration) != complex.cap + 1:
            raise ValueError("need a filtration per degree")
        for n, levels in enumerate(self.filtration):
            full = tuple(range(complex.dims[n]))
            if complex.direction == HOMOLOGY:
                if levels[-1] != full:
                    raise ValueError(f"top filtration level at degree {n} is not the full space")
                for a, b in zip(levels, levels[1:]):
                    if not set(a) <= set(b):
                        raise ValueError("filtration is not nested")
            else:
                if levels[0] != full:
                    raise ValueError(f"level 0 at degree {n} is not the full space")
                for a, b in zip(levels, levels[1:]):
                    if not set(b) <= set(a):
                        raise ValueError("filtration is not nested (decreasing)")
        self._z_cache: dict = {}
        self._img_cache: dict = {}

    # level access ---------------------------------------------------------
    def level_indices(self, n: int, p: int) -> tuple:
        levels = self.filtration[n]
        if self.complex.direction == HOMOLOGY:
            if p < 0:
                return ()
            return levels[min(p, len(levels) - 1)]
        if p < 0:
            return levels[0]
        if p >= len(levels):
            return ()
        return levels[p]

    def top_level(self, n: int) -> int:
        return len(self.filtration[n]) - 1

    def verify(self) -> Report:
        """Exact check that every differential respects every filtration level."""
        report = Report("filtration compatibility")
        c = self.complex
        for n in range(c.cap + 1):
            og = c.outgoing(n)
            if og is None:
                continue
            tgt = n - 1 if c.direction == HOMOLOGY else n + 1
            for p in range(len(self.filtration[n])):
                src = self.level_indices(n, p)
                allowed = set(self.level_indices(tgt, p))
                for j in src:
                    ok = set(og.cols[j]) <= allowed
                    report.record(ok, "boundary-preserves-filtration", (n, p, j))
        return report

    # subquotient machinery --------------------------------------------------
    def _z_space(self, p: int, n: int, r: int) -> list[dict]:
        """Basis (columns in ambient degree n) of {x in F_p(n): d(x) in F_{p +/- r}}."""
        key = (p, n, r)
        hit = self._z_cache.get(key)
        if hit is not None:
            return hit
        c = self.complex
        field = c.field
        src = self.level_indices(n, p)
        og = c.outgoing(n)
        if og is None or not src:
            basis = [{j: field.one} for j in src]
            self._z_cache[key] = basis
            return basis
        tgt_degree = n - 1 if c.direction == HOMOLOGY else n + 1
        tgt_level = p - r if c.direction == HOMOLOGY else p + r
        inside = set(self.level_indices(tgt_degree, tgt_level))
        outside = [i for i in range(c.dims[tgt_degree]) if i not in inside]
        sub = og.select_columns(src).select_rows(outside)
        combos = sub.kernel_basis()
        basis = []
        for col in combos.cols:
            basis.append({src[i]: v for i, v in col.items()})
        self._z_cache[key] = basis
        return basis

    def _boundary_image(self, p_source: int, p_target: int, n: int) -> list[dict]:
        """Basis of d(F_{p_source}(n +/- 1)) intersected with F_{p_target}(n)."""
        key = (p_source, p_target, n)
        hit = self._img_cache.get(key)
        if hit is not None:
            return hit
        c = self.complex
        field = c.field
        inc = c.incoming(n)
        if inc is None:
            self._img_cache[key] = []
            return []
        src_degree = n + 1 if c.direction == HOMOLOGY else n - 1
        src = self.level_indices(src_degree, p_source)
        if not src:
            self._img_cache[key] = []
            return []
        image = inc.select_columns(src).column_space_basis()
        inside = set(self.level_indices(n, p_target))
        outside = [i for i in range(c.dims[n]) if i not in inside]
        if outside:
            proj = image.select_rows(outside)
            combos = proj.kernel_basis()
            basis = [image.apply(col) for col in combos.cols]
            basis = [b for b in basis if b]
            basis = ExactMatrix.from_columns(field, c.dims[n], basis).column_space_basis().cols
        else:
            basis = [dict(col) for col in image.cols]
        self._img_cache[key] = basis
        return basis

    def page_cell_dim(self, r: int, p: int, q: int) -> int:
        """dim of the page-r cell at filtration index p, complementary index q."""
        n = p + q
        c = self.complex
        if n < 0 or n > c.cap or p < 0:
            return 0
        if r == 0:
            return len(self.level_indices(n, p)) - len(
                self.level_indices(n, p - 1 if c.direction == HOMOLOGY else p + 1)
            )
        if c.direction == HOMOLOGY:
            z = self._z_space(p, n, r)
            u = self._z_space(p - 1, n, r - 1)
            v = self._boundary_image(p + r - 1, p, n)
        else:
            z = self._z_space(p, n, r)
            u = self._z_space(p + 1, n, r - 1)
            v = self._boundary_image(p - r + 1, p, n)
        if not z:
            return 0
        denom = u + v
        if not denom:
            return len(z)
        field = c.field
        denom_rank = ExactMatrix.from_columns(field, c.dims[n], denom).rank()
        return len(z) - denom_rank


class SpectralPage:
    """One page of a spectral sequence as a table of exact dimensions.

    table maps (filtration index, complementary index) to the cell dimension;
    cells outside the trusted window (total degree <= window) are absent.
    """

    def __init__(self, r: int, table: dict, window: int, direction: str):
        self.r = r
        self.table = dict(table)
        self.window = window
        self.direction = direction

    def cell(self, p: int, q: int) -> int:
        return self.table.get((p, q), 0)

    def antidiagonal_sum(self, n: int) -> int:
        return sum(v for (p, q), v in self.table.items() if p + q == n)

    def as_dict(self):
        return {
            "page": self.r,
            "window": self.window,
            "direction": self.direction,
            "cells": {f"{p},{q}": v for (p, q), v in sorted(self.table.items())},
        }

    def __eq__(self, other):
        if not isinstance(other, SpectralPage):
            return NotImplemented
        keys = set(self.table) | set(other.table)
        return self.r == other.r and all(self.cell(*k) == other.cell(*k) for k in keys)

    __hash__ = None

    def __repr__(self):
        return f"SpectralPage(r={self.r}, window={self.window}, cells={len(self.table)})"


def spectral_page(fc: FilteredComplex, r: int, window: int | None = None) -> SpectralPage:
    """Page r of the filtered complex over total degrees <= window (default cap-1)."""
    c = fc.complex
    if window is None:
        window = c.cap - 1
    if window > c.cap - 1:
        raise ValueError("window exceeds the trusted range (cap - 1)")
    table = {}
    for n in range(window + 1):
        for p in range(fc.top_level(n) + 1):
            # q = n - p may be negative for filtrations not aligned with degree
            d = fc.page_cell_dim(r, p, n - p)
            if d:
                table[(p, n - p)] = d
    return SpectralPage(r, table, window, c.direction)


def stable_page_number(fc: FilteredComplex, window: int | None = None) -> int:
    """Smallest r with E^r = E^infinity on the window.

    With a bounded filtration every differential on page r is zero once r
    exceeds the largest filtration level in the window (its source or target
    falls outside the filtration range), so the pages are constant from
    madegree_level + 1 on.
    """
    c = fc.complex
    if window is None:
        window = c.cap - 1
    madegree_level = max(fc.top_level(n) for n in range(c.cap + 1))
    return madegree_level + 1


def infinity_page(fc: FilteredComplex, window: int | None = None) -> SpectralPage:
    r = stable_page_number(fc, window)
    page = spectral_page(fc, r, window)
    nxt = spectral_page(fc, r + 1, window)
    if page.table != nxt.table:
        raise AssertionError("page did not stabilize at the structural bound")
    return page


def check_convergence(
    fc: FilteredComplex, total_homology: list[int] | None = None, window: int | None = None
) -> Report:
    """E^infinity antidiagonal sums against the homology of the total complex."""
    report = Report("spectral convergence")
    c = fc.complex
    if window is None:
        window = c.cap - 1
    if total_homology is None:
        total_homology = homology_dims(c, check=False)
    einf = infinity_page(fc, window)
    for n in range(window + 1):
        got = einf.antidiagonal_sum(n)
        want = total_homology[n]
        report.record(
            got == want,
            "antidiagonal-sum",
            (n,),
            f"sum over page cells = {got}, homology dim = {want}",
        )
    return report


def page_monotone(fc: FilteredComplex, upto_r: int, window: int | None = None) -> Report:
    """Entries weakly decrease from page to page (subquotients only shrink)."""
    report = Report("page monotonicity")
    prev = spectral_page(fc, 1, window)
    for r in range(2, upto_r + 1):
        cur = spectral_page(fc, r, window)
        for key in set(prev.table) | set(cur.table):
            report.record(
                cur.cell(*key) <= prev.cell(*key),
                "page-entry-monotone",
                (r, *key),
            )
        prev = cur
    return report
