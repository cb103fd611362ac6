"""The small bimodule resolution of a crossed product and its contracting
homotopy.

Blocks E (x) Hbar^s (x) Abar^r (x) E are realized as plain vector spaces on
explicit tensor bases, and every map is a k-linear matrix; bimodule linearity
is a property of the construction (columns are built from generator images by
the outer multiplications), not a typed constraint.  The boundary blocks
exist in two independent constructions: closed formulas driven by the
insertion coefficients, and the recursion through the row contractions; they
must agree block for block, which assert_constructions_agree certifies.
"""

from __future__ import annotations

from .crossed import CrossedProductData
from .linalg import ExactMatrix, vec_add_into
from .tensors import TensorSpace, expand_leg, keyed_sum_into
from .twisting import TwistingCalculus


class RecursionMismatch(Exception):
    def __init__(self, block):
        super().__init__(f"closed and recursive constructions disagree on block {block}")
        self.block = block


class HomotopyIdentityFailure(Exception):
    def __init__(self, degree):
        super().__init__(f"d sigma + sigma d != id at degree {degree}")
        self.degree = degree


# space descriptors ----------------------------------------------------------

class BlockSpace:
    """The (r, s) block E (x) Hbar^s (x) Abar^r (x) E on the flat basis
    (a0, h0, h_1..h_s, a_1..a_r, aR, hR) with normalized middle legs."""

    def __init__(self, cp: CrossedProductData, r: int, s: int):
        self.cp = cp
        self.r = r
        self.s = s
        na, nh = cp.a.dim, cp.h.dim
        self.legs = (
            [(na, False), (nh, False)]
            + [(nh, True)] * s
            + [(na, True)] * r
            + [(na, False), (nh, False)]
        )
        self.mid_size = (nh - 1) ** s * (na - 1) ** r
        self.ne = na * nh
        self.dim = self.ne * self.mid_size * self.ne
        self._mid_space = TensorSpace((nh - 1,) * s + (na - 1,) * r)

    def split(self, flat: int):
        rest = self.mid_size * self.ne
        e_left, rem = divmod(flat, rest)
        mid, e_right = divmod(rem, self.ne)
        return e_left, mid, e_right

    def combine(self, e_left: int, mid: int, e_right: int) -> int:
        return (e_left * self.mid_size + mid) * self.ne + e_right

    def mid_key(self, mid: int) -> tuple:
        """Full-index section of a generator: all middle legs shifted off the unit."""
        return tuple(i + 1 for i in self._mid_space.unrank(mid))

    def key_of(self, flat: int) -> tuple:
        e_left, mid, e_right = self.split(flat)
        a0, h0 = self.cp.e_unrank(e_left)
        aR, hR = self.cp.e_unrank(e_right)
        return (a0, h0) + self.mid_key(mid) + (aR, hR)

    def generators(self):
        return range(self.mid_size)

    def left_mult(self, vec: dict, e_idx: int) -> dict:
        if e_idx == 0:
            return dict(vec)
        cp = self.cp
        field = cp.field
        out: dict = {}
        for flat, c in vec.items():
            e_left, mid, e_right = self.split(flat)
            for e2, c2 in cp.e.mult[e_idx][e_left].items():
                idx = self.combine(e2, mid, e_right)
                w = field.add(out.get(idx, field.zero), field.mul(c, c2))
                if field.is_zero(w):
                    out.pop(idx, None)
                else:
                    out[idx] = w
        return out

    def right_mult(self, vec: dict, e_idx: int) -> dict:
        if e_idx == 0:
            return dict(vec)
        cp = self.cp
        field = cp.field
        out: dict = {}
        for flat, c in vec.items():
            e_left, mid, e_right = self.split(flat)
            for e2, c2 in cp.e.mult[e_right][e_idx].items():
                idx = self.combine(e_left, mid, e2)
                w = field.add(out.get(idx, field.zero), field.mul(c, c2))
                if field.is_zero(w):
                    out.pop(idx, None)
                else:
                    out[idx] = w
        return out

    def flatten(self, keyed: dict) -> dict:
        from .tensors import flatten

        return flatten(keyed, self.legs, self.cp.field)


class RowSpace:
    """The row target E (x) Hbar^s (x) H on the flat basis (a, h_0, h_1..h_s, h_last)."""

    def __init__(self, cp: CrossedProductData, s: int):
        na, nh = cp.a.dim, cp.h.dim
        self.cp = cp
        self.s = s
        self.legs = [(na, False), (nh, False)] + [(nh, True)] * s + [(nh, False)]
        self.dim = na * nh * (nh - 1) ** s * nh

    def keys(self):
        reduced = TensorSpace(tuple(d - 1 if nm else d for d, nm in self.legs))
        for multi in reduced:
            yield tuple(
                i + 1 if nm else i for (d, nm), i in zip(self.legs, multi)
            )

    def flatten(self, keyed: dict) -> dict:
        from .tensors import flatten

        return flatten(keyed, self.legs, self.cp.field)


class ESpace:
    def __init__(self, cp: CrossedProductData):
        na, nh = cp.a.dim, cp.h.dim
        self.cp = cp
        self.legs = [(na, False), (nh, False)]
        self.dim = na * nh

    def flatten(self, keyed: dict) -> dict:
        from .tensors import flatten

        return flatten(keyed, self.legs, self.cp.field)


def _make_matrix(field, tgt_dim, src_space, columns_fn) -> ExactMatrix:
    """columns_fn(key) -> flat target dict, evaluated on every source basis key."""
    reduced = TensorSpace(tuple(d - 1 if nm else d for d, nm in src_space.legs))
    cols = []
    for multi in reduced:
        key = tuple(i + 1 if nm else i for (d, nm), i in zip(src_space.legs, multi))
        cols.append(columns_fn(key))
    return ExactMatrix(field, tgt_dim, reduced.size, cols)


# the resolution --------------------------------------------------------------

class CrossedResolution:
    """Blocks, assembled boundaries, filtration and contracting homotopy of the
    resolution of E by degreewise sums of the (r, s) blocks.

    method is "closed" (insertion-coefficient formulas) or "recursive"
    (the contraction-driven recursion); both yield identical blocks.
    """

    def __init__(self, cp: CrossedProductData, cap: int, method: str = "closed"):
        if method not in ("closed", "recursive"):
            raise ValueError(f"unknown method {method!r}")
        self.cp = cp
        self.cap = cap
        self.method = method
        self.field = cp.field
        self.calc = TwistingCalculus(cp)
        self.block_spaces: dict = {}
        self.row_spaces: dict = {}
        self.e_space = ESpace(cp)
        for n in range(cap + 1):
            for s in range(n + 1):
                self.block_spaces[(n - s, s)] = BlockSpace(cp, n - s, s)
        for s in range(cap + 1):
            self.row_spaces[s] = RowSpace(cp, s)

        self.mu: dict = {}        # mu_s : block (0, s) -> row target s
        self.partial: dict = {}   # row target s -> s-1
        self.sigma0_x: dict = {}  # block (r, s) -> (r+1, s)
        self.sigma0_y: dict = {}  # row target s -> block (0, s)
        self.sigma_minus1: dict = {}  # row target s -> s+1 (key -1 maps E in)
        self.blocks: dict = {}    # (l, r, s) -> matrix, l >= 0 (l = 0 needs r >= 1)
        self._build_row_maps()
        self._build_blocks()
        self._assemble()

    # elementary maps --------------------------------------------------------
    def _build_row_maps(self):
        cp = self.cp
        field = self.field
        calc = self.calc
        comult = cp.h.comult_row

        for s in range(self.cap + 1):
            xs = self.block_spaces.get((0, s))
            ys = self.row_spaces[s]

            def mu_col(key, s=s):
                # a0 a1^(h_0..h_s firsts) (x) seconds (x) h_last
                (a0, *hs), aR, hR = key[0:1] + key[1 : s + 2], key[-2], key[-1]
                elem = {tuple(hs): field.one}
                for t in range(s, -1, -1):
                    elem = expand_leg(elem, t, comult, 2, field)
                out: dict = {}
                for comps, c in elem.items():
                    firsts = tuple(comps[2 * t] for t in range(s + 1))
                    seconds = tuple(comps[2 * t + 1] for t in range(s + 1))
                    acted = calc.iter_act(firsts, aR)
                    left = cp.a.mult_elems({a0: field.one}, acted)
                    for a2, c2 in left.items():
                        keyed_sum_into(
                            out,
                            {(a2,) + seconds + (hR,): field.mul(c, c2)},
                            field.one,
                            field,
                        )
                return ys.flatten(out)

            if xs is not None:
                self.mu[s] = _make_matrix(field, ys.dim, xs, mu_col)

        for s in range(1, self.cap + 1):
            ys = self.row_spaces[s]
            ytgt = self.row_spaces[s - 1]

            def partial_col(key, s=s):
                a = key[0]
                hs = key[1:]  # h_0 .. h_{s+1}
                out: dict = {}
                for i in range(s + 1):
                    sign = field.neg(field.one) if i % 2 == 0 else field.one
                    elem = {tuple(hs[: i + 2]): field.one}
                    for t in range(i + 1, -1, -1):
                        elem = expand_leg(elem, t, comult, 2, field)
                    for comps, c in elem.items():
                        firsts = tuple(comps[2 * t] for t in range(i + 2))
                        seconds = tuple(comps[2 * t + 1] for t in range(i + 2))
                        fv = cp.cocycle.f[firsts[i]][firsts[i + 1]]
                        fv = calc.iter_act_vec(firsts[:i], fv)
                        left = cp.a.mult_elems({a: field.one}, fv)
                        if not left:
                            continue
                        merged = cp.h.algebra.mult[seconds[i]][seconds[i + 1]]
                        for a2, c2 in left.items():
                            for hm, cm in merged.items():
                                nk = (a2,) + seconds[:i] + (hm,) + tuple(hs[i + 2 :])
                                coef = field.mul(field.mul(c, sign), field.mul(c2, cm))
                                keyed_sum_into(out, {nk: coef}, field.one, field)
                return ytgt.flatten(out)

            self.partial[s] = _make_matrix(field, ytgt.dim, ys, partial_col)

        # sigma^0 on rows
        for (r, s), xs in self.block_spaces.items():
            if (r + 1, s) in self.block_spaces:
                tgt = self.block_spaces[(r + 1, s)]

                def sigma0_col(key, r=r, s=s, tgt=tgt):
                    sign = field.one if (r + 1) % 2 == 0 else field.neg(field.one)
                    aR, hR = key[-2], key[-1]
                    nk = key[:-2] + (aR, 0, hR)  # aR becomes a new Abar leg
                    return tgt.flatten({nk: sign})

                self.sigma0_x[(r, s)] = _make_matrix(field, tgt.dim, xs, sigma0_col)
        for s in range(self.cap + 1):
            ys = self.row_spaces[s]
            xs = self.block_spaces[(0, s)]

            def sigma0y_col(key, xs=xs):
                nk = key[:-1] + (0, key[-1])
                return xs.flatten({nk: field.one})

            self.sigma0_y[s] = _make_matrix(field, xs.dim, ys, sigma0y_col)

        # sigma^{-1}: E into row target 0, then each row target up one
        e_space = self.e_space

        def sminus_base_col(key):
            return self.row_spaces[0].flatten({key + (0,): field.neg(field.one)})

        self.sigma_minus1[-1] = _make_matrix(
            field, self.row_spaces[0].dim, e_space, sminus_base_col
        )
        for s in range(self.cap):
            ys = self.row_spaces[s]
            ytgt = self.row_spaces[s + 1]

            def sminus_col(key, s=s, ytgt=ytgt):
                sign = field.one if s % 2 == 0 else field.neg(field.one)
                return ytgt.flatten({key + (0,): sign})

            self.sigma_minus1[s] = _make_matrix(field, ytgt.dim, ys, sminus_col)

        # mu_tilde : Y_0 -> E and the augmentation
        def mu_tilde_col(key):
            a, h0, h1 = key
            elem = expand_leg({(h0, h1): field.one}, 1, comult, 2, field)
            elem = expand_leg(elem, 0, comult, 2, field)
            out: dict = {}
            for (c00, c01, c10, c11), c in elem.items():
                fv = cp.a.mult_elems({a: field.one}, cp.cocycle.f[c00][c10])
                merged = cp.h.algebra.mult[c01][c11]
                for a2, c2 in fv.items():
                    for hm, cm in merged.items():
                        coef = field.neg(field.mul(c, field.mul(c2, cm)))
                        keyed_sum_into(out, {(a2, hm): coef}, field.one, field)
            return self.e_space.flatten(out)

        self.mu_tilde = _make_matrix(field, self.cp.e.dim, self.row_spaces[0], mu_tilde_col)
        self.augmentation = self.mu_tilde @ self.mu[0]

    # d blocks ----------------------------------------------------------------
    def _d0_column(self, key, r, s):
        cp = self.cp
        field = self.field
        calc = self.calc
        tgt = self.block_spaces[(r - 1, s)]
        a0, h0 = key[0], key[1]
        hs = key[1 : s + 2]  # h_0..h_s
        avs = key[s + 2 : s + 2 + r]
        aR, hR = key[-2], key[-1]
        out: dict = {}
        # absorb a_1 into the left slot through the iterated action
        elem = {tuple(hs): field.one}
        for t in range(s, -1, -1):
            elem = expand_leg(elem, t, cp.h.comult_row, 2, field)
        for comps, c in elem.items():
            firsts = tuple(comps[2 * t] for t in range(s + 1))
            seconds = tuple(comps[2 * t + 1] for t in range(s + 1))
            acted = calc.iter_act(firsts, avs[0])
            left = cp.a.mult_elems({a0: field.one}, acted)
            for a2, c2 in left.items():
                nk = (a2,) + seconds + tuple(avs[1:]) + (aR, hR)
                keyed_sum_into(out, {nk: field.mul(c, c2)}, field.one, field)
        # middle merges
        sign = field.one
        for i in range(1, r):
            sign = field.neg(sign)
            prod = cp.a.mult[avs[i - 1]][avs[i]]
            for am, cm in prod.items():
                nk = key[: s + 2] + tuple(avs[: i - 1]) + (am,) + tuple(avs[i + 1 :]) + (aR, hR)
                keyed_sum_into(out, {nk: field.mul(sign, cm)}, field.one, field)
        # absorb a_r into the right slot
        sign = field.neg(sign)
        prod = cp.a.mult_elems({avs[-1]: field.one}, {aR: field.one})
        for am, cm in prod.items():
            nk = key[: s + 2] + tuple(avs[:-1]) + (am, hR)
            keyed_sum_into(out, {nk: field.mul(sign, cm)}, field.one, field)
        return tgt.flatten(out)

    def _d1_generator_column(self, mid_key, r, s):
        """Closed-form d^1 on a generator (left and right slots = 1)."""
        cp = self.cp
        field = self.field
        calc = self.calc
        tgt = self.block_spaces[(r, s - 1)]
        hs = (0,) + mid_key[:s]  # h_0 = 1 on generators
        avs = mid_key[s:]
        out: dict = {}
        for i in range(s):
            sign = field.one if (i + r) % 2 == 0 else field.neg(field.one)
            elem = {tuple(hs[: i + 2]): field.one}
            for t in range(i + 1, -1, -1):
                elem = expand_leg(elem, t, cp.h.comult_row, 2, field)
            for comps, c in elem.items():
                firsts = tuple(comps[2 * t] for t in range(i + 2))
                seconds = tuple(comps[2 * t + 1] for t in range(i + 2))
                fv = cp.cocycle.f[firsts[i]][firsts[i + 1]]
                fv = calc.iter_act_vec(firsts[:i], fv)
                if not fv:
                    continue
                merged = cp.h.algebra.mult[seconds[i]][seconds[i + 1]]
                for a2, c2 in fv.items():
                    for hm, cm in merged.items():
                        nk = (
                            (a2,)
                            + seconds[:i]
                            + (hm,)
                            + tuple(hs[i + 2 :])
                            + tuple(avs)
                            + (0, 0)
                        )
                        coef = field.mul(field.mul(c, sign), field.mul(c2, cm))
                        keyed_sum_into(out, {nk: coef}, field.one, field)
        # last term: vector action of h_s and its residual into the right slot
        sign = field.one if (r + s) % 2 == 0 else field.neg(field.one)
        elem = expand_leg({(hs[s],): field.one}, 0, cp.h.comult_row, r + 1, field)
        for comps, c in elem.items():
            legs = [cp.action.act[comps[k]][avs[k]] for k in range(r)]
            tail = comps[r]

            def scatter(pos, prefix, coef):
                if pos == r:
                    nk = (0, hs[0]) + tuple(hs[1:s]) + tuple(prefix) + (0, tail)
                    keyed_sum_into(out, {nk: field.mul(coef, sign)}, field.one, field)
                    return
                for b, cb in legs[pos].items():
                    prefix.append(b)
                    scatter(pos + 1, prefix, field.mul(coef, cb))
                    prefix.pop()

            scatter(0, [], c)
        return tgt.flatten(out)

    def _dl_generator_column(self, mid_key, l, r, s):
        """Closed-form d^l (l >= 2) on a generator."""
        cp = self.cp
        field = self.field
        calc = self.calc
        tgt = self.block_spaces[(r + l - 1, s - l)]
        hs = mid_key[:s]
        avs = mid_key[s:]
        sign = field.one if (l * (r + s)) % 2 == 0 else field.neg(field.one)
        elem = {tuple(hs[s - l :]): field.one}
        for t in range(l - 1, -1, -1):
            elem = expand_leg(elem, t, cp.h.comult_row, 2, field)
        na = cp.a.dim
        f_tgt = TensorSpace((na,) * (r + l - 1))
        out: dict = {}
        for comps, c in elem.items():
            firsts = tuple(comps[2 * t] for t in range(l))
            seconds = tuple(comps[2 * t + 1] for t in range(l))
            fvec = calc.insertion_apply(l, r, firsts, tuple(avs))
            if not fvec:
                continue
            hprod = calc.h_product(seconds)
            for fid, cf in fvec.items():
                alegs = f_tgt.unrank(fid)
                for hm, cm in hprod.items():
                    nk = (0, 0) + tuple(hs[: s - l]) + alegs + (0, hm)
                    coef = field.mul(field.mul(c, sign), field.mul(cf, cm))
                    keyed_sum_into(out, {nk: coef}, field.one, field)
        return tgt.flatten(out)

    def _extend_bimodule(self, src: BlockSpace, tgt: BlockSpace, gen_cols: list) -> ExactMatrix:
        """Full matrix from generator columns via x -> eL . x . eR."""
        cols = []
        for flat in range(src.dim):
            e_left, mid, e_right = src.split(flat)
            img = gen_cols[mid]
            img = tgt.left_mult(img, e_left)
            img = tgt.right_mult(img, e_right)
            cols.append(img)
        return ExactMatrix(self.field, tgt.dim, src.dim, cols)

    def _build_blocks(self):
        field = self.field
        # l = 0 blocks from the total formula
        for (r, s), xs in self.block_spaces.items():
            if r >= 1:
                tgt = self.block_spaces[(r - 1, s)]
                self.blocks[(0, r, s)] = _make_matrix(
                    field, tgt.dim, xs, lambda key, r=r, s=s: self._d0_column(key, r, s)
                )
        if self.method == "closed":
            for (r, s), xs in self.block_spaces.items():
                for l in range(1, s + 1):
                    gens = [
                        self._d1_generator_column(xs.mid_key(m), r, s)
                        if l == 1
                        else self._dl_generator_column(xs.mid_key(m), l, r, s)
                        for m in xs.generators()
                    ]
                    tgt = self.block_spaces[(r + l - 1, s - l)]
                    self.blocks[(l, r, s)] = self._extend_bimodule(xs, tgt, gens)
        else:
            # the recursion: l ascending, then r ascending
            for l in range(1, self.cap + 1):
                pairs = sorted(
                    [(r, s) for (r, s) in self.block_spaces if l <= s], key=lambda p: p[0]
                )
                for r, s in pairs:
                    xs = self.block_spaces[(r, s)]
                    tgt = self.block_spaces[(r + l - 1, s - l)]
                    gens = []
                    for m in xs.generators():
                        base = {xs.combine(0, m, 0): field.one}
                        if r == 0 and l == 1:
                            vec = self.mu[s].apply(base)
                            vec = self.partial[s].apply(vec)
                            vec = self.sigma0_y[s - 1].apply(vec)
                        else:
                            vec: dict = {}
                            lo = 1 if r == 0 else 0
                            for j in range(lo, l):
                                if j == 0:
                                    step = self.blocks[(0, r, s)].apply(base)
                                    step = self.blocks[(l, r - 1, s)].apply(step)
                                else:
                                    step = self.blocks[(j, r, s)].apply(base)
                                    step = self.blocks[(l - j, r + j - 1, s - j)].apply(step)
                                step = self.sigma0_x[(r + l - 1 - 1, s - l)].apply(step)
                                vec_add_into(vec, step, field.one, field)
                        gens.append({k: field.neg(v) for k, v in vec.items()})
                    self.blocks[(l, r, s)] = self._extend_bimodule(xs, tgt, gens)

    # assembly ----------------------------------------------------------------
    def degree_blocks(self, n: int):
        """Blocks of degree n in filtration order (s ascending) with offsets."""
        out = []
        offset = 0
        for s in range(n + 1):
            r = n - s
            space = self.block_spaces[(r, s)]
            out.append((r, s, offset, space))
            offset += space.dim
        return out

    def degree_dim(self, n: int) -> int:
        return sum(sp.dim for _, _, _, sp in self.degree_blocks(n))

    def _assemble(self):
        field = self.field
        self.dims = [self.degree_dim(n) for n in range(self.cap + 1)]
        self.d: list = [None]
        for n in range(1, self.cap + 1):
            src_blocks = self.degree_blocks(n)
            tgt_blocks = self.degree_blocks(n - 1)
            tgt_offset = {(r, s): off for r, s, off, _ in tgt_blocks}
            cols: list[dict] = []
            for r, s, off, space in src_blocks:
                for local in range(space.dim):
                    col: dict = {}
                    for l in range(0, s + 1):
                        if r + l == 0 or (l, r, s) not in self.blocks:
                            continue
                        block = self.blocks[(l, r, s)]
                        toff = tgt_offset[(r + l - 1, s - l)]
                        for i, v in block.cols[local].items():
                            w = field.add(col.get(i + toff, field.zero), v)
                            if field.is_zero(w):
                                col.pop(i + toff, None)
                            else:
                                col[i + toff] = w
                    cols.append(col)
            self.d.append(ExactMatrix(field, self.dims[n - 1], self.dims[n], cols))

    def mu_prime(self, n: int) -> ExactMatrix:
        """Degree n into row target n: mu_n on the (0, n) block, zero elsewhere."""
        field = self.field
        ys = self.row_spaces[n]
        cols: list[dict] = []
        for r, s, off, space in self.degree_blocks(n):
            if r == 0:
                mu = self.mu[s]
                cols.extend(dict(c) for c in mu.cols)
            else:
                cols.extend({} for _ in range(space.dim))
        return ExactMatrix(field, ys.dim, self.dims[n], cols)

    def filtration(self):
        """Coordinate filtration levels F^i = blocks with s <= i, per degree."""
        out = []
        for n in range(self.cap + 1):
            blocks = self.degree_blocks(n)
            levels = []
            for i in range(n + 1):
                idxs = []
                for r, s, off, space in blocks:
                    if s <= i:
                        idxs.extend(range(off, off + space.dim))
                levels.append(tuple(idxs))
            out.append(levels)
        return out

    # contracting homotopy ----------------------------------------------------
    def sigma_l(self):
        """All sigma^l maps: keyed by (l, 'x', r, s) on blocks and (l, 'y', s) on row targets."""
        field = self.field
        sig: dict = {}
        for (r, s) in self.block_spaces:
            if (r, s) in self.sigma0_x:
                sig[(0, "x", r, s)] = self.sigma0_x[(r, s)]
        for s in range(self.cap + 1):
            sig[(0, "y", s)] = self.sigma0_y[s]
        for l in range(1, self.cap + 1):
            # source is a row target (the r = -1 case)
            for s in range(l, self.cap + 1):
                if (l, s - l) not in self.block_spaces or (l - 1, s - l) not in self.block_spaces:
                    continue
                acc = None
                for i in range(l):
                    inner = sig.get((i, "y", s))
                    if inner is None:
                        continue
                    mid = self.blocks.get((l - i, i, s - i))
                    if mid is None:
                        continue
                    outer = self.sigma0_x.get((l - 1, s - l))
                    if outer is None:
                        continue
                    term = outer @ (mid @ inner)
                    acc = term if acc is None else acc + term
                if acc is not None:
                    sig[(l, "y", s)] = -acc
            # source is a block
            for (r, s) in self.block_spaces:
                if l > s or (r + l + 1, s - l) not in self.block_spaces:
                    continue
                acc = None
                for i in range(l):
                    inner = sig.get((i, "x", r, s))
                    if inner is None:
                        continue
                    mid = self.blocks.get((l - i, r + i + 1, s - i))
                    if mid is None:
                        continue
                    outer = self.sigma0_x.get((r + l, s - l))
                    if outer is None:
                        continue
                    term = outer @ (mid @ inner)
                    acc = term if acc is None else acc + term
                if acc is not None:
                    sig[(l, "x", r, s)] = -acc
        return sig

    def contracting_homotopy(self):
        """The assembled degree +1 contraction, from E and from each degree."""
        field = self.field
        sig = self.sigma_l()
        out = {0: self.sigma0_y[0] @ self.sigma_minus1[-1]}
        for n in range(0, self.cap):
            tgt_blocks = self.degree_blocks(n + 1)
            tgt_offset = {(r, s): off for r, s, off, _ in tgt_blocks}
            total = ExactMatrix.zeros(field, self.dims[n + 1], self.dims[n])

            def place(mat, tgt_rs, src_off):
                nonlocal total
                cols = [dict() for _ in range(self.dims[n])]
                toff = tgt_offset[tgt_rs]
                for j in range(mat.ncols):
                    for i, v in mat.cols[j].items():
                        cols[src_off + j][i + toff] = v
                total = total + ExactMatrix(field, self.dims[n + 1], self.dims[n], cols)

            # -(sum over l) sigma^l_{l, n-l+1} o sigma^{-1}_{n+1} o mu'_n
            route = self.sigma_minus1[n] @ self.mu_prime(n)
            for l in range(0, n + 2):
                s_l = sig.get((l, "y", n + 1))
                if s_l is None:
                    continue
                mat = -(s_l @ route)
                place(mat, (l, n + 1 - l), 0)
            # + sigma^l on each block
            for r, s, off, space in self.degree_blocks(n):
                for l in range(0, s + 1):
                    s_l = sig.get((l, "x", r, s))
                    if s_l is None:
                        continue
                    place(s_l, (r + l + 1, s - l), off)
            out[n + 1] = total
        return out


def build_resolution_closed(cp: CrossedProductData, cap: int) -> CrossedResolution:
    return CrossedResolution(cp, cap, method="closed")


def build_resolution_recursive(cp: CrossedProductData, cap: int) -> CrossedResolution:
    return CrossedResolution(cp, cap, method="recursive")


def build_contracting_homotopy(res: CrossedResolution) -> dict:
    return res.contracting_homotopy()


def assert_constructions_agree(closed: CrossedResolution, recursive: CrossedResolution) -> None:
    """Raise RecursionMismatch on the first differing boundary block."""
    if set(closed.blocks) != set(recursive.blocks):
        missing = set(closed.blocks) ^ set(recursive.blocks)
        raise RecursionMismatch(sorted(missing)[0])
    for key in sorted(closed.blocks):
        if closed.blocks[key] != recursive.blocks[key]:
            raise RecursionMismatch(key)


def assert_contracting_homotopy(res: CrossedResolution, sigma: dict | None = None) -> dict:
    """Check d sigma + sigma d = id through degree cap - 1; returns sigma.

    Raises HomotopyIdentityFailure with the first failing degree (-1 stands
    for the augmentation identity on E).
    """
    if sigma is None:
        sigma = res.contracting_homotopy()
    field = res.field
    if res.augmentation @ sigma[0] != ExactMatrix.identity(field, res.cp.e.dim):
        raise HomotopyIdentityFailure(-1)
    lhs = res.d[1] @ sigma[1] + sigma[0] @ res.augmentation
    if lhs != ExactMatrix.identity(field, res.dims[0]):
        raise HomotopyIdentityFailure(0)
    for n in range(1, res.cap):
        lhs = res.d[n + 1] @ sigma[n + 1] + sigma[n] @ res.d[n]
        if lhs != ExactMatrix.identity(field, res.dims[n]):
            raise HomotopyIdentityFailure(n)
    return sigma
