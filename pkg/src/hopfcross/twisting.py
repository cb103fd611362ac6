"""Cocycle-insertion coefficients and shuffle products.

The maps F^(l)_r : H^l (x) A^r -> A^(r+l-1) insert l-1 cocycle values into an
A-string while distributing iterated actions through Sweedler legs.  They are
built here as exact matrices on full (unnormalized) bases, by the recursive
definition; the small-complex and resolution boundary blocks consume them.

Everything is memoized per crossed product: the calculus only depends on the
action, the cocycle, and the comultiplication.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement

from .crossed import CrossedProductData
from .linalg import ExactMatrix, SpanSolver, vec_add_into
from .tensors import TensorSpace, expand_leg


class TwistingCalculus:
    """Per-crossed-product cache of iterated actions and insertion matrices."""

    def __init__(self, cp: CrossedProductData):
        self.cp = cp
        self.field = cp.field
        self._act_cache: dict = {}
        self._insertion_cache: dict = {}

    # iterated weak action ------------------------------------------------
    def act_vec(self, h_idx: int, avec: dict) -> dict:
        field = self.field
        out: dict = {}
        for a, c in avec.items():
            vec_add_into(out, self.cp.action.act[h_idx][a], c, field)
        return out

    def iter_act(self, hs: tuple, a_idx: int) -> dict:
        """a^(h_1, ..., h_k) applied right to left: h_k acts first, h_1 last."""
        if not hs:
            return {a_idx: self.field.one}
        key = (hs, a_idx)
        hit = self._act_cache.get(key)
        if hit is None:
            inner = self.iter_act(hs[1:], a_idx)
            hit = self.act_vec(hs[0], inner)
            self._act_cache[key] = hit
        return hit

    def iter_act_vec(self, hs: tuple, avec: dict) -> dict:
        field = self.field
        out: dict = {}
        for a, c in avec.items():
            vec_add_into(out, self.iter_act(hs, a), c, field)
        return out

    def h_product(self, hs: tuple) -> dict:
        """Product h_1 ... h_k in H as a sparse vector."""
        field = self.field
        out = {0: field.one} if not hs else {hs[0]: field.one}
        for h in hs[1:]:
            nxt: dict = {}
            for u, c in out.items():
                vec_add_into(nxt, self.cp.h.algebra.mult[u][h], c, field)
            out = nxt
        return out

    # insertion coefficients ----------------------------------------------
    def insertion_matrix(self, l: int, r: int) -> ExactMatrix:
        """F^(l)_r as a matrix from H^l (x) A^r to A^(r+l-1), full bases."""
        if l < 1 or r < 0:
            raise ValueError("need l >= 1 and r >= 0")
        key = (l, r)
        hit = self._insertion_cache.get(key)
        if hit is not None:
            return hit
        cp = self.cp
        na, nh = cp.a.dim, cp.h.dim
        src = TensorSpace((nh,) * l + (na,) * r)
        tgt = TensorSpace((na,) * (r + l - 1))
        cols = []
        for key_multi in src:
            h_tuple = key_multi[:l]
            a_tuple = key_multi[l:]
            cols.append(self._insertion_column(l, r, h_tuple, a_tuple, tgt))
        mat = ExactMatrix(self.field, tgt.size, src.size, cols)
        self._insertion_cache[key] = mat
        return mat

    def insertion_apply(self, l: int, r: int, h_tuple: tuple, a_tuple: tuple) -> dict:
        """Column of F^(l)_r at a basis tuple, as a flat dict over A^(r+l-1)."""
        na = self.cp.a.dim
        tgt = TensorSpace((na,) * (r + l - 1))
        mat = self.insertion_matrix(l, r)
        src = TensorSpace((self.cp.h.dim,) * l + (na,) * r)
        return dict(mat.cols[src.index(h_tuple + a_tuple)])

    def _insertion_column(self, l, r, h_tuple, a_tuple, tgt) -> dict:
        field = self.field
        cp = self.cp
        if l == 1:
            # the vector action a_1^(h^(1)) (x) ... (x) a_r^(h^(r)); r = 0 is the counit
            if r == 0:
                c = cp.h.counit[h_tuple[0]]
                return {} if field.is_zero(c) else {0: c}
            expanded = expand_leg({(h_tuple[0],): field.one}, 0, cp.h.comult_row, r, field)
            out: dict = {}
            for comps, coef in expanded.items():
                self._distribute(
                    out,
                    tgt,
                    [cp.action.act[comps[k]][a_tuple[k]] for k in range(r)],
                    coef,
                )
            return out

        out = {}
        lm1 = l - 1
        rec_tgt = None
        for j in range(1, l):  # 1-based position of the merged pair
            for i in range(r + 1):
                sign_exp = i * lm1 + j
                sign = field.one if sign_exp % 2 == 0 else field.neg(field.one)
                counts = [i + 2 if t <= j + 1 else i + 1 for t in range(1, l + 1)]
                elem = {tuple(h_tuple): field.one}
                for t in range(l - 1, -1, -1):
                    elem = expand_leg(elem, t, cp.h.comult_row, counts[t], field)
                offsets = [0] * l
                for t in range(1, l):
                    offsets[t] = offsets[t - 1] + counts[t - 1]
                for comps, ecoef in elem.items():
                    coef = field.mul(sign, ecoef)

                    def comp(t, k):  # component k of original leg t (0-based)
                        return comps[offsets[t] + k]

                    # acted prefix a_1..a_i
                    prefix = [
                        self.iter_act(
                            tuple(comp(t, k) for t in range(l)), a_tuple[k]
                        )
                        for k in range(i)
                    ]
                    # cocycle value f(c_j[i], c_{j+1}[i]) acted by legs 1..j-1
                    fv = cp.cocycle.f[comp(j - 1, i)][comp(j, i)]
                    fv = self.iter_act_vec(
                        tuple(comp(t, i) for t in range(j - 1)), fv
                    )
                    if not fv:
                        continue
                    # recursive argument legs
                    head = tuple(comp(t, i + 1) for t in range(j - 1))
                    merged = cp.h.algebra.mult[comp(j - 1, i + 1)][comp(j, i + 1)]
                    tail = tuple(comp(t, i) for t in range(j + 1, l))
                    rec_r = r - i
                    rec_mat = self.insertion_matrix(l - 1, rec_r)
                    rec_src = TensorSpace(
                        (cp.h.dim,) * (l - 1) + (cp.a.dim,) * rec_r
                    )
                    rec_out: dict = {}
                    for hm, cm in merged.items():
                        idx = rec_src.index(head + (hm,) + tail + tuple(a_tuple[i:]))
                        vec_add_into(rec_out, rec_mat.cols[idx], cm, field)
                    if not rec_out:
                        continue
                    if rec_tgt is None or rec_tgt.dims != (cp.a.dim,) * (rec_r + l - 2):
                        rec_tgt = TensorSpace((cp.a.dim,) * (rec_r + l - 2))
                    self._distribute_with_rec(
                        out, tgt, prefix, fv, rec_out, rec_tgt, coef
                    )
        return out

    def _distribute(self, out, tgt, leg_vecs, coef):
        field = self.field
        if not leg_vecs:
            w = field.add(out.get(0, field.zero), coef)
            if field.is_zero(w):
                out.pop(0, None)
            else:
                out[0] = w
            return

        def rec(pos, idx_prefix, c):
            if pos == len(leg_vecs):
                flat = tgt.index(tuple(idx_prefix))
                w = field.add(out.get(flat, field.zero), c)
                if field.is_zero(w):
                    out.pop(flat, None)
                else:
                    out[flat] = w
                return
            for b, cb in leg_vecs[pos].items():
                idx_prefix.append(b)
                rec(pos + 1, idx_prefix, field.mul(c, cb))
                idx_prefix.pop()

        rec(0, [], coef)

    def _distribute_with_rec(self, out, tgt, prefix, fv, rec_out, rec_tgt, coef):
        field = self.field

        def rec(pos, idx_prefix, c):
            if pos == len(prefix):
                for fb, cf in fv.items():
                    c2 = field.mul(c, cf)
                    for rid, cr in rec_out.items():
                        tail = rec_tgt.unrank(rid)
                        flat = tgt.index(tuple(idx_prefix) + (fb,) + tail)
                        w = field.add(out.get(flat, field.zero), field.mul(c2, cr))
                        if field.is_zero(w):
                            out.pop(flat, None)
                        else:
                            out[flat] = w
                return
            for b, cb in prefix[pos].items():
                idx_prefix.append(b)
                rec(pos + 1, idx_prefix, field.mul(c, cb))
                idx_prefix.pop()

        rec(0, [], coef)

    # diagnostics -----------------------------------------------------------
    def f_image_span(self) -> ExactMatrix:
        """Span of all cocycle values inside A."""
        cp = self.cp
        cols = [dict(cell) for row in cp.cocycle.f for cell in row]
        return ExactMatrix.from_columns(self.field, cp.a.dim, cols).column_space_basis()

    def check_insertion_image(self, l: int, r: int) -> bool:
        """Every F^(l)_r value lies in the span of elementary tensors with
        l-1 coordinates in the image of the cocycle."""
        if l < 2:
            return True
        cp = self.cp
        na = cp.a.dim
        nlegs = r + l - 1
        fspan = self.f_image_span()
        full = ExactMatrix.identity(self.field, na)
        tgt = TensorSpace((na,) * nlegs)
        cols = []
        for positions in combinations(range(nlegs), l - 1):
            leg_mats = [fspan if p in positions else full for p in range(nlegs)]

            def build(pos, idx_prefix, vec_prefix):
                if pos == nlegs:
                    col = {}
                    self._distribute(col, tgt, vec_prefix, self.field.one)
                    cols.append(col)
                    return
                m = leg_mats[pos]
                for j in range(m.ncols):
                    build(pos + 1, idx_prefix, vec_prefix + [m.column(j)])

            build(0, [], [])
        span = ExactMatrix.from_columns(self.field, tgt.size, cols)
        solver = SpanSolver(span.column_space_basis())
        mat = self.insertion_matrix(l, r)
        return all(solver.contains(col) for col in mat.cols)


def signed_shuffle(first: tuple, second: tuple) -> dict:
    """Signed shuffle: insert the legs of `first` into the string `second`.

    Returns {interleaved tuple: +1/-1}; placing first[k] after second[i_k]
    contributes (-1)^(i_1 + ... + i_r) with 0 <= i_1 <= ... <= i_r <= len(second).
    """
    r, l = len(first), len(second)
    out: dict = {}
    for positions in combinations_with_replacement(range(l + 1), r):
        sign = -1 if sum(positions) % 2 else 1
        word = []
        prev = 0
        for k, ik in enumerate(positions):
            word.extend(second[prev:ik])
            word.append(first[k])
            prev = ik
        word.extend(second[prev:])
        key = tuple(word)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}
