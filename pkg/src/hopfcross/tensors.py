"""Tensor-space indexing and sparse multilinear leg operations.

Two representations of tensors are used throughout:

* flat: dict[int, scalar] over a TensorSpace with lexicographic indexing;
* keyed: dict[tuple[int, ...], scalar], one slot per tensor leg, which is what
  the structure-map plumbing (comultiplication, merging, actions) operates on.

Keyed elements always carry full-basis indices; normalized legs (classes in
B/k) are converted at the flat boundary, where basis index 0 is the unit and
the class map sends it to zero.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .fields import FieldSpec


class TensorSpace:
    """Lexicographic index <-> multi-index bijection for mixed tensor products."""

    __slots__ = ("dims", "size", "_strides")

    def __init__(self, dims):
        self.dims = tuple(int(d) for d in dims)
        size = 1
        strides = []
        for d in reversed(self.dims):
            strides.append(size)
            size *= d
        strides.reverse()
        self.size = size
        self._strides = tuple(strides)

    def index(self, multi) -> int:
        if len(multi) != len(self.dims):
            raise ValueError("multi-index arity mismatch")
        flat = 0
        for k, (i, d) in enumerate(zip(multi, self.dims)):
            if not 0 <= i < d:
                raise IndexError(f"index {i} out of range for leg {k} (dim {d})")
            flat += i * self._strides[k]
        return flat

    def unrank(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise IndexError("flat index out of range")
        out = []
        for s, d in zip(self._strides, self.dims):
            q, flat = divmod(flat, s)
            out.append(q)
        return tuple(out)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        def gen(prefix, rest):
            if not rest:
                yield tuple(prefix)
                return
            for i in range(rest[0]):
                prefix.append(i)
                yield from gen(prefix, rest[1:])
                prefix.pop()

        return gen([], list(self.dims))

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"TensorSpace{self.dims}"


# keyed-element helpers ----------------------------------------------------

def keyed_add_into(dst: dict, key: tuple, coef, field: FieldSpec) -> None:
    w = field.add(dst.get(key, field.zero), coef)
    if field.is_zero(w):
        dst.pop(key, None)
    else:
        dst[key] = w



def keyed_sum_into(dst: dict, src: dict, coef, field: FieldSpec) -> None:
    if field.is_zero(coef):
        return
    for k, v in src.items():
        keyed_add_into(dst, k, field.mul(coef, v), field)


def transform_leg(
    elem: dict, pos: int, fn: Callable[[int], dict], field: FieldSpec
) -> dict:
    """Replace leg pos through a linear map given on basis indices.

    fn(i) returns a sparse dict over basis indices of the target leg.
    """
    out: dict = {}
    for key, coef in elem.items():
        for j, c in fn(key[pos]).items():
            keyed_add_into(out, key[:pos] + (j,) + key[pos + 1 :], field.mul(coef, c), field)
    return out


def expand_leg(
    elem: dict, pos: int, comult: Callable[[int], dict], count: int, field: FieldSpec
) -> dict:
    """Iterated comultiplication of one leg into `count` legs (left iteration).

    comult(i) returns a keyed dict over index pairs.  count >= 1; count == 1
    leaves the element unchanged.
    """
    if count < 1:
        raise ValueError("expand_leg needs count >= 1")
    out = elem
    for step in range(count - 1):
        nxt: dict = {}
        for key, coef in out.items():
            for (u, v), c in comult(key[pos]).items():
                nk = key[:pos] + (u, v) + key[pos + 1 :]
                keyed_add_into(nxt, nk, field.mul(coef, c), field)
        out = nxt
    return out


def merge_legs(
    elem: dict, pos: int, mult: Callable[[int, int], dict], field: FieldSpec
) -> dict:
    """Multiply legs pos and pos+1 into a single leg."""
    out: dict = {}
    for key, coef in elem.items():
        for j, c in mult(key[pos], key[pos + 1]).items():
            nk = key[:pos] + (j,) + key[pos + 2 :]
            keyed_add_into(out, nk, field.mul(coef, c), field)
    return out






def insert_leg(elem: dict, pos: int, index: int) -> dict:
    """Insert a fixed basis leg at position pos."""
    return {key[:pos] + (index,) + key[pos:]: v for key, v in elem.items()}


def permute_legs(elem: dict, perm) -> dict:
    """Reorder legs: new key[k] = old key[perm[k]]."""
    return {tuple(key[p] for p in perm): v for key, v in elem.items()}


# flat <-> keyed conversion ------------------------------------------------

def flatten(
    elem: dict, legs: list[tuple[int, bool]], field: FieldSpec
) -> dict:
    """Keyed element -> flat dict.

    legs lists (full_dim, normalized) per position.  Normalized legs apply the
    class map B -> B/k: index 0 dies, index i>0 maps to i-1 in a leg of
    dimension full_dim-1.
    """
    dims = [d - 1 if norm else d for d, norm in legs]
    space = TensorSpace(dims)
    out: dict = {}
    for key, coef in elem.items():
        shifted = []
        dead = False
        for (d, norm), i in zip(legs, key):
            if norm:
                if i == 0:
                    dead = True
                    break
                shifted.append(i - 1)
            else:
                shifted.append(i)
        if dead:
            continue
        flat = space.index(shifted)
        w = field.add(out.get(flat, field.zero), coef)
        if field.is_zero(w):
            out.pop(flat, None)
        else:
            out[flat] = w
    return out


def unflatten(flat_elem: dict, legs: list[tuple[int, bool]]) -> dict:
    """Flat dict -> keyed element with full-basis indices (sections of classes)."""
    dims = [d - 1 if norm else d for d, norm in legs]
    space = TensorSpace(dims)
    out: dict = {}
    for idx, coef in flat_elem.items():
        multi = space.unrank(idx)
        key = tuple(
            i + 1 if norm else i for (d, norm), i in zip(legs, multi)
        )
        out[key] = coef
    return out
