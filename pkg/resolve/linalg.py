"""
Bit-packed GF(2) linear algebra
Rows are packed 64 columns per uint64 word with little-endian bit order; elimination
pivots on columns in ascending order so every result is reproducible.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

WORD_BITS = 64
ONE = np.uint64(1)


def words_for(ncols: int) -> int:
    return max(1, (ncols + WORD_BITS - 1) // WORD_BITS)


def to_gf2(matrix) -> np.ndarray:
    return np.asarray(matrix, dtype=np.uint8) & 1


def pack_rows(dense) -> np.ndarray:
    """Pack a dense 0/1 matrix (m x n) into an (m x words) uint64 array"""
    dense = to_gf2(dense)
    if dense.ndim == 1:
        dense = dense.reshape(1, -1)
    m, n = dense.shape
    width = words_for(n) * WORD_BITS
    padded = np.zeros((m, width), dtype=np.uint8)
    padded[:, :n] = dense
    packed = np.packbits(padded, axis=1, bitorder='little')
    return np.ascontiguousarray(packed).view('<u8').astype(np.uint64)


def unpack_rows(packed: np.ndarray, ncols: int) -> np.ndarray:
    packed = np.ascontiguousarray(np.atleast_2d(packed).astype('<u8'))
    as_bytes = packed.view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder='little')[:, :ncols].astype(np.uint8)


def bits_at(vector: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Bits of one packed row at the given column indices"""
    columns = np.asarray(columns, dtype=np.uint64)
    words = vector[(columns >> np.uint64(6)).astype(np.intp)]
    return ((words >> (columns & np.uint64(63))) & ONE).astype(bool)


def lowest_column(vector: np.ndarray) -> Optional[int]:
    nonzero = np.flatnonzero(vector)
    if nonzero.size == 0:
        return None
    word = int(nonzero[0])
    value = int(vector[word])
    return word * WORD_BITS + (value & -value).bit_length() - 1


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    return ((a.astype(np.int32) @ b.astype(np.int32)) & 1).astype(np.uint8)


@dataclass(frozen=True)
class RowReduceResult:
    rows: np.ndarray
    ncols: int
    pivots: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def dense(self) -> np.ndarray:
        return unpack_rows(self.rows, self.ncols)


def row_reduce(packed: np.ndarray, ncols: int) -> RowReduceResult:
    """Reduced row echelon form of a packed matrix, pivoting columns left to right"""
    rows = np.array(packed, dtype=np.uint64, copy=True)
    m = rows.shape[0]
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r == m:
            break
        word, bit = c >> 6, np.uint64(c & 63)
        column = (rows[r:, word] >> bit) & ONE
        nonzero = np.flatnonzero(column)
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            rows[[r, p]] = rows[[p, r]]
        mask = ((rows[:, word] >> bit) & ONE).astype(bool)
        mask[r] = False
        if mask.any():
            rows[mask] ^= rows[r]
        pivots.append(c)
        r += 1
    return RowReduceResult(rows=rows[:r], ncols=ncols, pivots=tuple(pivots))


def rank(dense) -> int:
    dense = to_gf2(dense)
    if dense.size == 0:
        return 0
    return row_reduce(pack_rows(dense), dense.shape[1]).rank


def kernel(dense) -> np.ndarray:
    """Basis of {x : x . M = 0} for M with rows indexed by the source basis"""
    dense = to_gf2(dense)
    m, n = dense.shape
    if m == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    augmented = np.concatenate([dense, np.eye(m, dtype=np.uint8)], axis=1)
    reduced = row_reduce(pack_rows(augmented), n + m)
    keep = [i for i, p in enumerate(reduced.pivots) if p >= n]
    if not keep:
        return np.zeros((0, m), dtype=np.uint8)
    return unpack_rows(reduced.rows[keep], n + m)[:, n:]


def image(dense) -> np.ndarray:
    """Reduced echelon basis of the row space"""
    dense = to_gf2(dense)
    if dense.shape[0] == 0:
        return np.zeros((0, dense.shape[1]), dtype=np.uint8)
    return row_reduce(pack_rows(dense), dense.shape[1]).dense()


class Solver:
    """Solves x . M = y for a fixed matrix M whose rows are images of source basis vectors"""

    def __init__(self, dense):
        dense = to_gf2(dense)
        self.m, self.n = dense.shape
        augmented = np.concatenate([dense, np.eye(self.m, dtype=np.uint8)], axis=1)
        reduced = row_reduce(pack_rows(augmented), self.n + self.m) if self.m else None
        if reduced is None:
            self.rows = np.zeros((0, words_for(self.n)), dtype=np.uint64)
            self.pivots = np.zeros(0, dtype=np.intp)
            return
        keep = [i for i, p in enumerate(reduced.pivots) if p < self.n]
        self.rows = reduced.rows[keep]
        self.pivots = np.array([reduced.pivots[i] for i in keep], dtype=np.intp)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, y) -> Optional[np.ndarray]:
        y = to_gf2(y).reshape(-1)
        if self.n == 0:
            return np.zeros(self.m, dtype=np.uint8)
        target = np.zeros(self.n + self.m, dtype=np.uint8)
        target[:self.n] = y
        vector = pack_rows(target)[0]
        if len(self.pivots):
            selected = y[self.pivots].astype(bool)
            if selected.any():
                vector = vector ^ np.bitwise_xor.reduce(self.rows[selected], axis=0)
        dense = unpack_rows(vector, self.n + self.m)[0]
        if dense[:self.n].any():
            return None
        return dense[self.n:]


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace of F_2^n"""

    def __init__(self, ncols: int, rows: Optional[np.ndarray] = None):
        self.ncols = ncols
        self.words = words_for(ncols)
        self.rows = np.zeros((0, self.words), dtype=np.uint64)
        self.pivots: List[int] = []
        if rows is not None:
            for row in to_gf2(rows).reshape(-1, ncols):
                self.add(row)

    def __len__(self) -> int:
        return len(self.pivots)

    def _as_packed(self, vector) -> np.ndarray:
        vector = np.asarray(vector)
        if vector.dtype == np.uint64 and vector.shape == (self.words,):
            return vector
        return pack_rows(to_gf2(vector).reshape(1, -1))[0]

    def reduce(self, vector) -> np.ndarray:
        packed = self._as_packed(vector)
        if not self.pivots:
            return packed.copy()
        selected = bits_at(packed, np.array(self.pivots))
        if not selected.any():
            return packed.copy()
        return packed ^ np.bitwise_xor.reduce(self.rows[selected], axis=0)

    def contains(self, vector) -> bool:
        return not self.reduce(vector).any()

    def add(self, vector) -> bool:
        reduced = self.reduce(vector)
        pivot = lowest_column(reduced)
        if pivot is None:
            return False
        if self.pivots:
            word, bit = pivot >> 6, np.uint64(pivot & 63)
            mask = ((self.rows[:, word] >> bit) & ONE).astype(bool)
            if mask.any():
                self.rows[mask] ^= reduced
        self.rows = np.vstack([self.rows, reduced.reshape(1, -1)])
        self.pivots.append(pivot)
        return True

    def dense(self) -> np.ndarray:
        return unpack_rows(self.rows, self.ncols)


def complement(subspace, candidates, ncols: int) -> List[int]:
    """Indices of the lexicographically first candidates completing a basis of the subspace"""
    basis = EchelonBasis(ncols, subspace if subspace is not None and len(subspace) else None)
    chosen = []
    for index, row in enumerate(to_gf2(candidates).reshape(-1, ncols)):
        if basis.add(row):
            chosen.append(index)
    return chosen


def same_row_space(a, b, ncols: int) -> bool:
    a = to_gf2(a).reshape(-1, ncols)
    b = to_gf2(b).reshape(-1, ncols)
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(np.vstack([a, b])) == ra


def stack(blocks: Sequence[np.ndarray], ncols: int) -> np.ndarray:
    blocks = [to_gf2(b).reshape(-1, ncols) for b in blocks]
    if not blocks:
        return np.zeros((0, ncols), dtype=np.uint8)
    return np.vstack(blocks)
