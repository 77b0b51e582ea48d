"""
Free modules over a tagged algebra, coordinatized degreewise by (generator, Milnor index)
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from steenrod.tables import AlgebraTables
from .linalg import to_gf2

Coordinate = Tuple[int, int]


class FreeModule:
    """Free module on named generators.

    The coordinates in degree t are the pairs (a, j) with deg a + deg Sq(R_j) = t, listed
    by generator first. Generators are only ever appended, so a vector stays valid after
    more generators of higher degree are added.
    """

    def __init__(self, tables: AlgebraTables, generators: Sequence[Tuple[str, int]] = (), name: str = ''):
        self.tables = tables
        self.name = name
        self.generators: List[Tuple[str, int]] = []
        self._coords: Dict[int, List[Coordinate]] = {}
        self._index: Dict[int, Dict[Coordinate, int]] = {}
        for n, d in generators:
            self.add_generator(n, d)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f'<FreeModule {self.name or "?"} over {self.tables.tag}, {len(self)} generators>'

    def add_generator(self, name: str, degree: int) -> int:
        a = len(self.generators)
        self.generators.append((name, int(degree)))
        for t in list(self._coords):
            j_list = self.tables.by_degree.get(t - degree)
            if j_list:
                coords = self._coords[t]
                index = self._index[t]
                for j in j_list:
                    index[(a, j)] = len(coords)
                    coords.append((a, j))
        return a

    def degree(self, a: int) -> int:
        return self.generators[a][1]

    def generators_in(self, t: int) -> List[int]:
        return [a for a, (_, d) in enumerate(self.generators) if d == t]

    def coords(self, t: int) -> List[Coordinate]:
        found = self._coords.get(t)
        if found is None:
            found = [(a, j) for a, (_, d) in enumerate(self.generators)
                     for j in self.tables.by_degree.get(t - d, ())]
            self._coords[t] = found
            self._index[t] = {c: i for i, c in enumerate(found)}
        return found

    def index(self, t: int) -> Dict[Coordinate, int]:
        self.coords(t)
        return self._index[t]

    def dim(self, t: int) -> int:
        return len(self.coords(t))

    def zero(self, t: int) -> np.ndarray:
        return np.zeros(self.dim(t), dtype=np.uint8)

    def unit_vector(self, a: int) -> np.ndarray:
        t = self.degree(a)
        vector = self.zero(t)
        vector[self.index(t)[(a, self.tables.unit)]] = 1
        return vector

    def unit_coefficient(self, vector, t: int, a: int) -> int:
        """Coefficient of the generator a itself in a degree-t vector"""
        position = self.index(t).get((a, self.tables.unit))
        if position is None or position >= len(vector):
            return 0
        return int(vector[position])

    def pad(self, vector, t: int) -> np.ndarray:
        """Extend a vector written before later generators were added"""
        vector = to_gf2(vector).reshape(-1)
        size = self.dim(t)
        if len(vector) == size:
            return vector
        padded = np.zeros(size, dtype=np.uint8)
        padded[:len(vector)] = vector
        return padded

    def terms(self, vector, t: int) -> List[Coordinate]:
        coords = self.coords(t)
        return [coords[i] for i in np.flatnonzero(to_gf2(vector))]

    def act(self, j: int, vector, t: int) -> np.ndarray:
        """Sq(R_j) times a degree-t vector"""
        target = t + self.tables.degrees[j]
        result = self.zero(target)
        index = self.index(target)
        for a, i in self.terms(vector, t):
            for c in self.tables.product(j, i):
                result[index[(a, c)]] ^= 1
        return result

    def act_element(self, indices: Sequence[int], vector, t: int) -> Optional[np.ndarray]:
        """Sum of Sq(R_j) over the given Milnor indices (all of one degree) times a vector"""
        if not indices:
            return None
        result = None
        for j in indices:
            part = self.act(j, vector, t)
            result = part if result is None else result ^ part
        return result
