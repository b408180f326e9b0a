"""Integer cocycles on the dual graph and the cyclic covers they define.

A transfer cocycle assigns an integer to every glued face pair, read in the
direction from the smaller face ``(t, f)`` to the larger; crossing the pair
backwards contributes the negative.  It must sum to zero around every edge
class.  Such a cocycle is a map H_1 -> Z, and reducing it mod n gives the
cyclic n-fold cover.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from ..errors import CocycleError
from ..exactnum import IntMatrix, smith_normal_form
from .core import Face, IdealTriangulation


def _canonical(t: int, f: int, tri: IdealTriangulation) -> tuple[Face, int]:
    t2, f2, _ = tri.gluings[t][f]
    if (t, f) < (t2, f2):
        return (t, f), 1
    return (t2, f2), -1


@dataclass(frozen=True)
class TransferCocycle:
    weights: tuple[tuple[Face, int], ...]  # keyed by the smaller face of each pair

    @classmethod
    def from_mapping(cls, mapping: dict[Face, int]) -> TransferCocycle:
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[Face, int]:
        return dict(self.weights)

    def crossing_weight(self, tri: IdealTriangulation, t: int, f: int) -> int:
        """Weight picked up when leaving tetrahedron t through face f."""
        key, sign = _canonical(t, f, tri)
        return sign * self.as_dict().get(key, 0)

    def edge_sums(self, tri: IdealTriangulation) -> list[int]:
        w = self.as_dict()
        sums = []
        for edge in tri.edge_classes:
            total = 0
            for t, f in edge.crossings:
                key, sign = _canonical(t, f, tri)
                total += sign * w.get(key, 0)
            sums.append(total)
        return sums

    def is_cocycle(self, tri: IdealTriangulation) -> bool:
        keys = {a for a, _, _ in tri.face_pairs()}
        if any(k not in keys for k, _ in self.weights):
            return False
        return all(s == 0 for s in self.edge_sums(tri))

    def periods(self, tri: IdealTriangulation) -> list[int]:
        """Values on the fundamental cycles of a BFS spanning tree of the dual graph."""
        potential = _tree_potential(tri, self)
        tree = _spanning_tree(tri)
        out = []
        for (t, f), (t2, _), _ in tri.face_pairs():
            if (t, f) in tree:
                continue
            out.append(potential[t] + self.crossing_weight(tri, t, f) - potential[t2])
        return out

    def period_gcd(self, tri: IdealTriangulation) -> int:
        return math.gcd(*self.periods(tri))


def _spanning_tree(tri: IdealTriangulation) -> set[Face]:
    """Smaller faces of the pairs used by a BFS tree from tetrahedron 0."""
    tree: set[Face] = set()
    seen = {0}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            t2, _, _ = tri.gluings[t][f]
            if t2 not in seen:
                seen.add(t2)
                queue.append(t2)
                tree.add(_canonical(t, f, tri)[0])
    if len(seen) != tri.tet_count:
        raise CocycleError("triangulation is disconnected")
    return tree


def _tree_potential(tri: IdealTriangulation, w: TransferCocycle) -> list[int]:
    potential: list[int | None] = [None] * tri.tet_count
    potential[0] = 0
    tree = _spanning_tree(tri)
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            t2, _, _ = tri.gluings[t][f]
            if potential[t2] is None and _canonical(t, f, tri)[0] in tree:
                potential[t2] = potential[t] + w.crossing_weight(tri, t, f)
                queue.append(t2)
    return potential  # type: ignore[return-value]


def constraint_matrix(tri: IdealTriangulation) -> tuple[IntMatrix, list[Face]]:
    """Rows: edge classes; columns: face pairs; entry: signed crossing count."""
    columns = [a for a, _, _ in tri.face_pairs()]
    index = {face: j for j, face in enumerate(columns)}
    rows = []
    for edge in tri.edge_classes:
        row = [0] * len(columns)
        for t, f in edge.crossings:
            key, sign = _canonical(t, f, tri)
            row[index[key]] += sign
        rows.append(row)
    return IntMatrix.from_rows(rows, len(columns)), columns


def transfer_cocycle(tri: IdealTriangulation) -> TransferCocycle:
    """A cocycle vanishing on a spanning tree whose periods have gcd 1.

    Gauge-fixing on the tree picks one representative per cohomology class,
    so the integer kernel of the edge constraints restricted to non-tree pairs
    is exactly H^1(M; Z).
    """
    matrix, columns = constraint_matrix(tri)
    tree = _spanning_tree(tri)
    free = [j for j, face in enumerate(columns) if face not in tree]
    restricted = IntMatrix.from_rows([[row[j] for j in free] for row in matrix.entries], len(free))
    kernel = smith_normal_form(restricted).kernel_basis() if free else []
    if not kernel:
        raise CocycleError("no circle-valued direction: H^1 has free rank 0")
    vec = kernel[0]
    g = math.gcd(*vec)
    vec = [x // g for x in vec]
    lead = next(x for x in vec if x)
    if lead < 0:
        vec = [-x for x in vec]
    mapping = {columns[j]: x for j, x in zip(free, vec) if x}
    return TransferCocycle.from_mapping(mapping)


def cyclic_cover(tri: IdealTriangulation, w: TransferCocycle, n: int) -> IdealTriangulation:
    """The n-fold cyclic cover; tetrahedron (t, level j) gets index j * k + t."""
    if n < 1:
        raise CocycleError(f"cover degree must be >= 1, got {n}")
    if not w.is_cocycle(tri):
        raise CocycleError("weights violate the cocycle condition around some edge")
    if n > 1 and math.gcd(w.period_gcd(tri), n) != 1:
        raise CocycleError(f"the {n}-fold cover defined by these weights is disconnected")
    k = tri.tet_count
    gluings = []
    for j in range(n):
        for t in range(k):
            faces = []
            for f in range(4):
                t2, f2, perm = tri.gluings[t][f]
                level = (j + w.crossing_weight(tri, t, f)) % n
                faces.append((level * k + t2, f2, perm))
            gluings.append(tuple(faces))
    return IdealTriangulation(tuple(gluings))

