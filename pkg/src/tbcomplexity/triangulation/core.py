"""Ideal triangulations stored as face gluings.

Face ``f`` of a tetrahedron is the face opposite vertex ``f``.  A gluing of
face ``f`` of tetrahedron ``t`` is a triple ``(t2, f2, perm)`` where ``perm``
is a permutation of ``(0, 1, 2, 3)`` sending vertex ``i`` of ``t`` to vertex
``perm[i]`` of ``t2``; necessarily ``perm[f] == f2``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Sequence

from ..errors import StructuralError, UnsupportedInputError

Perm = tuple[int, int, int, int]
Gluing = tuple[int, int, Perm]
Face = tuple[int, int]

EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
ALL_PERMS: tuple[Perm, ...] = tuple(permutations(range(4)))  # type: ignore[assignment]


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * 4
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)  # type: ignore[return-value]


def perm_compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[i]] for i in range(4))  # type: ignore[return-value]


def perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def other_vertices(a: int, b: int) -> tuple[int, int]:
    c, d = (v for v in range(4) if v != a and v != b)
    return c, d


@dataclass(frozen=True)
class EdgeClass:
    """One edge of the triangulation.

    ``representatives`` lists the (tetrahedron, vertex pair) incidences in the
    order met when rotating around the edge; ``crossings`` lists the face
    exited at each step, so that ``crossings[i]`` leads from incidence ``i``
    to incidence ``i + 1`` (cyclically).
    """

    representatives: tuple[tuple[int, tuple[int, int]], ...]
    crossings: tuple[Face, ...]

    @property
    def valence(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class SpineStats:
    """Counts for the special spine dual to a triangulation."""

    vertices: int
    edges: int
    cells: int
    cell_boundary_lengths: tuple[int, ...]

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.cells


@dataclass(frozen=True, eq=False)
class IdealTriangulation:
    gluings: tuple[tuple[Gluing, Gluing, Gluing, Gluing], ...]

    def __post_init__(self):
        validate_gluings(self.gluings)

    @classmethod
    def from_gluings(cls, gluings: Sequence[Sequence[Sequence]]) -> IdealTriangulation:
        normalized = tuple(
            tuple((int(t2), int(f2), tuple(int(x) for x in perm)) for t2, f2, perm in faces)
            for faces in gluings)
        return cls(normalized)  # type: ignore[arg-type]

    @classmethod
    def from_face_pairs(cls, tet_count: int, pairs: Sequence[tuple[int, int, int, int, Perm]]):
        """Build from one entry ``(t, f, t2, f2, perm)`` per glued face pair."""
        table: list[list[Gluing | None]] = [[None] * 4 for _ in range(tet_count)]
        for t, f, t2, f2, perm in pairs:
            perm = tuple(perm)
            for (a, b, g) in ((t, f, (t2, f2, perm)), (t2, f2, (t, f, perm_inverse(perm)))):
                if not (0 <= a < tet_count and 0 <= b < 4):
                    raise StructuralError(f"face ({a}, {b}) out of range")
                if table[a][b] is not None:
                    raise StructuralError(f"face ({a}, {b}) glued twice")
                table[a][b] = g
        for t, faces in enumerate(table):
            for f, g in enumerate(faces):
                if g is None:
                    raise StructuralError(f"face ({t}, {f}) is not glued")
        return cls.from_gluings(table)  # type: ignore[arg-type]

    def __eq__(self, other):
        return isinstance(other, IdealTriangulation) and self.gluings == other.gluings

    def __hash__(self):
        return hash(self.gluings)

    def __repr__(self):
        return f"IdealTriangulation(tet_count={self.tet_count})"

    @property
    def tet_count(self) -> int:
        return len(self.gluings)

    def glued_to(self, t: int, f: int) -> Gluing:
        return self.gluings[t][f]

    def face_pairs(self) -> list[tuple[Face, Face, Perm]]:
        """Each glued pair once, as (smaller face, larger face, perm from smaller)."""
        out = []
        for t in range(self.tet_count):
            for f in range(4):
                t2, f2, perm = self.gluings[t][f]
                if (t, f) < (t2, f2):
                    out.append(((t, f), (t2, f2), perm))
        return out

    @cached_property
    def orientation(self) -> tuple[int, ...] | None:
        """Signs s_t with sign(perm) == -s_t * s_t2 on every gluing, or None."""
        signs: list[int | None] = [None] * self.tet_count
        for root in range(self.tet_count):
            if signs[root] is not None:
                continue
            signs[root] = 1
            queue = deque([root])
            while queue:
                t = queue.popleft()
                for t2, _, perm in self.gluings[t]:
                    want = -perm_sign(perm) * signs[t]
                    if signs[t2] is None:
                        signs[t2] = want
                        queue.append(t2)
                    elif signs[t2] != want:
                        return None
        return tuple(signs)  # type: ignore[arg-type]

    @property
    def is_orientable(self) -> bool:
        return self.orientation is not None

    def require_orientation(self) -> tuple[int, ...]:
        if self.orientation is None:
            raise UnsupportedInputError("triangulation is not orientable")
        return self.orientation

    @cached_property
    def is_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            t = queue.popleft()
            for t2, _, _ in self.gluings[t]:
                if t2 not in seen:
                    seen.add(t2)
                    queue.append(t2)
        return len(seen) == self.tet_count

    @cached_property
    def edge_classes(self) -> tuple[EdgeClass, ...]:
        return tuple(_walk_edge_classes(self))


def validate_gluings(gluings) -> None:
    k = len(gluings)
    if k == 0:
        raise StructuralError("a triangulation needs at least one tetrahedron")
    for t, faces in enumerate(gluings):
        if len(faces) != 4:
            raise StructuralError(f"tetrahedron {t} has {len(faces)} faces listed, expected 4")
        for f, gluing in enumerate(faces):
            if gluing is None:
                raise StructuralError(f"face ({t}, {f}) is not glued")
            t2, f2, perm = gluing
            if not 0 <= t2 < k or not 0 <= f2 < 4:
                raise StructuralError(f"face ({t}, {f}) glued to nonexistent face ({t2}, {f2})")
            if sorted(perm) != [0, 1, 2, 3]:
                raise StructuralError(f"face ({t}, {f}): {perm} is not a permutation of 0..3")
            if perm[f] != f2:
                raise StructuralError(
                    f"face ({t}, {f}): vertex map sends {f} to {perm[f]}, not to face {f2}")
            if (t2, f2) == (t, f):
                raise StructuralError(f"face ({t}, {f}) is glued to itself")
            back = gluings[t2][f2]
            if back is None or back[0] != t or back[1] != f or tuple(back[2]) != perm_inverse(perm):
                raise StructuralError(f"gluing of face ({t}, {f}) is not an involution")


def _walk_edge_classes(tri: IdealTriangulation) -> list[EdgeClass]:
    seen: set[tuple[int, tuple[int, int]]] = set()
    classes = []
    for t in range(tri.tet_count):
        for a, b in EDGES:
            if (t, (a, b)) in seen:
                continue
            c, d = other_vertices(a, b)
            start = state = (t, a, b, c, d)
            reps, crossings = [], []
            while True:
                tt, a_, b_, c_, d_ = state
                key = (tt, (min(a_, b_), max(a_, b_)))
                if key in seen:
                    raise StructuralError(
                        f"rotation around edge ({t}, {a}{b}) revisits tetrahedron {tt} edge "
                        f"{key[1]} before closing up")
                seen.add(key)
                reps.append(key)
                crossings.append((tt, d_))
                t2, _, p = tri.gluings[tt][d_]
                state = (t2, p[a_], p[b_], p[d_], p[c_])
                if state == start:
                    break
            classes.append(EdgeClass(tuple(reps), tuple(crossings)))
    return classes


def edge_classes(tri: IdealTriangulation) -> list[EdgeClass]:
    return list(tri.edge_classes)


def edge_partition_union_find(tri: IdealTriangulation) -> list[frozenset]:
    """Edge classes as plain sets of incidences, via union-find over face gluings.

    Independent of the rotation walk; used to cross-check it.
    """
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in range(tri.tet_count):
        for a, b in EDGES:
            find((t, (a, b)))
        for f in range(4):
            t2, _, p = tri.gluings[t][f]
            for a, b in EDGES:
                if f in (a, b):
                    continue
                img = tuple(sorted((p[a], p[b])))
                ra, rb = find((t, (a, b))), find((t2, img))
                if ra != rb:
                    parent[ra] = rb
    groups: dict = {}
    for x in list(parent):
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))


def spine_stats(tri: IdealTriangulation) -> SpineStats:
    valences = sorted(e.valence for e in tri.edge_classes)
    return SpineStats(tri.tet_count, 2 * tri.tet_count, len(valences), tuple(valences))
