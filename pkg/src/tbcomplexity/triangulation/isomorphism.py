"""Combinatorial isomorphism of triangulations.

An isomorphism is a bijection of tetrahedra together with a vertex
permutation per tetrahedron that carries gluings onto gluings.  For a
connected triangulation it is fixed by where tetrahedron 0 goes and with
which permutation, so trying all 24 * k such starts and propagating along
gluings is an exhaustive search over every relabeling.
"""

from __future__ import annotations

from collections import deque

from ..errors import UnsupportedInputError
from .core import ALL_PERMS, IdealTriangulation, Perm, perm_compose, perm_inverse


def _extend(src: IdealTriangulation, dst: IdealTriangulation, image: int, perm: Perm):
    k = src.tet_count
    tet_map: list[int | None] = [None] * k
    perms: list[Perm | None] = [None] * k
    used = {image}
    tet_map[0], perms[0] = image, perm
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            t2, f2, p = src.gluings[t][f]
            u, g, q = dst.gluings[tet_map[t]][perms[t][f]]
            # vertex v of t2 -> p^-1 -> t -> perms[t] -> dst tet -> q -> u
            want = perm_compose(q, perm_compose(perms[t], perm_inverse(p)))
            if tet_map[t2] is None:
                if u in used:
                    return None
                tet_map[t2], perms[t2] = u, want
                used.add(u)
                queue.append(t2)
            elif tet_map[t2] != u or perms[t2] != want:
                return None
    if any(t is None for t in tet_map):
        return None
    return tuple(zip(tet_map, perms))


def find_isomorphism(src: IdealTriangulation, dst: IdealTriangulation):
    """Return ((image tet, vertex perm) per tetrahedron of src) or None."""
    if src.tet_count != dst.tet_count:
        return None
    if not src.is_connected or not dst.is_connected:
        raise UnsupportedInputError("isomorphism search needs connected triangulations")
    for image in range(dst.tet_count):
        for perm in ALL_PERMS:
            found = _extend(src, dst, image, perm)
            if found is not None:
                return found
    return None


def is_isomorphic(src: IdealTriangulation, dst: IdealTriangulation) -> bool:
    return find_isomorphism(src, dst) is not None
