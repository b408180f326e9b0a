"""Triangulations given by letter gluing patterns such as ``ABC<->EHF``.

Letters name tetrahedron vertices in blocks of four: A-D are vertices 0-3 of
tetrahedron 0, E-H are vertices 0-3 of tetrahedron 1, and so on.  A gluing
``XYZ<->UVW`` identifies the triangle XYZ with UVW by X->U, Y->V, Z->W; the
two omitted vertices correspond, so the face opposite the omitted vertex of
the first triangle is glued to the face opposite the omitted vertex of the
second.
"""

import re

from ..errors import StructuralError
from .core import IdealTriangulation

FIGURE_EIGHT_PATTERN = "ABC<->EHF, BAD<->GEF, CDA<->GFH, DCB<->EGH"
SIBLING_PATTERN = "ABC<->FHE, BAD<->FEG, CDA<->HFG, DCB<->HGE"

_ARROW = re.compile(r"\s*(?:<->|↔|<=>|\\lra)\s*")


def _locate(letter):
    code = ord(letter.upper()) - ord("A")
    if not 0 <= code < 26:
        raise StructuralError(f"bad vertex letter {letter!r}")
    return divmod(code, 4)


def parse_gluing_pattern(text: str) -> IdealTriangulation:
    pairs = []
    tet_count = 0
    for chunk in filter(None, (c.strip() for c in re.split(r"[,;\n]", text))):
        sides = _ARROW.split(chunk)
        if len(sides) != 2 or any(len(s) != 3 for s in sides):
            raise StructuralError(f"cannot read gluing {chunk!r}; expected e.g. ABC<->EHF")
        left = [_locate(ch) for ch in sides[0]]
        right = [_locate(ch) for ch in sides[1]]
        tets = {t for t, _ in left}, {t for t, _ in right}
        if len(tets[0]) != 1 or len(tets[1]) != 1:
            raise StructuralError(f"triangle in {chunk!r} mixes tetrahedra")
        t, t2 = left[0][0], right[0][0]
        lv, rv = [v for _, v in left], [v for _, v in right]
        if len(set(lv)) != 3 or len(set(rv)) != 3:
            raise StructuralError(f"repeated vertex in {chunk!r}")
        f = ({0, 1, 2, 3} - set(lv)).pop()
        f2 = ({0, 1, 2, 3} - set(rv)).pop()
        perm = [0] * 4
        for x, y in zip(lv, rv):
            perm[x] = y
        perm[f] = f2
        pairs.append((t, f, t2, f2, tuple(perm)))
        tet_count = max(tet_count, t + 1, t2 + 1)
    return IdealTriangulation.from_face_pairs(tet_count, pairs)


def build_figure_eight() -> IdealTriangulation:
    """Two-tetrahedron triangulation of the figure-eight knot complement N_1."""
    return parse_gluing_pattern(FIGURE_EIGHT_PATTERN)


def build_sibling() -> IdealTriangulation:
    """The other orientable cusped manifold built from two regular ideal tetrahedra."""
    return parse_gluing_pattern(SIBLING_PATTERN)
