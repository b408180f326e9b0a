"""Line-oriented text format for triangulations.

::

    tri v1
    tetrahedra 2
    glue 0 0 -> 1 1 perm 1 3 2 0
    ...
    weight 0 1 1

``#`` starts a comment.  Each glued face pair appears once; ``perm`` sends
vertex i of the first tetrahedron to vertex p_i of the second.  Optional
``weight t f w`` lines attach a transfer cocycle (the weight of crossing
face f of t; the reverse crossing has weight -w).
"""

from __future__ import annotations

from ..errors import StructuralError, TriangulationParseError
from .cocycle import TransferCocycle
from .core import IdealTriangulation, perm_inverse

HEADER = "tri v1"


def _ints(tokens, line_no, what):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise TriangulationParseError(f"expected integers in {what}", line_no) from None


def read_triangulation(text: str) -> tuple[IdealTriangulation, TransferCocycle | None]:
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].split()
        if content:
            lines.append((no, content))
    if not lines or lines[0][1] != HEADER.split():
        raise TriangulationParseError(f"first line must be '{HEADER}'", lines[0][0] if lines else 1)
    if len(lines) < 2 or lines[1][1][0] != "tetrahedra" or len(lines[1][1]) != 2:
        raise TriangulationParseError("second line must be 'tetrahedra <k>'",
                                      lines[1][0] if len(lines) > 1 else None)
    k = _ints(lines[1][1][1:], lines[1][0], "tetrahedron count")[0]
    if k < 1:
        raise TriangulationParseError("tetrahedron count must be positive", lines[1][0])

    table: list[list] = [[None] * 4 for _ in range(k)]
    origin: dict = {}
    weights: dict = {}
    for no, tok in lines[2:]:
        if tok[0] == "glue":
            if len(tok) != 11 or tok[3] != "->" or tok[6] != "perm":
                raise TriangulationParseError(
                    "expected 'glue <t> <f> -> <t'> <f'> perm <p0> <p1> <p2> <p3>'", no)
            t, f, t2, f2 = _ints([tok[1], tok[2], tok[4], tok[5]], no, "glue")
            perm = tuple(_ints(tok[7:], no, "perm"))
            for tt, ff in ((t, f), (t2, f2)):
                if not (0 <= tt < k and 0 <= ff < 4):
                    raise TriangulationParseError(f"face ({tt}, {ff}) out of range", no)
            if sorted(perm) != [0, 1, 2, 3]:
                raise TriangulationParseError(f"bad permutation {list(perm)}", no)
            if perm[f] != f2:
                raise TriangulationParseError(
                    f"face-map error: permutation sends {f} to {perm[f]}, expected {f2}", no)
            if (t, f) == (t2, f2):
                raise TriangulationParseError(f"face ({t}, {f}) glued to itself", no)
            for tt, ff, g in ((t, f, (t2, f2, perm)), (t2, f2, (t, f, perm_inverse(perm)))):
                if table[tt][ff] is not None:
                    raise TriangulationParseError(
                        f"duplicate gluing: face ({tt}, {ff}) already glued on line {origin[(tt, ff)]}", no)
                table[tt][ff] = g
                origin[(tt, ff)] = no
        elif tok[0] == "weight":
            if len(tok) != 4:
                raise TriangulationParseError("expected 'weight <t> <f> <integer>'", no)
            t, f, w = _ints(tok[1:], no, "weight")
            if not (0 <= t < k and 0 <= f < 4):
                raise TriangulationParseError(f"face ({t}, {f}) out of range", no)
            weights[(t, f)] = (w, no)
        else:
            raise TriangulationParseError(f"unknown directive {tok[0]!r}", no)

    for t in range(k):
        for f in range(4):
            if table[t][f] is None:
                raise TriangulationParseError(f"face ({t}, {f}) is not glued", lines[-1][0])
    try:
        tri = IdealTriangulation.from_gluings(table)
    except StructuralError as exc:
        raise TriangulationParseError(str(exc)) from exc

    cocycle = None
    if weights:
        canon: dict = {}
        for (t, f), (w, no) in weights.items():
            t2, f2, _ = tri.gluings[t][f]
            key, signed = ((t, f), w) if (t, f) < (t2, f2) else ((t2, f2), -w)
            if key in canon and canon[key] != signed:
                raise TriangulationParseError(f"conflicting weight for face pair {key}", no)
            canon[key] = signed
        cocycle = TransferCocycle.from_mapping({key: w for key, w in canon.items() if w})
    return tri, cocycle


def parse_triangulation(text: str) -> IdealTriangulation:
    return read_triangulation(text)[0]


def serialize_triangulation(tri: IdealTriangulation, cocycle: TransferCocycle | None = None) -> str:
    out = [HEADER, f"tetrahedra {tri.tet_count}"]
    for (t, f), (t2, f2), perm in tri.face_pairs():
        out.append(f"glue {t} {f} -> {t2} {f2} perm {' '.join(map(str, perm))}")
    if cocycle is not None:
        for (t, f), w in cocycle.weights:
            out.append(f"weight {t} {f} {w}")
    return "\n".join(out) + "\n"
