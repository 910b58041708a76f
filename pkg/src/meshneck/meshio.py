"""OBJ / OFF / PLY loading and polyline export.

ASCII variants of all three formats are supported; binary PLY is rejected
with a clear error.  Vertex and face order are preserved from the file, so
vertex indices in every output are 0-based file positions.
"""

import os

import numpy as np

from .errors import MeshLoadError
from .mesh import Mesh

FORMATS = ("obj", "off", "ply")


def load_mesh(path, fmt=None):
    """Parse ``path`` into a :class:`Mesh`.

    ``fmt`` overrides extension-based detection ("obj", "off" or "ply").
    Raises :class:`MeshLoadError` with the file location on parse failures,
    non-triangular faces, or out-of-range indices.
    """
    if fmt is None:
        fmt = os.path.splitext(path)[1].lstrip(".").lower()
    fmt = fmt.lower()
    if fmt not in FORMATS:
        raise MeshLoadError(f"unsupported mesh format {fmt!r}", path=path)
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise MeshLoadError(f"cannot read file: {exc}", path=path) from exc

    if fmt == "obj":
        verts, faces = _parse_obj(data, path)
    elif fmt == "off":
        verts, faces = _parse_off(data, path)
    else:
        verts, faces = _parse_ply(data, path)

    if not verts:
        raise MeshLoadError("no vertices found", path=path)
    vertices = np.array(verts, dtype=np.float64)
    face_arr = np.array(faces, dtype=np.int64).reshape(len(faces), 3)
    if len(faces) and (face_arr.min() < 0 or face_arr.max() >= len(verts)):
        bad = int(np.nonzero((face_arr < 0) | (face_arr >= len(verts)))[0][0])
        raise MeshLoadError(
            f"face {bad} refers to an out-of-range vertex index", path=path
        )
    return Mesh(vertices, face_arr)


def _decode_lines(data, path):
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MeshLoadError("file is not ASCII/UTF-8 text", path=path) from exc
    return text.splitlines()


def _parse_obj(data, path):
    verts = []
    faces = []
    for lineno, raw in enumerate(_decode_lines(data, path), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if len(parts) < 4:
                raise MeshLoadError("malformed vertex line", path=path, line=lineno)
            try:
                verts.append([float(parts[1]), float(parts[2]), float(parts[3])])
            except ValueError as exc:
                raise MeshLoadError(
                    f"bad vertex coordinate: {exc}", path=path, line=lineno
                ) from exc
        elif tag == "f":
            refs = parts[1:]
            if len(refs) != 3:
                raise MeshLoadError(
                    f"non-triangular face with {len(refs)} vertices",
                    path=path,
                    line=lineno,
                )
            idx = []
            for ref in refs:
                token = ref.split("/")[0]
                try:
                    i = int(token)
                except ValueError as exc:
                    raise MeshLoadError(
                        f"bad face index {token!r}", path=path, line=lineno
                    ) from exc
                if i == 0:
                    raise MeshLoadError(
                        "OBJ indices are 1-based; got 0", path=path, line=lineno
                    )
                idx.append(i - 1 if i > 0 else len(verts) + i)
            faces.append(idx)
        # other OBJ tags (vn, vt, usemtl, ...) are ignored
    return verts, faces


def _parse_off(data, path):
    lines = _decode_lines(data, path)
    tokens = []
    linenos = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for tok in line.split():
            tokens.append(tok)
            linenos.append(lineno)
    pos = 0
    if not tokens:
        raise MeshLoadError("empty OFF file", path=path)
    if tokens[0].upper().endswith("OFF"):
        pos = 1
    try:
        n_v, n_f = int(tokens[pos]), int(tokens[pos + 1])
        pos += 3  # vertex, face, edge counts
    except (ValueError, IndexError) as exc:
        raise MeshLoadError("malformed OFF header", path=path, line=1) from exc
    need = n_v * 3
    if pos + need > len(tokens):
        raise MeshLoadError("truncated vertex block", path=path, line=linenos[-1])
    try:
        coords = [float(t) for t in tokens[pos:pos + need]]
    except ValueError as exc:
        raise MeshLoadError(f"bad vertex coordinate: {exc}", path=path) from exc
    verts = [coords[i:i + 3] for i in range(0, need, 3)]
    pos += need
    faces = []
    for _ in range(n_f):
        if pos >= len(tokens):
            raise MeshLoadError("truncated face block", path=path, line=linenos[-1])
        lineno = linenos[pos]
        cnt = int(tokens[pos])
        if cnt != 3:
            raise MeshLoadError(
                f"non-triangular face with {cnt} vertices", path=path, line=lineno
            )
        faces.append([int(t) for t in tokens[pos + 1:pos + 4]])
        pos += 1 + cnt
    return verts, faces


def _parse_ply(data, path):
    header_end = data.find(b"end_header")
    if header_end < 0:
        raise MeshLoadError("missing PLY end_header", path=path)
    header = data[:header_end].decode("ascii", errors="replace").splitlines()
    if not header or header[0].strip() != "ply":
        raise MeshLoadError("missing 'ply' magic", path=path, line=1)
    fmt = None
    elements = []  # (name, count)
    for lineno, line in enumerate(header[1:], start=2):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "format":
            fmt = parts[1]
        elif parts[0] == "element":
            elements.append((parts[1], int(parts[2])))
    if fmt != "ascii":
        raise MeshLoadError(
            f"only ASCII PLY is supported (format {fmt!r})", path=path
        )
    counts = dict(elements)
    n_v = counts.get("vertex", 0)
    n_f = counts.get("face", 0)

    body_start = data.find(b"\n", header_end) + 1
    body = data[body_start:].decode("ascii").splitlines()
    body_lineno = len(header) + 1
    rows = []
    row_linenos = []
    for off, raw in enumerate(body):
        line = raw.strip()
        if line:
            rows.append(line.split())
            row_linenos.append(body_lineno + off + 1)
    if len(rows) < n_v + n_f:
        raise MeshLoadError("truncated PLY body", path=path)

    # element order follows the header; only vertex and face are consumed
    verts = []
    faces = []
    pos = 0
    for name, count in elements:
        if name == "vertex":
            for i in range(count):
                parts = rows[pos + i]
                try:
                    verts.append([float(parts[0]), float(parts[1]), float(parts[2])])
                except (ValueError, IndexError) as exc:
                    raise MeshLoadError(
                        f"bad vertex row: {exc}", path=path, line=row_linenos[pos + i]
                    ) from exc
        elif name == "face":
            for i in range(count):
                parts = rows[pos + i]
                cnt = int(parts[0])
                if cnt != 3:
                    raise MeshLoadError(
                        f"non-triangular face with {cnt} vertices",
                        path=path,
                        line=row_linenos[pos + i],
                    )
                faces.append([int(parts[1]), int(parts[2]), int(parts[3])])
        pos += count
    return verts, faces


def write_obj_polylines(path, mesh, loops, closed=True):
    """Export vertex loops/walks as OBJ line elements for inspection.

    Positions only; this is a lossy convenience format next to the JSON
    artifacts.
    """
    with open(path, "w") as fh:
        fh.write("# polyline export\n")
        offset = 1
        for loop in loops:
            loop = [int(v) for v in loop]
            for v in loop:
                x, y, z = (float(c) for c in mesh.vertices[v])
                fh.write(f"v {x!r} {y!r} {z!r}\n")
            idx = list(range(offset, offset + len(loop)))
            if closed:
                idx.append(offset)
            fh.write("l " + " ".join(str(i) for i in idx) + "\n")
            offset += len(loop)


def write_obj_mesh(path, mesh):
    """Write a triangle mesh as ASCII OBJ."""
    with open(path, "w") as fh:
        for x, y, z in mesh.vertices.tolist():
            fh.write(f"v {x!r} {y!r} {z!r}\n")
        for a, b, c in mesh.faces.tolist():
            fh.write(f"f {a + 1} {b + 1} {c + 1}\n")
