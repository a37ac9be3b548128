"""Readers and writers for group files, reports, DOT, bitmaps and CSV tables.

Every JSON document carries ``"format": 1``; CSV tables carry a ``format``
column and DOT output a ``format`` graph attribute.  The bitmap header is
fixed at (valency, vertex count) and is unversioned.
"""

import csv
import io
import json
import struct

import numpy as np

from .errors import DerangementLabError
from .perm import DEFAULT_MAX_ORDER, Permutation, PermGroup, generate_group

FORMAT_VERSION = 1


def group_to_dict(g, include_elements=False, **metadata):
    d = {"format": FORMAT_VERSION, "name": g.name, "degree": g.degree, "order": g.order,
         "generators": [x.one_based() for x in g.generators]}
    d.update(metadata)
    if include_elements:
        d["elements"] = [x.one_based() for x in g.elements]
    return d


def group_from_dict(d, max_order=DEFAULT_MAX_ORDER):
    """Build a group from a parsed group file.

    Pre-expanded ``elements`` are trusted only after checking that they
    contain the identity and the generators and are closed under them.
    """
    version = d.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DerangementLabError(f"unsupported group file format {version}")
    try:
        n = int(d["degree"])
        gens = [Permutation.from_one_based(x) for x in d["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DerangementLabError(f"malformed group file: {exc}") from exc
    if not gens:
        gens = [Permutation.identity(n)]
    if any(x.degree != n for x in gens):
        raise DerangementLabError("generator degree does not match 'degree'")
    name = d.get("name", "")
    if "elements" not in d:
        return generate_group(gens, name=name, max_order=max_order)
    elements = {Permutation.from_one_based(x) for x in d["elements"]}
    if len(elements) > max_order:
        raise DerangementLabError(f"{len(elements)} elements exceed cap {max_order}")
    if Permutation.identity(n) not in elements or not all(x in elements for x in gens):
        raise DerangementLabError("element list misses the identity or a generator")
    for x in elements:
        for s in gens:
            if x * s not in elements:
                raise DerangementLabError("element list is not closed under the generators")
    return PermGroup(n, gens, elements, name)


def read_group_file(path, max_order=DEFAULT_MAX_ORDER):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DerangementLabError(f"{path}: not valid JSON ({exc})") from exc
    return group_from_dict(data, max_order=max_order)


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def write_group_file(g, path, include_elements=False, **metadata):
    with open(path, "w") as fh:
        fh.write(dumps(group_to_dict(g, include_elements, **metadata)))


_PALETTE = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33",
            "#a65628", "#f781bf", "#999999"]


def graph_to_dot(graph, parts=None):
    """DOT text with vertices labelled by element index, optionally coloured by part."""
    out = io.StringIO()
    out.write(f'graph "{graph.group.name}" {{\n')
    out.write(f"  format={FORMAT_VERSION};\n")
    colour = {}
    if parts:
        for k, part in enumerate(parts):
            for v in part:
                colour[v] = _PALETTE[k % len(_PALETTE)]
    for v in range(graph.n):
        attrs = f'label="{v}"'
        if v in colour:
            attrs += f', style=filled, fillcolor="{colour[v]}"'
        out.write(f"  {v} [{attrs}];\n")
    for u, v in np.argwhere(np.triu(graph.adjacency, 1)):
        out.write(f"  {u} -- {v};\n")
    out.write("}\n")
    return out.getvalue()


def graph_to_bitmap(graph):
    """Header of two little-endian uint32 (valency, vertex count), then packed rows.

    Each row takes ceil(n / 8) bytes; vertex j of row i is bit j % 8 of byte
    j // 8, least significant bit first.
    """
    header = struct.pack("<II", graph.degree, graph.n)
    return header + graph.packed_rows().tobytes()


def bitmap_to_adjacency(blob):
    degree, n = struct.unpack_from("<II", blob)
    width = (n + 7) // 8
    rows = np.frombuffer(blob, dtype=np.uint8, offset=8).reshape(n, width)
    adj = np.unpackbits(rows, axis=1, bitorder="little")[:, :n].astype(bool)
    return degree, adj


def line_table_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["format", "flat_index", "dir", "off", "points"])
    for flat, d, off, pts in rows:
        w.writerow([FORMAT_VERSION, flat, d, off, " ".join(f"{x}:{y}" for x, y in pts)])
    return buf.getvalue()


def density_summary_csv(reports):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["format", "name", "degree", "order", "stabilizer", "alpha", "omega", "rho_num", "rho_den",
                "ekr", "strict_ekr", "parts", "part_size"])
    for r in reports:
        mp = r.multipartite or {}
        w.writerow([FORMAT_VERSION, r.name, r.degree, r.order, r.stabilizer_size, r.alpha, r.omega,
                    r.rho.numerator, r.rho.denominator, r.ekr,
                    "" if r.strict_ekr is None else r.strict_ekr,
                    mp.get("parts", ""), mp.get("part_size", "")])
    return buf.getvalue()
