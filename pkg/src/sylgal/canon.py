"""Canonical labelling, isomorphism and automorphisms of (coloured) geometries.

Individualisation-refinement in the style of nauty, specialised to linear
spaces. The partition lives on points only: the profile of a stored line is
the sorted tuple of cells of its points, and a point's signature is the
sorted tuple of profiles of the lines through it. Implicit 2-lines need no
separate treatment since a point's 2-line neighbours per cell follow from its
stored-line profiles and the cell sizes.

Search-tree pruning uses refinement traces (against the first and the best
leaf) and automorphisms found so far (orbits of the pointwise stabiliser of
the current path).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import UnsupportedSize
from .geometry import Geometry


@dataclass(frozen=True)
class CanonResult:
    labeling: tuple      # labeling[p] = canonical label of point p
    form: bytes
    generators: tuple    # automorphisms as permutation tuples
    order: int


def _colour_values(coloring, n):
    if coloring is None:
        return None
    vals = tuple(int(c) for c in coloring)
    if len(vals) != n:
        raise ValueError("colouring must cover every point")
    return vals


def encode_form(n: int, canon_lines, colours) -> bytes:
    """Fixed-width serialisation: header, sorted lines, optional colour block."""
    width = 1 if n <= 256 else 2
    out = bytearray()
    out += n.to_bytes(2, "big")
    out.append(width)
    out += len(canon_lines).to_bytes(2, "big")
    for line in canon_lines:
        out += len(line).to_bytes(width, "big")
        for x in line:
            out += x.to_bytes(width, "big")
    if colours is None:
        out.append(0)
    else:
        out.append(1)
        out += bytes(colours)
    return bytes(out)


class _Search:
    def __init__(self, g: Geometry, colours):
        self.n = n = g.n_points
        self.lines = g.lines
        self.lines_at = g.lines_at
        self.colours = colours
        keys = []
        for p in range(n):
            sizes = tuple(sorted(len(g.lines[i]) for i in g.lines_at[p]))
            keys.append((colours[p] if colours else 0, len(sizes), sizes))
        order = sorted(set(keys))
        cells = [[] for _ in order]
        pos = {k: i for i, k in enumerate(order)}
        for p in range(n):
            cells[pos[keys[p]]].append(p)
        self.initial = cells
        self.first = None        # (labeling, cert, path)
        self.first_traces = None
        self.best = None
        self.best_traces = None
        self.gens = []

    def refine(self, cells):
        lines, lines_at = self.lines, self.lines_at
        cell_of = [0] * self.n
        for i, c in enumerate(cells):
            for p in c:
                cell_of[p] = i
        trace = []
        while True:
            profs = [tuple(sorted([cell_of[p] for p in L])) for L in lines]
            ids = {pr: i for i, pr in enumerate(sorted(set(profs)))}
            pid = [ids[pr] for pr in profs]
            new_cells = []
            split = False
            for c in cells:
                if len(c) == 1:
                    new_cells.append(c)
                    continue
                groups = {}
                for p in c:
                    sig = tuple(sorted([pid[i] for i in lines_at[p]]))
                    groups.setdefault(sig, []).append(p)
                if len(groups) == 1:
                    new_cells.append(c)
                    continue
                split = True
                keys = sorted(groups)
                trace.append((len(new_cells), tuple((k, len(groups[k])) for k in keys)))
                new_cells.extend(groups[k] for k in keys)
            if not split:
                return cells, tuple(trace)
            cells = new_cells
            for i, c in enumerate(cells):
                for p in c:
                    cell_of[p] = i

    def certificate(self, cells):
        lab = [0] * self.n
        for i, c in enumerate(cells):
            lab[c[0]] = i
        cert_lines = tuple(sorted(tuple(sorted([lab[p] for p in L])) for L in self.lines))
        if self.colours is None:
            cols = None
        else:
            inv = [c[0] for c in cells]
            cols = tuple(self.colours[p] for p in inv)
        return tuple(lab), (cert_lines, cols)

    def _orbit_finder(self, path):
        gens = [g for g in self.gens if all(g[v] == v for v in path)]
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for x in range(self.n):
                a, b = find(x), find(g[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return find

    def _automorphism(self, lab_a, lab_b):
        inv_b = [0] * self.n
        for p, l in enumerate(lab_b):
            inv_b[l] = p
        return tuple(inv_b[lab_a[p]] for p in range(self.n))

    def run(self):
        self.explore(self.initial, 0, [], [])

    def explore(self, cells, level, path, traces):
        cells, trace = self.refine(cells)
        traces = traces + [trace]
        if self.first is not None:
            eq_first = traces == self.first_traces[: level + 1]
            if not eq_first and traces < self.best_traces[: level + 1]:
                return level - 1
        if len(cells) == self.n:
            return self.leaf(cells, level, path, traces)

        target = min((c for c in cells if len(c) > 1), key=len)
        ti = cells.index(target)
        tried = []
        find = None
        ngens = -1
        for w in target:
            if tried:
                if ngens != len(self.gens):
                    find = self._orbit_finder(path)
                    ngens = len(self.gens)
                rw = find(w)
                if any(find(v) == rw for v in tried):
                    continue
            tried.append(w)
            rest = [x for x in target if x != w]
            child = cells[:ti] + [[w], rest] + cells[ti + 1:]
            r = self.explore(child, level + 1, path + [w], traces)
            if r < level:
                return r
        return level - 1

    def leaf(self, cells, level, path, traces):
        lab, cert = self.certificate(cells)
        if self.first is None:
            self.first = self.best = (lab, cert, list(path))
            self.first_traces = self.best_traces = traces
            return level - 1
        if traces == self.first_traces and cert == self.first[1]:
            gamma = self._automorphism(self.first[0], lab)
            self._add_gen(gamma)
            ref_path = self.first[2]
            d = 0
            while path[d] == ref_path[d]:
                d += 1
            # gamma carries the first path onto this one, so the whole subtree
            # below the divergence point is an image of explored territory
            if all(gamma[v] == v for v in path[:d]) and gamma[ref_path[d]] == path[d]:
                return d
            return level - 1
        key = (traces, cert)
        best_key = (self.best_traces, self.best[1])
        if key > best_key:
            self.best = (lab, cert, list(path))
            self.best_traces = traces
        elif key == best_key:
            self._add_gen(self._automorphism(self.best[0], lab))
        return level - 1

    def _add_gen(self, gamma):
        if gamma not in self.gens and any(gamma[i] != i for i in range(self.n)):
            self.gens.append(gamma)

    def group_order(self):
        order = 1
        path = self.first[2]
        for i, v in enumerate(path):
            find = self._orbit_finder(path[:i])
            rv = find(v)
            order *= sum(1 for x in range(self.n) if find(x) == rv)
        return order


def canonical_labeling(g: Geometry, coloring: Optional[Sequence] = None) -> CanonResult:
    colours = _colour_values(coloring, g.n_points)
    s = _Search(g, colours)
    s.run()
    lab, cert, _ = s.best
    form = encode_form(g.n_points, cert[0], cert[1])
    return CanonResult(lab, form, tuple(s.gens), s.group_order())


def canonical_form(g: Geometry, coloring: Optional[Sequence] = None) -> bytes:
    return canonical_labeling(g, coloring).form


def canonical_form_up_to_swap(g: Geometry, coloring: Sequence) -> bytes:
    """Canonical form where exchanging red and blue counts as an isomorphism."""
    swapped = [((int(c) & 1) << 1) | ((int(c) & 2) >> 1) for c in coloring]
    return min(canonical_form(g, coloring), canonical_form(g, swapped))


def are_isomorphic(g1: Geometry, c1, g2: Geometry, c2) -> Optional[tuple]:
    """A colour-preserving isomorphism ``g1 -> g2`` as a point map, or None."""
    if g1.n_points != g2.n_points or len(g1.lines) != len(g2.lines):
        return None
    if (c1 is None) != (c2 is None):
        return None
    r1 = canonical_labeling(g1, c1)
    r2 = canonical_labeling(g2, c2)
    if r1.form != r2.form:
        return None
    inv2 = [0] * g2.n_points
    for p, l in enumerate(r2.labeling):
        inv2[l] = p
    return tuple(inv2[r1.labeling[p]] for p in range(g1.n_points))


def automorphism_group_order(g: Geometry, coloring: Optional[Sequence] = None) -> int:
    if g.n_points > 64:
        raise UnsupportedSize("automorphism_group_order supports at most 64 points")
    return canonical_labeling(g, coloring).order


def orbits(n: int, generators) -> list[int]:
    """Orbit representative (least point) of every point under the generated group."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]
