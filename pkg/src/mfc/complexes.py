"""Typed chamber complexes: the coset model, joins, links, flag models.

A TypedComplex stores every simplex explicitly (the empty simplex is
implicit) as a sorted tuple of vertex ids; each vertex carries a type
label and the type of a simplex is the set of types of its vertices.
Vertex ids are (type, coset-block) pairs flattened deterministically,
so identical builds produce identical complexes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagram import Diagram
from .group import GroupTable, parabolic_cosets

DEFAULT_SIMPLEX_CAP = 2_000_000


class SimplexCapExceeded(RuntimeError):
    pass


class TypedComplex:
    def __init__(self, vertex_types, simplices_by_dim, vertex_names=None):
        self.vertex_types = tuple(vertex_types)
        self.by_dim = {k: tuple(sorted(v)) for k, v in simplices_by_dim.items() if v}
        self.vertex_names = tuple(vertex_names) if vertex_names is not None else None
        self._sets = None

    # -- basic queries -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_types)

    @property
    def dim(self) -> int:
        """Dimension; -1 when only the empty simplex is present."""
        return max(self.by_dim, default=-1)

    def f_vector(self) -> tuple[int, ...]:
        """(f_0, ..., f_dim); empty simplex excluded."""
        return tuple(len(self.by_dim.get(k, ())) for k in range(self.dim + 1))

    def n_simplices(self) -> int:
        """Number of nonempty simplices."""
        return sum(len(v) for v in self.by_dim.values())

    def simplices(self, k: int) -> tuple:
        return self.by_dim.get(k, ())

    def _simplex_sets(self):
        if self._sets is None:
            self._sets = {k: set(v) for k, v in self.by_dim.items()}
        return self._sets

    def contains(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        if not s:
            return True
        return s in self._simplex_sets().get(len(s) - 1, ())

    def type_of(self, simplex) -> frozenset:
        return frozenset(self.vertex_types[v] for v in simplex)

    def type_universe(self) -> tuple:
        seen = []
        for t in self.vertex_types:
            if t not in seen:
                seen.append(t)
        return tuple(seen)

    def chambers(self) -> tuple:
        """Maximal simplices (any dimension)."""
        out = []
        strict_faces = set()
        for k in sorted(self.by_dim, reverse=True):
            for s in self.by_dim[k]:
                if s not in strict_faces:
                    out.append(s)
                for v in s:
                    strict_faces.add(tuple(x for x in s if x != v))
        return tuple(sorted(out, key=lambda s: (len(s), s)))

    def euler_characteristic(self) -> int:
        chi = 0
        for k, v in self.by_dim.items():
            chi += (-1) ** k * len(v)
        return chi

    # -- derived complexes ---------------------------------------------------

    def subcomplex(self, simplices) -> "TypedComplex":
        """Closure of the given simplices, reindexed to fresh vertex ids.

        vertex_names records the original ids.
        """
        keep = set()
        for s in simplices:
            s = tuple(sorted(s))
            keep.add(s)
        # close under faces
        by_dim: dict[int, set] = {}
        stack = list(keep)
        seen = set(keep)
        while stack:
            s = stack.pop()
            if s:
                by_dim.setdefault(len(s) - 1, set()).add(s)
            for v in s:
                f = tuple(x for x in s if x != v)
                if f and f not in seen:
                    seen.add(f)
                    stack.append(f)
        verts = sorted(by_dim.get(0, ()), key=lambda s: s[0])
        old_ids = [s[0] for s in verts]
        remap = {old: new for new, old in enumerate(old_ids)}
        new_by_dim = {
            k: [tuple(sorted(remap[v] for v in s)) for s in ss]
            for k, ss in by_dim.items()}
        names = [self.vertex_names[v] if self.vertex_names else v for v in old_ids]
        return TypedComplex([self.vertex_types[v] for v in old_ids],
                            new_by_dim, vertex_names=names)

    @classmethod
    def from_facets(cls, vertex_types, facets, vertex_names=None) -> "TypedComplex":
        by_dim: dict[int, set] = {}
        seen = set()
        stack = [tuple(sorted(f)) for f in facets]
        seen.update(stack)
        while stack:
            s = stack.pop()
            if s:
                by_dim.setdefault(len(s) - 1, set()).add(s)
            for v in s:
                f = tuple(x for x in s if x != v)
                if f and f not in seen:
                    seen.add(f)
                    stack.append(f)
        return cls(vertex_types, by_dim, vertex_names=vertex_names)


@dataclass
class GroupComplexAction:
    """Left-translation action on a coset complex.

    Permutations are stored for the generators; arbitrary elements
    compose along the group's stored words.
    """

    table: GroupTable
    gen_vertex_perms: list[list[int]]

    def vertex_perm(self, g: int) -> list[int]:
        w = self.table.word(g)
        nv = len(self.gen_vertex_perms[0]) if self.gen_vertex_perms else 0
        if not w:
            return list(range(nv))
        cur = list(self.gen_vertex_perms[w[-1]])
        for letter in reversed(w[:-1]):
            perm = self.gen_vertex_perms[letter]
            cur = [perm[x] for x in cur]
        return cur

    def apply(self, perm: list[int], simplex) -> tuple:
        return tuple(sorted(perm[v] for v in simplex))


def milnor_fiber_complex(t: GroupTable, d: Diagram | None = None,
                         simplex_cap: int = DEFAULT_SIMPLEX_CAP
                         ) -> tuple[TypedComplex, GroupComplexAction]:
    """Coset complex of all proper standard parabolics of t's group.

    Vertices of type r are cosets g<R - {r}>; the simplex of a coset
    g<R - I> is its vertex set {g<R - {r}> : r in I}; chambers biject
    with group elements.  The action is left translation.
    """
    if d is None:
        d = t.diagram
    n = t.ngens
    R = list(range(n))
    nelts = t.order
    vmaps = []
    offsets = []
    off = 0
    for r in R:
        part = parabolic_cosets(t, [x for x in R if x != r])
        vmaps.append(part)
        offsets.append(off)
        off += part.n_blocks
    nverts = off
    vertex_types = []
    vertex_names = []
    for r in R:
        vertex_types.extend([r] * vmaps[r].n_blocks)
        vertex_names.extend((r, b) for b in range(vmaps[r].n_blocks))

    by_dim: dict[int, list] = {}
    total = 0
    # subsets of R by bitmask; I nonempty
    for mask in range(1, 1 << n):
        I = [r for r in R if mask >> r & 1]
        J = [r for r in R if not mask >> r & 1]
        part = parabolic_cosets(t, J)
        total += part.n_blocks
        if total > simplex_cap:
            raise SimplexCapExceeded(
                "complex would exceed %d simplices" % simplex_cap)
        lst = by_dim.setdefault(len(I) - 1, [])
        vblocks = [vmaps[r].block_of for r in I]
        offs = [offsets[r] for r in I]
        for g in part.reps:
            lst.append(tuple(sorted(offs[k] + vblocks[k][g]
                                    for k in range(len(I)))))
    cx = TypedComplex(vertex_types, by_dim, vertex_names=vertex_names)
    perms = []
    for i in range(n):
        lam = t.left[i]
        perm = [0] * nverts
        for r in R:
            bl = vmaps[r].block_of
            offr = offsets[r]
            for g in vmaps[r].reps:
                perm[offr + bl[g]] = offr + bl[lam[g]]
        perms.append(perm)
    return cx, GroupComplexAction(t, perms)


def f_vector(c: TypedComplex) -> tuple[int, ...]:
    return c.f_vector()


def join(a: TypedComplex, b: TypedComplex) -> TypedComplex:
    """Join; vertex types are tagged (0, t) / (1, u) to keep universes disjoint."""
    na = a.n_vertices
    types = [(0, t) for t in a.vertex_types] + [(1, t) for t in b.vertex_types]
    by_dim: dict[int, list] = {}
    simps_a = [()] + [s for k in sorted(a.by_dim) for s in a.by_dim[k]]
    simps_b = [()] + [s for k in sorted(b.by_dim) for s in b.by_dim[k]]
    for sa in simps_a:
        for sb in simps_b:
            s = sa + tuple(v + na for v in sb)
            if s:
                by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    return TypedComplex(types, by_dim)


def link(c: TypedComplex, simplex) -> TypedComplex:
    """Link with inherited types; vertex_names keep the ambient ids."""
    s = tuple(sorted(simplex))
    if s and not c.contains(s):
        raise KeyError("simplex %r not in complex" % (s,))
    if not s:
        return c
    sset = set(s)
    k0 = len(s)
    members = []
    for k in sorted(c.by_dim):
        if k + 1 <= k0 - 1:
            continue
        for tau in c.by_dim[k]:
            if sset.issubset(tau):
                rest = tuple(v for v in tau if v not in sset)
                if rest:
                    members.append(rest)
    out = c.subcomplex(members) if members else TypedComplex([], {})
    return out


def monomial_flag_complex(m: int, n: int,
                          simplex_cap: int = DEFAULT_SIMPLEX_CAP
                          ) -> tuple[TypedComplex, list[list[int]]]:
    """Flag complex of root-of-unity labeled coordinate subsets.

    Vertices are sets {(coord, label)} with distinct coords, sizes
    1..n; type of a size-k set is k-1 (matching generator indexing of
    the 2[3]...2[4]m chain).  Simplices are chains under inclusion.
    Returns the complex and the vertex permutations of the n standard
    monomial generators (adjacent transpositions; last one rotates the
    label on the last coordinate).
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2, n >= 1")
    import itertools as it
    verts = []
    for k in range(1, n + 1):
        for coords in it.combinations(range(n), k):
            for labels in it.product(range(m), repeat=k):
                verts.append(frozenset(zip(coords, labels)))
    verts.sort(key=lambda s: (len(s), sorted(s)))
    vid = {s: i for i, s in enumerate(verts)}
    types = [len(s) - 1 for s in verts]

    # chains under strict inclusion, built by extending from each set upward
    supersets = [[] for _ in verts]
    for i, s in enumerate(verts):
        for j, u in enumerate(verts):
            if len(u) > len(s) and s < u:
                supersets[i].append(j)
    by_dim: dict[int, list] = {}
    total = 0
    stack = [(i,) for i in range(len(verts))]
    while stack:
        chain = stack.pop()
        total += 1
        if total > simplex_cap:
            raise SimplexCapExceeded("flag complex exceeds %d simplices" % simplex_cap)
        by_dim.setdefault(len(chain) - 1, []).append(tuple(sorted(chain)))
        for j in supersets[chain[-1]]:
            stack.append(chain + (j,))
    cx = TypedComplex(types, by_dim,
                      vertex_names=[tuple(sorted(s)) for s in verts])

    def act(gen: int, s: frozenset) -> frozenset:
        out = []
        for (c, a) in s:
            if gen < n - 1:
                if c == gen:
                    c = gen + 1
                elif c == gen + 1:
                    c = gen
            else:
                if c == n - 1:
                    a = (a + 1) % m
            out.append((c, a))
        return frozenset(out)

    perms = []
    for gen in range(n):
        perms.append([vid[act(gen, s)] for s in verts])
    return cx, perms


# ---------------------------------------------------------------------------
# MFC-COMPLEX facet export / import
# ---------------------------------------------------------------------------

def _type_token(t) -> str:
    if isinstance(t, tuple):
        return ".".join(_type_token(x) for x in t)
    return str(t)


def export_complex(c: TypedComplex, path: str) -> None:
    facets = c.chambers()
    with open(path, "w") as fh:
        fh.write("MFC-COMPLEX v1 %d %d\n" % (c.n_vertices, len(facets)))
        for v in range(c.n_vertices):
            fh.write("v: %d %s\n" % (v, _type_token(c.vertex_types[v])))
        for f in facets:
            fh.write("f: %s\n" % " ".join(map(str, f)))


def import_complex(path: str) -> TypedComplex:
    with open(path) as fh:
        header = fh.readline().split()
        if header[:2] != ["MFC-COMPLEX", "v1"]:
            raise ValueError("bad MFC-COMPLEX header")
        nv, nf = int(header[2]), int(header[3])
        types: dict[int, object] = {}
        facets = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("v:"):
                _v, vid, tok = line.split(None, 2)
                parts = tok.split(".")
                val = tuple(int(p) if p.lstrip("-").isdigit() else p for p in parts)
                types[int(vid)] = val[0] if len(val) == 1 else val
            elif line.startswith("f:"):
                facets.append(tuple(int(x) for x in line.split()[1:]))
            else:
                raise ValueError("bad MFC-COMPLEX line %r" % line)
    if len(types) != nv or len(facets) != nf:
        raise ValueError("MFC-COMPLEX count mismatch")
    vertex_types = [types[v] for v in range(nv)]
    return TypedComplex.from_facets(vertex_types, facets)
