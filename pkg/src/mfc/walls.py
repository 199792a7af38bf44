"""Walls, fixed subcomplexes, recognition, and Milnor-wall search.

The recognition pipeline mirrors the counting arguments used for the
classification: candidate groups from the chamber count, a bouquet
(reduced Betti) filter, then exact isomorphism.  Per-class fixed-simplex
counts also come from an exact coset-counting identity, cross-checked
against explicitly constructed subcomplexes in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (GroupComplexAction, TypedComplex, milnor_fiber_complex)
from .diagram import (Diagram, basic_degrees, canonical_key, classify,
                      diagram_name, enumerate_admissible, group_order,
                      has_forbidden_subdiagram)
from .group import (ConjugacyClasses, GroupTable, conjugacy_classes,
                    enumerate_group, parabolic_cosets, reflection_classes)
from .homology import BettiResult, reduced_betti
from .isomorphism import Isomorphism, find_isomorphism, verify_isomorphism

THEOREM_A_FORBIDDEN = ("D4", "F4", "H4", "G25", "G26")
THEOREM_B_FORBIDDEN = ("D4", "F4", "H4")


# ---------------------------------------------------------------------------
# fixed subcomplexes
# ---------------------------------------------------------------------------

def fixed_subcomplex(c: TypedComplex, action: GroupComplexAction,
                     g: int) -> TypedComplex:
    """All simplices with g(sigma) = sigma setwise (= pointwise, which the
    tests verify independently); vertex ids remapped, originals kept in
    vertex_names."""
    perm = action.vertex_perm(g)
    fixed = []
    for k in sorted(c.by_dim):
        for s in c.by_dim[k]:
            if tuple(sorted(perm[v] for v in s)) == s:
                fixed.append(s)
    return c.subcomplex(fixed)


def wall(c: TypedComplex, action: GroupComplexAction, r: int) -> TypedComplex:
    """The wall of a reflection: its fixed subcomplex."""
    return fixed_subcomplex(c, action, r)


def fixed_space_dim(c: TypedComplex, action: GroupComplexAction, g: int,
                    prebuilt: TypedComplex | None = None) -> int:
    """dim V^g computed combinatorially as dim(fixed subcomplex) + 1."""
    sub = prebuilt if prebuilt is not None else fixed_subcomplex(c, action, g)
    return sub.dim + 1


def generated_subcomplex(c: TypedComplex, simplices) -> TypedComplex:
    """Closure of a family of simplices of c under taking faces."""
    return c.subcomplex(simplices)


# ---------------------------------------------------------------------------
# exact per-class fixed-simplex counts (fixed parabolic cosets)
# ---------------------------------------------------------------------------

class ParabolicData:
    """Partitions into parabolic cosets for every proper subset of R, plus
    per-class intersection counts with each parabolic subgroup.

    A coset hG_J is fixed by g iff h^{-1} g h lies in G_J, and the number
    of fixed cosets is |C_G(g)| * |cls(g) ∩ G_J| / |G_J|.
    """

    def __init__(self, t: GroupTable, classes: ConjugacyClasses | None = None):
        self.table = t
        self.classes = classes if classes is not None else conjugacy_classes(t)
        n = t.ngens
        self.partitions = {}
        self.intersections = {}
        for mask in range(1 << n):
            if mask == (1 << n) - 1 and n > 0:
                continue  # J = R never labels a simplex
            J = [i for i in range(n) if mask >> i & 1]
            part = parabolic_cosets(t, J)
            self.partitions[mask] = part
            counts = [0] * self.classes.n_classes
            block_of = part.block_of
            class_of = self.classes.class_of
            for e in range(t.order):
                if block_of[e] == 0:
                    counts[class_of[e]] += 1
            self.intersections[mask] = counts

    def fixed_coset_count(self, class_id: int, mask: int) -> int:
        t = self.table
        cls_size = self.classes.sizes[class_id]
        centralizer = t.order // cls_size
        part = self.partitions[mask]
        num = centralizer * self.intersections[mask][class_id]
        if num % part.block_size:
            raise RuntimeError("non-integral fixed-coset count")
        return num // part.block_size

    def fixed_f_vector(self, class_id: int) -> dict[int, int]:
        """f_{k-1}(Delta^g) for k = 0..n, keyed by dimension k-1."""
        n = self.table.ngens
        out = {-1: 1}
        full = (1 << n) - 1
        for mask_i in range(1, 1 << n):
            k = bin(mask_i).count("1")
            out[k - 1] = out.get(k - 1, 0) + \
                self.fixed_coset_count(class_id, full ^ mask_i)
        return {k: v for k, v in out.items() if v or k == -1}

    def fixed_dim(self, class_id: int) -> int:
        fv = self.fixed_f_vector(class_id)
        return max(k for k, v in fv.items() if v)


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

@dataclass
class CandidateReport:
    diagram: Diagram
    name: str
    status: str            # "betti-mismatch" | "isomorphism-failed" | "matched"
    predicted_bouquet: int


@dataclass
class RecognitionVerdict:
    outcome: str           # "recognized" | "not-mfc"
    rank: int
    chambers: int
    betti: dict[int, int] | None
    diagram: Diagram | None
    reason: str | None     # "no-admissible-factorization" | "betti-mismatch-all"
                           # | "isomorphism-failed-all"
    candidates: list[CandidateReport] = field(default_factory=list)
    certificate: Isomorphism | None = None
    matches: list[Diagram] = field(default_factory=list)
    _complex: TypedComplex | None = None

    @property
    def recognized(self) -> bool:
        return self.outcome == "recognized"

    def recheck(self, cap: int = 200_000) -> bool:
        """Re-verify the stored isomorphism certificate from scratch."""
        if not self.recognized or self.certificate is None or self._complex is None:
            return False
        _t, model = _model_complex(self.diagram, cap)
        return verify_isomorphism(self._complex, model, self.certificate.vertex_map)

    def to_jsonable(self):
        return {
            "outcome": self.outcome,
            "rank": self.rank,
            "chambers": self.chambers,
            "betti": None if self.betti is None else
                     {str(k): v for k, v in sorted(self.betti.items())},
            "diagram": None if self.diagram is None else diagram_name(self.diagram),
            "reason": self.reason,
            "candidates": [[cr.name, cr.status] for cr in self.candidates],
            "matches": [diagram_name(d) for d in self.matches],
        }


_MODEL_CACHE: dict = {}
_MODEL_CACHE_MAX = 4096
_MODEL_ORDER_LIMIT = 20_000


def _model_complex(d: Diagram, cap: int) -> tuple[GroupTable, TypedComplex]:
    """Group table + Milnor fiber complex for a candidate diagram, cached."""
    key = canonical_key(d)
    hit = _MODEL_CACHE.get(key)
    if hit is not None:
        return hit
    t = enumerate_group(d, cap=max(cap, group_order(d)))
    cx, _act = milnor_fiber_complex(t)
    if group_order(d) <= _MODEL_ORDER_LIMIT and len(_MODEL_CACHE) < _MODEL_CACHE_MAX:
        _MODEL_CACHE[key] = (t, cx)
    return t, cx


def _n_components(s: TypedComplex) -> int:
    n = s.n_vertices
    if n == 0:
        return 0
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in s.simplices(1):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in range(n)})


def predicted_bouquet_count(d: Diagram) -> int:
    """Bouquet size for the Milnor fiber complex of d: product over
    components of (smallest degree - 1)^rank."""
    out = 1
    for gid in classify(d):
        out *= (gid.degrees[0] - 1) ** len(gid.degrees)
    return out


def recognize_milnor_fiber(s: TypedComplex, rank: int,
                           cap: int = 200_000) -> RecognitionVerdict:
    """Decide whether s is the Milnor fiber complex of some rank-`rank`
    admissible diagram: chamber-count candidates, bouquet filter, then
    exact type-free isomorphism."""
    chambers = 1 if rank == 0 and s.dim == -1 else len(s.simplices(rank - 1))
    candidates = enumerate_admissible(rank, chambers)
    if not candidates:
        return RecognitionVerdict("not-mfc", rank, chambers, None, None,
                                  "no-admissible-factorization")
    if rank >= 2 and _n_components(s) != 1:
        # every Milnor fiber complex of rank >= 2 is connected (chamber
        # complexes are gallery connected), so reduced b_0 > 0 rejects all
        # candidates without running the boundary matrices
        reports = [CandidateReport(d, diagram_name(d), "betti-mismatch",
                                   predicted_bouquet_count(d))
                   for d in candidates]
        return RecognitionVerdict("not-mfc", rank, chambers,
                                  {0: _n_components(s) - 1}, None,
                                  "betti-mismatch-all", reports)
    betti = reduced_betti(s)
    survivors = []
    reports = []
    for d in candidates:
        want = predicted_bouquet_count(d)
        if betti.concentrated_value(rank - 1) == want:
            survivors.append((d, want))
        else:
            reports.append(CandidateReport(d, diagram_name(d),
                                           "betti-mismatch", want))
    if not survivors:
        return RecognitionVerdict("not-mfc", rank, chambers, betti.betti, None,
                                  "betti-mismatch-all", reports)
    matches = []
    first_cert = None
    first_diag = None
    for d, want in survivors:
        _t, model = _model_complex(d, cap)
        iso = find_isomorphism(s, model)
        if iso is None:
            reports.append(CandidateReport(d, diagram_name(d),
                                           "isomorphism-failed", want))
        else:
            reports.append(CandidateReport(d, diagram_name(d), "matched", want))
            matches.append(d)
            if first_cert is None:
                first_cert, first_diag = iso, d
    reports.sort(key=lambda cr: canonical_key(cr.diagram))
    if not matches:
        return RecognitionVerdict("not-mfc", rank, chambers, betti.betti, None,
                                  "isomorphism-failed-all", reports)
    return RecognitionVerdict("recognized", rank, chambers, betti.betti,
                              first_diag, None, reports, first_cert, matches,
                              _complex=s)


# ---------------------------------------------------------------------------
# Milnor walls
# ---------------------------------------------------------------------------

@dataclass
class MilnorWallCertificate:
    reflection: int
    missing_types: tuple[int, ...]    # F = {R - {s} : s in this tuple}
    family: tuple[frozenset, ...]
    diagram: Diagram
    verdict: RecognitionVerdict
    proper: bool                      # True when F is not the full family

    def recheck(self, cap: int = 200_000) -> bool:
        return self.verdict.recheck(cap)

    def to_jsonable(self):
        return {"reflection": self.reflection,
                "missing_types": list(self.missing_types),
                "diagram": diagram_name(self.diagram),
                "proper": self.proper,
                "verdict": self.verdict.to_jsonable()}


def _wall_family_subcomplex(wall_cx: TypedComplex, n: int,
                            missing: tuple[int, ...]) -> TypedComplex:
    """Subcomplex generated by the wall simplices whose type is R - {s}
    for some s in `missing` (dimension n-2 simplices)."""
    if n == 1:
        # the family {R - {r}} = {∅} selects the empty simplex only
        if missing:
            return TypedComplex([], {})
        return None  # unreachable: callers pass nonempty missing
    selected = []
    want_types = {frozenset(x for x in range(n) if x != s) for s in missing}
    for s in wall_cx.simplices(n - 2):
        if wall_cx.type_of(s) in want_types:
            selected.append(s)
    return wall_cx.subcomplex(selected) if selected else TypedComplex([], {})


def milnor_wall_search(c: TypedComplex, action: GroupComplexAction, r: int,
                       cap: int = 200_000,
                       wall_cx: TypedComplex | None = None
                       ) -> MilnorWallCertificate | None:
    """First certificate over all 2^n type families, descending by family
    size (so non-proper Milnor walls are found first), lexicographic
    within a size."""
    n = action.table.ngens
    if wall_cx is None:
        wall_cx = wall(c, action, r)
    from itertools import combinations
    for size in range(n, 0, -1):
        for missing in combinations(range(n), size):
            sub = _wall_family_subcomplex(wall_cx, n, missing)
            if sub.dim != n - 2:
                continue
            verdict = recognize_milnor_fiber(sub, n - 1, cap=cap)
            if verdict.recognized:
                family = tuple(frozenset(x for x in range(n) if x != s)
                               for s in missing)
                return MilnorWallCertificate(
                    r, missing, family, verdict.diagram, verdict,
                    proper=(size != n))
    return None


# ---------------------------------------------------------------------------
# fixed-space dimension count checks
# ---------------------------------------------------------------------------

@dataclass
class ClassCountRow:
    class_rep: int
    class_size: int
    p: int
    f_vector: dict[int, int]
    expected: int            # d_1 ... d_p
    holds: bool


@dataclass
class CountReport:
    rows: list[ClassCountRow]
    item_i: bool
    item_ii: bool
    item_iii: bool
    eq8_rows: list[tuple[int, int, int]]   # (reflection rep, f_{n-2}, expected)
    eq8_holds: bool

    @property
    def equivalent(self) -> bool:
        return self.item_i == self.item_ii == self.item_iii


def chamber_count_check(c: TypedComplex, action: GroupComplexAction,
                        t: GroupTable, d: Diagram,
                        pdata: ParabolicData | None = None,
                        refl: list | None = None,
                        collect_rows: bool | None = None) -> CountReport:
    """Per conjugacy class: p = fixed-space dimension proxy and the count
    f_{p-1}(Delta^g) against d_1...d_p; items (i)-(iii) of the
    chamber-count equivalence; Eq-(8) per reflection class.

    Row objects are collected for failing classes always, and for all
    classes only when the class count is modest (or collect_rows=True).
    """
    if pdata is None:
        pdata = ParabolicData(t)
    degs = basic_degrees(d)
    n = t.ngens
    prefix = [1]
    for dd in degs:
        prefix.append(prefix[-1] * dd)
    ncls = pdata.classes.n_classes
    if collect_rows is None:
        collect_rows = ncls <= 512
    rows = []
    item_i = True
    item_ii = True
    full = (1 << n) - 1
    count_of = pdata.fixed_coset_count
    masks_by_size = [[] for _ in range(n + 1)]
    for mask_i in range(1, 1 << n):
        masks_by_size[bin(mask_i).count("1")].append(full ^ mask_i)
    for cid in range(ncls):
        counts = [1] + [0] * n          # counts[k] = f_{k-1}
        for k in range(1, n + 1):
            for jmask in masks_by_size[k]:
                counts[k] += count_of(cid, jmask)
        p = max(k for k in range(n + 1) if counts[k])
        ok = counts[p] == prefix[p]
        if not ok:
            item_ii = False
        if p == n - 2 and counts[n - 2] != prefix[n - 2]:
            item_i = False
        if collect_rows or not ok:
            fv = {k - 1: v for k, v in enumerate(counts) if v or k == 0}
            rows.append(ClassCountRow(pdata.classes.reps[cid],
                                      pdata.classes.sizes[cid], p, fv,
                                      prefix[p], ok))
    item_iii = not has_forbidden_subdiagram(d, THEOREM_B_FORBIDDEN)
    eq8_rows = []
    eq8 = True
    if refl is None:
        refl = reflection_classes(t, d, pdata.classes)
    for rep, _members in refl:
        cid = pdata.classes.class_of[rep]
        got = 1 if n == 1 else sum(count_of(cid, j) for j in masks_by_size[n - 1])
        eq8_rows.append((rep, got, prefix[n - 1]))
        if got != prefix[n - 1]:
            eq8 = False
    return CountReport(rows, item_i, item_ii, item_iii, eq8_rows, eq8)
