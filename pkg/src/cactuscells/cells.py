"""Cell preorders and partitions, the a-function, and structural checks.

The left preorder is the finest preorder making the span of the C_x below
any C_w a left ideal; it is generated by the relation "C_z appears in
C_s C_y for some generator s".  Cells are the strongly connected components
of that relation, the preorder is reachability on the condensation, and
the right/two-sided versions use right multiplication resp. the union of
both edge sets.  Generator multiplications suffice because the C_s generate
the algebra; the brute-force all-element oracle for that fact lives in the
test suite.

The a-function of z is the maximal degree of any structure constant
h_{x,y,z}; Delta(z) is minus the degree of the coefficient of T_1 in C_z,
the Duflo set collects the z with a(z) = Delta(z), and gamma_{x,y,z} is the
coefficient of the top degree v^{a(z^{-1})} in h_{x,y,z^{-1}}.  The checks
P1, P4, P8, P9 are reported with explicit witnesses on failure; a failed
check is a result, not an error.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import laurent
from .hecke import HeckeAlgebra

__all__ = [
    "CheckReport",
    "CellPartition",
    "CellDecomposition",
    "compute_cells",
    "AFunctionTable",
    "build_a_table",
    "verify_conjectures",
    "cell_module_constants",
]

MAX_WITNESSES = 10


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one structural check, with witnesses when it fails."""

    name: str
    holds: bool
    witnesses: tuple = ()

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "%s: holds" % self.name
        shown = "; ".join(str(w) for w in self.witnesses)
        return "%s: FAILS (%s)" % (self.name, shown)


def _strongly_connected_components(n: int, adj: list[set]) -> list[list[int]]:
    """Iterative Tarjan; components are returned in reverse topological order."""
    index = [0] * n
    low = [0] * n
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    comp_stack: list[int] = []
    comps: list[list[int]] = []
    counter = 1
    for root in range(n):
        if state[root]:
            continue
        work = [(root, iter(sorted(adj[root])))]
        index[root] = low[root] = counter
        counter += 1
        state[root] = 1
        comp_stack.append(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if not state[u]:
                    index[u] = low[u] = counter
                    counter += 1
                    state[u] = 1
                    comp_stack.append(u)
                    work.append((u, iter(sorted(adj[u]))))
                    advanced = True
                    break
                if state[u] == 1:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = comp_stack.pop()
                    state[u] = 2
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)
    return comps


@dataclass(frozen=True)
class CellPartition:
    """Cells of one side together with the preorder on the condensation."""

    side: str
    cells: tuple[frozenset, ...]
    cell_of: tuple[int, ...]
    below: tuple[frozenset, ...]  # per cell: ids of cells <= it (including itself)

    def cell_id(self, w: int) -> int:
        return self.cell_of[w]

    def members(self, cell: int) -> frozenset:
        return self.cells[cell]

    def same_cell(self, x: int, y: int) -> bool:
        return self.cell_of[x] == self.cell_of[y]

    def leq(self, x: int, y: int) -> bool:
        """x <= y in the preorder (x lies in the ideal generated below y)."""
        return self.cell_of[x] in self.below[self.cell_of[y]]

    def less(self, x: int, y: int) -> bool:
        return self.cell_of[x] != self.cell_of[y] and self.leq(x, y)

    def cell_leq(self, a: int, b: int) -> bool:
        return a in self.below[b]

    def cover_edges(self) -> list[tuple[int, int]]:
        """Hasse edges (a, b) with a < b, for rendering the condensation."""
        k = len(self.cells)
        pairs = [
            (a, b)
            for b in range(k)
            for a in self.below[b]
            if a != b
        ]
        covers = []
        for a, b in pairs:
            if not any(
                c != a and c != b and c in self.below[b] and a in self.below[c]
                for c in range(k)
            ):
                covers.append((a, b))
        return sorted(covers)


def _partition_from_edges(side: str, n: int, adj: list[set]) -> CellPartition:
    comps = _strongly_connected_components(n, adj)
    comps = sorted((sorted(c) for c in comps), key=lambda c: c[0])
    cell_of = [0] * n
    for i, comp in enumerate(comps):
        for w in comp:
            cell_of[w] = i
    k = len(comps)
    cadj: list[set] = [set() for _ in range(k)]
    for y in range(n):
        for z in adj[y]:
            if cell_of[z] != cell_of[y]:
                cadj[cell_of[y]].add(cell_of[z])
    below = []
    for c in range(k):
        seen = {c}
        stack = [c]
        while stack:
            v = stack.pop()
            for u in cadj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        below.append(frozenset(seen))
    return CellPartition(
        side=side,
        cells=tuple(frozenset(c) for c in comps),
        cell_of=tuple(cell_of),
        below=tuple(below),
    )


@dataclass(frozen=True)
class CellDecomposition:
    left: CellPartition
    right: CellPartition
    two_sided: CellPartition

    def partition(self, side: str) -> CellPartition:
        if side in ("left", "L"):
            return self.left
        if side in ("right", "R"):
            return self.right
        if side in ("two_sided", "two-sided", "LR"):
            return self.two_sided
        raise ValueError("unknown side %r" % side)


_cells_cache: dict = {}
_cells_lock = threading.Lock()


def compute_cells(algebra: HeckeAlgebra) -> CellDecomposition:
    """Left, right and two-sided cells of a finite W with the given weights."""
    with _cells_lock:
        cached = _cells_cache.get(id(algebra))
    if cached is not None:
        return cached
    sys = algebra.system
    ids = sys.all_ids()
    n = len(ids)
    left_adj: list[set] = [set() for _ in range(n)]
    right_adj: list[set] = [set() for _ in range(n)]
    for y in ids:
        for s in range(sys.rank):
            left_adj[y].update(algebra.cs_left_row(s, y))
            right_adj[y].update(algebra.cs_right_row(y, s))
    both = [left_adj[y] | right_adj[y] for y in ids]
    dec = CellDecomposition(
        left=_partition_from_edges("left", n, left_adj),
        right=_partition_from_edges("right", n, right_adj),
        two_sided=_partition_from_edges("two_sided", n, both),
    )
    with _cells_lock:
        _cells_cache[id(algebra)] = dec
    return dec


# -- a-function, Duflo set, conjectures --------------------------------------------------


@dataclass
class AFunctionTable:
    """a, alpha, Delta, the Duflo set and the d-map for one (W, phi)."""

    algebra: HeckeAlgebra
    cells: CellDecomposition
    a: tuple
    alpha: tuple
    delta: tuple
    duflo: frozenset
    dmap: dict | None
    dmap_report: CheckReport

    def gamma(self, x: int, y: int, z: int) -> int:
        """Coefficient of v^{a(z^{-1})} in h_{x,y,z^{-1}}."""
        zi = self.algebra.system.inverse(z)
        return self.algebra.h_poly(x, y, zi).get(self.a[zi], 0)


_a_cache: dict = {}
_a_lock = threading.Lock()


def build_a_table(algebra: HeckeAlgebra, jobs: int = 1) -> AFunctionTable:
    with _a_lock:
        cached = _a_cache.get(id(algebra))
    if cached is not None:
        return cached
    sys = algebra.system
    cells = compute_cells(algebra)
    ids = sys.all_ids()
    table = algebra.full_h_table(jobs=jobs)
    a: list = [None] * len(ids)
    for (_x, _y), row in table.items():
        for z, p in row.items():
            d = laurent.deg(p)
            if a[z] is None or d > a[z]:
                a[z] = d
    w0 = sys.longest_id()
    alpha = tuple(
        tuple(p - q for p, q in zip(a[sys.multiply(w0, z)], a[z])) for z in ids
    )
    delta = []
    for z in ids:
        p = algebra.pstar_poly(0, z)
        delta.append(tuple(-x for x in laurent.deg(p)) if p else None)
    duflo = frozenset(z for z in ids if delta[z] is not None and a[z] == delta[z])
    dmap: dict | None = {}
    bad = []
    for cell in cells.left.cells:
        found = sorted(cell & duflo)
        if len(found) == 1:
            for w in cell:
                dmap[w] = found[0]
        else:
            bad.append(
                "left cell %s contains %d Duflo elements"
                % (sorted(cell), len(found))
            )
    if bad:
        dmap = None
    report = CheckReport("unique-duflo-per-left-cell", not bad, tuple(bad[:MAX_WITNESSES]))
    out = AFunctionTable(
        algebra=algebra,
        cells=cells,
        a=tuple(a),
        alpha=alpha,
        delta=tuple(delta),
        duflo=duflo,
        dmap=dmap,
        dmap_report=report,
    )
    with _a_lock:
        _a_cache.setdefault(id(algebra), out)
        out = _a_cache[id(algebra)]
    return out


def verify_conjectures(table: AFunctionTable, which=("P1", "P4", "P8", "P9")) -> dict:
    """Check P1/P4/P8/P9 for (W, S, phi); failures carry witnesses."""
    algebra = table.algebra
    sys = algebra.system
    cells = table.cells
    ids = sys.all_ids()
    out = {}
    render = lambda w: sys.element(w).render() or "1"

    if "P1" in which:
        wit = []
        for z in ids:
            if table.delta[z] is None or not table.a[z] <= table.delta[z]:
                wit.append("a(%s) > Delta(%s)" % (render(z), render(z)))
        out["P1"] = CheckReport("P1", not wit, tuple(sorted(wit)[:MAX_WITNESSES]))

    if "P4" in which:
        wit = []
        for z in ids:
            for zp in ids:
                if cells.two_sided.leq(zp, z) and not table.a[zp] >= table.a[z]:
                    wit.append("%s <=_LR %s but a drops" % (render(zp), render(z)))
        out["P4"] = CheckReport("P4", not wit, tuple(sorted(wit)[:MAX_WITNESSES]))

    if "P8" in which:
        wit = []
        same_l = cells.left.same_cell
        for (x, y), row in algebra.full_h_table().items():
            for zp, p in row.items():
                if p.get(table.a[zp], 0):
                    z = sys.inverse(zp)
                    if not (
                        same_l(x, sys.inverse(y))
                        and same_l(y, zp)
                        and same_l(z, sys.inverse(x))
                    ):
                        wit.append(
                            "gamma(%s,%s,%s) != 0 off the cell triangle"
                            % (render(x), render(y), render(z))
                        )
        out["P8"] = CheckReport("P8", not wit, tuple(sorted(wit)[:MAX_WITNESSES]))

    if "P9" in which:
        wit = []
        for z in ids:
            for zp in ids:
                if (
                    cells.left.leq(zp, z)
                    and table.a[zp] == table.a[z]
                    and not cells.left.same_cell(zp, z)
                ):
                    wit.append("%s <=_L %s, equal a, different cells" % (render(zp), render(z)))
        out["P9"] = CheckReport("P9", not wit, tuple(sorted(wit)[:MAX_WITNESSES]))

    return out


def cell_module_constants(algebra: HeckeAlgebra, cells: CellDecomposition, cell: int, side: str = "left") -> dict:
    """Action of the generators on the cell module basis (c_w), as h-constants."""
    part = cells.partition(side)
    members = sorted(part.members(cell))
    out = {}
    for s in range(algebra.system.rank):
        for w in members:
            row = (
                algebra.cs_left_row(s, w) if side == "left" else algebra.cs_right_row(w, s)
            )
            for u, p in row.items():
                if part.cell_of[u] == cell and p:
                    out[(s, w, u)] = dict(p)
    return out
