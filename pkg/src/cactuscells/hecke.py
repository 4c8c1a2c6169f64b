"""Iwahori-Hecke algebras with arbitrary positive weight functions.

The algebra H(W, S, phi) is a free module over A = Z[Z^rank] on a standard
basis (T_w), with T_w T_w' = T_{ww'} when lengths add and the quadratic
relation (T_s - v^phi(s))(T_s + v^-phi(s)) = 0.  The bar involution is the
A-semilinear ring involution with v -> v^-1 and T_w -> (T_{w^-1})^-1.

The Kazhdan-Lusztig element C_w is the unique bar-fixed element congruent
to T_w modulo strictly-negative-degree combinations of the T_x.  It is
computed by triangular correction: starting from T_w, the bar-defect is a
skew element whose leading coefficient splits uniquely into a strictly
negative part, which is subtracted until the defect vanishes.  No
mu-coefficient recursion is used anywhere, so unequal parameters cost
nothing special.

Internally coefficients are the plain dicts of `laurent`; element vectors
are dicts mapping element ids to coefficient dicts.  All memo tables are
lock-protected and immutable once inserted, so concurrent readers are safe
and results do not depend on scheduling.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import laurent
from .coxeter import CoxeterElement, CoxeterSystem, ParabolicData, WeightFunction
from .ordgroup import GroupAlgebraElement, OrderedAbelianGroup

__all__ = [
    "ConsistencyError",
    "HeckeAlgebra",
    "HeckeElement",
    "KLTable",
    "MixedBasisTable",
    "algebra_for",
]


class ConsistencyError(Exception):
    """An internal structural invariant failed; indicates a bug, not bad input."""


def _acc(vec: dict, w: int, poly: dict) -> None:
    """In-place vec[w] += poly on an id -> coefficient-dict vector."""
    cur = vec.get(w)
    if cur is None:
        if poly:
            vec[w] = dict(poly)
        return
    for e, c in poly.items():
        laurent.add_term(cur, e, c)
    if not cur:
        del vec[w]


class HeckeAlgebra:
    """H(W, S, phi) with memoized bar, Kazhdan-Lusztig and structure tables."""

    def __init__(self, system: CoxeterSystem, weights: WeightFunction):
        if weights.system is not system:
            raise ValueError("weight function belongs to a different system")
        self.system = system
        self.weights = weights
        self.rank = weights.rank
        self.group = OrderedAbelianGroup(self.rank)
        self.zero_exp = (0,) * self.rank
        self._vpos = [{weights.of(s): 1} for s in range(system.rank)]
        self._vneg = [{tuple(-x for x in weights.of(s)): 1} for s in range(system.rank)]
        self._xi = [
            {weights.of(s): 1, tuple(-x for x in weights.of(s)): -1}
            for s in range(system.rank)
        ]
        self._bar: list[dict] = []
        self._kl: list[dict] = []
        self._h: dict = {}
        self._h_complete = False
        self._cs_right: dict = {}
        self._mixed: dict = {}
        self._lrows: OrderedDict = OrderedDict()
        self._lock = threading.RLock()

    # -- standard-basis plumbing -------------------------------------------------

    def gen_id(self, s: int) -> int:
        return self.system.id_of_word((s,))

    def unit(self) -> dict:
        return {0: {self.zero_exp: 1}}

    def t_of(self, w: int) -> dict:
        return {w: {self.zero_exp: 1}}

    def mul_gen_right(self, h: dict, s: int) -> dict:
        """h * T_s in the standard basis."""
        sys = self.system
        xi = self._xi[s]
        res: dict = {}
        for w, p in h.items():
            ws = sys.mult_gen(w, s)
            _acc(res, ws, p)
            if sys.length(ws) < sys.length(w):
                _acc(res, w, laurent.mul(xi, p))
        return res

    def mul_gen_left(self, s: int, h: dict) -> dict:
        """T_s * h in the standard basis."""
        sys = self.system
        xi = self._xi[s]
        res: dict = {}
        for w, p in h.items():
            sw = sys.left_mult_gen(s, w)
            _acc(res, sw, p)
            if sys.length(sw) < sys.length(w):
                _acc(res, w, laurent.mul(xi, p))
        return res

    def t_mul(self, h1: dict, h2: dict) -> dict:
        """Product of two standard-basis vectors."""
        sys = self.system
        res: dict = {}
        for w, c in h2.items():
            cur = h1
            for s in sys.word(w):
                cur = self.mul_gen_right(cur, s)
            for z, p in cur.items():
                _acc(res, z, laurent.mul(p, c))
        return res

    def t_mul_word_left(self, letters, h: dict) -> dict:
        """T_u * h for u given by a reduced word (applied innermost-first)."""
        for s in reversed(tuple(letters)):
            h = self.mul_gen_left(s, h)
        return h

    # -- bar involution -------------------------------------------------------------

    def _ensure_bar(self, upto: int) -> None:
        with self._lock:
            sys = self.system
            while len(self._bar) <= upto:
                i = len(self._bar)
                if i == 0:
                    self._bar.append(self.unit())
                    continue
                s = sys.word(i)[-1]
                parent = self._bar[sys.mult_gen(i, s)]
                # bar(T_i) = bar(T_parent) (T_s - xi_s)
                vec = self.mul_gen_right(parent, s)
                xi = self._xi[s]
                for w, p in parent.items():
                    _acc(vec, w, laurent.neg(laurent.mul(xi, p)))
                self._bar.append(vec)

    def bar_vec(self, h: dict) -> dict:
        """Image of a standard-basis vector under the bar involution."""
        if h:
            self._ensure_bar(max(h))
        res: dict = {}
        for w, p in h.items():
            bp = laurent.bar(p)
            for z, q in self._bar[w].items():
                _acc(res, z, laurent.mul(bp, q))
        return res

    # -- Kazhdan-Lusztig basis ----------------------------------------------------------

    def _ensure_kl(self, upto: int) -> None:
        with self._lock:
            while len(self._kl) <= upto:
                self._kl.append(self._compute_kl(len(self._kl)))

    def _compute_kl(self, w: int) -> dict:
        zero = self.zero_exp
        cur = self.t_of(w)
        skew = self.bar_vec(cur)
        for z, p in cur.items():
            _acc(skew, z, laurent.neg(p))
        while skew:
            x = max(skew)
            ax = skew[x]
            if x >= w or not laurent.is_skew(ax):
                raise ConsistencyError(
                    "bar defect of T_%d has non-skew leading term at %d" % (w, x)
                )
            neg = laurent.negative_part(ax, zero)
            _acc(cur, x, neg)
            _acc(skew, x, laurent.neg(neg))
            bneg = laurent.bar(neg)
            for y, q in self._bar[x].items():
                _acc(skew, y, laurent.mul(bneg, q))
        for x, p in cur.items():
            if x == w:
                if p != {zero: 1}:
                    raise ConsistencyError("C_%d is not unitriangular" % w)
            elif laurent.deg(p) >= zero:
                raise ConsistencyError(
                    "coefficient of T_%d in C_%d is not strictly negative" % (x, w)
                )
        return cur

    def kl_vec(self, w: int) -> dict:
        """C_w expanded in the standard basis (id -> coefficient dict)."""
        self._ensure_kl(w)
        return self._kl[w]

    def pstar_poly(self, x: int, y: int) -> dict:
        return self.kl_vec(y).get(x, {})

    def to_kl(self, h: dict) -> dict:
        """Rewrite a standard-basis vector over the Kazhdan-Lusztig basis."""
        rem = {w: dict(p) for w, p in h.items()}
        out: dict = {}
        while rem:
            x = max(rem)
            c = dict(rem[x])
            out[x] = c
            for y, p in self.kl_vec(x).items():
                _acc(rem, y, laurent.neg(laurent.mul(c, p)))
            if x in rem:
                raise ConsistencyError("triangular reduction failed at %d" % x)
        return out

    def to_standard(self, klvec: dict) -> dict:
        res: dict = {}
        for x, c in klvec.items():
            for y, p in self.kl_vec(x).items():
                _acc(res, y, laurent.mul(c, p))
        return res

    # -- structure constants -----------------------------------------------------------

    def _left_rows(self, y: int) -> dict:
        """T_u * C_y for every u, keyed by u (cached for a few recent y)."""
        with self._lock:
            rows = self._lrows.get(y)
            if rows is not None:
                self._lrows.move_to_end(y)
                return rows
        sys = self.system
        rows = {0: self.kl_vec(y)}
        for u in sys.all_ids():
            if u == 0:
                continue
            word = sys.word(u)
            rest = sys.id_of_word(word[1:])
            rows[u] = self.mul_gen_left(word[0], rows[rest])
        with self._lock:
            self._lrows[y] = rows
            if len(self._lrows) > 4:
                self._lrows.popitem(last=False)
        return rows

    def _h_row_raw(self, x: int, y: int) -> dict:
        rows = self._left_rows(y)
        acc: dict = {}
        for u, c in self.kl_vec(x).items():
            for z, p in rows[u].items():
                _acc(acc, z, laurent.mul(c, p))
        return self.to_kl(acc)

    def h_row(self, x: int, y: int) -> dict:
        """C_x C_y in the Kazhdan-Lusztig basis: a dict z -> h_{x,y,z}."""
        key = (x, y)
        row = self._h.get(key)
        if row is None:
            row = self._h_row_raw(x, y)
            with self._lock:
                self._h.setdefault(key, row)
                row = self._h[key]
        return row

    def h_poly(self, x: int, y: int, z: int) -> dict:
        return self.h_row(x, y).get(z, {})

    def full_h_table(self, jobs: int = 1) -> dict:
        """All structure-constant rows; deterministic content and ordering."""
        if not self._h_complete:
            ids = self.system.all_ids()
            self._ensure_kl(ids[-1])

            def column(y):
                return y, [self.h_row(x, y) for x in ids]

            if jobs > 1:
                with ThreadPoolExecutor(max_workers=jobs) as pool:
                    list(pool.map(column, ids))
            else:
                for y in ids:
                    column(y)
            self._h_complete = True
        return self._h

    def cs_right_row(self, y: int, s: int) -> dict:
        """C_y C_s in the Kazhdan-Lusztig basis (dense cache)."""
        key = (y, s)
        row = self._cs_right.get(key)
        if row is None:
            vec = self.mul_gen_right(self.kl_vec(y), s)
            for z, p in self.kl_vec(y).items():
                _acc(vec, z, laurent.mul(self._vneg[s], p))
            row = self.to_kl(vec)
            with self._lock:
                self._cs_right.setdefault(key, row)
                row = self._cs_right[key]
        return row

    def cs_left_row(self, s: int, y: int) -> dict:
        """C_s C_y in the Kazhdan-Lusztig basis (cheap path, shared memo)."""
        key = (self.gen_id(s), y)
        row = self._h.get(key)
        if row is None:
            vec = self.mul_gen_left(s, self.kl_vec(y))
            for z, p in self.kl_vec(y).items():
                _acc(vec, z, laurent.mul(self._vneg[s], p))
            row = self.to_kl(vec)
            with self._lock:
                self._h.setdefault(key, row)
                row = self._h[key]
        return row

    # -- mixed basis for a parabolic subgroup ------------------------------------------

    def mixed_basis_table(self, pdata: ParabolicData) -> "MixedBasisTable":
        key = pdata.indices
        with self._lock:
            table = self._mixed.get(key)
        if table is None:
            table = _build_mixed_table(self, pdata)
            with self._lock:
                self._mixed.setdefault(key, table)
                table = self._mixed[key]
        return table

    # -- public element-level API ----------------------------------------------------------

    def _wrap_poly(self, p: dict) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.group, p)

    def element(self, coeffs, basis: str = "T") -> "HeckeElement":
        vec: dict = {}
        for w, c in coeffs.items():
            wid = w.index if isinstance(w, CoxeterElement) else int(w)
            p = c.terms if isinstance(c, GroupAlgebraElement) else dict(c)
            _acc(vec, wid, p)
        return HeckeElement(self, basis, vec)

    def t_element(self, w) -> "HeckeElement":
        wid = w.index if isinstance(w, CoxeterElement) else int(w)
        return HeckeElement(self, "T", self.t_of(wid))

    def kl_element(self, w) -> "HeckeElement":
        """C_w, expanded in the standard basis."""
        wid = w.index if isinstance(w, CoxeterElement) else int(w)
        return HeckeElement(self, "T", {z: dict(p) for z, p in self.kl_vec(wid).items()})

    def structure_constants(self, x, y) -> dict:
        xid = x.index if isinstance(x, CoxeterElement) else int(x)
        yid = y.index if isinstance(y, CoxeterElement) else int(y)
        row = self.h_row(xid, yid)
        sys = self.system
        return {
            CoxeterElement(sys, z): self._wrap_poly(p) for z, p in sorted(row.items())
        }

    @property
    def kl_table(self) -> "KLTable":
        return KLTable(self)

    def weighted_length(self, w: int) -> tuple:
        total = self.zero_exp
        for s in self.system.word(w):
            total = tuple(a + b for a, b in zip(total, self.weights.of(s)))
        return total


@dataclass(frozen=True, eq=False)
class HeckeElement:
    """A finitely supported A-combination of basis elements T_w or C_w."""

    algebra: HeckeAlgebra
    basis: str
    vec: dict

    def __post_init__(self):
        if self.basis not in ("T", "C"):
            raise ValueError("basis must be 'T' or 'C'")

    @property
    def support(self) -> dict:
        sys = self.algebra.system
        return {
            CoxeterElement(sys, w): self.algebra._wrap_poly(p)
            for w, p in sorted(self.vec.items())
        }

    def coefficient(self, w) -> GroupAlgebraElement:
        wid = w.index if isinstance(w, CoxeterElement) else int(w)
        return self.algebra._wrap_poly(self.vec.get(wid, {}))

    def _same(self, other: "HeckeElement") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("elements of different Hecke algebras")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._same(other)
        if self.basis != other.basis:
            raise ValueError("cannot add %s- and %s-basis elements" % (self.basis, other.basis))
        vec = {w: dict(p) for w, p in self.vec.items()}
        for w, p in other.vec.items():
            _acc(vec, w, p)
        return HeckeElement(self.algebra, self.basis, vec)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._same(other)
        if self.basis != other.basis:
            raise ValueError("cannot mix bases")
        vec = {w: dict(p) for w, p in self.vec.items()}
        for w, p in other.vec.items():
            _acc(vec, w, laurent.neg(p))
        return HeckeElement(self.algebra, self.basis, vec)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        self._same(other)
        a = self.to_standard() if self.basis == "C" else self
        b = other.to_standard() if other.basis == "C" else other
        prod = self.algebra.t_mul(a.vec, b.vec)
        if self.basis == "C" and other.basis == "C":
            return HeckeElement(self.algebra, "C", self.algebra.to_kl(prod))
        return HeckeElement(self.algebra, "T", prod)

    def bar(self) -> "HeckeElement":
        if self.basis != "T":
            raise ValueError("bar is computed in the standard basis")
        return HeckeElement(self.algebra, "T", self.algebra.bar_vec(self.vec))

    def to_kl(self) -> "HeckeElement":
        if self.basis == "C":
            return self
        return HeckeElement(self.algebra, "C", self.algebra.to_kl(self.vec))

    def to_standard(self) -> "HeckeElement":
        if self.basis == "T":
            return self
        return HeckeElement(self.algebra, "T", self.algebra.to_standard(self.vec))

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if self.algebra is not other.algebra:
            return False
        a, b = self, other
        if a.basis != b.basis:
            a, b = a.to_standard(), b.to_standard()
        return a.vec == b.vec

    def __bool__(self):
        return bool(self.vec)

    def __repr__(self):
        sys = self.algebra.system
        parts = [
            "(%s)%s_%s" % (laurent.render(p), self.basis, sys.word(w) and ".".join(sys.labels[s] for s in sys.word(w)) or "1")
            for w, p in sorted(self.vec.items())
        ]
        return "<H %s>" % (" + ".join(parts) if parts else "0")


class KLTable:
    """Read-only view of the memoized p* and h tables."""

    def __init__(self, algebra: HeckeAlgebra):
        self.algebra = algebra

    def pstar(self, x, y) -> GroupAlgebraElement:
        xid = x.index if isinstance(x, CoxeterElement) else int(x)
        yid = y.index if isinstance(y, CoxeterElement) else int(y)
        return self.algebra._wrap_poly(self.algebra.pstar_poly(xid, yid))

    def h(self, x, y, z) -> GroupAlgebraElement:
        ids = [v.index if isinstance(v, CoxeterElement) else int(v) for v in (x, y, z)]
        return self.algebra._wrap_poly(self.algebra.h_poly(*ids))


@dataclass
class MixedBasisTable:
    """Expansion of the C-basis over the induced basis T_a C_x (a minimal, x in W_I).

    Rows are keyed by the element by (= b*y) and columns by u = a*x; the
    decomposition of u recovers the pair (a, x).  Construction checks that
    the diagonal coefficient is 1 and that off-diagonal coefficients are
    strictly negative in degree; the finer support constraints are exposed
    for the verification layer.
    """

    algebra: HeckeAlgebra
    pdata: ParabolicData
    rows: dict  # w -> {u: coefficient dict}

    def coefficient(self, a: int, x: int, b: int, y: int) -> dict:
        sys = self.algebra.system
        u = sys.multiply(a, x)
        w = sys.multiply(b, y)
        return self.rows[w].get(u, {})


def _build_mixed_table(algebra: HeckeAlgebra, pdata: ParabolicData) -> MixedBasisTable:
    sys = algebra.system
    if not sys.is_finite:
        raise ValueError("mixed basis tables need a finite group")
    zero = algebra.zero_exp
    gvec: dict = {}

    def g_of(u: int) -> dict:
        vec = gvec.get(u)
        if vec is None:
            a, x = pdata.decompose_left(u)
            vec = algebra.t_mul_word_left(sys.word(a), algebra.kl_vec(x))
            gvec[u] = vec
        return vec

    rows = {}
    for w in sys.all_ids():
        rem = {z: dict(p) for z, p in algebra.kl_vec(w).items()}
        out: dict = {}
        while rem:
            u = max(rem)
            c = dict(rem[u])
            out[u] = c
            for z, p in g_of(u).items():
                _acc(rem, z, laurent.neg(laurent.mul(c, p)))
            if u in rem:
                raise ConsistencyError("mixed-basis reduction failed at %d" % u)
        diag = out.get(w)
        if diag != {zero: 1}:
            raise ConsistencyError("mixed-basis diagonal coefficient is not 1 at %d" % w)
        for u, p in out.items():
            if u != w and laurent.deg(p) >= zero:
                raise ConsistencyError(
                    "mixed-basis coefficient (%d in %d) not strictly negative" % (u, w)
                )
        rows[w] = out
    return MixedBasisTable(algebra, pdata, rows)


_registry: dict = {}
_registry_lock = threading.Lock()


def algebra_for(system: CoxeterSystem, weights: WeightFunction) -> HeckeAlgebra:
    """Shared algebra instances so memo tables are reused process-wide."""
    key = (id(system), weights.values)
    with _registry_lock:
        alg = _registry.get(key)
        if alg is None:
            alg = HeckeAlgebra(system, weights)
            _registry[key] = alg
    return alg
