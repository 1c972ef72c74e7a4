"""Group cohomology H^1/H^2 with trivial coefficients, restrictions, and
the restriction-kernel groups over cyclic / bicyclic / abelian families.

The computation runs on normalized bar cochains: C^1 is indexed by the
non-identity elements, C^2 by ordered pairs of non-identity elements.  For
a coefficient modulus m, the cocycle condition is a linear system mod m;
everything is reduced to exact integer lattice work:

    H^2(G, Z/m)  =  L / M,
    L = { x in Z^a : x * d2 = 0 (mod m) },   a = (n-1)^2,
    M = row lattice of d1  +  m Z^a.

The constraint lattice (columns of d2 plus m*I) is echelonized sparsely,
then diagonalized with the column transform tracked, which yields an exact
basis of L with per-generator multipliers and lets every later class be
solved for by two small matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import (
    CoefficientMismatch,
    NotAHomomorphism,
    OrderCapExceeded,
)
from .groups import (
    FiniteGroup,
    SubgroupFamily,
    SubgroupSet,
    abelianization,
    induced_abelianized_map,
    maximal_subgroup_family,
    small_generating_set,
    subgroup_as_group,
)
from .zlattice import (
    AbelianGroup,
    AbelianHom,
    direct_sum,
    dual_group,
    dual_hom_matrix,
    echelon_insert,
    factorize,
    hom_image,
    hom_kernel,
    valuation,
)

DEFAULT_COHOMOLOGY_CAP = 64


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientSpec:
    """Trivial coefficient module: Z/r or the full torsion module Q/Z."""

    variant: str
    r: int = 0

    def __post_init__(self):
        if self.variant not in ("zmod", "qmodz"):
            raise ValueError(f"unknown coefficient variant {self.variant!r}")
        if self.variant == "zmod" and self.r < 1:
            raise ValueError("Z/r coefficients need r >= 1")

    @staticmethod
    def zmod(r: int) -> "CoefficientSpec":
        return CoefficientSpec("zmod", int(r))

    @staticmethod
    def qmodz() -> "CoefficientSpec":
        return CoefficientSpec("qmodz")

    def describe(self) -> str:
        return f"Z/{self.r}" if self.variant == "zmod" else "Q/Z"


def Zmod(r: int) -> CoefficientSpec:
    return CoefficientSpec.zmod(r)


QMODZ = CoefficientSpec.qmodz()


def effective_modulus(r: int, group_order: int) -> int:
    """Cap Z/r at the part that can contribute: primes of gcd(r, |G|),
    each at exponent min(v_p(r), v_p(|G|))."""
    g = gcd(r, group_order)
    out = 1
    for p in factorize(g):
        out *= p ** min(valuation(r, p), valuation(group_order, p))
    return out


# ---------------------------------------------------------------------------
# sparse rows as sorted (col, val) lists
# ---------------------------------------------------------------------------

def _srow_sub(row: list, piv: list, q: int, m: int) -> list:
    """row - q * piv with entries reduced into [0, m); sorted merge."""
    out = []
    i = j = 0
    li, lj = len(row), len(piv)
    while i < li and j < lj:
        ci, cj = row[i][0], piv[j][0]
        if ci < cj:
            out.append(row[i])
            i += 1
        elif ci > cj:
            v = (-q * piv[j][1]) % m
            if v:
                out.append((cj, v))
            j += 1
        else:
            v = (row[i][1] - q * piv[j][1]) % m
            if v:
                out.append((ci, v))
            i += 1
            j += 1
    out.extend(row[i:])
    while j < lj:
        v = (-q * piv[j][1]) % m
        if v:
            out.append((piv[j][0], v))
        j += 1
    return out


def _unit_normalize(row: list, m: int) -> list:
    """Scale the row so a unit lead becomes 1 (solution set is unchanged)."""
    v = row[0][1]
    if v == 1 or gcd(v, m) != 1:
        return row
    inv = pow(v, -1, m)
    return [(c, (x * inv) % m) for c, x in row]


def _echelon_insert_mod(ech: dict, row: list, m: int) -> None:
    """Insert a sparse row into the mod-m constraint echelon.

    ech maps lead column -> sparse row; rows with unit leads are scaled to
    lead value 1, so most reductions clear the lead in a single step.
    """
    while row:
        lead, v = row[0]
        piv = ech.get(lead)
        if piv is None:
            ech[lead] = _unit_normalize(row, m)
            return
        w = piv[0][1]
        q = v // w
        if q:
            row = _srow_sub(row, piv, q, m)
            if not row or row[0][0] != lead:
                continue
            v = row[0][1]
        if v < w:
            ech[lead] = _unit_normalize(row, m)
            row = piv


# ---------------------------------------------------------------------------
# the H^2 engine
# ---------------------------------------------------------------------------

class H2Engine:
    """H^2(G, Z/m) with certified generator cocycles and class solving."""

    def __init__(self, G: FiniteGroup, m: int):
        self.G = G
        self.m = int(m)
        n = G.order
        self.n = n
        self.a = (n - 1) * (n - 1)
        if self.m <= 1 or n == 1:
            self.group = AbelianGroup.trivial()
            self.factors: list[int] = []
            self.reps: list[list[int]] = []
            self._slots = []
            return
        self._build()

    # -- indexing -------------------------------------------------------------

    def pair_index(self, g: int, h: int) -> int:
        return (g - 1) * (self.n - 1) + (h - 1)

    def value_at(self, vec: Sequence[int], g: int, h: int) -> int:
        if g == 0 or h == 0:
            return 0
        return vec[self.pair_index(g, h)]

    # -- construction ----------------------------------------------------------

    def _build(self) -> None:
        G, n, m, a = self.G, self.n, self.m, self.a
        table = G.table
        w = n - 1

        # Step A: echelon of the constraint lattice.  The cocycle identity at
        # all triples follows from the triples whose middle argument runs
        # over a generating set (induction on word length through the
        # 3-coboundary of the identity), so only n*|S|*n columns are needed.
        # The four terms collide only at g == h == k, where the (h,k) and
        # (g,h) contributions cancel.
        #
        # Columns are ordered internally so that pairs whose second entry is
        # deepest in generator-word length lead: the constraint at (g, s, k)
        # then usually pivots on its unique deepest pair (g, sk), which
        # keeps the echelon near-triangular and the cascades short.
        neg = m - 1
        gen_set = small_generating_set(G)
        depth = [-1] * n
        depth[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                tx = table[x]
                for s in gen_set:
                    y = tx[s]
                    if depth[y] < 0:
                        depth[y] = depth[x] + 1
                        nxt.append(y)
            frontier = nxt
        order = sorted(
            ((g, h) for g in range(1, n) for h in range(1, n)),
            key=lambda p: (-depth[p[1]], p[1], p[0]),
        )
        int2pub = [0] * a
        pub2int = [0] * a
        for internal, (g, h) in enumerate(order):
            pub = (g - 1) * w + (h - 1)
            int2pub[internal] = pub
            pub2int[pub] = internal
        self._int2pub = int2pub

        ech: dict[int, list] = {}
        layers = sorted(range(1, n), key=lambda x: depth[x])
        for g in range(1, n):
            tg = table[g]
            base_g = (g - 1) * w - 1
            for h in gen_set:
                gh = tg[h]
                th = table[h]
                base_hk = (h - 1) * w - 1
                base_gh = (gh - 1) * w - 1
                ghidx = pub2int[base_g + h]
                for k in layers:
                    hk = th[k]
                    entries = []
                    if g == h == k:
                        if gh:
                            entries.append((pub2int[base_gh + k], neg))
                        if hk:
                            entries.append((pub2int[base_g + hk], 1))
                    else:
                        entries.append((pub2int[base_hk + k], 1))
                        if gh:
                            entries.append((pub2int[base_gh + k], neg))
                        if hk:
                            entries.append((pub2int[base_g + hk], 1))
                        entries.append((ghidx, neg))
                    if entries:
                        entries.sort()
                        _echelon_insert_mod(ech, entries, m)

        # Step B: diagonalize with the column transform tracked.  Row
        # operations and entrywise mod-m reduction leave the mod-m solution
        # set alone; column operations move solutions through V exactly.
        rows: dict[int, dict[int, int]] = {}
        colidx: dict[int, set[int]] = {j: set() for j in range(a)}
        for rid, lead in enumerate(sorted(ech)):
            row = dict(ech[lead])
            rows[rid] = row
            for c in row:
                colidx[c].add(rid)

        m2 = m * m
        vt: list[dict[int, int]] = [{j: 1} for j in range(a)]
        vinv: list[dict[int, int]] = [{j: 1} for j in range(a)]
        diag = [0] * a

        def col_sub(k, j, q):
            # col_k -= q * col_j
            for r in list(colidx[j]):
                rowr = rows[r]
                v = (rowr.get(k, 0) - q * rowr[j]) % m
                if v:
                    rowr[k] = v
                    colidx[k].add(r)
                elif k in rowr:
                    del rowr[k]
                    colidx[k].discard(r)
            vtk, vtj = vt[k], vt[j]
            for c, x in vtj.items():
                v = (vtk.get(c, 0) - q * x) % m
                if v:
                    vtk[c] = v
                elif c in vtk:
                    del vtk[c]
            vij, vik = vinv[j], vinv[k]
            for c, x in vik.items():
                v = (vij.get(c, 0) + q * x) % m2
                if v:
                    vij[c] = v
                elif c in vij:
                    del vij[c]

        def col_swap(k, j):
            movers = colidx[j] | colidx[k]
            for r in movers:
                rowr = rows[r]
                xj = rowr.pop(j, None)
                xk = rowr.pop(k, None)
                if xj is not None:
                    rowr[k] = xj
                if xk is not None:
                    rowr[j] = xk
            colidx[j], colidx[k] = (
                {r for r in movers if j in rows[r]},
                {r for r in movers if k in rows[r]},
            )
            vt[j], vt[k] = vt[k], vt[j]
            vinv[j], vinv[k] = vinv[k], vinv[j]

        def row_sub(r, p, q):
            rowr, rowp = rows[r], rows[p]
            for c, x in rowp.items():
                v = (rowr.get(c, 0) - q * x) % m
                if v:
                    rowr[c] = v
                    colidx[c].add(r)
                elif c in rowr:
                    del rowr[c]
                    colidx[c].discard(r)

        active_cols = set(range(a))
        while active_cols:
            j = min(active_cols, key=lambda c: (len(colidx[c]), c))
            if not colidx[j]:
                active_cols.discard(j)
                continue
            rid0 = min(colidx[j], key=lambda r: (rows[r][j], len(rows[r]), r))
            while True:
                piv = rows[rid0][j]
                # clear the column with row operations
                dirty = False
                for r in sorted(colidx[j]):
                    if r == rid0:
                        continue
                    q = rows[r][j] // piv
                    if q:
                        row_sub(r, rid0, q)
                    if rows[r].get(j):
                        rid0 = r
                        dirty = True
                        break
                if dirty:
                    continue
                # clear the row with column operations (touches only this row)
                piv = rows[rid0][j]
                swapped = False
                for k in sorted(c for c in rows[rid0] if c != j):
                    q = rows[rid0][k] // piv
                    if q:
                        col_sub(k, j, q)
                    if rows[rid0].get(k):
                        col_swap(j, k)
                        swapped = True
                        break
                if swapped:
                    continue
                break
            diag[j] = rows[rid0][j]
            for c in list(rows[rid0]):
                colidx[c].discard(rid0)
            del rows[rid0]
            active_cols.discard(j)

        # Step C: assemble L / M on the surviving coordinates.  Transform
        # rows are translated back from the internal column order to the
        # public pair layout here.
        gcds = [gcd(diag[j], m) for j in range(a)]
        slots = [j for j in range(a) if gcds[j] > 1]
        mult = {j: m // gcds[j] for j in slots}
        t = len(slots)
        self._slots = slots
        self._mult = mult
        self._vinv_rows = []
        for j in slots:
            dense = [0] * a
            for c, x in vinv[j].items():
                dense[int2pub[c]] = x % m2
            self._vinv_rows.append(dense)
        gens_ambient = []
        for j in slots:
            dense = [0] * a
            s = mult[j]
            for c, x in vt[j].items():
                dense[int2pub[c]] = (s * x) % m
            gens_ambient.append(dense)
        self._gens_ambient = gens_ambient

        rel_ech: dict[int, list[int]] = {}

        def add_rel(row):
            echelon_insert(rel_ech, row)

        for i in range(t):
            row = [0] * t
            row[i] = m
            add_rel(row)
        # image of d1
        for g in range(1, n):
            vec = self._d1_vector(g)
            add_rel(list(self._solve_coords(vec)))
        # m * e_j for every ambient coordinate
        for j in range(a):
            row = []
            for i, sj in enumerate(slots):
                x = (m // mult[sj]) * self._vinv_rows[i][j]
                row.append(x % m)
            add_rel(row)

        rel_rows = [rel_ech[lead] for lead in sorted(rel_ech)]
        self._presented = AbelianGroup(t, rel_rows, modulus=m)
        self.factors = self._presented.invariant_factors
        assert self._presented.free_rank == 0, "H^2 of a finite group is finite"
        self.group = (
            AbelianGroup.from_factors(self.factors)
            if self.factors
            else AbelianGroup.trivial()
        )
        reps = []
        for k in range(len(self.factors)):
            lift = self._presented.gen_lift(k)
            dense = [0] * self.a
            for i, coef in enumerate(lift):
                if coef % m:
                    src = gens_ambient[i]
                    cf = coef % m
                    for c in range(self.a):
                        if src[c]:
                            dense[c] = (dense[c] + cf * src[c]) % m
            reps.append(dense)
        self.reps = reps
        for k, rep in enumerate(reps):
            self._certify_rep(k, rep)

    def _d1_vector(self, g: int) -> list[int]:
        """Coboundary of the indicator cochain of the element g."""
        n, m = self.n, self.m
        table = self.G.table
        inv = self.G.inv
        vec = [0] * self.a
        for x in range(1, n):
            vec[self.pair_index(x, g)] = (vec[self.pair_index(x, g)] + 1) % m
        for y in range(1, n):
            vec[self.pair_index(g, y)] = (vec[self.pair_index(g, y)] + 1) % m
        for x in range(1, n):
            y = table[inv[x]][g]
            if y:
                idx = self.pair_index(x, y)
                vec[idx] = (vec[idx] - 1) % m
        return vec

    def _solve_coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a constraint-satisfying vector on the survivors."""
        m, m2 = self.m, self.m * self.m
        out = []
        for i, j in enumerate(self._slots):
            vrow = self._vinv_rows[i]
            w = 0
            for c, x in enumerate(vec):
                if x:
                    w += x * vrow[c]
            s = self._mult[j]
            w %= m * s
            if w % s:
                raise ValueError(
                    "vector is not a cocycle for this modulus "
                    f"(slot {j}: residue {w % s} of {s})"
                )
            out.append((w // s) % m)
        return tuple(out)

    def class_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Class of a cocycle vector in the reduced generator coordinates."""
        if self.m <= 1 or self.n == 1:
            return ()
        reduced = [x % self.m for x in vec]
        return self._presented.reduce(list(self._solve_coords(reduced)))

    def _certify_rep(self, k: int, rep: Sequence[int]) -> None:
        bad = find_cocycle_violation(self.G, rep, self.m)
        if bad is not None:
            raise AssertionError(f"generator {k} fails the cocycle law at {bad}")
        coords = self.class_of(rep)
        expected = tuple(
            int(i == k) for i in range(len(self.factors))
        )
        if coords != expected:
            raise AssertionError(
                f"generator {k} does not solve back to itself: {coords}"
            )


def find_cocycle_violation(G: FiniteGroup, vec: Sequence[int], m: int
                           ) -> Optional[tuple[int, int, int]]:
    """First triple violating the normalized 2-cocycle identity, else None."""
    n = G.order
    w = n - 1
    table = G.table

    def val(g, h):
        if g == 0 or h == 0:
            return 0
        return vec[(g - 1) * w + (h - 1)]

    for g in range(1, n):
        tg = table[g]
        for h in range(1, n):
            gh = tg[h]
            th = table[h]
            for k in range(1, n):
                hk = th[k]
                total = val(h, k) - val(gh, k) + val(g, hk) - val(g, h)
                if total % m:
                    return (g, h, k)
    return None


# ---------------------------------------------------------------------------
# public results
# ---------------------------------------------------------------------------

@dataclass
class H2Result:
    """H^2(G, M) with one certified normalized cocycle per generator."""

    group: AbelianGroup
    reps: list[list[int]]
    modulus: int
    coeff: CoefficientSpec
    qmodz_divisor: Optional[AbelianGroup] = None
    _engine: Optional[H2Engine] = None
    _quotient: Optional[AbelianGroup] = None
    _source: Optional[FiniteGroup] = None

    def class_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        base = self._engine.class_of(vec)
        if self._quotient is None:
            return base
        return self._quotient.reduce(list(base))


@dataclass
class ShaResult:
    """Kernel of the total restriction map to a subgroup family."""

    kind: str
    group: AbelianGroup
    witness_family: SubgroupFamily
    per_subgroup_maps: list[AbelianHom]


_ENGINE_CACHE: dict = {}


def _engine_for(G: FiniteGroup, m: int) -> H2Engine:
    key = (G.table, m)
    eng = _ENGINE_CACHE.get(key)
    if eng is None:
        eng = H2Engine(G, m)
        if len(_ENGINE_CACHE) > 64:
            _ENGINE_CACHE.clear()
        _ENGINE_CACHE[key] = eng
    return eng


def _check_cap(G: FiniteGroup, cap: int) -> None:
    if G.order > cap:
        raise OrderCapExceeded(cap, f"group of order {G.order}")


def h1(G: FiniteGroup, coeff: CoefficientSpec) -> AbelianGroup:
    """Hom(G^ab, M): the characters of G with values in the coefficients."""
    ab = abelianization(G)
    modulus = None if coeff.variant == "qmodz" else coeff.r
    return dual_group(ab.factors, modulus)


def character_table_mod(G: FiniteGroup, r: int) -> tuple[AbelianGroup, list[list[int]]]:
    """Character group Hom(G, Z/r) with explicit value tables."""
    ab = abelianization(G)
    duals = [gcd(d, r) for d in ab.factors]
    chars = []
    for k, (d, dk) in enumerate(zip(ab.factors, duals)):
        if dk <= 1:
            continue
        scale = r // dk
        values = []
        for g in range(G.order):
            coords = ab.project(g)
            values.append((scale * coords[k]) % r)
        chars.append(values)
    return dual_group(ab.factors, r), chars


def delta_character(G: FiniteGroup, values: Sequence[int],
                    modulus: Optional[int] = None) -> list[int]:
    """Connecting cocycle of a character G -> Z/q (q = |G| by default).

    With c the lift of the character into {0..q-1}, the cocycle is
    (c(g) + c(h) - c(gh)) / q mod q; it vanishes exactly when the character
    lifts to one with values in Z/q^2.
    """
    q = modulus if modulus is not None else G.order
    n = G.order
    vals = [int(v) % q for v in values]
    if len(vals) != n or vals[0] % q:
        raise NotAHomomorphism(0, 0)
    table = G.table
    for g in range(n):
        for h in range(n):
            if (vals[g] + vals[h] - vals[table[g][h]]) % q:
                raise NotAHomomorphism(g, h)
    w = n - 1
    vec = [0] * (w * w)
    for g in range(1, n):
        for h in range(1, n):
            carry = (vals[g] + vals[h] - vals[table[g][h]]) // q
            vec[(g - 1) * w + (h - 1)] = carry % q
    return vec


def h2(G: FiniteGroup, coeff: CoefficientSpec,
       cap: int = DEFAULT_COHOMOLOGY_CAP,
       cap_modulus: bool = True,
       _modulus_override: Optional[int] = None) -> H2Result:
    """H^2 of G with trivial coefficients Z/r or Q/Z."""
    _check_cap(G, cap)
    if coeff.variant == "zmod":
        m = _modulus_override
        if m is None:
            m = effective_modulus(coeff.r, G.order) if cap_modulus else coeff.r
        eng = _engine_for(G, m)
        reps = [list(r) for r in eng.reps]
        return H2Result(eng.group, reps, m, coeff, None, eng, None, G)

    # Q/Z is realized as H^2(G, Z/n) / image of the connecting map from the
    # characters, n = |G| (or an override that n divides, for restrictions).
    n = _modulus_override if _modulus_override is not None else G.order
    eng = _engine_for(G, n)
    ab = abelianization(G)
    delta_rows = []
    for k, d in enumerate(ab.factors):
        scale = n // d
        values = [(scale * ab.project(g)[k]) % n for g in range(G.order)]
        vec = delta_character(G, values, modulus=n)
        delta_rows.append(list(eng.class_of(vec)))
    base = eng.group
    if delta_rows and not base.is_trivial():
        dim = base.ngens
        quotient = AbelianGroup(dim, base.relations + delta_rows, modulus=n)
        delta_hom = AbelianHom(
            dual_group(ab.factors, None), base, delta_rows, validate=False
        )
        divisor = hom_image(delta_hom)
    else:
        quotient = base
        divisor = AbelianGroup.trivial()

    result_group = (
        AbelianGroup.from_factors(quotient.invariant_factors)
        if quotient.invariant_factors
        else AbelianGroup.trivial()
    )
    reps = []
    for k in range(len(quotient.invariant_factors)):
        lift = quotient.gen_lift(k)
        dense = [0] * eng.a
        for i, coef in enumerate(lift):
            if coef % n:
                src = eng.reps[i]
                cf = coef % n
                for c in range(eng.a):
                    if src[c]:
                        dense[c] = (dense[c] + cf * src[c]) % n
        reps.append(dense)
    return H2Result(result_group, reps, n, coeff, divisor, eng, quotient, G)


def restriction_vector(h2G: H2Result, sub: FiniteGroup, elems: Sequence[int],
                       vec: Sequence[int], target_modulus: int) -> list[int]:
    """Restrict an ambient cocycle vector to the subgroup's own indexing."""
    wg = h2G._source.order - 1
    ws = sub.order - 1
    out = [0] * (ws * ws)
    for i in range(1, sub.order):
        gi = elems[i]
        for j in range(1, sub.order):
            gj = elems[j]
            out[(i - 1) * ws + (j - 1)] = (
                vec[(gi - 1) * wg + (gj - 1)] % target_modulus
            )
    return out


def h2_on_subgroup(h2G: H2Result, member: SubgroupSet,
                   cap: int = DEFAULT_COHOMOLOGY_CAP) -> H2Result:
    """H^2 of a subgroup over coefficients matching h2G for restriction."""
    sub, _ = subgroup_as_group(h2G._source, member.elements)
    return h2(sub, h2G.coeff, cap=cap, _modulus_override=h2G.modulus)


def restriction_hom(G: FiniteGroup, member: SubgroupSet,
                    h2G: H2Result, h2H: H2Result) -> AbelianHom:
    """The map induced on H^2 by restricting cocycles to the subgroup."""
    if h2G.coeff.variant != h2H.coeff.variant:
        raise CoefficientMismatch(
            f"{h2G.coeff.describe()} vs {h2H.coeff.describe()}"
        )
    if h2H.modulus and h2G.modulus % h2H.modulus:
        raise CoefficientMismatch(
            f"subgroup modulus {h2H.modulus} does not divide {h2G.modulus}"
        )
    sub, elems = subgroup_as_group(G, member.elements)
    if h2H._source is not None and h2H._source.table != sub.table:
        raise CoefficientMismatch("subgroup result does not match the member")
    rows = []
    for rep in h2G.reps:
        restricted = restriction_vector(h2G, sub, elems, rep, h2H.modulus)
        rows.append(list(h2H.class_of(restricted)))
    return AbelianHom(h2G.group, h2H.group, rows)


def sha2(G: FiniteGroup, coeff: CoefficientSpec, kind: str,
         cap: int = DEFAULT_COHOMOLOGY_CAP) -> ShaResult:
    """Kernel of H^2(G, M) -> product over the maximal family of the kind."""
    _check_cap(G, cap)
    family = maximal_subgroup_family(G, kind)
    h2G = h2(G, coeff, cap=cap)
    maps = []
    for member in family.members:
        h2H = h2_on_subgroup(h2G, member, cap=cap)
        maps.append(restriction_hom(G, member, h2G, h2H))
    if not maps or h2G.group.is_trivial():
        return ShaResult(kind, h2G.group, family, maps)
    total, _, _ = direct_sum([f.target for f in maps])
    stacked = []
    for i in range(h2G.group.ngens):
        row: list[int] = []
        for f in maps:
            row.extend(f.matrix[i])
        stacked.append(row)
    assembled = AbelianHom(h2G.group, total, stacked, validate=False)
    kernel, _ = hom_kernel(assembled)
    return ShaResult(kind, kernel, family, maps)


def sha1(G: FiniteGroup, coeff: CoefficientSpec, kind: str) -> AbelianGroup:
    """Kernel of character restrictions to the family; zero for every
    trivial module, and exposed purely so that identity can be verified."""
    family = maximal_subgroup_family(G, kind)
    modulus = None if coeff.variant == "qmodz" else coeff.r
    ab_G = abelianization(G)
    src = dual_group(ab_G.factors, modulus)
    if src.is_trivial():
        return src
    maps = []
    for member in family.members:
        sub, elems = subgroup_as_group(G, member.elements)
        ab_H = abelianization(sub)
        fmat = induced_abelianized_map(ab_H, ab_G, elems)
        rows = dual_hom_matrix(fmat, ab_H.factors, ab_G.factors, modulus)
        tgt = dual_group(ab_H.factors, modulus)
        maps.append(AbelianHom(src, tgt, rows))
    if not maps:
        return src
    total, _, _ = direct_sum([f.target for f in maps])
    stacked = []
    for i in range(src.ngens):
        row: list[int] = []
        for f in maps:
            row.extend(f.matrix[i])
        stacked.append(row)
    kernel, _ = hom_kernel(AbelianHom(src, total, stacked, validate=False))
    return kernel
