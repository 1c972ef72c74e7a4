"""Base-field profiles and the decision tree producing certified bounds
for the normalized unramified Brauer group of SL_n/G.

A profile records the two facts about a characteristic-zero field the
bounds depend on: the group of roots of unity, and whether the 2-power
cyclotomic extensions are cyclic.  Statuses never claim more than the
rules justify: Exact needs the full-roots hypothesis, everything else is
an upper bound or a proved vanishing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .cohomology import (
    DEFAULT_COHOMOLOGY_CAP,
    QMODZ,
    Zmod,
    sha2,
)
from .errors import (
    CycFailed,
    NotPerfect,
    OrderCapExceeded,
    PNotOddPrime,
    TheoremViolation,
    UnknownPreset,
)
from .groups import FiniteGroup, abelianization, maximal_subgroup_family, \
    is_abelian_subset, subgroup_as_group, sylow_subgroup
from .zlattice import (
    AbelianGroup,
    AbelianHom,
    direct_sum,
    dual_group,
    dual_hom_matrix,
    hom_kernel,
    quotient_mod_n,
    valuation,
)
from .groups import induced_abelianized_map


# ---------------------------------------------------------------------------
# field profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldProfile:
    """Roots of unity and 2-power cyclotomic cyclicity of a base field.

    mu is ("finite", r) with r >= 2 (−1 is always there) or ("all",).
    cyclo2 maps an exponent s >= 3 to cyclicity of the 2^s-th cyclotomic
    extension; s <= 2 is always cyclic; default_cyclic covers s beyond
    the table.
    """

    mu: tuple
    cyclo2: tuple = ()
    default_cyclic: bool = True
    name: str = "custom"

    def __post_init__(self):
        if self.mu[0] == "finite":
            if self.mu[1] < 2:
                raise ValueError("finite mu needs r >= 2: -1 is always a root")
        elif self.mu[0] != "all":
            raise ValueError(f"unknown mu variant {self.mu[0]!r}")

    @property
    def mu_all_roots(self) -> bool:
        return self.mu[0] == "all"

    @property
    def mu_order(self) -> Optional[int]:
        return None if self.mu_all_roots else self.mu[1]

    def cyclo2_cyclic(self, s: int) -> bool:
        if s <= 2:
            return True
        for exp, flag in self.cyclo2:
            if exp == s:
                return flag
        return self.default_cyclic

    def to_json_obj(self) -> dict:
        obj: dict = {"name": self.name}
        obj["mu"] = "all_roots" if self.mu_all_roots else {"finite": self.mu_order}
        obj["cyclo2"] = {
            str(s): "cyclic" if f else "non_cyclic" for s, f in self.cyclo2
        }
        obj["default"] = "cyclic" if self.default_cyclic else "non_cyclic"
        return obj

    @staticmethod
    def from_json_obj(obj: dict) -> "FieldProfile":
        mu = obj["mu"]
        mu_t = ("all",) if mu == "all_roots" else ("finite", int(mu["finite"]))
        table = tuple(
            sorted(
                (int(s), flag == "cyclic")
                for s, flag in obj.get("cyclo2", {}).items()
            )
        )
        default = obj.get("default", "cyclic") == "cyclic"
        return FieldProfile(mu_t, table, default, obj.get("name", "custom"))


def preset(name: str, p: Optional[int] = None) -> FieldProfile:
    """Built-in profiles: C, R, Q, Qp(p) for odd p, Q2."""
    if name == "C":
        return FieldProfile(("all",), (), True, "C")
    if name == "R":
        # the only proper cyclotomic extension is degree 2, hence cyclic
        return FieldProfile(("finite", 2), (), True, "R")
    if name == "Q":
        return FieldProfile(("finite", 2), (), False, "Q")
    if name == "Q2":
        return FieldProfile(("finite", 2), (), False, "Q2")
    if name == "Qp":
        if p is None or p < 3 or p % 2 == 0 or _not_prime(p):
            raise PNotOddPrime(p if p is not None else 0)
        # 2-power cyclotomic extensions of Q_p (p odd) are unramified,
        # hence cyclic
        return FieldProfile(("finite", p - 1), (), True, f"Qp:{p}")
    raise UnknownPreset(name)


def _not_prime(p: int) -> bool:
    if p < 2:
        return True
    d = 2
    while d * d <= p:
        if p % d == 0:
            return True
        d += 1 if d == 2 else 2
    return False


def check_cyc(G: FiniteGroup, profile: FieldProfile
              ) -> tuple[bool, Optional[tuple[int, int]]]:
    """Whether every cyclic 2-power subgroup has a cyclic cyclotomic
    counterpart; on failure returns (False, (element, 2-power order))."""
    worst: Optional[tuple[int, int]] = None
    for g in range(G.order):
        o = G.element_order(g)
        s = valuation(o, 2) if o % 2 == 0 else 0
        if s >= 3 and not profile.cyclo2_cyclic(s):
            two_part = 2 ** s
            elem = G.power(g, o // two_part)
            if worst is None or two_part < worst[1]:
                worst = (elem, two_part)
    if worst is not None:
        return False, worst
    return True, None


def mu_full_for(G: FiniteGroup, profile: FieldProfile) -> bool:
    """Whether the field has all m-th roots for every cyclic Z/m in G."""
    if profile.mu_all_roots:
        return True
    return profile.mu_order % G.exponent() == 0


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

STATUS_EXACT = "Exact"
STATUS_UPPER = "UpperBound"
STATUS_ODD_UPPER = "OddPartUpperBound"
STATUS_ZERO_COPRIME = "ZeroByCoprimality"
STATUS_ZERO_THEOREM = "ZeroByTheorem"


@dataclass
class BrauerReport:
    group_or_bound: AbelianGroup
    status: str
    applied: list[str]
    notes: list[str] = field(default_factory=list)
    inputs: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "bound": list(self.group_or_bound.invariant_factors),
            "status": self.status,
            "applied": list(self.applied),
            "notes": list(self.notes),
            "inputs": self.inputs,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)


def _inputs_echo(G: FiniteGroup, profile: Optional[FieldProfile]) -> dict:
    ab = abelianization(G)
    echo = {
        "group": G.name or f"order-{G.order}",
        "order": G.order,
        "abelianization": list(ab.factors),
    }
    if profile is not None:
        echo["profile"] = profile.to_json_obj()
    return echo


def odd_part(group: AbelianGroup) -> AbelianGroup:
    facs = []
    for d in group.invariant_factors:
        odd = d >> valuation(d, 2) if d % 2 == 0 else d
        if odd > 1:
            facs.append(odd)
    if group.free_rank:
        raise ValueError("odd part of an infinite group is not defined here")
    return AbelianGroup.from_factors(facs) if facs else AbelianGroup.trivial()


# ---------------------------------------------------------------------------
# the computations
# ---------------------------------------------------------------------------

def bogomolov_multiplier(G: FiniteGroup,
                         cap: int = DEFAULT_COHOMOLOGY_CAP) -> AbelianGroup:
    """The full-roots invariant: restriction kernel of H^2(G, Q/Z) over the
    bicyclic family, cross-checked against the abelian family.

    The two kernels are provably isomorphic; a mismatch is an engine bug
    and raises, never a mathematical outcome.
    """
    sha_bi = sha2(G, QMODZ, "bicyclic", cap=cap)
    sha_ab = sha2(G, QMODZ, "abelian", cap=cap)
    if sha_bi.group.fingerprint() != sha_ab.group.fingerprint():
        raise TheoremViolation(
            "bicyclic and abelian restriction kernels differ: "
            f"{sha_bi.group.fingerprint()} vs {sha_ab.group.fingerprint()}"
        )
    return sha_bi.group


def brnr_bound(G: FiniteGroup, profile: FieldProfile,
               cap: int = DEFAULT_COHOMOLOGY_CAP) -> BrauerReport:
    """Decision tree for the normalized unramified Brauer bound."""
    echo = _inputs_echo(G, profile)

    if mu_full_for(G, profile):
        # full roots of unity for every cyclic subgroup: the bound is exact
        if profile.mu_all_roots:
            group = bogomolov_multiplier(G, cap=cap)
            applied = ["Thm-bogogeneral"]
            notes = ["full roots of unity: value is exact, both families agree"]
        else:
            r = profile.mu_order
            sha_ab = sha2(G, Zmod(r), "abelian", cap=cap)
            sha_bi = sha2(G, Zmod(r), "bicyclic", cap=cap)
            if sha_ab.group.fingerprint() != sha_bi.group.fingerprint():
                raise TheoremViolation(
                    "abelian and bicyclic kernels differ under full-roots "
                    f"hypothesis: {sha_ab.group.fingerprint()} vs "
                    f"{sha_bi.group.fingerprint()}"
                )
            group = sha_ab.group
            applied = ["Thm-bogogeneral"]
            notes = [
                f"mu has order {r} divisible by the exponent of G: exact value"
            ]
        return BrauerReport(group, STATUS_EXACT, applied, notes, echo)

    r = profile.mu_order
    if gcd(r, G.order) == 1:
        return BrauerReport(
            AbelianGroup.trivial(),
            STATUS_ZERO_COPRIME,
            ["Cor-racines(a)"],
            [f"|mu| = {r} is coprime to |G| = {G.order}: the bound vanishes"],
            echo,
        )

    ok, witness = check_cyc(G, profile)
    if ok:
        group = sha2(G, Zmod(r), "abelian", cap=cap).group
        return BrauerReport(
            group,
            STATUS_UPPER,
            ["Thm-principal-2(b)"],
            [f"cyclotomic condition holds: bound inside the mod-{r} kernel"],
            echo,
        )

    group = odd_part(sha2(G, Zmod(r), "abelian", cap=cap).group)
    elem, o = witness
    return BrauerReport(
        group,
        STATUS_ODD_UPPER,
        ["Thm-principal-1(iii)", "Thm-principal-2(b)"],
        [
            f"cyclotomic condition fails at element {elem} of 2-power order {o}",
            "only the odd part is bounded by this method; the 2-part is "
            "method-silent",
        ],
        echo,
    )


def algebraic_bound(G: FiniteGroup, r: int,
                    profile: Optional[FieldProfile] = None,
                    cap: int = DEFAULT_COHOMOLOGY_CAP) -> BrauerReport:
    """Character-kernel bound for the algebraic part: the kernel of
    G^ / r  ->  product over maximal abelian subgroups of A^ / r."""
    if profile is None:
        profile = FieldProfile(("finite", max(r, 2)), (), True, f"mu-{r}")
    if not profile.mu_all_roots and profile.mu_order != r:
        raise ValueError(f"profile mu order {profile.mu_order} != r = {r}")
    ok, witness = check_cyc(G, profile)
    if not ok:
        raise CycFailed(*witness)

    echo = _inputs_echo(G, profile)
    ab_G = abelianization(G)
    ghat = dual_group(ab_G.factors, None)
    src = quotient_mod_n(ghat, r)
    if src.is_trivial() or ghat.is_trivial():
        return BrauerReport(
            AbelianGroup.trivial(),
            STATUS_UPPER,
            ["Thm-racines-finies(i)"],
            ["the character group mod r is already trivial"],
            echo,
        )

    family = maximal_subgroup_family(G, "abelian")
    maps = []
    for member in family.members:
        sub, elems = subgroup_as_group(G, member.elements)
        ab_H = abelianization(sub)
        fmat = induced_abelianized_map(ab_H, ab_G, elems)
        rows = dual_hom_matrix(fmat, ab_H.factors, ab_G.factors, None)
        tgt = quotient_mod_n(dual_group(ab_H.factors, None), r)
        maps.append(AbelianHom(src, tgt, rows))
    total, _, _ = direct_sum([f.target for f in maps])
    stacked = []
    for i in range(src.ngens):
        row: list[int] = []
        for f in maps:
            row.extend(f.matrix[i])
        stacked.append(row)
    kernel, _ = hom_kernel(AbelianHom(src, total, stacked, validate=False))
    return BrauerReport(
        kernel,
        STATUS_UPPER,
        ["Thm-racines-finies(i)"],
        [
            f"kernel of character restrictions mod {r} over "
            f"{len(family.members)} maximal abelian subgroups"
        ],
        echo,
    )


def real_report(G: FiniteGroup, cap: int = DEFAULT_COHOMOLOGY_CAP) -> BrauerReport:
    """Bound over the reals: mod-2 kernel, the algebraic character bound,
    and the abelian-Sylow-2 vanishing shortcut."""
    profile = preset("R")
    base = brnr_bound(G, profile, cap=cap)
    alg = algebraic_bound(G, 2, cap=cap)

    syl = sylow_subgroup(G, 2)
    sylow_abelian = is_abelian_subset(G, syl.elements)

    if sylow_abelian:
        group = AbelianGroup.trivial()
        applied = ["Cor-racines(c3)"]
        notes = [
            f"the Sylow 2-subgroup (order {len(syl)}) is abelian: the bound "
            "collapses to zero"
        ]
        status = base.status if base.status == STATUS_EXACT else STATUS_UPPER
        if not base.group_or_bound.is_trivial():
            raise TheoremViolation(
                "Sylow-2 abelian but the mod-2 restriction kernel is "
                f"{base.group_or_bound.invariant_factors}"
            )
    else:
        group = base.group_or_bound
        applied = ["Cor-racines(c1)", "Cor-racines(c2)"] + base.applied
        notes = list(base.notes)
        status = base.status

    exponent = group.exponent()
    if exponent is None or exponent > 2:
        raise TheoremViolation(
            f"real bound group must be elementary 2-abelian, got "
            f"{group.invariant_factors}"
        )
    notes.append(
        "algebraic part bounded by the mod-2 character kernel: "
        f"{alg.group_or_bound.invariant_factors or 0}"
    )
    report = BrauerReport(group, status, applied, notes, base.inputs)
    report.inputs["algebraic_bound"] = list(alg.group_or_bound.invariant_factors)
    return report


def simple_group_report(G: FiniteGroup, profile: FieldProfile,
                        cap: int = DEFAULT_COHOMOLOGY_CAP) -> BrauerReport:
    """Vanishing for groups without characters, with the geometric part
    recomputed rather than cited."""
    ab = abelianization(G)
    if ab.factors:
        raise NotPerfect(f"the group has characters: G^ab = {ab.factors}")
    if profile.mu_all_roots:
        raise ValueError("the simple-group rule is for finite mu profiles")
    ok, witness = check_cyc(G, profile)
    if not ok:
        raise CycFailed(*witness)

    echo = _inputs_echo(G, profile)
    alg = algebraic_bound(G, profile.mu_order, cap=cap)
    assert alg.group_or_bound.is_trivial()

    try:
        b0 = bogomolov_multiplier(G, cap=cap)
    except OrderCapExceeded:
        return BrauerReport(
            alg.group_or_bound,
            STATUS_UPPER,
            ["Thm-racines-finies(i)"],
            [
                "no characters: the algebraic part vanishes; the geometric "
                "part exceeds the cohomology cap and is not certified"
            ],
            echo,
        )
    if b0.is_trivial():
        return BrauerReport(
            AbelianGroup.trivial(),
            STATUS_ZERO_THEOREM,
            ["Thm-racines-finies(ii)"],
            [
                "no characters and the full-roots invariant recomputes to "
                "zero: the bound vanishes"
            ],
            echo,
        )
    return BrauerReport(
        b0,
        STATUS_UPPER,
        ["Thm-racines-finies(i)"],
        [
            "no characters, but the full-roots invariant is nonzero: "
            "only the algebraic part is known to vanish"
        ],
        echo,
    )
