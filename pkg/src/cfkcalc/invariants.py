"""Concordance invariants tau, epsilon, a1, a2 computed from region complexes.

All four invariants are read off from homology of region complexes of a
knot-like complex (column homology of rank one):

* tau is the minimal top Alexander grading over representatives of the
  vertical homology class.
* epsilon compares that class against hook-shaped regions through the maps
  F (quotient then include into a full hook) and G (project a G-hook onto
  the column); exactly one of four outcomes survives.
* a1 is the least hook width that kills the class, a2 the least tail depth
  that revives it; both require epsilon = +1.

epsilon_oracle recomputes epsilon by an independent second route inside the
row j = tau and must always agree with epsilon.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import json

from .cfk import Arrow, CfkComplex, Generator, dual, reduce, tensor
from .errors import (
    EpsilonNotOne,
    InternalInconsistency,
    MathError,
    RankNotOne,
    SearchExhausted,
    TooShort,
)
from .gf2 import Gf2Space, kernel_and_image
from .laurent import StaircaseExponents
from .regions import (
    Column0,
    FullHook,
    GHook,
    HomologyData,
    HookWithTail,
    RegionComplex,
    Row,
    TruncatedHook,
    homology_data,
    homology_rank,
    region_complex,
)

__all__ = [
    "tau",
    "vertical_class",
    "f_map_trivial",
    "g_map_trivial",
    "epsilon",
    "epsilon_oracle",
    "a1",
    "a2",
    "staircase_a_invariants",
    "hfk_table",
    "WhiteheadModelReport",
    "check_whitehead_model",
    "WHITEHEAD_RANK_TABLE",
]


@dataclasses.dataclass
class _ColumnAnalysis:
    rc: RegionComplex
    boundary_space: Gf2Space
    vclass_mask: int
    tau: int
    class_names: tuple[str, ...]


@functools.lru_cache(maxsize=None)
def _column_analysis(c: CfkComplex) -> _ColumnAnalysis:
    """Column complex, its boundary space, and the minimal-top class cycle."""
    rc = region_complex(c, Column0())
    kernel, image = kernel_and_image(rc.boundary)
    space = Gf2Space(image)
    rank = len(kernel) - space.dim
    if rank != 1:
        raise RankNotOne(f"column homology rank {rank}, expected 1")
    z0 = next(k for k in kernel if k not in space)
    # reducing against the boundary space minimizes the top element, and
    # elements are sorted by Alexander grading, so the top bit realizes tau
    zmin = space.reduce(z0)
    assert zmin != 0
    top = rc.elements[zmin.bit_length() - 1]
    names = tuple(el.gen for el in rc.chain_elements(zmin))
    return _ColumnAnalysis(rc, space, zmin, c.alexander_of(top.gen), names)


def tau(c: CfkComplex) -> int:
    """Least s admitting a Column0 cycle supported in j <= s that is not a
    boundary; raises RankNotOne on complexes without rank-one column
    homology."""
    return _column_analysis(c).tau


def vertical_class(c: CfkComplex) -> tuple[str, ...]:
    """Canonical representative of the vertical homology generator, as
    generator names; it is supported in j <= tau(c)."""
    return _column_analysis(c).class_names


def _class_image_is_boundary(c: CfkComplex, region, names, level: int) -> bool:
    """Push the class through (drop j < level, include into region)."""
    rc = region_complex(c, region)
    mask = rc.chain([(x, 0) for x in names if c.alexander_of(x) >= level])
    return homology_data(rc).is_boundary(mask)


def f_map_trivial(c: CfkComplex, s: int) -> bool:
    """Whether the class dies in the full hook at level s (quotient the
    column by j < s, then include)."""
    col = _column_analysis(c)
    return _class_image_is_boundary(c, FullHook(s), col.class_names, s)


def g_map_trivial(c: CfkComplex, s: int) -> bool:
    """Whether no cycle of the G-hook at level s projects onto a
    non-boundary of the column (drop elements with i < 0)."""
    col = _column_analysis(c)
    gh = region_complex(c, GHook(s))
    for cyc in homology_data(gh).cycle_basis:
        kept = [el for el in gh.chain_elements(cyc) if el.u_power == 0]
        mask = col.rc.chain([(el.gen, 0) for el in kept])
        assert col.rc.differential(mask) == 0
        if mask not in col.boundary_space:
            return False
    return True


@functools.lru_cache(maxsize=None)
def epsilon(c: CfkComplex) -> int:
    """+1 when F is trivial at tau, -1 when G is, 0 when neither.

    Both trivial is impossible for consistent inputs and raises
    InternalInconsistency.
    """
    t = tau(c)
    f = f_map_trivial(c, t)
    g = g_map_trivial(c, t)
    if f and g:
        raise InternalInconsistency("F and G both trivial at tau")
    if f:
        return 1
    if g:
        return -1
    return 0


@functools.lru_cache(maxsize=None)
def epsilon_oracle(c: CfkComplex) -> int:
    """Independent recomputation of epsilon inside the row j = tau.

    The image of the vertical class in the row is an affine space: the
    canonical representative plus the image of every column boundary
    supported in j <= tau.  epsilon is +1 when that space meets the image
    of the row differential, 0 when it meets only the kernel, and -1 when
    it misses the kernel entirely.

    The differential only moves leftward, so row elements strictly left of
    the column (positive U power) can neither hit nor obstruct a class
    supported on the column; they are quotiented out of both membership
    tests.
    """
    col = _column_analysis(c)
    t = col.tau
    row = region_complex(c, Row(t))

    cutoff = 0
    for idx, el in enumerate(col.rc.elements):
        if c.alexander_of(el.gen) <= t:
            cutoff = idx + 1
    low_boundaries = [
        v for v in col.boundary_space.pivot_vectors() if v.bit_length() - 1 < cutoff
    ]

    def phi(mask: int) -> int:
        out = 0
        for el in col.rc.chain_elements(mask):
            if c.alexander_of(el.gen) == t:
                out |= 1 << row.index[(el.gen, 0)]
        return out

    data = homology_data(row)
    ambiguity = [phi(b) for b in low_boundaries]
    left_of_column = [1 << idx for idx, el in enumerate(row.elements) if el.u_power > 0]
    image_side = Gf2Space(data.boundary_basis)
    for v in itertools.chain(ambiguity, left_of_column):
        image_side.add(v)
    kernel_side = Gf2Space(data.cycle_basis)
    for v in itertools.chain(ambiguity, left_of_column):
        kernel_side.add(v)
    point = phi(col.vclass_mask)
    if point in image_side:
        return 1
    if point in kernel_side:
        return 0
    return -1


def _search_bound(c: CfkComplex) -> int:
    alex = [g.alexander for g in c.generators]
    return max(alex) - min(alex)


@functools.lru_cache(maxsize=None)
def a1(c: CfkComplex) -> int:
    """Least hook width s >= 1 at which the class dies in the truncated
    hook; defined only when epsilon(c) = +1."""
    if epsilon(c) != 1:
        raise EpsilonNotOne(f"epsilon is {epsilon(c)}, not +1")
    col = _column_analysis(c)
    t = col.tau
    if _class_image_is_boundary(c, TruncatedHook(t, 0), col.class_names, t):
        raise InternalInconsistency("class already dies in the bare column ray")
    for s in range(1, _search_bound(c) + 1):
        if _class_image_is_boundary(c, TruncatedHook(t, s), col.class_names, t):
            return s
    raise SearchExhausted("no hook width killed the class despite epsilon = +1")


@functools.lru_cache(maxsize=None)
def a2(c: CfkComplex) -> int | None:
    """Least tail depth s >= 1 at which the class comes back to life in the
    hook-with-tail; None when no depth up to the search bound does."""
    width = a1(c)
    col = _column_analysis(c)
    t = col.tau
    for s in range(1, _search_bound(c) + 1):
        if not _class_image_is_boundary(c, HookWithTail(t, width, s), col.class_names, t):
            return s
    return None


def staircase_a_invariants(exps: StaircaseExponents) -> tuple[int, int]:
    """Closed forms on a staircase: a1 = n0 - n1 and a2 = n1 - n2.

    Raises TooShort on the one-term staircase (no steps, epsilon = 0).
    """
    if exps.steps == 0:
        raise TooShort("staircase has no steps")
    n = exps.exponents
    return (n[0] - n[1], n[1] - n[2])


def hfk_table(c: CfkComplex) -> dict[tuple[int, int], int]:
    """Generator count per (A, M) of the reduced complex."""
    return reduce(c).grading_table()


# ---------------------------------------------------------------------------
# doubled trefoil model check


WHITEHEAD_RANK_TABLE: dict[tuple[int, int], int] = {
    (1, 0): 2,
    (1, -1): 2,
    (0, -1): 3,
    (0, -2): 4,
    (-1, -2): 2,
    (-1, -3): 2,
}


def _trefoil_staircase() -> CfkComplex:
    return CfkComplex(
        [Generator("x0", 1, 0), Generator("x1", 0, -1), Generator("x2", -1, -2)],
        [Arrow("x1", "x0", 1), Arrow("x1", "x2", 0)],
    )


@dataclasses.dataclass(frozen=True)
class WhiteheadModelReport:
    """Whether a candidate behaves like the doubled trefoil class."""

    table_ok: bool
    local_invariants_ok: bool
    class_matches_trefoil: bool
    table: dict[tuple[int, int], int]

    @property
    def passed(self) -> bool:
        return self.table_ok and self.local_invariants_ok and self.class_matches_trefoil

    def __str__(self) -> str:
        flag = {True: "ok", False: "FAIL"}
        return "\n".join(
            [
                f"rank table: {flag[self.table_ok]}",
                f"tau=1 and epsilon=1: {flag[self.local_invariants_ok]}",
                f"class agrees with the trefoil: {flag[self.class_matches_trefoil]}",
                f"model check: {'PASS' if self.passed else 'FAIL'}",
            ]
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "table_ok": self.table_ok,
                "local_invariants_ok": self.local_invariants_ok,
                "class_matches_trefoil": self.class_matches_trefoil,
                "passed": self.passed,
                "table": {f"{a},{m}": r for (a, m), r in sorted(self.table.items())},
            },
            indent=2,
        )


def check_whitehead_model(c: CfkComplex) -> WhiteheadModelReport:
    """Three-part screen for doubled-trefoil candidates; reports, never raises.

    (a) the reduced rank table matches the reference table, (b) tau = 1 and
    epsilon = +1, (c) tensoring with the mirrored trefoil staircase gives
    epsilon 0, i.e. the candidate and the trefoil share a concordance class.
    """
    table = hfk_table(c)
    table_ok = table == WHITEHEAD_RANK_TABLE
    try:
        local_ok = tau(c) == 1 and epsilon(c) == 1
    except MathError:
        local_ok = False
    try:
        diff = reduce(tensor(dual(_trefoil_staircase()), c))
        class_ok = epsilon(diff) == 0
    except MathError:
        class_ok = False
    return WhiteheadModelReport(table_ok, local_ok, class_ok, table)
