"""Bifiltered chain complexes over F2[U, 1/U] with two filtration gradings.

A complex is a finite free module with one basis element per generator.  The
generator x is the plane element at (i, j) = (0, A(x)) and its translate
U^k x sits at (-k, A(x) - k), so the whole U-orbit is the diagonal
j - i = A(x).  An arrow (x, y, n) records the differential component
d(x) = U^n y + ...; coefficients live in F2, so arrows are a set and equal
triples cancel in pairs.

Every structural operation here (tensor, dual, reduce, text round trip)
is exact and deterministic.
"""

from __future__ import annotations

import dataclasses
import json
import re
from collections import Counter
from typing import Iterable, Iterator, Mapping

from .errors import InternalInconsistency, ParseError

__all__ = [
    "Generator",
    "Arrow",
    "CfkComplex",
    "Violation",
    "ValidationReport",
    "validate",
    "tensor",
    "dual",
    "reduce",
    "serialize",
    "deserialize",
    "unknot_complex",
    "square_complex",
    "direct_sum",
    "change_basis",
    "j_drop",
]


@dataclasses.dataclass(frozen=True)
class Generator:
    """Basis element with Alexander and Maslov gradings."""

    name: str
    alexander: int
    maslov: int


@dataclasses.dataclass(frozen=True, order=True)
class Arrow:
    """Differential component d(source) = U^u_exp * target + ..."""

    source: str
    target: str
    u_exp: int


def _gen_key(g: Generator) -> tuple[int, int, str]:
    return (g.alexander, g.maslov, g.name)


_NAME = re.compile(r"\S+$")


class CfkComplex:
    """Immutable complex: generators plus an F2 set of arrows.

    The constructor checks structure only (names usable and unique, arrow
    endpoints present, U-exponents nonnegative) and cancels duplicate arrow
    triples mod 2; grading laws and d^2 = 0 are checked by validate().
    """

    __slots__ = ("generators", "arrows", "_by_name", "_from", "_hash")

    def __init__(self, generators: Iterable[Generator], arrows: Iterable[Arrow] = ()):
        gens = tuple(sorted(generators, key=_gen_key))
        by_name: dict[str, Generator] = {}
        for g in gens:
            if not _NAME.match(g.name):
                raise ValueError(f"unusable generator name {g.name!r}")
            if g.name in by_name:
                raise ValueError(f"duplicate generator name {g.name!r}")
            by_name[g.name] = g
        parity: dict[tuple[str, str, int], int] = {}
        for a in arrows:
            if a.u_exp < 0:
                raise ValueError(f"negative U-exponent on arrow {a}")
            if a.source not in by_name or a.target not in by_name:
                raise ValueError(f"arrow {a} references a missing generator")
            key = (a.source, a.target, a.u_exp)
            parity[key] = parity.get(key, 0) ^ 1
        self.generators = gens
        self.arrows = tuple(Arrow(*k) for k in sorted(k for k, v in parity.items() if v))
        self._by_name = by_name
        outgoing: dict[str, list[Arrow]] = {g.name: [] for g in gens}
        for a in self.arrows:
            outgoing[a.source].append(a)
        self._from = {n: tuple(v) for n, v in outgoing.items()}
        self._hash: int | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CfkComplex):
            return NotImplemented
        return self.generators == other.generators and self.arrows == other.arrows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.generators, self.arrows))
        return self._hash

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"CfkComplex({len(self.generators)} generators, {len(self.arrows)} arrows)"

    def generator(self, name: str) -> Generator:
        return self._by_name[name]

    def alexander_of(self, name: str) -> int:
        return self._by_name[name].alexander

    def maslov_of(self, name: str) -> int:
        return self._by_name[name].maslov

    def arrows_from(self, name: str) -> tuple[Arrow, ...]:
        return self._from[name]

    def names(self) -> Iterator[str]:
        return (g.name for g in self.generators)

    def grading_table(self) -> dict[tuple[int, int], int]:
        """Generator count per (alexander, maslov) pair."""
        return dict(Counter((g.alexander, g.maslov) for g in self.generators))


def j_drop(c: CfkComplex, a: Arrow) -> int:
    """How far the arrow moves down: A(source) - A(target) + u_exp."""
    return c.alexander_of(a.source) - c.alexander_of(a.target) + a.u_exp


# ---------------------------------------------------------------------------
# validation


@dataclasses.dataclass(frozen=True)
class Violation:
    kind: str
    message: str


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Violation, ...]
    warnings: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __str__(self) -> str:
        if self.ok and not self.warnings:
            return "ok"
        lines = []
        for v in self.errors:
            lines.append(f"error {v.kind}: {v.message}")
        for v in self.warnings:
            lines.append(f"warning {v.kind}: {v.message}")
        if self.ok:
            lines.insert(0, "ok")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "errors": [dataclasses.asdict(v) for v in self.errors],
                "warnings": [dataclasses.asdict(v) for v in self.warnings],
            },
            indent=2,
        )


def _d_squared_witnesses(c: CfkComplex) -> list[tuple[str, str, int]]:
    parity: dict[tuple[str, str, int], int] = {}
    for a in c.arrows:
        for b in c.arrows_from(a.target):
            key = (a.source, b.target, a.u_exp + b.u_exp)
            parity[key] = parity.get(key, 0) ^ 1
    return sorted(k for k, v in parity.items() if v)


def _math_errors(c: CfkComplex) -> list[Violation]:
    errors: list[Violation] = []
    for a in c.arrows:
        drop = j_drop(c, a)
        if drop < 0:
            errors.append(
                Violation("j-drop", f"arrow {a.source}->{a.target} u={a.u_exp} rises by {-drop}")
            )
        if c.maslov_of(a.source) - 1 != c.maslov_of(a.target) - 2 * a.u_exp:
            errors.append(
                Violation(
                    "maslov",
                    f"arrow {a.source}->{a.target} u={a.u_exp}: "
                    f"M({a.source})-1 != M({a.target})-2u",
                )
            )
    for src, tgt, power in _d_squared_witnesses(c):
        errors.append(
            Violation("d-squared", f"d^2 sends {src} to U^{power} {tgt} with odd multiplicity")
        )
    return errors


def validate(c: CfkComplex, knot_class: bool = False) -> ValidationReport:
    """Report every grading or d^2 violation; never raises on bad math.

    With knot_class=True also requires column and row homology of rank one.
    A symmetry warning compares generator counts of the reduced complex at
    (s, m) and (-s, m - 2s); it is only attempted on error-free complexes.
    """
    warnings: list[Violation] = []
    errors = _math_errors(c)
    if knot_class and not errors:
        from . import regions

        col = regions.homology_rank(regions.region_complex(c, regions.Column0()))
        if col != 1:
            errors.append(Violation("column-rank", f"column homology rank {col}, expected 1"))
        row = regions.homology_rank(regions.region_complex(c, regions.Row(0)))
        if row != 1:
            errors.append(Violation("row-rank", f"row homology rank {row}, expected 1"))
    if not errors:
        table = reduce(c).grading_table()
        for (s, m), count in sorted(table.items()):
            other = table.get((-s, m - 2 * s), 0)
            if count != other:
                warnings.append(
                    Violation(
                        "symmetry",
                        f"{count} generators at (A, M) = ({s}, {m}) but "
                        f"{other} at ({-s}, {m - 2 * s})",
                    )
                )
    return ValidationReport(tuple(errors), tuple(warnings))


# ---------------------------------------------------------------------------
# operations


def tensor(c1: CfkComplex, c2: CfkComplex) -> CfkComplex:
    """Tensor product; gradings add and the differential obeys the
    Leibniz rule, so every arrow acts on one factor and fixes the other."""
    name: dict[tuple[str, str], str] = {}
    used: set[str] = set()
    for g1 in c1.generators:
        for g2 in c2.generators:
            base = f"{g1.name}|{g2.name}"
            candidate = base
            tie = 2
            while candidate in used:
                candidate = f"{base}#{tie}"
                tie += 1
            used.add(candidate)
            name[(g1.name, g2.name)] = candidate
    gens = [
        Generator(name[(g1.name, g2.name)], g1.alexander + g2.alexander, g1.maslov + g2.maslov)
        for g1 in c1.generators
        for g2 in c2.generators
    ]
    arrows = []
    for a in c1.arrows:
        for g2 in c2.generators:
            arrows.append(Arrow(name[(a.source, g2.name)], name[(a.target, g2.name)], a.u_exp))
    for a in c2.arrows:
        for g1 in c1.generators:
            arrows.append(Arrow(name[(g1.name, a.source)], name[(g1.name, a.target)], a.u_exp))
    return CfkComplex(gens, arrows)


def _dual_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def dual(c: CfkComplex) -> CfkComplex:
    """Mirror complex: gradings negate, arrows reverse with the same power.

    Names gain or lose a trailing '*' so that dual(dual(c)) == c.
    """
    renamed = {g.name: _dual_name(g.name) for g in c.generators}
    if len(set(renamed.values())) != len(renamed):
        raise ValueError("generator names collide under dualization")
    gens = [Generator(renamed[g.name], -g.alexander, -g.maslov) for g in c.generators]
    arrows = [Arrow(renamed[a.target], renamed[a.source], a.u_exp) for a in c.arrows]
    return CfkComplex(gens, arrows)


def reduce(c: CfkComplex, check_steps: bool = False) -> CfkComplex:
    """Cancel every arrow with u_exp = 0 and Alexander drop 0.

    Cancelling x -> y removes both generators and, for every w -> y (power
    n1) and x -> z (power n2), toggles w -> z with power n1 + n2.  Arrows
    are cancelled in (source, target) order, so the result is deterministic.
    With check_steps=True every intermediate complex is re-validated.
    """
    gens = {g.name: g for g in c.generators}
    arrows = {(a.source, a.target, a.u_exp) for a in c.arrows}
    while True:
        candidates = [
            (s, t)
            for (s, t, u) in arrows
            if u == 0 and gens[s].alexander == gens[t].alexander
        ]
        if not candidates:
            break
        x, y = min(candidates)
        into_y = [(w, n) for (w, t, n) in arrows if t == y and w != x]
        out_x = [(z, n) for (s, z, n) in arrows if s == x and z != y]
        arrows = {
            (s, t, u) for (s, t, u) in arrows if s not in (x, y) and t not in (x, y)
        }
        for w, n1 in into_y:
            for z, n2 in out_x:
                key = (w, z, n1 + n2)
                if key in arrows:
                    arrows.discard(key)
                else:
                    arrows.add(key)
        del gens[x]
        del gens[y]
        if check_steps:
            step = CfkComplex(gens.values(), (Arrow(*k) for k in arrows))
            broken = _math_errors(step)
            if broken:
                raise InternalInconsistency(f"cancellation broke the complex: {broken[0].message}")
    return CfkComplex(gens.values(), (Arrow(*k) for k in arrows))


# ---------------------------------------------------------------------------
# constructors used across the test suites


def unknot_complex(name: str = "x0") -> CfkComplex:
    """One generator at (A, M) = (0, 0) with zero differential."""
    return CfkComplex([Generator(name, 0, 0)])


def square_complex(
    width: int = 1,
    height: int = 1,
    alexander: int = 0,
    maslov: int = 0,
    prefix: str = "sq",
) -> CfkComplex:
    """Acyclic box summand on four generators a, b, c, d.

    d(b) = U^width a + c and d(c) = U^width d, d(a) = d (vertical); width is
    the horizontal arrow length and height the vertical one.  (alexander,
    maslov) places the corner generator b.
    """
    if width < 1 or height < 1:
        raise ValueError("square sides must be at least 1")
    a, m = alexander, maslov
    gens = [
        Generator(prefix + "b", a, m),
        Generator(prefix + "a", a + width, m - 1 + 2 * width),
        Generator(prefix + "c", a - height, m - 1),
        Generator(prefix + "d", a + width - height, m - 2 + 2 * width),
    ]
    arrows = [
        Arrow(prefix + "b", prefix + "a", width),
        Arrow(prefix + "b", prefix + "c", 0),
        Arrow(prefix + "a", prefix + "d", 0),
        Arrow(prefix + "c", prefix + "d", width),
    ]
    return CfkComplex(gens, arrows)


def direct_sum(c1: CfkComplex, c2: CfkComplex) -> CfkComplex:
    """Disjoint union; generator names must not collide."""
    overlap = set(g.name for g in c1.generators) & set(g.name for g in c2.generators)
    if overlap:
        raise ValueError(f"direct summands share names: {sorted(overlap)}")
    return CfkComplex(
        list(c1.generators) + list(c2.generators), list(c1.arrows) + list(c2.arrows)
    )


def change_basis(c: CfkComplex, target: str, donor: str, power: int = 0) -> CfkComplex:
    """Filtered change of basis replacing target by target + U^power donor.

    Requires power >= 0, M(donor) - 2*power == M(target) and
    A(donor) - power <= A(target), so the new element is homogeneous and
    filtration-compatible.  Gradings and d^2 = 0 are preserved; the result
    usually differs arrow-wise but is the same complex up to isomorphism.
    """
    if target == donor:
        raise ValueError("target and donor must differ")
    gt, gd = c.generator(target), c.generator(donor)
    if power < 0:
        raise ValueError("power must be nonnegative")
    if gd.maslov - 2 * power != gt.maslov:
        raise ValueError("gradings incompatible with this basis change")
    if gd.alexander - power > gt.alexander:
        raise ValueError("basis change would raise the filtration")
    arrows = {(a.source, a.target, a.u_exp) for a in c.arrows}
    toggles: list[tuple[str, str, int]] = []
    for s, t, u in arrows:
        if s == donor:
            toggles.append((target, t, u + power))
        if t == target:
            toggles.append((s, donor, u + power))
    for key in toggles:
        if key in arrows:
            arrows.discard(key)
        else:
            arrows.add(key)
    return CfkComplex(c.generators, (Arrow(*k) for k in arrows))


# ---------------------------------------------------------------------------
# text format


_HEADER = "cfk v1"
_GEN_RE = re.compile(r"^gen\s+(\S+)\s+A=(-?\d+)\s+M=(-?\d+)\s*$")
_ARR_RE = re.compile(r"^arr\s+(\S+)\s+(\S+)\s+u=(\d+)\s*$")


def serialize(c: CfkComplex) -> str:
    """Canonical text: header, generators by (A, M, name), arrows sorted."""
    lines = [_HEADER]
    for g in c.generators:
        lines.append(f"gen {g.name} A={g.alexander} M={g.maslov}")
    for a in c.arrows:
        lines.append(f"arr {a.source} {a.target} u={a.u_exp}")
    return "\n".join(lines) + "\n"


def _token_column(line: str, token_index: int) -> int:
    pos = 0
    for _ in range(token_index):
        while pos < len(line) and not line[pos].isspace():
            pos += 1
        while pos < len(line) and line[pos].isspace():
            pos += 1
    return pos + 1


def deserialize(text: str) -> CfkComplex:
    """Parse the cfk v1 format; structural problems raise ParseError.

    Grading violations are accepted here and left to validate(); an arrow
    naming an unknown generator is structural and rejected.  Duplicate
    arrow lines cancel mod 2.
    """
    lines = text.splitlines()
    gens: list[Generator] = []
    seen: dict[str, int] = {}
    arrows: list[Arrow] = []
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        if not header_seen:
            if line.strip() != _HEADER:
                raise ParseError(f"expected {_HEADER!r} header", line=lineno, column=1)
            header_seen = True
            continue
        if line.startswith("gen"):
            m = _GEN_RE.match(line)
            if m is None:
                raise ParseError("malformed gen line", line=lineno, column=1)
            name = m.group(1)
            if name in seen:
                raise ParseError(
                    f"duplicate generator {name!r}",
                    line=lineno,
                    column=_token_column(line, 1),
                )
            seen[name] = lineno
            gens.append(Generator(name, int(m.group(2)), int(m.group(3))))
        elif line.startswith("arr"):
            m = _ARR_RE.match(line)
            if m is None:
                raise ParseError("malformed arr line", line=lineno, column=1)
            src, tgt = m.group(1), m.group(2)
            for idx, endpoint in ((1, src), (2, tgt)):
                if endpoint not in seen:
                    raise ParseError(
                        f"unknown generator {endpoint!r}",
                        line=lineno,
                        column=_token_column(line, idx),
                    )
            arrows.append(Arrow(src, tgt, int(m.group(3))))
        else:
            raise ParseError(f"unknown directive {line.split()[0]!r}", line=lineno, column=1)
    if not header_seen:
        raise ParseError(f"expected {_HEADER!r} header", line=1, column=1)
    return CfkComplex(gens, arrows)
