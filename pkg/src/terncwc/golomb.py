"""Modular Golomb rulers with forbidden differences.

A (n, m) ruler is a set of m residues mod n whose pairwise differences, taken
in both orientations, are all distinct. It is B-free when no difference lands
in the forbidden residue set B. Translating a ruler around Z_n and 2-labeling
the first mark of every translate yields n words of weight m + 1 whose
supports pairwise share at most one position and whose 2-labels are spread
one per vertex; that is the workhorse pattern for every cyclic part of the
builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Codeword

__all__ = [
    "GolombRuler",
    "RulerCheck",
    "RulerError",
    "verify_ruler",
    "greedy_ruler",
    "guaranteed_modulus",
    "translates",
    "format_ruler",
    "parse_ruler",
]


class RulerError(ValueError):
    pass


@dataclass(frozen=True)
class GolombRuler:
    modulus: int
    marks: tuple[int, ...]
    forbidden: frozenset[int] = frozenset()

    @property
    def size(self) -> int:
        return len(self.marks)


@dataclass(frozen=True)
class RulerCheck:
    ok: bool
    reason: str | None = None


def verify_ruler(ruler: GolombRuler) -> RulerCheck:
    """First-violation check: range, distinctness, difference collisions, B."""
    n = ruler.modulus
    for m in ruler.marks:
        if not 0 <= m < n:
            return RulerCheck(False, f"mark {m} outside [0, {n})")
    if len(set(ruler.marks)) != len(ruler.marks):
        return RulerCheck(False, "marks not distinct")
    forbidden = {b % n for b in ruler.forbidden}
    seen: set[int] = set()
    for i, a in enumerate(ruler.marks):
        for b in ruler.marks[i + 1 :]:
            for d in ((a - b) % n, (b - a) % n):
                if d in forbidden:
                    return RulerCheck(False, f"difference {d} is forbidden")
                if d in seen:
                    return RulerCheck(False, f"difference {d} repeated")
                seen.add(d)
    return RulerCheck(True)


def guaranteed_modulus(size: int, forbidden: Iterable[int] = ()) -> int:
    """Modulus at which the greedy scan below provably completes."""
    w = size + 1
    b = max(forbidden, default=0)
    return w * (2 * b + w * w)


def greedy_ruler(n: int, size: int, forbidden: Iterable[int] = ()) -> GolombRuler:
    """First-fit ruler: start at 0, take every residue that keeps the full
    difference multiset collision-free and clear of the forbidden set.

    Each candidate is validated against every existing difference and against
    the other differences it would itself introduce, so acceptance never needs
    a retroactive repair. Raises RulerError if Z_n runs out before `size`
    marks are placed; never happens for n >= guaranteed_modulus(size, B).
    """
    if size < 1:
        raise RulerError("ruler size must be at least 1")
    if n < 1:
        raise RulerError("modulus must be positive")
    fset = set()
    for b in forbidden:
        fset.add(b % n)
        fset.add((-b) % n)
    fset.discard(0)
    marks = [0]
    diffs: set[int] = set()
    v = 1
    while len(marks) < size:
        if v >= n:
            raise RulerError(
                f"greedy ruler exhausted Z_{n} at {len(marks)} of {size} marks"
            )
        new: set[int] = set()
        ok = True
        for m in marks:
            for d in ((v - m) % n, (m - v) % n):
                if d in diffs or d in new or d in fset or d == 0:
                    ok = False
                    break
            if not ok:
                break
            new.add((v - m) % n)
            new.add((m - v) % n)
        if ok:
            marks.append(v)
            diffs |= new
        v += 1
    ruler = GolombRuler(n, tuple(marks), frozenset(fset))
    check = verify_ruler(ruler)
    assert check.ok, f"greedy produced an invalid ruler: {check.reason}"
    return ruler


def translates(ruler: GolombRuler, length: int | None = None) -> list[Codeword]:
    """All n cyclic shifts as codewords: 2 at the shifted first mark, 1 at the
    rest. `length` pads the ambient vector beyond the cyclic part."""
    n = ruler.modulus
    total = n if length is None else length
    if total < n:
        raise ValueError("length must cover the cyclic vertex set")
    first, rest = ruler.marks[0], ruler.marks[1:]
    out = []
    for i in range(n):
        out.append(
            Codeword.from_parts(
                total,
                ones=[(a + i) % n for a in rest],
                twos=[(first + i) % n],
            )
        )
    return out


def format_ruler(ruler: GolombRuler) -> str:
    marks = " ".join(str(m) for m in ruler.marks)
    forb = " ".join(str(b) for b in sorted(ruler.forbidden))
    return f"{ruler.modulus} | {marks} | B: {forb}".rstrip()


def parse_ruler(text: str) -> GolombRuler:
    parts = [p.strip() for p in text.split("|")]
    if len(parts) != 3 or not parts[2].startswith("B:"):
        raise RulerError(f"bad ruler line: {text!r}")
    n = int(parts[0])
    marks = tuple(int(x) for x in parts[1].split())
    forb = frozenset(int(x) for x in parts[2][2:].split())
    return GolombRuler(n, marks, forb)
