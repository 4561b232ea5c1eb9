"""Ternary constant-weight codewords under the l1 metric.

A codeword is a length-n vector over {0, 1, 2}; its weight is the sum of its
entries. Throughout the package a code keeps every word at one common weight w
and targets minimum pairwise l1 distance 2w - 2. For constant-weight ternary
words that distance bound is equivalent to the conjunction of two conditions:

  (a) the supports of any two words share at most one position, and
  (b) no position carries the symbol 2 in more than one word.

verify_code treats (a) and (b) as the binding definition and uses the distance
scan as corroboration: a disagreement between the two routes is an internal
error, never a report entry.

Words are stored sparsely as sorted (position, symbol) pairs, so codes over
large n stay cheap to hold and compare.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "CodeFormatError",
    "Codeword",
    "TernaryCode",
    "VerificationReport",
    "AuditRecord",
    "l1_distance",
    "weight",
    "codeword_type",
    "verify_code",
    "two_coloring_audit",
    "read_cwc1",
    "write_cwc1",
    "ParsedCodeFile",
]

# Full pairwise distance scans stay exhaustive up to this code size; larger
# codes get a seeded random sample of pairs instead.
EXHAUSTIVE_PAIR_LIMIT = 5000
SAMPLED_PAIRS = 10**6


class CodeFormatError(ValueError):
    """Malformed code file. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Codeword:
    """Sparse immutable ternary word: (position, symbol) pairs, sorted."""

    n: int
    labels: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = -1
        for pos, sym in self.labels:
            if not 0 <= pos < self.n:
                raise ValueError(f"position {pos} outside [0, {self.n})")
            if sym not in (1, 2):
                raise ValueError(f"symbol {sym} not in {{1, 2}}")
            if pos <= last:
                raise ValueError("labels must be sorted by distinct positions")
            last = pos

    @classmethod
    def from_string(cls, digits: str) -> "Codeword":
        labels = []
        for pos, ch in enumerate(digits):
            if ch == "0":
                continue
            if ch not in "12":
                raise ValueError(f"bad symbol {ch!r} at position {pos}")
            labels.append((pos, int(ch)))
        return cls(len(digits), tuple(labels))

    @classmethod
    def from_parts(cls, n: int, ones: Iterable[int], twos: Iterable[int] = ()) -> "Codeword":
        labels = sorted([(p, 1) for p in ones] + [(p, 2) for p in twos])
        return cls(n, tuple(labels))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.labels)

    @property
    def ones(self) -> tuple[int, ...]:
        return tuple(p for p, s in self.labels if s == 1)

    @property
    def twos(self) -> tuple[int, ...]:
        return tuple(p for p, s in self.labels if s == 2)

    @property
    def weight(self) -> int:
        return sum(s for _, s in self.labels)

    def digits(self) -> str:
        out = ["0"] * self.n
        for p, s in self.labels:
            out[p] = str(s)
        return "".join(out)

    def as_array(self) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int8)
        for p, s in self.labels:
            v[p] = s
        return v

    def with_length(self, n: int) -> "Codeword":
        """Same labels viewed inside a longer ambient vector."""
        if n < self.n:
            raise ValueError("cannot shrink a codeword")
        return Codeword(n, self.labels)

    def __str__(self):
        return self.digits()


def weight(u: Codeword) -> int:
    return u.weight


def codeword_type(u: Codeword) -> tuple[int, int]:
    """(a, b) with the word consisting of a ones and b twos, a + 2b = weight."""
    a = sum(1 for _, s in u.labels if s == 1)
    b = sum(1 for _, s in u.labels if s == 2)
    return a, b


def l1_distance(u: Codeword, v: Codeword) -> int:
    if u.n != v.n:
        raise ValueError(f"length mismatch: {u.n} != {v.n}")
    dv = dict(v.labels)
    shared = 0
    for p, s in u.labels:
        t = dv.get(p)
        if t is not None:
            shared += min(s, t)
    return u.weight + v.weight - 2 * shared


@dataclass(frozen=True)
class TernaryCode:
    """A multiset of equal-length ternary words.

    Duplicates are representable on purpose: they come in from files and must
    surface as verification failures, not be silently merged away.
    """

    n: int
    words: tuple[Codeword, ...]

    def __post_init__(self):
        for u in self.words:
            if u.n != self.n:
                raise ValueError("all words must share the code length")

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "TernaryCode":
        words = tuple(Codeword.from_string(s) for s in lines)
        if not words:
            raise ValueError("empty code needs an explicit length")
        return cls(words[0].n, words)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Codeword]:
        return iter(self.words)

    def strings(self) -> list[str]:
        return [u.digits() for u in self.words]

    def common_weight(self) -> int:
        ws = {u.weight for u in self.words}
        if len(ws) != 1:
            raise ValueError(f"weight mismatch: {sorted(ws)}")
        return ws.pop()


def pack_code(code: TernaryCode) -> tuple[np.ndarray, np.ndarray]:
    """Dense (positions, symbols) arrays for the kernels.

    Rows are padded with _kernels.PAD_POS / 0 so each row stays sorted with
    the padding at the end.
    """
    width = max((len(u.labels) for u in code.words), default=1)
    pos = np.full((len(code.words), width), _kernels.PAD_POS, dtype=np.int64)
    val = np.zeros((len(code.words), width), dtype=np.int64)
    for i, u in enumerate(code.words):
        for j, (p, s) in enumerate(u.labels):
            pos[i, j] = p
            val[i, j] = s
    return pos, val


@dataclass(frozen=True)
class VerificationReport:
    n: int
    w: int
    size: int
    overlap_violations: tuple[tuple[int, int, tuple[int, ...]], ...]
    double_two_violations: tuple[tuple[int, tuple[int, ...]], ...]
    duplicates: tuple[tuple[int, int], ...]
    min_distance: int | None
    distance_exhaustive: bool
    r_values: tuple[int, ...]
    two_label_counts: tuple[int, ...]
    balanced: bool
    covered_edges: int

    @property
    def valid(self) -> bool:
        return not self.overlap_violations and not self.double_two_violations

    def r_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for r in self.r_values:
            prof[r] = prof.get(r, 0) + 1
        return prof

    def as_text(self) -> str:
        lines = [
            f"n: {self.n}",
            f"w: {self.w}",
            f"size: {self.size}",
            f"valid: {'true' if self.valid else 'false'}",
            f"overlap violations: {len(self.overlap_violations)}",
            f"double-2 violations: {len(self.double_two_violations)}",
            f"duplicates: {len(self.duplicates)}",
        ]
        for i, j, pos in self.overlap_violations[:20]:
            lines.append(f"  words {i} and {j} share positions {list(pos)}")
        for p, ids in self.double_two_violations[:20]:
            lines.append(f"  position {p} carries 2 in words {list(ids)}")
        for i, j in self.duplicates[:20]:
            lines.append(f"  word {j} duplicates word {i}")
        if self.min_distance is not None:
            how = "exhaustive" if self.distance_exhaustive else "sampled"
            lines.append(f"min distance ({how}): {self.min_distance}")
        prof = ", ".join(f"{r}: {c}" for r, c in sorted(self.r_profile().items()))
        lines.append(f"R profile: {{{prof}}}")
        lines.append(f"covered pairs: {self.covered_edges} of {self.n * (self.n - 1) // 2}")
        lines.append(f"balanced: {'true' if self.balanced else 'false'}")
        return "\n".join(lines)

    def as_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "w": self.w,
                "size": self.size,
                "valid": self.valid,
                "overlap_violations": [list(v[:2]) + [list(v[2])] for v in self.overlap_violations],
                "double_two_violations": [[p, list(ids)] for p, ids in self.double_two_violations],
                "duplicates": [list(d) for d in self.duplicates],
                "min_distance": self.min_distance,
                "distance_exhaustive": self.distance_exhaustive,
                "r_profile": {str(k): v for k, v in sorted(self.r_profile().items())},
                "covered_edges": self.covered_edges,
                "balanced": self.balanced,
            }
        )


def verify_code(code: TernaryCode, seed: int = 0) -> VerificationReport:
    """Check conditions (a) and (b), distances, the R profile, and balance.

    Raises ValueError if the words do not share one weight, and RuntimeError
    if the condition route and the distance route ever disagree; the latter
    would falsify the equivalence this package is built on, so it is fatal
    rather than reportable.
    """
    n = code.n
    w = code.common_weight() if len(code) else 0

    index: dict[int, list[int]] = defaultdict(list)
    twos_at: dict[int, list[int]] = defaultdict(list)
    for i, u in enumerate(code.words):
        for p, s in u.labels:
            index[p].append(i)
            if s == 2:
                twos_at[p].append(i)

    shared: dict[tuple[int, int], list[int]] = defaultdict(list)
    for p, ids in index.items():
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                shared[(ids[x], ids[y])].append(p)

    overlap = tuple(
        (i, j, tuple(ps)) for (i, j), ps in sorted(shared.items()) if len(ps) >= 2
    )
    double_two = tuple((p, tuple(ids)) for p, ids in sorted(twos_at.items()) if len(ids) >= 2)

    seen: dict[tuple, int] = {}
    dups = []
    for i, u in enumerate(code.words):
        if u.labels in seen:
            dups.append((seen[u.labels], i))
        else:
            seen[u.labels] = i

    min_d: int | None = None
    exhaustive = True
    if len(code) >= 2:
        pos, val = pack_code(code)
        if len(code) <= EXHAUSTIVE_PAIR_LIMIT:
            best = _kernels.max_shared_full(pos, val)
        else:
            exhaustive = False
            rng = random.Random(seed)
            m = len(code)
            ii = np.empty(SAMPLED_PAIRS, dtype=np.int64)
            jj = np.empty(SAMPLED_PAIRS, dtype=np.int64)
            for k in range(SAMPLED_PAIRS):
                a = rng.randrange(m)
                b = rng.randrange(m - 1)
                if b >= a:
                    b += 1
                ii[k], jj[k] = a, b
            best = _kernels.max_shared_pairs(pos, val, ii, jj)
        min_d = 2 * w - 2 * int(best)

        # Condition route vs distance route. Violating pairs must sit below
        # 2w - 2 even when the scan itself was sampled.
        conditions_ok = not overlap and not double_two
        if exhaustive and conditions_ok != (min_d >= 2 * w - 2):
            raise RuntimeError(
                "distance equivalence violated (internal): "
                f"conditions_ok={conditions_ok} min_distance={min_d}"
            )
        if not exhaustive and conditions_ok and min_d < 2 * w - 2:
            raise RuntimeError(
                "distance equivalence violated (internal): sampled pair below bound"
            )
        for i, j, _ in overlap:
            if l1_distance(code.words[i], code.words[j]) >= 2 * w - 2:
                raise RuntimeError("distance equivalence violated (internal)")
        for _, ids in double_two:
            if l1_distance(code.words[ids[0]], code.words[ids[1]]) >= 2 * w - 2:
                raise RuntimeError("distance equivalence violated (internal)")

    r = [0] * n
    for u in code.words:
        b = sum(1 for _, s in u.labels if s == 2)
        if b:
            for p in u.support:
                r[p] += b
    two_counts = [0] * n
    for p, ids in twos_at.items():
        two_counts[p] = len(ids)

    distinct_covered = len(
        {(a, b) for u in code.words for ai, a in enumerate(u.support) for b in u.support[ai + 1 :]}
    )
    balanced = (
        not overlap
        and not double_two
        and distinct_covered == n * (n - 1) // 2
    )

    return VerificationReport(
        n=n,
        w=w,
        size=len(code),
        overlap_violations=overlap,
        double_two_violations=double_two,
        duplicates=tuple(dups),
        min_distance=min_d,
        distance_exhaustive=exhaustive,
        r_values=tuple(r),
        two_label_counts=tuple(two_counts),
        balanced=balanced,
        covered_edges=distinct_covered,
    )


@dataclass(frozen=True)
class AuditRecord:
    s: int
    y: dict[int, int]
    sum_iy: int
    inequality_holds: bool
    balanced: bool
    k_values: tuple[float, ...] | None
    k_integral: bool | None

    def as_text(self) -> str:
        ys = ", ".join(f"y({i}) = {c}" for i, c in sorted(self.y.items()))
        lines = [
            f"two-coloring audit: s = {self.s}, {ys}",
            f"sum i*y(i) = {self.sum_iy} {'<=' if self.inequality_holds else '>'} s = {self.s}",
        ]
        if self.balanced:
            lines.append(
                "balanced: k_v all integral"
                if self.k_integral
                else "balanced: k_v NOT all integral"
            )
        return "\n".join(lines)


def two_coloring_audit(code: TernaryCode, w: int | None = None) -> AuditRecord:
    """Count 2-label usage against the vertices available to absorb it.

    s is the number of non-isolated vertices in the union of the support
    cliques of words that use the symbol 2 at all; y(i) counts words with
    exactly i twos. Any valid code satisfies sum_i i*y(i) <= s, and in a
    balanced code every vertex v has sum_i i*y_v(i) divisible by w - 1.
    """
    if w is None and len(code):
        w = code.common_weight()

    y: dict[int, int] = defaultdict(int)
    y_v: list[dict[int, int]] = [defaultdict(int) for _ in range(code.n)]
    touched: set[int] = set()
    for u in code.words:
        b = sum(1 for _, s in u.labels if s == 2)
        y[b] += 1
        for p in u.support:
            y_v[p][b] += 1
        if b > 0 and len(u.support) >= 2:
            touched.update(u.support)

    sum_iy = sum(i * c for i, c in y.items() if i > 0)
    report = verify_code(code)
    k_values = None
    k_integral = None
    if report.balanced and w is not None and w >= 2:
        k_values = tuple(report.r_values[v] / (w - 1) for v in range(code.n))
        k_integral = all(float(k).is_integer() for k in k_values)
    return AuditRecord(
        s=len(touched),
        y=dict(y),
        sum_iy=sum_iy,
        inequality_holds=sum_iy <= len(touched),
        balanced=report.balanced,
        k_values=k_values,
        k_integral=k_integral,
    )


@dataclass(frozen=True)
class ParsedCodeFile:
    code: TernaryCode
    w: int
    d: int


def write_cwc1(path, code: TernaryCode, w: int, d: int, comments: Sequence[str] = ()) -> None:
    with open(path, "w") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        fh.write(f"{code.n} {w} {d}\n")
        for u in code.words:
            fh.write(u.digits() + "\n")


def read_cwc1(path) -> ParsedCodeFile:
    """Parse a code file: header line `n w d`, then one digit string per line.

    `#` starts a comment (whole-line or trailing). Structural damage raises
    CodeFormatError with the offending 1-based line number; semantic problems
    such as duplicate words survive parsing and belong to verification.
    """
    header: tuple[int, int, int] | None = None
    words: list[Codeword] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            if header is None:
                parts = text.split()
                if len(parts) != 3:
                    raise CodeFormatError("header must be `n w d`", lineno)
                try:
                    n, w, d = (int(p) for p in parts)
                except ValueError:
                    raise CodeFormatError("header must be three integers", lineno) from None
                if n < 1 or w < 1 or d < 0:
                    raise CodeFormatError(f"bad header values n={n} w={w} d={d}", lineno)
                header = (n, w, d)
                continue
            n = header[0]
            if len(text) != n:
                raise CodeFormatError(f"expected {n} symbols, got {len(text)}", lineno)
            try:
                words.append(Codeword.from_string(text))
            except ValueError as exc:
                raise CodeFormatError(str(exc), lineno) from None
    if header is None:
        raise CodeFormatError("missing header line", 1)
    return ParsedCodeFile(TernaryCode(header[0], tuple(words)), header[1], header[2])
