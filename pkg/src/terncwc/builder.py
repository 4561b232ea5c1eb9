"""Sub-code constructions, one per plan branch, plus their shared checker.

Every builder emits the non-trivial part of an optimal code: y words carrying
one 2 and z words carrying two 2s, arranged so that the vertex pairs they
claim form a packing, every vertex is 2-labeled at most once with exactly
plan.a vertices never 2-labeled, and the per-vertex replication R(v) takes
only the planned values. The all-ones words that finish the code are the
packing module's job.

Vertex sets are laid out as one contiguous block per role: the cyclic part
first, then the special vertices in a fixed order. The layout travels with
the result so downstream tooling can name vertices meaningfully.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Codeword, TernaryCode, VerificationReport, verify_code
from .golomb import GolombRuler, greedy_ruler, translates, verify_ruler
from .packing import EdgeLedger
from .planner import Branch, BuildPlan, plan

__all__ = [
    "RegimeError",
    "VertexLayout",
    "BuildResult",
    "GridCode",
    "SubcodeReport",
    "regime_check",
    "first_in_regime",
    "build_t1_divisible",
    "build_t0_divisible",
    "build_t0_nondivisible",
    "build_t1_nondivisible",
    "build_grid_code",
    "build_general_t",
    "ExchangeState",
    "exchange_step",
    "run_exchange",
    "check_subcode",
    "build_subcode",
]


class RegimeError(ValueError):
    """The target (n, w) violates a construction precondition."""


@dataclass(frozen=True)
class VertexLayout:
    """Contiguous vertex ranges by role, plus named size landmarks."""

    n: int
    groups: tuple[tuple[str, tuple[int, int]], ...]
    landmarks: tuple[tuple[str, int], ...] = ()

    def group(self, name: str) -> range:
        for g, (lo, hi) in self.groups:
            if g == name:
                return range(lo, hi)
        raise KeyError(name)

    def sidecar_text(self, leftover: tuple[tuple[int, int], ...] = ()) -> str:
        lines = [f"n: {self.n}"]
        for g, (lo, hi) in self.groups:
            lines.append(f"group {g}: [{lo}, {hi})")
        for name, value in self.landmarks:
            lines.append(f"landmark {name}: {value}")
        for u, v in leftover:
            lines.append(f"leftover edge: {u} {v}")
        return "\n".join(lines)


@dataclass(frozen=True)
class BuildResult:
    plan: BuildPlan
    code: TernaryCode
    layout: VertexLayout
    leftover: tuple[tuple[int, int], ...] = ()


def regime_check(p: BuildPlan) -> str | None:
    """The violated precondition as text, or None when (n, w) is buildable."""
    w = p.w
    if p.below_regime:
        return f"n = {p.n} is below the asymptotic regime for w = {w}"
    if p.branch is Branch.T1_DIV:
        if p.n - p.a < w**3:
            return f"requires n - k >= w^3 = {w**3}; got n - k = {p.n - p.a}"
    elif p.branch is Branch.T0_DIV:
        np_ = p.n - p.h - p.a
        bound = w * (2 * (w - 1) + w * w)
        if np_ < bound:
            return f"requires n' = n - h - k >= w(2(w-1)+w^2) = {bound}; got n' = {np_}"
    elif p.branch is Branch.T0_NONDIV:
        if p.h < p.a + w**3:
            return f"requires h >= k + w^3 = {p.a + w**3}; got h = {p.h}"
    elif p.branch is Branch.T1_NONDIV:
        m = 2 * w**3 + 1
        if p.h <= 5 * m:
            return f"requires h > 5m = {5 * m}; got h = {p.h}"
    else:
        ht = p.h - w * (w + 2)
        if ht <= 2 * w**3:
            return f"requires h~ = h - w(w+2) > 2w^3 = {2 * w**3}; got h~ = {ht}"
    return None


def first_in_regime(w: int, branch: Branch, start: int | None = None, limit: int = 10**6) -> BuildPlan:
    """Smallest n whose plan lands on `branch` with all preconditions met."""
    n = start if start is not None else w * w
    while n <= limit:
        p = plan(n, w)
        if p.branch is branch and regime_check(p) is None:
            return p
        n += 1
    raise RegimeError(f"no in-regime n <= {limit} for w = {w}, branch {branch.value}")


def buildable_point(w: int, branch: Branch, start: int | None = None, limit: int = 10**6) -> "BuildResult":
    """A completed build on `branch`, scanning upward from the regime boundary.

    The four explicit constructions succeed at the first in-regime n.  The
    general-t exchange can still run out of disjoint grid rows just past the
    boundary, so on that failure the scan doubles its offset from the boundary
    in multiples of w - 1, which keeps t (and hence the branch) fixed.
    """
    n0 = first_in_regime(w, branch, start, limit).n
    n = n0
    while n <= limit:
        try:
            return build_subcode(n, w)
        except RegimeError:
            n = n0 + max(w - 1, 2 * (n - n0))
    raise RegimeError(f"no buildable n <= {limit} for w = {w}, branch {branch.value}")


def _require(p: BuildPlan, branch: Branch) -> None:
    if p.branch is not branch:
        raise ValueError(f"plan is for branch {p.branch.value}, builder wants {branch.value}")
    msg = regime_check(p)
    if msg is not None:
        raise RegimeError(msg)


def _census(words: list[Codeword], n: int) -> tuple[list[int], list[int]]:
    # per-vertex replication R(v) and 2-label counts
    r = [0] * n
    two = [0] * n
    for u in words:
        b = len(u.twos)
        if b:
            for p in u.support:
                r[p] += b
        for p in u.twos:
            two[p] += 1
    return r, two


# ------------------------------------------------------------------ t == 1


def build_t1_divisible(p: BuildPlan) -> BuildResult:
    """Cyclic ruler translates over Z_{n-k}; k untouched vertices soak up the
    surplus. R is w-1 on the cycle and 0 on the rest."""
    _require(p, Branch.T1_DIV)
    n, w, k = p.n, p.w, p.a
    ruler = greedy_ruler(n - k, w - 1)
    words = translates(ruler, length=n)
    layout = VertexLayout(
        n,
        (("cyclic", (0, n - k)), ("b", (n - k, n))),
        (("n_cyclic", n - k),),
    )
    return BuildResult(p, TernaryCode(n, tuple(words)), layout)


def build_t1_nondivisible(p: BuildPlan) -> BuildResult:
    """Cyclic translates with one splice: the translate at shift 2m is traded
    for two words that hook in the k surplus vertices and the point at
    infinity, deliberately leaving (w-1)/2 edges uncovered."""
    _require(p, Branch.T1_NONDIV)
    n, w, k = p.n, p.w, p.a
    m = 2 * w**3 + 1
    nc = n - k - 1
    infinity = n - 1

    def c_at(j: int) -> int:  # j in [1, k]
        return nc + j - 1

    base = greedy_ruler(m, w - 1, forbidden=range(1, w))
    marks = base.marks
    assert all(marks[i] < marks[i + 1] for i in range(len(marks) - 1))
    assert marks[-1] + 2 * m < nc, "splice window must avoid wraparound"
    ruler = GolombRuler(nc, marks, frozenset(range(1, w)))
    chk = verify_ruler(ruler)
    assert chk.ok, f"embedded ruler invalid: {chk.reason}"

    words = translates(ruler, length=n)

    def r_of(i: int) -> int:  # i in [1, w-1]
        if i <= w - k - 2:
            return i - 1
        if i == w - k - 1:
            return infinity
        return c_at(w - i)

    half = (w - 1) // 2
    s1 = Codeword.from_parts(
        n,
        ones=[marks[s] + 2 * m for s in range(1, half)] + [r_of(i) for i in range(1, half + 1)],
        twos=[marks[0] + 2 * m],
    )
    s2 = Codeword.from_parts(
        n,
        ones=[r_of(i) for i in range(half + 1, w - 1)]
        + [marks[s] + 2 * m for s in range(half, w - 1)],
        twos=[r_of(w - 1)],
    )
    touched = set(s1.support) | set(s2.support)
    assert len(touched) == 2 * (w - 1), "splice words must use 2(w-1) distinct vertices"
    words[2 * m] = s1
    words.append(s2)

    leftover = tuple(tuple(sorted((r_of(i), r_of(w - i)))) for i in range(1, half + 1))

    # the uncovered edges must really be uncovered
    holds: dict[int, list[int]] = {}
    for wi, u in enumerate(words):
        for v in u.support:
            holds.setdefault(v, []).append(wi)
    for u, v in leftover:
        for wi in holds.get(u, ()):
            assert v not in words[wi].support, f"leftover edge ({u}, {v}) is covered"

    layout = VertexLayout(
        n,
        (("cyclic", (0, nc)), ("c", (nc, n - 1)), ("infinity", (n - 1, n))),
        (("m", m), ("splice_shift", 2 * m)),
    )
    return BuildResult(p, TernaryCode(n, tuple(words)), layout, leftover)


# ------------------------------------------------------------------ t == 0


def build_t0_divisible(p: BuildPlan) -> BuildResult:
    """[w-1]-free translates over Z_{n'}, plus h partition words that tile the
    cycle with short intervals anchored at the b vertices."""
    _require(p, Branch.T0_DIV)
    n, w, k, h = p.n, p.w, p.a, p.h
    np_ = n - h - k
    ruler = greedy_ruler(np_, w - 1, forbidden=range(1, w))
    words = translates(ruler, length=n)

    def b_at(i: int) -> int:  # i in [1, h]
        return np_ + i - 1

    def c_at(j: int) -> int:  # j in [1, k]
        return np_ + h + j - 1

    cells: list[int] = []
    for i in range(1, k + 1):
        lo, hi = (w - 3) * (i - 1), (w - 3) * i
        cells.extend(range(lo, hi))
        words.append(Codeword.from_parts(n, ones=[c_at(i), *range(lo, hi)], twos=[b_at(i)]))
    for i in range(k + 1, h + 1):
        lo, hi = (w - 2) * (i - 1) - k, (w - 2) * i - k
        cells.extend(range(lo, hi))
        words.append(Codeword.from_parts(n, ones=range(lo, hi), twos=[b_at(i)]))
    assert cells == list(range(np_)), "interval bookkeeping overflow (internal)"

    layout = VertexLayout(
        n,
        (("cyclic", (0, np_)), ("b", (np_, np_ + h)), ("c", (np_ + h, n))),
        (("n_cyclic", np_),),
    )
    return BuildResult(p, TernaryCode(n, tuple(words)), layout)


def build_t0_nondivisible(p: BuildPlan) -> BuildResult:
    """The six-class construction: a double-2 matching on the b-block, free
    translates on the cycle, and four interval families that tile the cycle
    while distributing 2-labels across every c vertex except the last k."""
    _require(p, Branch.T0_NONDIV)
    n, w, k, h = p.n, p.w, p.a, p.h
    nb = (w - 1) * (w - 2) // 2
    nc = h + k + 1
    np_ = n - nb - nc

    n0 = (w - 1) * (w - 2) * (w - 4) // 2
    alpha = (w - 2) * (w - 1) + (w - 3) * (w - 4) * (w - 1) // 2
    beta = n0 + (w - 3) * alpha
    gamma = beta + (w - 2) * (h - k - alpha + 1)
    assert gamma + k * (w - 3) == np_, "landmark accounting broke (internal)"
    assert np_ >= w * (2 * (w - 1) + w * w), "cycle too small for a free ruler"
    assert h - k - alpha + 1 >= 0

    def bbar(i: int) -> int:  # i in [1, w-1]
        return np_ + i - 1

    def b_at(j: int) -> int:  # j in [1, (w-1)(w-4)/2]
        return np_ + (w - 1) + j - 1

    def cbar(i: int) -> int:  # i in [1, h+1]
        return np_ + nb + i - 1

    def c_at(j: int) -> int:  # j in [1, k]
        return np_ + nb + (h + 1) + j - 1

    words: list[Codeword] = []
    # double-2 words: pair up the bbar block, mop up the b block
    for i in range(1, (w - 1) // 2 + 1):
        ones = [b_at(j) for j in range((w - 4) * (i - 1) + 1, (w - 4) * i + 1)]
        words.append(Codeword.from_parts(n, ones=ones, twos=[bbar(2 * i - 1), bbar(2 * i)]))
    ruler = greedy_ruler(np_, w - 1, forbidden=range(1, w))
    words.extend(translates(ruler, length=n))
    # intervals of length w-2 anchored at b: cover [0, n0)
    for i in range(1, (w - 1) * (w - 4) // 2 + 1):
        lo, hi = (w - 2) * (i - 1), (w - 2) * i
        words.append(Codeword.from_parts(n, ones=range(lo, hi), twos=[b_at(i)]))
    # intervals of length w-3 with a riding B vertex: cover [n0, beta)
    for i in range(1, alpha + 1):
        if i <= (w - 2) * (w - 1):
            rider = bbar((i + w - 3) // (w - 2))
        else:
            rider = b_at((i - (w - 1) * (w - 2) + w - 4) // (w - 3))
        lo = n0 + (i - 1) * (w - 3)
        words.append(
            Codeword.from_parts(n, ones=[rider, *range(lo, lo + w - 3)], twos=[cbar(i)])
        )
    # plain intervals of length w-2: cover [beta, gamma)
    for tau in range(1, h - k - alpha + 2):
        lo = beta + (w - 2) * (tau - 1)
        words.append(Codeword.from_parts(n, ones=range(lo, lo + w - 2), twos=[cbar(alpha + tau)]))
    # intervals of length w-3 with a riding c vertex: cover [gamma, n')
    for i in range(1, k + 1):
        lo = gamma + (w - 3) * (i - 1)
        words.append(
            Codeword.from_parts(n, ones=[c_at(i), *range(lo, lo + w - 3)], twos=[cbar(h - k + 1 + i)])
        )

    assert len(words) == p.y + p.z

    layout = VertexLayout(
        n,
        (
            ("cyclic", (0, np_)),
            ("b_bar", (np_, np_ + w - 1)),
            ("b", (np_ + w - 1, np_ + nb)),
            ("c_bar", (np_ + nb, np_ + nb + h + 1)),
            ("c", (np_ + nb + h + 1, n)),
        ),
        (("n_cyclic", np_), ("n0", n0), ("alpha", alpha), ("beta", beta), ("gamma", gamma)),
    )
    return BuildResult(p, TernaryCode(n, tuple(words)), layout)


# ------------------------------------------------------- t in [2, w-2]


@dataclass
class GridCode:
    code: TernaryCode
    rows: list[list[int]]
    h_tilde: int
    ruler: GolombRuler


def build_grid_code(n_prime: int, w: int, t: int, length: int | None = None) -> GridCode:
    """Two word families on the grid Z_{h~} x [0, w-1): stride words walking
    every residue, residue words repeating a ruler inside one residue. Every
    grid vertex is 2-labeled exactly once; R is w-t on residues >= t-1 and
    2w-t-1 below.

    Rows come back as vertex lists with the 2-labeled vertex first, stride
    families before residue families, both in (i, j) order; the exchange
    stage depends on that order being stable.
    """
    if not 2 <= t <= w - 2:
        raise ValueError(f"t must lie in [2, w-2], got {t}")
    if n_prime % (w - 1):
        raise ValueError("grid needs n' divisible by w - 1")
    ht = n_prime // (w - 1)
    if ht <= 2 * w**3:
        raise RegimeError(f"requires h~ > 2w^3 = {2 * w**3}; got h~ = {ht}")

    ruler = greedy_ruler(ht, w - 1)
    marks = ruler.marks
    total = n_prime if length is None else length

    # packing case checks, one per interaction kind:
    # (1) residue words within one residue: the ruler property itself
    assert verify_ruler(ruler).ok
    # (2) residue words across residues: vertex sets are disjoint by residue
    assert t - 2 < w - 1
    # (4) stride words across families: the collision window must be shorter
    #     than the cycle
    assert (w - 2) * (w - t - 1) < 2 * w * w < ht, "stride families can collide"

    rows: list[list[int]] = []
    for i in range(w - t):
        for j in range(ht):
            supp = [((s * i + j) % ht) * (w - 1) + (s - 1) for s in range(1, w)]
            two = supp[t + i - 1]
            # (3) stride words visit each residue exactly once
            assert len({v % (w - 1) for v in supp}) == w - 1
            rows.append([two] + [v for v in supp if v != two])
        # (5) stride words within a family: 2-labels (and every fixed-residue
        #     slot) are a bijection in j
        family_twos = {r[0] for r in rows[-ht:]}
        assert len(family_twos) == ht
    for i in range(t - 1):
        for j in range(ht):
            supp = [((marks[s] + j) % ht) * (w - 1) + i for s in range(w - 1)]
            two = supp[w - 2]
            rows.append([two] + [v for v in supp if v != two])

    twos = sorted(r[0] for r in rows)
    assert twos == list(range(n_prime)), "grid 2-labels must tile the grid"

    words = tuple(Codeword.from_parts(total, ones=r[1:], twos=[r[0]]) for r in rows)
    return GridCode(TernaryCode(total, words), rows, ht, ruler)


@dataclass
class ExchangeState:
    """Mutable mid-exchange snapshot: the grid rows H, the double-2 words Z,
    the surplus matrix M, the pair ledger, and the cursor.

    Column 0 of every M row is its 2-labeled vertex and is never touched; the
    cursor sweeps columns 1..w-2 row-major. `member` indexes H and Z rows by
    vertex; M needs no index because all its entries are in T by definition.
    """

    n: int
    w: int
    rows_h: list[list[int]]
    rows_z: list[list[int]]
    rows_m: list[list[int]]
    ledger: EdgeLedger
    member: dict[int, list[tuple[str, int]]]
    i: int = 0
    j: int = 1
    swaps: int = 0

    @property
    def done(self) -> bool:
        return self.i >= len(self.rows_m)


def _conflicts(state: ExchangeState, v: int, partial: list[int]) -> bool:
    return v in partial or any(state.ledger.covers(u, v) for u in partial)


def exchange_step(state: ExchangeState) -> bool:
    """Process one M entry; swap with a grid row when it conflicts.

    Returns True when a swap happened. Raises RegimeError when no grid row is
    disjoint from the conflict neighborhood; that means n is too small for
    the surplus this plan carries.
    """
    assert not state.done
    w = state.w
    i, j = state.i, state.j
    row_m = state.rows_m[i]
    partial = row_m[:j]
    v = row_m[j]
    swapped = _conflicts(state, v, partial)

    if swapped:
        t_set = {x for row in state.rows_m for x in row}
        hood = set(t_set)
        for x in t_set:
            for kind, idx in state.member.get(x, ()):
                hood.update(state.rows_h[idx] if kind == "H" else state.rows_z[idx])
        found = -1
        for hi, row in enumerate(state.rows_h):
            if hood.isdisjoint(row):
                found = hi
                break
        if found < 0:
            raise RegimeError(
                "n too small for exchange: no grid row disjoint from the "
                f"conflict neighborhood at row {i}, column {j} "
                f"(|T| = {len(t_set)}, |N| = {len(hood)}, swaps so far = {state.swaps})"
            )
        row_h = state.rows_h[found]
        hbar = row_h[w - 2]  # always 1-labeled: column 0 holds the 2
        for u in row_h:
            if u != hbar:
                state.ledger.remove_pair(u, hbar)
        row_h[w - 2] = v
        for u in row_h:
            if u != v:
                state.ledger.add_pair(u, v, ("H", found))
        assert len(set(row_h)) == w - 1, "grid row repeated a vertex after swap"
        state.member[hbar].remove(("H", found))
        state.member.setdefault(v, []).append(("H", found))
        row_m[j] = hbar
        state.swaps += 1
        v = hbar
        assert not _conflicts(state, v, partial), "swapped-in vertex still conflicts"

    for u in partial:
        state.ledger.add_pair(u, v, ("M", i))
    state.j += 1
    if state.j == w - 1:
        state.i += 1
        state.j = 1
    return swapped


def run_exchange(state: ExchangeState) -> ExchangeState:
    steps = 0
    budget = len(state.rows_m) * (state.w - 2)
    while not state.done:
        exchange_step(state)
        steps += 1
        assert steps <= budget, "exchange exceeded its step budget"
    return state


def build_general_t(p: BuildPlan) -> BuildResult:
    """Grid code plus a surplus matrix M, repaired into a packing by the
    exchange walk. The R profile is w-t on c vertices-at-minimum and
    2w-t-1 everywhere else, exactly as planned."""
    _require(p, Branch.GENERAL_T)
    n, w, t, k, r = p.n, p.w, p.t, p.a, p.b
    ht = p.h - w * (w + 2)
    np_ = ht * (w - 1)
    nb = r * (w - 2)
    r_hi = 2 * w - t - 1
    r_lo = w - t
    n_cbar = p.c - ht * (w - t)
    kappa = n - p.c - ht * (t - 1) - nb
    m = n - np_ - 2 * r - k
    assert n_cbar >= 0, "grid already overshoots the minimum-replication count"
    assert kappa > k, "not enough c vertices to exclude k of them"
    assert m == r * (w - 4) + n_cbar + (kappa - k), "matrix row count mismatch"

    base = np_
    bbar = [base + i for i in range(2 * r)]
    base += 2 * r
    b_at = [base + i for i in range(r * (w - 4))]
    base += r * (w - 4)
    cbar = [base + i for i in range(n_cbar)]
    base += n_cbar
    c_at = [base + i for i in range(kappa)]
    assert base + kappa == n

    grid = build_grid_code(np_, w, t, length=n)
    rows_h = grid.rows

    rows_z: list[list[int]] = []
    z_words: list[Codeword] = []
    for i in range(r):
        pair = [bbar[2 * i], bbar[2 * i + 1]]
        mop = b_at[(w - 4) * i : (w - 4) * (i + 1)]
        rows_z.append(pair + list(mop))
        z_words.append(Codeword.from_parts(n, ones=mop, twos=pair))

    col1 = list(b_at) + list(cbar) + list(c_at[: kappa - k])
    assert len(col1) == m
    stream: list[int] = []
    for v in bbar:
        stream.extend([v] * (r_hi - 2))
    for v in b_at:
        stream.extend([v] * (r_hi - 3))
    for v in cbar:
        stream.extend([v] * (r_lo - 1))
    for v in c_at[: kappa - k]:
        stream.extend([v] * (r_hi - 1))
    for v in c_at[kappa - k :]:
        stream.extend([v] * r_hi)
    assert len(stream) == m * (w - 2), (
        f"occupancy mismatch (internal): stream {len(stream)} != {m * (w - 2)}"
    )
    rows_m = [[col1[i]] + stream[i * (w - 2) : (i + 1) * (w - 2)] for i in range(m)]

    ledger = EdgeLedger(n)
    member: dict[int, list[tuple[str, int]]] = {}
    for hi, row in enumerate(rows_h):
        for a_i, u in enumerate(row):
            for v in row[a_i + 1 :]:
                ledger.add_pair(u, v, ("H", hi))
            member.setdefault(u, []).append(("H", hi))
    for zi, row in enumerate(rows_z):
        for a_i, u in enumerate(row):
            for v in row[a_i + 1 :]:
                ledger.add_pair(u, v, ("Z", zi))
            member.setdefault(u, []).append(("Z", zi))

    state = ExchangeState(
        n=n, w=w, rows_h=rows_h, rows_z=rows_z, rows_m=rows_m, ledger=ledger, member=member
    )

    def profile() -> dict[int, int]:
        occ = [0] * n
        for row in rows_h:
            for v in row:
                occ[v] += 1
        for row in rows_m:
            for v in row:
                occ[v] += 1
        for row in rows_z:
            for v in row:
                occ[v] += 2
        prof: dict[int, int] = {}
        for v in occ:
            prof[v] = prof.get(v, 0) + 1
        return prof

    before = profile()
    run_exchange(state)
    after = profile()
    assert before == after, "exchange changed the replication profile"
    assert after == {key: cnt for key, cnt in ((r_lo, p.c), (r_hi, n - p.c)) if cnt}, (
        f"profile {after} is not the planned one"
    )

    words = [Codeword.from_parts(n, ones=row[1:], twos=[row[0]]) for row in rows_h]
    words.extend(z_words)
    words.extend(Codeword.from_parts(n, ones=row[1:], twos=[row[0]]) for row in rows_m)

    layout = VertexLayout(
        n,
        (
            ("cyclic", (0, np_)),
            ("b_bar", (np_, np_ + 2 * r)),
            ("b", (np_ + 2 * r, np_ + nb)),
            ("c_bar", (np_ + nb, np_ + nb + n_cbar)),
            ("c", (np_ + nb + n_cbar, n)),
        ),
        (
            ("n_cyclic", np_),
            ("h_tilde", ht),
            ("kappa", kappa),
            ("m", m),
            ("r_lo", r_lo),
            ("r_hi", r_hi),
            ("swaps", state.swaps),
        ),
    )
    return BuildResult(p, TernaryCode(n, tuple(words)), layout)


# ------------------------------------------------------------------ checker


@dataclass(frozen=True)
class SubcodeReport:
    ok: bool
    failures: tuple[str, ...]
    report: VerificationReport
    type_counts: dict[tuple[int, int], int]
    never_two: int
    expected_profile: dict[int, int]

    def as_text(self) -> str:
        head = "sub-code check: " + ("ok" if self.ok else "FAILED")
        return "\n".join([head, *("  " + f for f in self.failures)])


def expected_r_profile(p: BuildPlan) -> dict[int, int]:
    """Planned R histogram. T1_NONDIV deliberately deviates: its spliced
    words push w-1 special vertices off the two-value pattern."""
    if p.branch is Branch.T1_NONDIV:
        k = p.a
        prof = {1: k + 1, p.w: p.w - k - 2, p.w - 1: p.n - p.w + 1}
    else:
        prof = {p.r_min: p.c, p.r_min + p.w - 1: p.n - p.c}
    return {key: cnt for key, cnt in prof.items() if cnt}


def check_subcode(code: TernaryCode, p: BuildPlan) -> SubcodeReport:
    """Everything the completion stage relies on, checked from the raw words:
    validity, type counts, the 2-label budget, disjoint double-2 supports,
    and the exact planned R histogram."""
    failures: list[str] = []
    report = verify_code(code)
    if not report.valid:
        failures.append(
            f"code invalid: {len(report.overlap_violations)} overlap, "
            f"{len(report.double_two_violations)} double-2 violations"
        )
    if len(code) and report.w != p.w:
        failures.append(f"weight {report.w} != planned {p.w}")
    if len(code) != p.y + p.z:
        failures.append(f"size {len(code)} != planned y + z = {p.y + p.z}")

    counts: dict[tuple[int, int], int] = {}
    for u in code.words:
        ones = len(u.ones)
        twos = len(u.twos)
        counts[(ones, twos)] = counts.get((ones, twos), 0) + 1
    want = {}
    if p.y:
        want[(p.w - 2, 1)] = p.y
    if p.z:
        want[(p.w - 4, 2)] = p.z
    if counts != want:
        failures.append(f"type counts {counts} != planned {want}")

    if any(c > 1 for c in report.two_label_counts):
        failures.append("some vertex is 2-labeled more than once")
    never = sum(1 for c in report.two_label_counts if c == 0)
    if never != p.a:
        failures.append(f"{never} vertices never 2-labeled, planned {p.a}")

    doubles = [u for u in code.words if len(u.twos) == 2]
    seen: set[int] = set()
    for u in doubles:
        if seen & set(u.support):
            failures.append("double-2 supports are not pairwise disjoint")
            break
        seen.update(u.support)

    expected = expected_r_profile(p)
    got = report.r_profile()
    if got != expected:
        failures.append(f"R profile {got} != planned {expected}")

    return SubcodeReport(
        ok=not failures,
        failures=tuple(failures),
        report=report,
        type_counts=counts,
        never_two=never,
        expected_profile=expected,
    )


_BUILDERS = {
    Branch.T1_DIV: build_t1_divisible,
    Branch.T0_DIV: build_t0_divisible,
    Branch.T0_NONDIV: build_t0_nondivisible,
    Branch.T1_NONDIV: build_t1_nondivisible,
    Branch.GENERAL_T: build_general_t,
}


def build_subcode(n: int, w: int) -> BuildResult:
    """Plan, dispatch, build, and check. Raises RegimeError with the violated
    precondition when (n, w) is out of range for its branch."""
    p = plan(n, w)
    msg = regime_check(p)
    if msg is not None:
        raise RegimeError(msg)
    result = _BUILDERS[p.branch](p)
    sub = check_subcode(result.code, p)
    assert sub.ok, "; ".join(sub.failures)
    return result
