"""Branch selection and edge/label accounting for a target (n, w).

Everything downstream is driven by two residues: t = n mod (w-1), and the
leftover edge count ell = (C(n,2) - n*C(w-1,2)) mod C(w,2). The plan fixes
how many words of each type the sub-code will carry (y words with one 2,
z words with two 2s), the minimal per-vertex replication r_min, the number c
of vertices held at r_min, and the clique budget x for the packing stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

__all__ = [
    "Branch",
    "BuildPlan",
    "packing_bound",
    "upper_bound",
    "plan",
    "balanced_feasibility",
    "plan_text",
]


class Branch(Enum):
    T1_DIV = "T1_DIV"
    T0_DIV = "T0_DIV"
    T0_NONDIV = "T0_NONDIV"
    T1_NONDIV = "T1_NONDIV"
    GENERAL_T = "GENERAL_T"


def packing_bound(n: int, w: int) -> int:
    """floor(n(n-1-(w-1)(w-2)) / (w(w-1))); Python floor, also below regime."""
    return n * (n - 1 - (w - 1) * (w - 2)) // (w * (w - 1))


def upper_bound(n: int, w: int) -> int:
    return packing_bound(n, w) + n


def balanced_feasibility(n: int, w: int) -> tuple[bool, str]:
    """Whether an optimal code of size upper_bound(n, w) can be balanced.

    Infeasible exactly when w is odd, n == 1 (mod w-1), and
    n(n-1) - n(w-1)(w-2) == (2k+1)(w-1) (mod w(w-1)) for some
    k in [0, (w-3)/2]; the replacement accounting then forces a
    half-integral word count y = n - k - 1/2.
    """
    if w % 2 == 0 or n % (w - 1) != 1:
        return True, "feasible"
    lhs = (n * (n - 1) - n * (w - 1) * (w - 2)) % (w * (w - 1))
    for k in range((w - 3) // 2 + 1):
        if lhs == ((2 * k + 1) * (w - 1)) % (w * (w - 1)):
            return False, f"impossible (y = {n - k - 0.5})"
    return True, "feasible"


@dataclass(frozen=True)
class BuildPlan:
    n: int
    w: int
    branch: Branch
    t: int
    h: int
    ell: int
    a: int
    b: int
    c: int
    r_min: int
    x: int
    y: int
    z: int
    leftover_edges: int
    upper_bound: int
    balanced_feasible: bool
    balanced_reason: str
    below_regime: bool


def plan(n: int, w: int) -> BuildPlan:
    if w < 3:
        raise ValueError("weight must be at least 3")
    if n < 2:
        raise ValueError("length must be at least 2")
    w1 = w - 1
    t = n % w1
    h = (n - t) // w1
    ell = (comb(n, 2) - n * comb(w1, 2)) % comb(w, 2)
    rem = ell % w1
    k = ell // w1

    if t == 1 and rem != 0:
        branch = Branch.T1_NONDIV
        a, b, leftover = k, 0, rem
    elif t == 0 and rem != 0:
        branch = Branch.T0_NONDIV
        a, b, leftover = k, rem, 0
    elif t == 1:
        branch = Branch.T1_DIV
        a, b, leftover = k, 0, 0
    elif t == 0:
        branch = Branch.T0_DIV
        a, b, leftover = k, 0, 0
    else:
        branch = Branch.GENERAL_T
        a, b, leftover = k, rem, 0

    # Residue bookkeeping that every branch must satisfy. The divisibility
    # of 2*ell by w-1 is special to t in {0, 1}; in general only the
    # congruence 2*ell == t(t-1) (mod w-1) holds.
    assert a * w1 + b + leftover == ell
    assert (2 * ell - t * (t - 1)) % w1 == 0
    if t in (0, 1):
        assert (2 * ell) % w1 == 0
    if branch in (Branch.T0_NONDIV, Branch.T1_NONDIV):
        assert w % 2 == 1, "non-divisible residue only occurs for odd w"
        assert (leftover or b) * 2 == w1
        assert k <= (w - 3) // 2
    if branch in (Branch.T0_DIV, Branch.T1_DIV):
        assert k <= (w + 1) // 2 - 1

    r_min = 1 if t == 0 else (0 if t == 1 else w - t)
    num = n * r_min + a * w1 + 2 * b
    assert num % w1 == 0, "replication total must split evenly"
    c = num // w1
    assert c >= 0

    if branch is Branch.GENERAL_T:
        # Second route to c via the residue-class count.
        spread = 2 * rem - (t - 1) * t
        assert spread % w1 == 0
        assert c == h * (w - t) + k + t + spread // w1

    bnd = packing_bound(n, w)
    x = bnd + a + b
    y = n - a - 2 * b
    z = b
    assert x + y + z == bnd + n

    feasible, reason = balanced_feasibility(n, w)
    assert feasible == (branch is not Branch.T1_NONDIV)

    return BuildPlan(
        n=n,
        w=w,
        branch=branch,
        t=t,
        h=h,
        ell=ell,
        a=a,
        b=b,
        c=c,
        r_min=r_min,
        x=x,
        y=y,
        z=z,
        leftover_edges=leftover,
        upper_bound=bnd + n,
        balanced_feasible=feasible,
        balanced_reason=reason,
        below_regime=n - 1 - (w - 1) * (w - 2) < 0,
    )


def plan_text(p: BuildPlan) -> str:
    lines = [
        f"n: {p.n}",
        f"w: {p.w}",
        f"branch: {p.branch.value}",
        f"t: {p.t}",
        f"h: {p.h}",
        f"ell: {p.ell}",
        f"a: {p.a}",
        f"b: {p.b}",
        f"c: {p.c}",
        f"r_min: {p.r_min}",
        f"x: {p.x}",
        f"y: {p.y}",
        f"z: {p.z}",
        f"leftover edges: {p.leftover_edges}",
        f"upper bound: {p.upper_bound}",
        f"balanced: {p.balanced_reason}",
        f"regime: {'below asymptotic regime' if p.below_regime else 'ok'}",
    ]
    return "\n".join(lines)
