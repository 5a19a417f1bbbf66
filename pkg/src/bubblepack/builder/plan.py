"""Case classification and the builder's bookkeeping record.

A 4-set of terminals falls into one of five shapes by how it spreads over
the main parts: all four together (case 1), two plus two (case 2), two plus
one plus one (case 3), all separate (case 4), or three plus one (case 5).
Role names x, y, z, w are assigned deterministically and refined inside the
case builders; every anchor vertex a builder records is named by the formula
that produced it, so the record can be re-checked after the fact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..flow import TerminalSet
from ..graph import Region, main_part
from ..perms import Perm, swap
from .support import out


@dataclass
class CasePlan:
    n: int
    case: str
    roles: dict[str, Perm]
    anchors: dict[str, Perm] = field(default_factory=dict)
    terminal_sets: list[TerminalSet] = field(default_factory=list)
    regions: list[Region] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def set_roles(self, **roles: Perm) -> None:
        self.roles.update(roles)

    def anchor(self, name: str, value: Perm) -> Perm:
        self.anchors[name] = value
        return value

    def note(self, text: str) -> None:
        self.notes.append(text)


def classify_case(n: int, S) -> CasePlan:
    """Partition the terminals by main part and assign the starting roles.

    Ties break by rank: the lexicographically least vertex of a group is
    listed first, and groups are ordered by part index.
    """
    S = tuple(sorted(set(S)))
    if len(S) != 4:
        raise ValueError("exactly four distinct terminals required")
    if any(len(v) != n for v in S):
        raise ValueError("terminal arity mismatch")
    groups: dict[int, list[Perm]] = {}
    for v in S:
        groups.setdefault(main_part(v), []).append(v)
    by_part = sorted(groups.items())
    shape = sorted((len(g) for _, g in by_part), reverse=True)
    if shape == [4]:
        (part, quad), = by_part
        x, y, z, w = sorted(quad)
        return CasePlan(n=n, case="1", roles={"x": x, "y": y, "z": z, "w": w})
    if shape == [2, 2]:
        pairs = [g for _, g in by_part]
        x, y = sorted(pairs[0])
        z, w = sorted(pairs[1])
        return CasePlan(n=n, case="2", roles={"x": x, "y": y, "z": z, "w": w})
    if shape == [2, 1, 1]:
        pair = next(g for _, g in by_part if len(g) == 2)
        singles = [g[0] for _, g in by_part if len(g) == 1]
        x, y = sorted(pair)
        z, w = singles
        return CasePlan(n=n, case="3", roles={"x": x, "y": y, "z": z, "w": w})
    if shape == [1, 1, 1, 1]:
        x, y, z, w = (g[0] for _, g in by_part)
        return CasePlan(n=n, case="4", roles={"x": x, "y": y, "z": z, "w": w})
    triple = next(g for _, g in by_part if len(g) == 3)
    single = next(g[0] for _, g in by_part if len(g) == 1)
    x, y, z = sorted(triple)
    return CasePlan(n=n, case="5", roles={"x": x, "y": y, "z": z, "w": single})


_ANCHOR_OPS = re.compile(r"(_\d+|\^|')")


def anchor_value(plan: CasePlan, name: str) -> Perm:
    """Recompute an anchor from its name: role, then ops left to right.

    ``_k`` swaps 0-based positions k, k+1; ``^`` swaps the two positions just
    before the last (the special in-neighbor move); ``'`` takes the
    out-neighbor.
    """
    m = re.match(r"([a-z]+)", name)
    if not m:
        raise ValueError(f"bad anchor name {name!r}")
    base = m.group(1)
    if base not in plan.roles:
        raise ValueError(f"anchor {name!r} refers to unknown role {base!r}")
    v = plan.roles[base]
    for op in _ANCHOR_OPS.findall(name[len(base) :]):
        if op == "'":
            v = out(v)
        elif op == "^":
            v = swap(v, len(v) - 3)
        else:
            v = swap(v, int(op[1:]))
    return v


def check_anchors(plan: CasePlan) -> list[str]:
    """Names whose recorded value disagrees with its defining formula."""
    bad = []
    for name, value in plan.anchors.items():
        if anchor_value(plan, name) != value:
            bad.append(name)
    return bad
