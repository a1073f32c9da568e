"""Executable weighted branching processes over bases, with exact rationals.

Both processes replace a live sequence by one child per element of a chosen
basis set, dividing its weight evenly, so the total live weight is exactly 1
at every stage; this is checked as rational equality after every round.
A sequence survives once its underlying set can no longer be extended (it
meets every basis set in the cross version, or meets every basis set in at
least t elements in the t version).

The selection rule is deterministic by default (smallest cardinality, then
smallest mask, among the qualifying sets); pass a seeded ``random.Random``
to exercise the claims under arbitrary legal selections.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .constructions import window_family
from .families import (
    DomainError,
    Family,
    VerificationError,
    elements_of,
    is_antichain,
    is_cross_intersecting,
    is_t_intersecting,
    mask_of,
)
from .transversals import covering_number, upward_closure


@dataclass(frozen=True)
class BranchSequence:
    """One surviving sequence: ordered elements, exact weight, chosen sets."""

    elements: tuple[int, ...]
    weight: Fraction
    chosen_sets: tuple[int, ...]


@dataclass
class BranchReport:
    """Outcome of a branching run; all rationals are exact."""

    survivors: list
    total_weight: Fraction
    level_counts: dict
    lam: dict
    coverage_ok: bool
    weight_bound_ok: bool
    inequality_lhs: Fraction

    def to_json_dict(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "survivors": [
                {
                    "elements": list(s.elements),
                    "weight": frac(s.weight),
                    "chosen_sets": [list(elements_of(m)) for m in s.chosen_sets],
                }
                for s in self.survivors
            ],
            "total_weight": frac(self.total_weight),
            "level_counts": {str(l): c for l, c in sorted(self.level_counts.items())},
            "lambda": {str(l): frac(v) for l, v in sorted(self.lam.items())},
            "coverage_ok": self.coverage_ok,
            "weight_bound_ok": self.weight_bound_ok,
            "inequality_lhs": frac(self.inequality_lhs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _choose(pool: list[int], rng: random.Random | None) -> int:
    if rng is None:
        return min(pool, key=lambda m: (m.bit_count(), m))
    return rng.choice(sorted(pool))


def smallest_branching_level(b: Family, t: int = 1) -> int | None:
    """Smallest level a with tau_t of the <=a part >= t+1, if any."""
    sizes = sorted({m.bit_count() for m in b.members})
    if not sizes:
        return None
    for a in range(sizes[0], sizes[-1] + 1):
        sub = Family.from_masks((m for m in b.members if m.bit_count() <= a), b.ground)
        if sub.members and covering_number(sub, t) >= t + 1:
            return a
    return None


def _finish_report(survivors, b_levels, k, r, level_weight_floor, lam,
                   strict) -> BranchReport:
    total = sum((s.weight for s in survivors), Fraction(0))
    level_counts: dict[int, int] = {}
    for s in survivors:
        level_counts[len(s.elements)] = level_counts.get(len(s.elements), 0) + 1

    if total != 1:
        raise VerificationError(f"total survivor weight is {total}, expected exactly 1")

    survivor_sets = {}
    for s in survivors:
        survivor_sets.setdefault(mask_of(s.elements), []).append(s)
    coverage_ok = True
    for level, masks in b_levels.items():
        if level < r:
            continue
        for m in masks:
            if not any(len(s.elements) == level for s in survivor_sets.get(m, [])):
                coverage_ok = False

    weight_bound_ok = True
    for s in survivors:
        l = len(s.elements)
        if l >= r and s.weight < level_weight_floor(l):
            weight_bound_ok = False

    lhs = sum(lam.values(), Fraction(0))
    report = BranchReport(survivors, total, level_counts, lam, coverage_ok,
                          weight_bound_ok, lhs)
    if strict:
        if not coverage_ok:
            raise VerificationError("a basis set at level >= r was not covered by a survivor")
        if not weight_bound_ok:
            raise VerificationError("a survivor weight fell below its level floor")
        if lhs > 1:
            raise VerificationError(f"sum of level weights {lhs} exceeds 1")
    return report


def run_branching_cross(b1: Family, b2: Family, k: int, r: int,
                        rng: random.Random | None = None, strict: bool = True,
                        max_nodes: int = 10 ** 6) -> BranchReport:
    """Run the weighted branching process driven by b1 against b2.

    Requires b1, b2 to be cross-intersecting antichains of sets of size
    <= k with min-size of b1 at least 2 and tau of the <=r part of b1 at
    least 2.  Survivor sets of each level l >= r must include every level-l
    member of b2, each survivor at level l >= r has weight at least
    1/(l^2 k^(l-2)), and the normalised level counts of b2 sum to at most 1.
    """
    if not b1.members or not b2.members:
        raise DomainError("branching needs nonempty bases")
    if any(m.bit_count() > k for m in b1.members + b2.members):
        raise DomainError("a basis set exceeds size k")
    if not (is_antichain(b1) and is_antichain(b2)):
        raise DomainError("bases must be antichains")
    s = min(m.bit_count() for m in b1.members)
    if s < 2:
        raise DomainError(f"hypothesis s(B1) >= 2 violated (s = {s})")
    if not is_cross_intersecting(b1, b2):
        raise DomainError("bases must be cross-intersecting")
    low = Family.from_masks((m for m in b1.members if m.bit_count() <= r), b1.ground)
    if not low.members or covering_number(low) < 2:
        raise DomainError(f"hypothesis tau(B1 restricted to sizes <= {r}) >= 2 violated")

    nodes = 0

    def extend(seq, pool):
        nonlocal nodes
        chosen = _choose(pool, rng)
        share = seq[1] / chosen.bit_count()
        out = []
        for y in elements_of(chosen):
            out.append((seq[0] + (y,), share, seq[2] + (chosen,)))
        nodes += len(out)
        if nodes > max_nodes:
            raise RuntimeError(f"branching exceeded {max_nodes} nodes")
        return out

    def check_total(frontier, survivors) -> None:
        total = sum((w for _, w, _ in frontier), Fraction(0))
        total += sum((s.weight for s in survivors), Fraction(0))
        if total != 1:
            raise VerificationError(f"live weight is {total} mid-run, expected exactly 1")

    # stage 1: split on a minimum-size member of b1
    seed_pool = [m for m in b1.members if m.bit_count() == s]
    seed = _choose(seed_pool, rng)
    frontier = [((y,), Fraction(1, s), (seed,)) for y in elements_of(seed)]
    survivors: list[BranchSequence] = []
    check_total(frontier, survivors)

    # stage 2: extend every length-1 sequence with a disjoint set from the <=r part
    nxt = []
    for seq in frontier:
        smask = mask_of(seq[0])
        pool = [m for m in low.members if not m & smask]
        nxt.extend(extend(seq, pool))
    frontier = nxt
    check_total(frontier, survivors)

    # later stages: extend with any disjoint member of b1
    while frontier:
        nxt = []
        for seq in frontier:
            smask = mask_of(seq[0])
            pool = [m for m in b1.members if not m & smask]
            if not pool:
                survivors.append(BranchSequence(seq[0], seq[1], seq[2]))
            else:
                nxt.extend(extend(seq, pool))
        frontier = nxt
        check_total(frontier, survivors)

    b2_levels: dict[int, list[int]] = {}
    for m in b2.members:
        b2_levels.setdefault(m.bit_count(), []).append(m)
    lam = {
        level: Fraction(len(masks), level * level * k ** (level - 2))
        for level, masks in sorted(b2_levels.items())
        if r <= level <= k
    }
    return _finish_report(
        survivors, b2_levels, k, r,
        lambda l: Fraction(1, l * l * k ** (l - 2)),
        lam, strict,
    )


def run_branching_t(b: Family, t: int, k: int, r: int,
                    rng: random.Random | None = None, strict: bool = True,
                    max_nodes: int = 10 ** 6) -> BranchReport:
    """Run the t-intersecting branching process on the basis b.

    Requires b to be a t-intersecting antichain of sets of size <= k with
    min-size at least t+1 and tau_t of the <=r part at least t+1.  The
    first stage splits on every t-subset of a minimum-size member with
    weight 1/C(s, t); extension steps divide by |B - S|.
    """
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    if not b.members:
        raise DomainError("branching needs a nonempty basis")
    if any(m.bit_count() > k for m in b.members):
        raise DomainError("a basis set exceeds size k")
    if not is_antichain(b):
        raise DomainError("basis must be an antichain")
    s = min(m.bit_count() for m in b.members)
    if s < t + 1:
        raise DomainError(f"hypothesis s(B) >= t+1 violated (s = {s})")
    if not is_t_intersecting(b, t):
        raise DomainError("basis must be t-intersecting")
    low = Family.from_masks((m for m in b.members if m.bit_count() <= r), b.ground)
    if not low.members or covering_number(low, t) < t + 1:
        raise DomainError(f"hypothesis tau_t(B restricted to sizes <= {r}) >= t+1 violated")

    nodes = 0

    def extend(seq, pool):
        nonlocal nodes
        smask = mask_of(seq[0])
        chosen = _choose(pool, rng)
        free = chosen & ~smask
        share = seq[1] / free.bit_count()
        out = []
        for y in elements_of(free):
            out.append((seq[0] + (y,), share, seq[2] + (chosen,)))
        nodes += len(out)
        if nodes > max_nodes:
            raise RuntimeError(f"branching exceeded {max_nodes} nodes")
        return out

    def check_total(frontier, survivors) -> None:
        total = sum((w for _, w, _ in frontier), Fraction(0))
        total += sum((x.weight for x in survivors), Fraction(0))
        if total != 1:
            raise VerificationError(f"live weight is {total} mid-run, expected exactly 1")

    seed_pool = [m for m in b.members if m.bit_count() == s]
    seed = _choose(seed_pool, rng)
    frontier = [
        (combo, Fraction(1, comb(s, t)), (seed,))
        for combo in combinations(elements_of(seed), t)
    ]
    survivors: list[BranchSequence] = []
    check_total(frontier, survivors)

    # stage 2: every t-sequence is extended from the <=r part
    nxt = []
    for seq in frontier:
        smask = mask_of(seq[0])
        pool = [m for m in low.members if (m & smask).bit_count() < t]
        nxt.extend(extend(seq, pool))
    frontier = nxt
    check_total(frontier, survivors)

    while frontier:
        nxt = []
        for seq in frontier:
            smask = mask_of(seq[0])
            pool = [m for m in b.members if (m & smask).bit_count() < t]
            if not pool:
                survivors.append(BranchSequence(seq[0], seq[1], seq[2]))
            else:
                nxt.extend(extend(seq, pool))
        frontier = nxt
        check_total(frontier, survivors)

    b_levels: dict[int, list[int]] = {}
    for m in b.members:
        b_levels.setdefault(m.bit_count(), []).append(m)
    lam = {
        level: Fraction(len(masks), comb(level, t) * level * k ** (level - t - 1))
        for level, masks in sorted(b_levels.items())
        if r <= level <= k
    }
    return _finish_report(
        survivors, b_levels, k, r,
        lambda l: Fraction(1, comb(l, t) * l * k ** (l - t - 1)),
        lam, strict,
    )


def verify_window_closure(b: Family, t: int, n: int, k: int) -> bool:
    """Whether the upward k-closure of b is the window family up to relabeling.

    b must be a (t+1)-uniform t-intersecting antichain over [n] with
    tau_t(b) >= t+1.  Relabelings are checked by mapping the (at most t+2)
    support elements onto {1, ..., t+2} in every possible way and extending
    order-preservingly elsewhere.
    """
    if b.ground.n != n:
        raise DomainError(f"basis lives on [{b.ground.n}], expected [{n}]")
    if not b.members:
        raise DomainError("empty basis")
    if b.infer_uniformity() != t + 1:
        raise DomainError("basis must be (t+1)-uniform")
    if not is_t_intersecting(b, t):
        raise DomainError("basis must be t-intersecting")
    if covering_number(b, t) < t + 1:
        raise DomainError(f"hypothesis tau_t(B) >= t+1 violated")

    support = elements_of(b.support())
    if len(support) != t + 2:
        return False
    if n < max(k, t + 2):
        raise DomainError(f"need n >= max(k, t+2), got n={n} k={k}")

    closure = upward_closure(b, k)
    target = window_family(n, k, t)
    window = tuple(range(1, t + 3))
    others_src = [e for e in range(1, n + 1) if e not in support]
    others_dst = [e for e in range(1, n + 1) if e not in window]

    for image in permutations(window):
        perm = list(range(n + 1))
        for src, dst in zip(support, image):
            perm[src] = dst
        for src, dst in zip(others_src, others_dst):
            perm[src] = dst
        remapped = Family.from_masks(
            (mask_of(perm[e] for e in elements_of(m)) for m in closure.members),
            closure.ground, k)
        if remapped == target:
            return True
    return False
