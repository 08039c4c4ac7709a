#!/usr/bin/env python3
"""Search and audit exact chord layouts for the named curve registry.

Development tool, not installed with the package.  It verifies the
frozen layouts (embeddedness, spelled classes, crossing patterns with
the chain curves), searches parameter/copy assignments for curves whose
layout is not obvious, and derives the conjugated-curve layout from the
engine itself.  Run from the repository root:

    python3 tools/search_layouts.py
"""
from __future__ import annotations

import itertools
import sys
from fractions import Fraction as F

sys.path.insert(0, "src")

from crosscap.polygon import (  # noqa: E402
    CurveGeometry,
    Event,
    apply_images,
    crossing_count,
    twist_images,
)
from crosscap.words import CyclicWord, Word  # noqa: E402


def alpha_events(i):
    return [Event(i, True, F(2, 3)), Event(i + 1, True, F(1, 3))]


BETA = [
    Event(4, True, F(9, 16)),
    Event(3, True, F(1, 2)),
    Event(2, True, F(7, 16)),
    Event(1, True, F(3, 8)),
]

PSI = [
    Event(1, False, F(1, 64)),
    Event(1, False, F(63, 64)),
    Event(2, False, F(1, 64)),
    Event(2, False, F(63, 64)),
]


def gamma_events(top):
    evs = []
    for i in range(1, top + 1):
        evs += [Event(i, False, F(1, 128)), Event(i, False, F(127, 128))]
    return evs


def compose(outer, inner):
    return [apply_images(outer, w) for w in inner]


def report(name, genus, events):
    c = CurveGeometry(genus, events)
    print(f"--- {name} (g={genus}) ---")
    print(f"  events : {[(e.token(), str(e.t)) for e in events]}")
    print(f"  self-crossings: {c.self_crossing_count()}")
    print(f"  two-sided: {c.is_two_sided()}")
    print(f"  class  : {CyclicWord.of(c.spelled())}")
    for j in range(1, genus):
        n = crossing_count(c, CurveGeometry(genus, alpha_events(j)))
        print(f"  x alpha_{j}: {n}")
    if list(events) != BETA:
        n = crossing_count(c, CurveGeometry(genus, BETA))
        print(f"  x beta  : {n}")
    return c


ZONE = [F(5, 32), F(13, 32), F(21, 32), F(27, 32), F(9, 32), F(25, 32)]


def _necklaces(seq_space):
    seen = set()
    out = []
    for seq in seq_space:
        canon = min(tuple(seq[r:] + seq[:r]) for r in range(len(seq)))
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out


def enumerate_embedded(genus, length, parity, max_pair):
    """All embedded event layouts of a given length with a given mod-2
    class (parity = tuple over pairs 1..max_pair), grouped by class."""
    space = [
        seq
        for seq in itertools.product(range(1, max_pair + 1), repeat=length)
        if tuple(sum(1 for p in seq if p == i) % 2 for i in range(1, max_pair + 1))
        == parity
    ]
    by_class: dict = {}
    for pairs in _necklaces(space):
        mult = {p: sum(1 for q in pairs if q == p) for p in set(pairs)}
        slot_perms = {p: list(itertools.permutations(ZONE[: mult[p]])) for p in mult}
        for copies in itertools.product((True, False), repeat=length):
            for combo in itertools.product(
                *(slot_perms[p] for p in sorted(mult))
            ):
                assign = dict(zip(sorted(mult), [list(c) for c in combo]))
                counters = {p: 0 for p in mult}
                evs = []
                for p, c in zip(pairs, copies):
                    evs.append(Event(p, c, assign[p][counters[p]]))
                    counters[p] += 1
                geom = CurveGeometry(genus, evs)
                if geom.self_crossing_count():
                    continue
                cls = CyclicWord.of(geom.spelled()).unoriented()
                by_class.setdefault(cls, [])
                if len(by_class[cls]) < 3:
                    xs = tuple(
                        crossing_count(
                            geom, CurveGeometry(genus, alpha_events(j))
                        )
                        for j in range(1, genus)
                    )
                    xb = crossing_count(geom, CurveGeometry(genus, BETA))
                    by_class[cls].append((xs, xb, evs))
    return by_class


def search_epsilon(genus=4):
    """Embedded small layouts whose mod-2 class is e1 + e2."""
    print("=== embedded classes with mod-2 class e1+e2 (length 2, 4) ===")
    found = {}
    for length in (2, 4):
        parity = (1, 1, 0, 0)
        for cls, reps in enumerate_embedded(genus, length, parity, 4).items():
            found.setdefault(cls, []).extend(reps)
    for cls in sorted(found, key=lambda c: (len(c.letters), str(c))):
        print(f"  class {cls}:")
        for xs, xb, evs in found[cls][:2]:
            print(
                f"    chain={xs} beta={xb}  "
                f"{[(e.token(), str(e.t)) for e in evs]}"
            )
    return found


def phi_of(genus, word):
    """Apply the conjugating product a3^-1 a2^-1 b a1^-1 a2^-1 a3^-1
    (leftmost factor last) to a word, using geometry-derived tables."""
    a = {
        i: {
            s: twist_images(CurveGeometry(genus, alpha_events(i)), s)
            for s in (1, -1)
        }
        for i in (1, 2, 3)
    }
    b = twist_images(CurveGeometry(genus, BETA), 1)
    factors = [a[3][-1], a[2][-1], b, a[1][-1], a[2][-1], a[3][-1]]
    # evaluate: apply rightmost factor first
    out = word
    for f in reversed(factors):
        out = apply_images(f, out)
    return out


def search_zeta(genus, target_cyclic):
    """Embedded layout whose event pattern follows the target letters."""
    letters = target_cyclic.letters
    m = len(letters)
    mult = {}
    for s in letters:
        mult[abs(s)] = mult.get(abs(s), 0) + 1
    zones = {
        p: [F(2 * k + 1, 2 * n) + F(1, 256) for k in range(n)]
        for p, n in mult.items()
    }
    unoriented = target_cyclic.unoriented()
    hits = []
    pair_slots = {p: list(itertools.permutations(zones[p])) for p in mult}
    for combo in itertools.product(*(pair_slots[p] for p in sorted(mult))):
        assign = dict(zip(sorted(mult), [list(c) for c in combo]))
        evs = []
        ok = True
        counters = {p: 0 for p in mult}
        for s in letters:
            p = abs(s)
            t = assign[p][counters[p]]
            counters[p] += 1
            evs.append(Event(p, s > 0, t))
        geom = CurveGeometry(genus, evs)
        if geom.self_crossing_count():
            continue
        if CyclicWord.of(geom.spelled()).unoriented() != unoriented:
            continue
        hits.append(evs)
    print(f"=== zeta candidates for {target_cyclic} ===")
    for evs in hits[:5]:
        print(f"  {[(e.token(), str(e.t)) for e in evs]}")
        geom = CurveGeometry(genus, evs)
        for j in range(1, genus):
            n = crossing_count(geom, CurveGeometry(genus, alpha_events(j)))
            if n:
                print(f"    x alpha_{j}: {n}")
    return hits


def main():
    for g in (4, 5, 6):
        report("beta", g, BETA)
    report("psi", 4, PSI)
    report("gamma", 4, gamma_events(4))
    report("gamma", 5, gamma_events(4))

    search_epsilon(4)

    epsilon = [
        Event(1, False, F(5, 32)),
        Event(2, False, F(5, 32)),
        Event(3, False, F(5, 32)),
        Event(3, False, F(13, 32)),
    ]
    eps = report("epsilon", 4, epsilon)
    print(f"  oriented spelled class: {CyclicWord.of(eps.spelled())}")
    for g in (5, 6):
        other = CurveGeometry(g, epsilon)
        assert CyclicWord.of(other.spelled()) == CyclicWord.of(
            Word.parse(str(eps.spelled()), g)
        ), "epsilon class drifts with genus"
    img = phi_of(4, eps.spelled())
    print(f"phi(epsilon) class = {CyclicWord.of(img)}  (length {len(CyclicWord.of(img).letters)})")
    img5 = phi_of(5, Word.parse(str(eps.spelled()), 5))
    print(f"  at g=5        = {CyclicWord.of(img5)}")
    search_zeta(4, CyclicWord.of(img))


if __name__ == "__main__":
    main()
