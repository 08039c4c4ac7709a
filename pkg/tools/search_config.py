#!/usr/bin/env python3
"""Grid search over (beta, epsilon) layout combinations.

Goal: find the configuration in which the conjugated image of epsilon
under  a3^-1 a2^-1 b a1^-1 a2^-1 a3^-1  is as short as possible — the
sign that the curve system matches the intended picture — and print
the layouts so they can be frozen into the registry builder.
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

GENUS = 4


def alpha_events(i):
    return [Event(i, True, F(2, 3)), Event(i + 1, True, F(1, 3))]


ALPHAS = [CurveGeometry(GENUS, alpha_events(j)) for j in (1, 2, 3)]


def chain_profile(geom):
    return tuple(crossing_count(geom, a) for a in ALPHAS)


def beta_candidates_4():
    """One event per crosscap 1..4, embedded, chain profile (0,0,0)."""
    target_h = (1, 1, 1, 1)
    out = []
    grid = [F(1, 6), F(1, 2), F(5, 6)]
    for copies in itertools.product((True, False), repeat=4):
        for order in itertools.permutations(range(4)):
            # order = traversal order of the four crosscaps
            for params in itertools.product(grid, repeat=4):
                evs = [
                    Event(order[k] + 1, copies[k], params[k]) for k in range(4)
                ]
                geom = CurveGeometry(GENUS, evs)
                if geom.self_crossing_count():
                    continue
                w = geom.spelled()
                if tuple(w.exponent_vector()) != target_h:
                    continue
                if chain_profile(geom) != (0, 0, 0):
                    continue
                out.append((CyclicWord.of(w), evs))
    return out


def beta_candidates_6():
    """Six events: crosscaps 1..4 once plus a cancelling pair, class
    exactly x1 x2 x3 x4 (up to inversion), chain profile (0,0,0)."""
    target = CyclicWord.of(Word.parse("x1 x2 x3 x4", GENUS)).unoriented()
    out = []
    grid = [F(1, 6), F(1, 2), F(5, 6)]
    pair_grid = [F(5, 24), F(11, 24)]
    seen = set()
    for extra in (1, 2, 3, 4):
        base = [1, 2, 3, 4, extra, extra]
        perms = set(itertools.permutations(base))
        necks = set()
        for seq in perms:
            canon = min(tuple(seq[r:] + seq[:r]) for r in range(6))
            necks.add(canon)
        for pairs in sorted(necks):
            idx_extra = [i for i, p in enumerate(pairs) if p == extra]
            if len(idx_extra) != 2 + (1 if extra in (1, 2, 3, 4) and base.count(extra) == 3 else 0):
                # extra pair occurs 3 times when extra duplicates a base crosscap
                pass
            for copies in itertools.product((True, False), repeat=6):
                # homology: net +1 on each of 1..4
                net = {p: 0 for p in (1, 2, 3, 4)}
                for p, c in zip(pairs, copies):
                    net[p] += 1 if c else -1
                if any(net[p] != 1 for p in (1, 2, 3, 4)):
                    continue
                mult = {p: sum(1 for q in pairs if q == p) for p in set(pairs)}
                slot_sets = {}
                ok = True
                for p, m in mult.items():
                    if m == 1:
                        slot_sets[p] = [(grid[1],)]
                    elif m == 2:
                        slot_sets[p] = list(itertools.permutations(pair_grid))
                    elif m == 3:
                        slot_sets[p] = list(
                            itertools.permutations([F(5, 24), F(11, 24), F(17, 24)])
                        )
                    else:
                        ok = False
                if not ok:
                    continue
                for combo in itertools.product(
                    *(slot_sets[p] for p in sorted(mult))
                ):
                    assign = dict(zip(sorted(mult), [list(c) for c in combo]))
                    counters = {p: 0 for p in mult}
                    evs = []
                    for p, c in zip(pairs, copies):
                        evs.append(Event(p, c, assign[p][counters[p]]))
                        counters[p] += 1
                    geom = CurveGeometry(GENUS, evs)
                    if geom.self_crossing_count():
                        continue
                    cw = CyclicWord.of(geom.spelled())
                    if cw.unoriented() != target:
                        continue
                    if chain_profile(geom) != (0, 0, 0):
                        continue
                    key = (pairs, copies)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append((cw, evs))
    return out


EPSILONS = {
    "A(x1x2^2x3^2x2^-1)": [
        Event(1, False, F(5, 32)),
        Event(2, False, F(5, 32)),
        Event(3, False, F(5, 32)),
        Event(3, False, F(13, 32)),
    ],
    "B(x1x2^2x3x2^-1x3^-1x2^-2)": [
        Event(1, True, F(5, 32)),
        Event(3, True, F(13, 32)),
        Event(2, False, F(5, 32)),
        Event(3, False, F(5, 32)),
    ],
    "C(x1x2^2x3^2x4^2x3^-2x2^-1)": [
        Event(1, False, F(5, 32)),
        Event(2, False, F(5, 32)),
        Event(4, False, F(5, 32)),
        Event(4, False, F(13, 32)),
    ],
}


def phi_of(word, beta_geom):
    a = {
        i: twist_images(CurveGeometry(GENUS, alpha_events(i)), -1) for i in (1, 2, 3)
    }
    b = twist_images(beta_geom, 1)
    factors = [a[3], a[2], b, a[1], a[2], a[3]]
    out = word
    for f in reversed(factors):
        out = apply_images(f, out)
    return out


def main():
    beta4 = beta_candidates_4()
    print(f"4-event beta candidates: {len(beta4)}")
    classes4 = {}
    for cw, evs in beta4:
        classes4.setdefault(cw.unoriented(), []).append(evs)
    for cw, reps in classes4.items():
        print(f"  class {cw} ({len(reps)} reps)")

    beta6 = beta_candidates_6()
    print(f"6-event beta candidates with class x1x2x3x4: {len(beta6)}")
    classes6 = {}
    for cw, evs in beta6:
        key = tuple(e.token() for e in evs)
        classes6.setdefault(key, evs)
    for key in sorted(classes6):
        evs = classes6[key]
        geom = CurveGeometry(GENUS, evs)
        xb4 = crossing_count(
            geom,
            CurveGeometry(
                5,
                [Event(4, True, F(2, 3)), Event(5, True, F(1, 3))],
            )
            if False
            else CurveGeometry(GENUS, alpha_events(3)),
        )
        print(f"  {key}: {[(str(e.t)) for e in evs]}")

    # evaluate phi(epsilon) length over configurations
    trial_betas = []
    for cw, reps in classes4.items():
        trial_betas.append((f"beta4[{cw}]", reps[0]))
    picked = set()
    for key, evs in classes6.items():
        if key not in picked:
            picked.add(key)
            trial_betas.append((f"beta6[{','.join(key)}]", evs))

    print("\n=== phi(epsilon) lengths ===")
    results = []
    for bname, bevs in trial_betas:
        bgeom = CurveGeometry(GENUS, bevs)
        for ename, eevs in EPSILONS.items():
            egeom = CurveGeometry(GENUS, eevs)
            img = CyclicWord.of(phi_of(egeom.spelled(), bgeom))
            results.append((len(img.letters), bname, ename, img))
    results.sort(key=lambda r: r[0])
    for ln, bname, ename, img in results[:20]:
        print(f"  len={ln:3d}  {bname} + {ename}")
        if ln <= 12:
            print(f"        -> {img}")


if __name__ == "__main__":
    main()
