"""
rsq selfcheck: seeded randomized invariant checks.

    - support decomposition re-sums to the input
    - radicalize is idempotent and keeps homology
    - F(M) -> F(N)[s] vanishes up to homotopy outside s in {0, 1}
    - Hom between simple complexes of the oriented 3-cycle follows the cyclic degree law
"""

import logging
from typing import Callable, List, Tuple

import numpy as np
import pandas as pd

from rsq import config
from rsq.algebra import ProjSum, RSZAlgebra
from rsq.commands import emit
from rsq.complexes import (contractible, decompose_by_support, direct_sum, hom_homotopy, homology_dims,
                           radicalize, random_radical_complex, reassembles)
from rsq.cover import build_cover_window
from rsq.derived_ar import DerivedObject, hom_degree_pattern
from rsq.koszul import koszul_rep
from rsq.linalg import FieldSpec
from rsq.quiver import Quiver
from rsq.reps import injective_at, knit_component

logger = logging.getLogger(__name__)

A3 = Quiver.from_edges("abc", [("alpha", "a", "b"), ("beta", "b", "c")])
CYCLE3 = Quiver.from_edges("abc", [("alpha", "a", "b"), ("beta", "b", "c"), ("gamma", "c", "a")])
LOOP = Quiver.from_edges("a", [("alpha", "a", "a")])

Outcome = Tuple[int, int]


def register(subparsers) -> None:
    parser = subparsers.add_parser("selfcheck", help="randomized invariant checks (seeded by RSQ_SEED)")
    parser.add_argument("--rounds", type=int, default=5, help="random inputs per quiver")
    parser.set_defaults(handler=handle)


# --------------------- Checks ---------------------
def check_support(F: FieldSpec, rng: np.random.Generator, rounds: int) -> Outcome:
    passed = total = 0
    for q in (A3, CYCLE3):
        alg = RSZAlgebra(q, F)
        for _ in range(rounds):
            c = random_radical_complex(alg, rng, 0, 3)
            total += 1
            passed += reassembles(c, decompose_by_support(c))
    return passed, total


def check_radicalize(F: FieldSpec, rng: np.random.Generator, rounds: int) -> Outcome:
    passed = total = 0
    for q in (A3, LOOP):
        alg = RSZAlgebra(q, F)
        for _ in range(rounds):
            c = random_radical_complex(alg, rng, 0, 2)
            s = ProjSum({v: int(rng.integers(0, 3)) for v in q.vertices})
            noisy = direct_sum([c, contractible(alg, s, int(rng.integers(0, 2)))])
            r = radicalize(noisy)
            ok = r.is_radical() and radicalize(r) == r
            ok = ok and all(homology_dims(noisy, n) == homology_dims(r, n) for n in range(noisy.lo + 1, noisy.hi))
            total += 1
            passed += ok
    return passed, total


def check_shift_dichotomy(F: FieldSpec, rng: np.random.Generator, rounds: int) -> Outcome:
    cw = build_cover_window(A3, 0, 2)
    opp = cw.quiver().opposite()
    knitted = knit_component(opp, [injective_at(opp, x, F) for x in opp.vertices])
    images = [koszul_rep(cw, knitted.payload[v.id]) for v in knitted.vertices]
    passed = total = 0
    for fm in images:
        for fn in images:
            total += 1
            passed += all(hom_homotopy(fm, fn.shift(s)).dim == 0 for s in (-2, -1, 2, 3))
    return passed, total


def check_degree_law(F: FieldSpec, rng: np.random.Generator, rounds: int) -> Outcome:
    successor = {arrow.src: arrow.tgt for arrow in CYCLE3.arrows}
    shifts = range(0, 4)
    passed = total = 0
    for a in CYCLE3.vertices:
        source = DerivedObject.simple(CYCLE3, a, 0, F)
        reached = [a]
        for _ in shifts[1:]:
            reached.append(successor[reached[-1]])
        for b in CYCLE3.vertices:
            pattern = hom_degree_pattern(source, DerivedObject.simple(CYCLE3, b, 0, F), shifts)
            total += 1
            passed += all(pattern[m] == (1 if reached[m] == b else 0) for m in shifts)
    return passed, total


CHECKS: List[Tuple[str, Callable[..., Outcome]]] = [
    ("support decomposition re-sum", check_support),
    ("radicalize idempotence and homology", check_radicalize),
    ("morphism shift dichotomy (A3 window)", check_shift_dichotomy),
    ("simple complex degree law (3-cycle)", check_degree_law),
]


def handle(args, cfg) -> int:
    rng = np.random.default_rng(config.SEED)
    rows = []
    for name, check in CHECKS:
        passed, total = check(cfg.field, rng, max(args.rounds, 1))
        logger.info("%s: %s/%s", name, passed, total)
        rows.append((name, f"{passed}/{total}", "pass" if passed == total else "FAIL"))
    frame = pd.DataFrame(rows, columns=["check", "cases", "result"])
    emit(frame.to_string(index=False))
    return 0 if (frame["result"] == "pass").all() else 1
