"""Shared example data: the five-vertex algebra with a loop and rad^2 = 0,
its injective envelope of S(4), and the syzygy sequence used throughout the
test suite and the shipped example problem."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import QQ
from .pathalg import build_path_algebra
from .quiver import Quiver, RelationSet, all_length_two_paths
from .reps import (
    AddWitness,
    ExactTriple,
    direct_sum,
    injective_module,
    projective_cover_syzygy,
    projective_module,
)


def loop_line_quiver():
    return Quiver.build(
        ["1", "2", "3", "4", "5"],
        [("a1", "1", "2"), ("a2", "2", "3"), ("a3", "3", "4"),
         ("a4", "4", "5"), ("b", "4", "4")],
    )


def loop_line_algebra(field=QQ, max_path_len=2):
    q = loop_line_quiver()
    rels = RelationSet.build(q, field, all_length_two_paths(q))
    return build_path_algebra(q, rels, max_path_len, field)


@dataclass
class SyzygyExample:
    algebra: object
    M: object            # injective envelope of S(4)
    P3: object
    P4: object
    cover: object        # P(M), equals P3 + P4
    epi: object
    omega: object        # Omega(M), isomorphic to S(4) + S(5)
    incl: object
    triple: ExactTriple  # 0 -> Omega(M) -> P(M) -> M -> 0
    m: object            # the approximating module: P(M) again
    m_summands: tuple


def syzygy_example(field=QQ):
    alg = loop_line_algebra(field)
    M = injective_module(alg, "4")
    M.name = "M"
    cover, epi, omega, incl = projective_cover_syzygy(M)
    p3 = projective_module(alg, "3")
    p4 = projective_module(alg, "4")
    m, _, _ = direct_sum(alg, [p3, p4], name="P3+P4")
    assert cover.same_presentation(m)
    witness = AddWitness(("P3", "P4"), (p3, p4))
    triple = ExactTriple(omega, cover, M, incl, epi, witness)
    return SyzygyExample(alg, M, p3, p4, cover, epi, omega, incl, triple, m, (p3, p4))
