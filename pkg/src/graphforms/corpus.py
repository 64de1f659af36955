"""Deterministic verification corpora.

The default corpus is the fixed graph family the check suites run over:
small named graphs plus seeded random families.  Child seeds are derived
from the master seed with a fixed affine mix so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import graphs


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: graphs.Graph


def _child_seed(master: int, salt: int, i: int) -> int:
    return (master * 1_000_003 + salt * 7919 + i) % (2**31 - 1)


def build_default_corpus(seed: int = 0):
    """~350 graphs: K_1..K_6, C_3..C_10, P_2..P_8, stars 3..6, wheels 4..8,
    octahedron, icosahedron, cross_polytope(3), 200 ER (n <= 12), 100 random
    contractible, 20 random trees."""
    entries = []
    for n in range(1, 7):
        entries.append(CorpusEntry(f"complete_{n}", graphs.complete_graph(n)))
    for n in range(3, 11):
        entries.append(CorpusEntry(f"cycle_{n}", graphs.cycle_graph(n)))
    for n in range(2, 9):
        entries.append(CorpusEntry(f"path_{n}", graphs.path_graph(n)))
    for n in range(3, 7):
        entries.append(CorpusEntry(f"star_{n}", graphs.star_graph(n)))
    for n in range(4, 9):
        entries.append(CorpusEntry(f"wheel_{n}", graphs.wheel_graph(n)))
    entries.append(CorpusEntry("octahedron", graphs.octahedron()))
    entries.append(CorpusEntry("icosahedron", graphs.icosahedron()))
    entries.append(CorpusEntry("cross_polytope_3", graphs.cross_polytope(3)))
    ps = (0.3, 0.5, 0.7)
    for i in range(200):
        n = 4 + (i // 3) % 9
        p = ps[i % 3]
        g = graphs.random_er(n, p, _child_seed(seed, 1, i))
        entries.append(CorpusEntry(f"er_{i:03d}_n{n}_p{p}", g))
    for i in range(100):
        n = 4 + i % 7
        g = graphs.random_contractible(n, _child_seed(seed, 2, i))
        entries.append(CorpusEntry(f"contractible_{i:03d}_n{n}", g))
    for i in range(20):
        n = 4 + i % 7
        g = graphs.random_tree(n, _child_seed(seed, 3, i))
        entries.append(CorpusEntry(f"tree_{i:02d}_n{n}", g))
    return entries


def build_quick_corpus(seed: int = 0):
    """A small deterministic corpus for fast runs (CLI default smoke level)."""
    entries = []
    for n in range(1, 5):
        entries.append(CorpusEntry(f"complete_{n}", graphs.complete_graph(n)))
    for n in range(3, 7):
        entries.append(CorpusEntry(f"cycle_{n}", graphs.cycle_graph(n)))
    for n in range(2, 5):
        entries.append(CorpusEntry(f"path_{n}", graphs.path_graph(n)))
    entries.append(CorpusEntry("star_3", graphs.star_graph(3)))
    entries.append(CorpusEntry("wheel_4", graphs.wheel_graph(4)))
    entries.append(CorpusEntry("wheel_5", graphs.wheel_graph(5)))
    entries.append(CorpusEntry("octahedron", graphs.octahedron()))
    for i in range(10):
        n = 4 + i % 5
        entries.append(
            CorpusEntry(f"er_{i:03d}_n{n}_p0.5", graphs.random_er(n, 0.5, _child_seed(seed, 1, i)))
        )
    for i in range(6):
        n = 4 + i % 4
        entries.append(
            CorpusEntry(
                f"contractible_{i:03d}_n{n}",
                graphs.random_contractible(n, _child_seed(seed, 2, i)),
            )
        )
    for i in range(4):
        n = 4 + i % 4
        entries.append(CorpusEntry(f"tree_{i:02d}_n{n}", graphs.random_tree(n, _child_seed(seed, 3, i))))
    return entries
