import itertools

import pytest

from graphforms import checks, corpus


def brute_isomorphic(g, h) -> bool:
    """Exhaustive isomorphism test for tiny graphs (n <= 8)."""
    if g.n != h.n or g.m != h.m:
        return False
    if g.n > 8:
        raise ValueError("brute_isomorphic is for tiny graphs")
    for perm in itertools.permutations(range(g.n)):
        if all(h.adjacent(perm[u], perm[v]) for u, v in g.edges):
            return True
    return False


@pytest.fixture(scope="session")
def default_cache():
    """Full default corpus with shared per-graph caches (acceptance suite)."""
    return checks.CorpusCache(corpus.build_default_corpus(seed=0))
