import itertools
import math
from collections import Counter

import pytest

from partition_moments import SequenceFamily

FAMILIES = {
    "naturals": SequenceFamily.naturals(),
    "barnes2": SequenceFamily.barnes(2),
    "barnes3": SequenceFamily.barnes(3),
    "epstein2": SequenceFamily.epstein(2),
    "epstein3": SequenceFamily.epstein(3),
}


def lattice_multiplicities(kind, d, cutoff):
    """g(lambda) by direct enumeration over N_0^d minus the origin."""
    counts = Counter()
    side = cutoff if kind == "barnes" else math.isqrt(cutoff)
    for m in itertools.product(range(side + 1), repeat=d):
        if not any(m):
            continue
        q = sum(m) if kind == "barnes" else sum(x * x for x in m)
        if q <= cutoff:
            counts[q] += 1
    return dict(counts)


def brute_partitions(mults, n):
    """p(n, m) by listing every multiset of coloured parts.

    Parts are pairs (lambda, colour); a partition is a non-increasing tuple of
    such pairs, so each multiset is produced once.
    """
    parts = sorted(((lam, c) for lam, g in mults.items() if lam <= n for c in range(g)), reverse=True)
    counts = Counter()

    def rec(start, remaining, used):
        if remaining == 0:
            counts[used] += 1
            return
        for i in range(start, len(parts)):
            lam = parts[i][0]
            if lam <= remaining:
                rec(i, remaining - lam, used + 1)

    rec(0, n, 0)
    return counts


@pytest.fixture(params=list(FAMILIES))
def family(request):
    return FAMILIES[request.param]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
