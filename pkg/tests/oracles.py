"""Independent reference computations used to derive expected values."""

import itertools


def largest_odd_divisor(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def pow2_halving_runs(n: int) -> list[tuple[int, ...]]:
    """Every sequence of values from dividing n by power-of-two divisors until odd."""
    if n % 2:
        return [(n,)]
    runs = []
    for i in range(1, n.bit_length() + 1):
        if n % (2 ** i) == 0:
            runs.extend((n,) + r for r in pow2_halving_runs(n // 2 ** i))
    return runs


def brute_force_gap_bound(b, a):
    """Minimal max-gap over every admissible embedding, by enumeration."""
    m, n = len(b), len(a)
    if m > n or b[0] != a[0] or b[-1] != a[-1]:
        return None
    best = None
    for rest in itertools.combinations(range(1, n), m - 1):
        idx = (0,) + rest
        if any(b[i] != a[j] for i, j in enumerate(idx)):
            continue
        gaps = [idx[i + 1] - idx[i] - 1 for i in range(m - 1)] + [n - 1 - idx[-1]]
        cost = max(gaps)
        if best is None or cost < best:
            best = cost
    return best


def bfs_sequences(initials, step):
    """Maximal sequences by breadth-first expansion, as a set of tuples."""
    done = set()
    frontier = [(c,) for c in initials]
    while frontier:
        nxt = []
        for path in frontier:
            succ = list(step(path[-1]))
            if not succ:
                done.add(path)
            nxt.extend(path + (s,) for s in succ)
        frontier = nxt
    return done
