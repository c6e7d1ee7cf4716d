"""Brute-force reference implementations, independent of the package.

Everything here works on plain Python sets and itertools enumeration,
deliberately avoiding the bitmask/numpy machinery under test.  Slow and
obviously correct; used to freeze expected values and to cross-check.
"""

import itertools


def adj_sets(g):
    """Adjacency of a Digraph as a tuple of successor sets."""
    return tuple({v for v in range(g.n) if (g.rows[u] >> v) & 1} for u in range(g.n))


def o_product(table, a, b):
    return {table[x][y] for x in a for y in b}


def o_closure(table, s):
    cur = set(s) | {0}
    while True:
        nxt = cur | o_product(table, cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


def o_image(adj, xs):
    out = set()
    for x in xs:
        out |= adj[x]
    return out


def o_boundary(adj, xs):
    return o_image(adj, xs) - set(xs)


def o_wedge(adj, n, xs):
    return set(range(n)) - set(xs) - o_image(adj, xs)


def o_kappa(adj, n, k):
    """(separable, kappa, fragments as frozensets), fully exhaustive."""
    best = None
    frags = []
    for r in range(k, n + 1):
        for xs in itertools.combinations(range(n), r):
            if len(o_wedge(adj, n, xs)) < k:
                continue
            b = len(o_boundary(adj, xs))
            if best is None or b < best:
                best = b
                frags = [frozenset(xs)]
            elif b == best:
                frags.append(frozenset(xs))
    if best is None:
        return False, n - 2 * k + 1, []
    return True, best, frags


def o_local_connectivity(adj, n, x, y):
    """min |boundary(A)| over A with x in A and y outside Gamma(A)."""
    best = None
    others = [v for v in range(n) if v not in (x, y)]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            a = {x, *extra}
            if y in o_image(adj, a):
                continue
            b = len(o_boundary(adj, a))
            if best is None or b < best:
                best = b
    return best


def o_is_matching(g, x_set, pairs, k):
    xs = set(x_set)
    if len(pairs) != k:
        return False
    heads = [p[0] for p in pairs]
    tails = [p[1] for p in pairs]
    if len(set(heads)) != k or len(set(tails)) != k:
        return False
    return all(
        u in xs and v not in xs and (g.rows[u] >> v) & 1 for u, v in pairs
    )
