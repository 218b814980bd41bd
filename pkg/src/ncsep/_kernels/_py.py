"""Pure-Python kernels.  Semantics must match ``_fast.pyx`` exactly."""
from itertools import combinations

import numpy as np


def harper_profile(m):
    """Vertex boundary of every Harper initial segment, as an int64 array of length 2^m + 1.

    Appending a weight-k vertex with highest 1-coordinate ``t`` removes it
    from the boundary and adds its ``m - 1 - t`` upper neighbours that no
    earlier layer-k vertex reaches.
    """
    out = np.empty((1 << m) + 1, dtype=np.int64)
    out[0] = 0
    out[1] = m
    b = m
    pos = 2
    for k in range(1, m + 1):
        for c in combinations(range(m), k):
            b += m - 2 - c[-1]
            out[pos] = b
            pos += 1
    return out


def refine_pass(adj, labels, order, lo, hi):
    """One greedy pass moving separator vertices (label 2) into side 0 or 1.

    A move of ``x`` to side ``t`` pulls every side-``1-t`` neighbour of ``x``
    into the separator; its gain is ``1 - pulled``.  Moves with gain >= 0 that
    keep both side sizes in ``[lo, hi]`` are applied greedily in ``order``;
    touched vertices are locked for the rest of the pass.  The pass is then
    rolled back to the last point where the separator was smallest.

    ``labels`` (int8) is modified in place.  Returns the change in separator
    size, which is never positive.
    """
    deg = adj.shape[1]
    counts = [int(np.count_nonzero(labels == 0)), int(np.count_nonzero(labels == 1))]
    locked = set()
    log = []
    cur = best = 0
    best_len = 0
    for x in order.tolist():
        if x in locked or labels[x] != 2:
            continue
        row = adj[x].tolist()
        best_t = -1
        best_gain = -1
        best_pull = 0
        for t in (0, 1):
            opp = 1 - t
            pulled = 0
            ok = True
            for j in range(deg):
                nb = row[j]
                if labels[nb] == opp:
                    if nb in locked:
                        ok = False
                        break
                    pulled += 1
            if not ok:
                continue
            if counts[t] + 1 > hi or counts[opp] - pulled < lo:
                continue
            if 1 - pulled > best_gain:
                best_gain = 1 - pulled
                best_t = t
                best_pull = pulled
        if best_t < 0:
            continue
        opp = 1 - best_t
        log.append((x, 2))
        labels[x] = best_t
        locked.add(x)
        for nb in row:
            if labels[nb] == opp:
                log.append((nb, opp))
                labels[nb] = 2
                locked.add(nb)
        counts[best_t] += 1
        counts[opp] -= best_pull
        cur -= best_gain
        if cur <= best:
            best = cur
            best_len = len(log)
    for x, old in reversed(log[best_len:]):
        labels[x] = old
    return best
