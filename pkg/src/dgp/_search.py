"""Pure-Python branch-and-bound kernel for the exact solver.

All quantities are integers in units of ``1/scale`` where ``scale`` is a
common multiple of every block size, so block densities are exact. Vertex
utility caps (``ucap``) and size caps (``gcap``) are rounded up, which only
ever weakens pruning.

The compiled twin in ``_search_ext.pyx`` implements the same algorithm and
must return identical results.
"""

from __future__ import annotations


def best_partition(n, masks, scale, ucap, gcap, prune_connected, prune_bound,
                   init_value, init_labels):
    """Return ``(value, labels)`` of the best partition under the total order
    (higher value, fewer blocks, smaller restricted growth string).

    ``init_labels`` is a restricted growth string of a known partition with
    value ``init_value``; it is returned if nothing beats it.
    """
    masks = list(masks)
    half = scale // 2
    best_value = init_value
    best_labels = list(init_labels)
    best_k = max(best_labels) + 1 if best_labels else 0
    labels = [0] * n
    full = (1 << n) - 1

    def edges_in(block):
        e = 0
        b = block
        while b:
            low = b & -b
            e += (masks[low.bit_length() - 1] & block).bit_count()
            b ^= low
        return e >> 1

    def sum_ucap(block):
        t = 0
        b = block
        while b:
            low = b & -b
            t += ucap[low.bit_length() - 1]
            b ^= low
        return t

    def node(rem, acc, urest, k):
        nonlocal best_value, best_labels, best_k
        if rem == 0:
            if acc > best_value or (acc == best_value and (
                    k < best_k or (k == best_k and labels < best_labels))):
                best_value = acc
                best_labels = labels[:]
                best_k = k
            return
        r = rem.bit_count()
        if prune_bound:
            rest = min(urest, (r - 1) * half)
            if r >= 2:
                rest = min(rest, max(edges_in(rem) * scale // r, (r - 2) * half))
            bound = acc + rest
            if bound < best_value or (bound == best_value and k + 1 > best_k):
                return
        v = (rem & -rem).bit_length() - 1
        cands = []
        if prune_connected:
            _grow_connected(v, rem, masks, scale, ucap, gcap, prune_bound,
                            acc, urest, k, best_value, best_k, cands)
        else:
            rest_bits = rem & ~(1 << v)
            sub = rest_bits
            while True:
                block = sub | (1 << v)
                size = block.bit_count()
                dens = edges_in(block) * (scale // size)
                su = sum_ucap(block)
                if prune_bound:
                    b = acc + dens + urest - su
                    if not (b < best_value or (b == best_value and k + 1 > best_k)):
                        cands.append((su - dens, block, dens, su))
                else:
                    cands.append((su - dens, block, dens, su))
                if sub == 0:
                    break
                sub = (sub - 1) & rest_bits
        cands.sort()
        for _, block, dens, su in cands:
            b = block
            while b:
                low = b & -b
                labels[low.bit_length() - 1] = k
                b ^= low
            node(rem & ~block, acc + dens, urest - su, k + 1)

    node(full, 0, sum(ucap), 0)
    return best_value, best_labels


def _grow_connected(v, rem, masks, scale, ucap, gcap, prune_bound,
                    acc, urest, k, best_value, best_k, out):
    """Collect connected blocks containing ``v`` inside ``rem`` that survive
    the size-aware utility bound.

    Each connected set is visited once: candidates are popped in order and
    either added (recursing) or banned for the remaining siblings.
    """

    def visit(block, size, e, su, slack_used, cand, banned):
        # slack_used = sum over block of max(0, ucap[x] - gcap[size])
        if prune_bound:
            b = acc + urest - slack_used
            if b < best_value or (b == best_value and k + 1 > best_k):
                return
            dens = e * (scale // size)
            b = acc + dens + urest - su
            if not (b < best_value or (b == best_value and k + 1 > best_k)):
                out.append((su - dens, block, dens, su))
        else:
            dens = e * (scale // size)
            out.append((su - dens, block, dens, su))
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            nblock = block | low
            nsize = size + 1
            ne = e + (masks[u] & block).bit_count()
            nsu = su + ucap[u]
            if prune_bound:
                g = gcap[nsize]
                used = 0
                bb = nblock
                while bb:
                    lo = bb & -bb
                    d = ucap[lo.bit_length() - 1] - g
                    if d > 0:
                        used += d
                    bb ^= lo
            else:
                used = 0
            ncand = cand | (masks[u] & rem & ~nblock & ~banned)
            visit(nblock, nsize, ne, nsu, used, ncand, banned)
            banned |= low

    start = 1 << v
    used0 = max(0, ucap[v] - gcap[1]) if prune_bound else 0
    visit(start, 1, 0, ucap[v], used0, masks[v] & rem, start)


def utility_maxima(n, masks, cap_num, cap_den):
    """For each vertex ``x`` the pair ``(e, s)`` maximising ``e/s^2`` over
    connected sets of size ``s`` with ``e`` edges containing ``x``.

    ``cap_num[b]/cap_den[b]`` bounds ``e/s^2`` for every ``s >= b`` and stops
    growth early. All comparisons are cross-multiplied integers.
    """
    out = []
    for x in range(n):
        best = [0, 1]

        def visit(block, size, e, cand, banned):
            if e * best[1] * best[1] > best[0] * size * size:
                best[0], best[1] = e, size
            nxt = size + 1
            if nxt > n or cap_num[nxt] * best[1] * best[1] <= best[0] * cap_den[nxt]:
                return
            while cand:
                low = cand & -cand
                cand ^= low
                w = low.bit_length() - 1
                nblock = block | low
                visit(nblock, nxt, e + (masks[w] & block).bit_count(),
                      cand | (masks[w] & ~nblock & ~banned), banned)
                banned |= low
                if cap_num[nxt] * best[1] * best[1] <= best[0] * cap_den[nxt]:
                    return

        visit(1 << x, 1, 0, masks[x], 1 << x)
        out.append((best[0], best[1]))
    return out
