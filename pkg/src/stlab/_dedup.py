"""Exhaustive Prüfer-space oracle for the unlabeled-tree census.

Decodes every admissible Prüfer sequence, canonicalizes each labeled tree,
and deduplicates the codes.  Fully independent of the level-sequence
enumerator in treeiso; kept fast with a numba kernel because the restricted
sequence space still holds (n-2)^(n-2) trees at n = 10.

Codes are bit-packed ints (MSB-first, '(' = 1, ')' = 0, 2n bits) inside the
kernel and converted to parenthesis strings at the boundary.
"""

from __future__ import annotations

import numpy as np
from numba import njit

DEDUP_MAX_N = 10


@njit(cache=True)
def _cmp_codes(abits, alen, bbits, blen):
    """Lexicographic order of paren strings: at the first differing position
    the string holding '(' (bit 1) is smaller; a prefix is smaller."""
    m = min(alen, blen)
    for i in range(m):
        ba = (abits >> (alen - 1 - i)) & 1
        bb = (bbits >> (blen - 1 - i)) & 1
        if ba != bb:
            return -1 if ba == 1 else 1
    if alen == blen:
        return 0
    return -1 if alen < blen else 1


@njit(cache=True)
def _rooted_bits(nbr, deg, root, block, order, parent, bits, lens, cb, cl):
    """Bit code of the subtree at root, not crossing into block."""
    order[0] = root
    parent[root] = -1
    count = 1
    head = 0
    while head < count:
        u = order[head]
        head += 1
        pu = parent[u]
        for j in range(deg[u]):
            v = nbr[u, j]
            if v != pu and v != block:
                parent[v] = u
                order[count] = v
                count += 1
    for i in range(count - 1, -1, -1):
        u = order[i]
        pu = parent[u]
        nch = 0
        for j in range(deg[u]):
            v = nbr[u, j]
            if v != pu and v != block:
                cb[nch] = bits[v]
                cl[nch] = lens[v]
                nch += 1
        # insertion sort by paren-lex order
        for a in range(1, nch):
            kb = cb[a]
            kl = cl[a]
            b = a - 1
            while b >= 0 and _cmp_codes(cb[b], cl[b], kb, kl) > 0:
                cb[b + 1] = cb[b]
                cl[b + 1] = cl[b]
                b -= 1
            cb[b + 1] = kb
            cl[b + 1] = kl
        acc = 0
        total = 0
        for c in range(nch):
            acc = (acc << cl[c]) | cb[c]
            total += cl[c]
        bits[u] = (1 << (total + 1)) | (acc << 1)
        lens[u] = total + 2
    return bits[root], lens[root]


@njit(cache=True)
def _dedup_kernel(n, lo):
    """Canonical bit code of the tree decoded from every Prüfer sequence over
    the alphabet [lo, n)."""
    width = n - lo
    total = width ** (n - 2)
    out = np.empty(total, np.int64)

    seq = np.empty(n - 2, np.int64)
    deg0 = np.empty(n, np.int64)
    eu = np.empty(n - 1, np.int64)
    ev = np.empty(n - 1, np.int64)
    nbr = np.empty((n, n), np.int64)
    deg = np.empty(n, np.int64)
    cur = np.empty(n, np.int64)
    layer = np.empty(n, np.int64)
    nxt = np.empty(n, np.int64)
    alive = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    bits = np.empty(n, np.int64)
    lens = np.empty(n, np.int64)
    cb = np.empty(n, np.int64)
    cl = np.empty(n, np.int64)

    for idx in range(total):
        t = idx
        for j in range(n - 2):
            seq[j] = lo + t % width
            t //= width

        # decode: smallest-leaf elimination with the moving pointer
        for v in range(n):
            deg0[v] = 1
        for j in range(n - 2):
            deg0[seq[j]] += 1
        ptr = 0
        while deg0[ptr] != 1:
            ptr += 1
        leaf = ptr
        for j in range(n - 2):
            s = seq[j]
            eu[j] = leaf
            ev[j] = s
            deg0[s] -= 1
            if deg0[s] == 1 and s < ptr:
                leaf = s
            else:
                ptr += 1
                while deg0[ptr] != 1:
                    ptr += 1
                leaf = ptr
        eu[n - 2] = leaf
        ev[n - 2] = n - 1

        # adjacency
        for v in range(n):
            deg[v] = 0
        for j in range(n - 1):
            a = eu[j]
            b = ev[j]
            nbr[a, deg[a]] = b
            deg[a] += 1
            nbr[b, deg[b]] = a
            deg[b] += 1

        # centers by leaf stripping
        remaining = n
        nl = 0
        for v in range(n):
            alive[v] = 1
            cur[v] = deg[v]
            if cur[v] == 1:
                layer[nl] = v
                nl += 1
        while remaining > 2:
            nn = 0
            for i in range(nl):
                v = layer[i]
                alive[v] = 0
                remaining -= 1
                for j in range(deg[v]):
                    u = nbr[v, j]
                    if alive[u] == 1:
                        cur[u] -= 1
                        if cur[u] == 1:
                            nxt[nn] = u
                            nn += 1
            for i in range(nn):
                layer[i] = nxt[i]
            nl = nn

        c1 = -1
        c2 = -1
        for v in range(n):
            if alive[v] == 1:
                if c1 < 0:
                    c1 = v
                else:
                    c2 = v

        if c2 < 0:
            code, _ = _rooted_bits(nbr, deg, c1, -1, order, parent, bits, lens, cb, cl)
        else:
            ab, al = _rooted_bits(nbr, deg, c1, c2, order, parent, bits, lens, cb, cl)
            bb, bl = _rooted_bits(nbr, deg, c2, c1, order, parent, bits, lens, cb, cl)
            if _cmp_codes(ab, al, bb, bl) <= 0:
                code = (ab << bl) | bb
            else:
                code = (bb << al) | ab
        out[idx] = code
    return out


def _bits_to_paren(bits: int, length: int) -> str:
    return "".join("(" if (bits >> (length - 1 - i)) & 1 else ")" for i in range(length))


def unlabeled_tree_codes_dedup(n: int, restricted: bool = True) -> list[str]:
    """Sorted canonical codes of all n-vertex trees via exhaustive
    Prüfer decoding and code deduplication.

    With restricted=True the sequence alphabet is [2, n), i.e. vertices 0 and
    1 are leaves; every isomorphism class has such a representative (each
    tree has at least two leaves), and the space shrinks from n^(n-2) to
    (n-2)^(n-2).  restricted=False walks the full space (small n only).
    """
    if not 1 <= n <= DEDUP_MAX_N:
        raise ValueError(f"oracle supports 1 <= n <= {DEDUP_MAX_N}")
    if n == 1:
        return ["()"]
    if n == 2:
        return ["()()"]
    lo = 2 if restricted else 0
    codes = _dedup_kernel(n, lo)
    return sorted(_bits_to_paren(int(b), 2 * n) for b in np.unique(codes))
