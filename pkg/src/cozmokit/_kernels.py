"""Compiled inner loops for the bulk paths.

Each kernel mirrors a plain-Python step function elsewhere in the package;
the test suite checks them against each other bit for bit.
"""

import numpy as np
from numba import njit

# time-indexed register layout: in a register of length L at step t,
# 1-based cell k holds buf[t + L - k]


@njit(cache=True, nogil=True)
def trivium_run(state, skip, out):
    """Clock ``skip`` times silently, then once per slot of ``out``.

    ``state`` (288 uint8, s1..s288 at index 0..287) is updated in place.
    """
    n = skip + out.shape[0]
    a = np.empty(93 + n, np.uint8)
    b = np.empty(84 + n, np.uint8)
    c = np.empty(111 + n, np.uint8)
    for k in range(1, 94):
        a[93 - k] = state[k - 1]
    for k in range(1, 85):
        b[84 - k] = state[93 + k - 1]
    for k in range(1, 112):
        c[111 - k] = state[177 + k - 1]
    for t in range(n):
        t1 = a[t + 27] ^ a[t]
        t2 = b[t + 15] ^ b[t]
        t3 = c[t + 45] ^ c[t]
        if t >= skip:
            out[t - skip] = t1 ^ t2 ^ t3
        a[t + 93] = t3 ^ (c[t + 2] & c[t + 1]) ^ a[t + 24]
        b[t + 84] = t1 ^ (a[t + 2] & a[t + 1]) ^ b[t + 6]
        c[t + 111] = t2 ^ (b[t + 2] & b[t + 1]) ^ c[t + 24]
    for k in range(1, 94):
        state[k - 1] = a[n + 93 - k]
    for k in range(1, 85):
        state[93 + k - 1] = b[n + 84 - k]
    for k in range(1, 112):
        state[177 + k - 1] = c[n + 111 - k]


@njit(cache=True, nogil=True)
def _pack(r, lo, length):
    v = 0
    for i in range(length):
        v |= np.int64(r[lo + i]) << i
    return v


@njit(cache=True, nogil=True)
def _unpack(v, r, lo, length):
    for i in range(length):
        r[lo + i] = (v >> i) & 1


@njit(cache=True, nogil=True)
def a51_run(regs, out):
    """Majority-clocked A5/1 on ``regs`` (64 uint8, r0..r63) in place."""
    ra = _pack(regs, 0, 19)
    rb = _pack(regs, 19, 22)
    rc = _pack(regs, 41, 23)
    for i in range(out.shape[0]):
        out[i] = ((ra >> 18) ^ (rb >> 21) ^ (rc >> 22)) & 1
        ca = (ra >> 8) & 1
        cb = (rb >> 10) & 1
        cc = (rc >> 10) & 1
        m = (ca & cb) ^ (cb & cc) ^ (ca & cc)
        if ca == m:
            fb = ((ra >> 13) ^ (ra >> 16) ^ (ra >> 17) ^ (ra >> 18)) & 1
            ra = ((ra << 1) | fb) & 0x7FFFF
        if cb == m:
            fb = ((rb >> 20) ^ (rb >> 21)) & 1
            rb = ((rb << 1) | fb) & 0x3FFFFF
        if cc == m:
            fb = ((rc >> 7) ^ (rc >> 20) ^ (rc >> 21) ^ (rc >> 22)) & 1
            rc = ((rc << 1) | fb) & 0x7FFFFF
    _unpack(ra, regs, 0, 19)
    _unpack(rb, regs, 19, 22)
    _unpack(rc, regs, 41, 23)


@njit(cache=True, nogil=True)
def cozmo_run(regs, zbits, out):
    """COZMO register bank driven by precomputed Trivium bits.

    One step per entry of ``zbits``; the first ``len(zbits) - len(out)``
    outputs are discarded.
    """
    skip = zbits.shape[0] - out.shape[0]
    ra = _pack(regs, 0, 19)
    rb = _pack(regs, 19, 22)
    rc = _pack(regs, 41, 23)
    for i in range(zbits.shape[0]):
        t = ((ra >> 18) ^ (rb >> 21) ^ (rc >> 22)) & 1
        if i >= skip:
            out[i - skip] = t
        p1 = ((ra >> 13) ^ (ra >> 16) ^ (ra >> 17) ^ (ra >> 18)) & 1
        p2 = ((rb >> 20) ^ (rb >> 21)) & 1
        p3 = ((rc >> 7) ^ (rc >> 20) ^ (rc >> 21) ^ (rc >> 22) ^ zbits[i]) & 1
        ca = (ra >> 8) & 1
        cb = (rb >> 10) & 1
        cc = (rc >> 10) & 1
        m = (ca & cb) ^ (cb & cc) ^ (ca & cc)
        if ca == m:
            ra = ((ra << 1) | p3) & 0x7FFFF
        if cb == m:
            rb = ((rb << 1) | p1) & 0x3FFFFF
        if cc == m:
            rc = ((rc << 1) | p2) & 0x7FFFFF
    _unpack(ra, regs, 0, 19)
    _unpack(rb, regs, 19, 22)
    _unpack(rc, regs, 41, 23)


@njit(cache=True, nogil=True)
def berlekamp_massey(s):
    """Linear complexity of ``s`` with polynomials packed into uint64 words."""
    n = s.shape[0]
    nw = (n + 64) // 64 + 1
    one = np.uint64(1)
    c = np.zeros(nw, np.uint64)
    b = np.zeros(nw, np.uint64)
    t = np.zeros(nw, np.uint64)
    # window: bit j of w is s[i - j]
    w = np.zeros(nw, np.uint64)
    c[0] = one
    b[0] = one
    length = 0
    lb = 0
    m = -1
    lt = 0
    for i in range(n):
        for k in range(i // 64, 0, -1):
            w[k] = (w[k] << one) | (w[k - 1] >> np.uint64(63))
        w[0] = (w[0] << one) | np.uint64(s[i])
        x = np.uint64(0)
        for k in range(length // 64 + 1):
            x ^= c[k] & w[k]
        x ^= x >> np.uint64(32)
        x ^= x >> np.uint64(16)
        x ^= x >> np.uint64(8)
        x ^= x >> np.uint64(4)
        x ^= x >> np.uint64(2)
        x ^= x >> one
        if x & one:
            shift = i - m
            q = shift // 64
            r = np.uint64(shift % 64)
            nbw = lb // 64 + 1
            grow = 2 * length <= i
            if grow:
                for k in range(length // 64 + 1):
                    t[k] = c[k]
                lt = length
            # c ^= b << shift
            for k in range(nbw + 1):
                if k + q >= nw:
                    break
                v = b[k] << r if k < nbw else np.uint64(0)
                if r != 0 and k > 0:
                    v |= b[k - 1] >> (np.uint64(64) - r)
                c[k + q] ^= v
            if grow:
                length = i + 1 - length
                m = i
                for k in range(nbw):
                    b[k] = 0
                for k in range(lt // 64 + 1):
                    b[k] = t[k]
                lb = lt
    return length


@njit(cache=True, nogil=True)
def block_complexities(blocks):
    out = np.empty(blocks.shape[0], np.int64)
    for i in range(blocks.shape[0]):
        out[i] = berlekamp_massey(blocks[i])
    return out


@njit(cache=True, nogil=True)
def block_longest_runs(blocks):
    out = np.empty(blocks.shape[0], np.int64)
    for i in range(blocks.shape[0]):
        best = 0
        run = 0
        for j in range(blocks.shape[1]):
            if blocks[i, j]:
                run += 1
                if run > best:
                    best = run
            else:
                run = 0
        out[i] = best
    return out
