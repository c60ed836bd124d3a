"""Straight-line reference versions of the seven randomness statistics.

Written against the published NIST SP 800-22 formulas with plain Python
loops and lists, sharing no code with the package.  Gamma/erfc values come
from scipy so this side never touches the package's numerics.
"""

import math

from scipy.special import erfc, gammaincc
from scipy.stats import norm


def frequency(bits):
    n = len(bits)
    s = sum(1 if b else -1 for b in bits)
    return erfc(abs(s) / math.sqrt(n) / math.sqrt(2))


def cusum(bits, reverse=False):
    n = len(bits)
    seq = list(reversed(bits)) if reverse else list(bits)
    total, z = 0, 0
    for b in seq:
        total += 1 if b else -1
        z = max(z, abs(total))
    root = math.sqrt(n)
    s1 = 0.0
    for k in range(math.floor((-n / z + 1) / 4), math.floor((n / z - 1) / 4) + 1):
        s1 += norm.cdf((4 * k + 1) * z / root) - norm.cdf((4 * k - 1) * z / root)
    s2 = 0.0
    for k in range(math.floor((-n / z - 3) / 4), math.floor((n / z - 1) / 4) + 1):
        s2 += norm.cdf((4 * k + 3) * z / root) - norm.cdf((4 * k + 1) * z / root)
    return 1.0 - s1 + s2


def _pattern_counts(bits, m):
    n = len(bits)
    counts = {}
    wrapped = list(bits) + list(bits[: m - 1])
    for i in range(n):
        key = tuple(wrapped[i : i + m])
        counts[key] = counts.get(key, 0) + 1
    return counts


def approximate_entropy(bits, m):
    n = len(bits)

    def phi(k):
        if k == 0:
            return 0.0
        return sum(c / n * math.log(c / n) for c in _pattern_counts(bits, k).values())

    apen = phi(m) - phi(m + 1)
    chi2 = 2.0 * n * (math.log(2) - apen)
    return gammaincc(2 ** (m - 1), chi2 / 2.0)


def serial(bits, m):
    n = len(bits)

    def psi2(k):
        if k <= 0:
            return 0.0
        counts = _pattern_counts(bits, k)
        return (2**k) / n * sum(c * c for c in counts.values()) - n

    d1 = psi2(m) - psi2(m - 1)
    d2 = psi2(m) - 2 * psi2(m - 1) + psi2(m - 2)
    return gammaincc(2 ** (m - 2), d1 / 2), gammaincc(2 ** (m - 3), d2 / 2)


def longest_run(bits):
    n = len(bits)
    if n < 6272:
        m, edges, pi = 8, [1, 2, 3, 4], [0.2148, 0.3672, 0.2305, 0.1875]
    elif n < 750000:
        m, edges = 128, [4, 5, 6, 7, 8, 9]
        pi = [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]
    else:
        m, edges = 10000, [10, 11, 12, 13, 14, 15, 16]
        pi = [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]
    blocks = n // m
    nu = [0] * len(edges)
    for b in range(blocks):
        best = run = 0
        for bit in bits[b * m : (b + 1) * m]:
            run = run + 1 if bit else 0
            best = max(best, run)
        if best <= edges[0]:
            nu[0] += 1
        elif best >= edges[-1]:
            nu[-1] += 1
        else:
            nu[edges.index(best)] += 1
    chi2 = sum((nu[i] - blocks * pi[i]) ** 2 / (blocks * pi[i]) for i in range(len(pi)))
    return gammaincc((len(pi) - 1) / 2, chi2 / 2)


def runs(bits):
    n = len(bits)
    pi = sum(bits) / n
    if abs(pi - 0.5) >= 2 / math.sqrt(n):
        return None
    v = 1 + sum(1 for i in range(n - 1) if bits[i] != bits[i + 1])
    return erfc(abs(v - 2 * n * pi * (1 - pi)) / (2 * math.sqrt(2 * n) * pi * (1 - pi)))


def linear_complexity_bm(bits):
    """Berlekamp-Massey over GF(2) with Python ints as polynomials.

    ``history`` holds the bits seen so far with the newest in bit 0, so the
    discrepancy is the parity of ``c & history`` over taps 1..L plus the
    current bit.
    """
    c, b = 1, 1
    length, m = 0, -1
    history = 0
    for i, bit in enumerate(bits):
        mask = (1 << (length + 1)) - 2
        d = (bit + bin(c & (history << 1) & mask).count("1")) & 1
        if d:
            t = c
            c ^= b << (i - m)
            if 2 * length <= i:
                length = i + 1 - length
                m = i
                b = t
        history = (history << 1) | bit
    return length


def linear_complexity(bits, block):
    n = len(bits)
    count = n // block
    mu = block / 2 + (9 + (-1) ** (block + 1)) / 36 - (block / 3 + 2 / 9) / 2**block
    pi = [1 / 96, 1 / 32, 1 / 8, 1 / 2, 1 / 4, 1 / 16, 1 / 48]
    nu = [0] * 7
    for i in range(count):
        lc = linear_complexity_bm(bits[i * block : (i + 1) * block])
        t = (-1) ** block * (lc - mu) + 2 / 9
        if t <= -2.5:
            nu[0] += 1
        elif t <= -1.5:
            nu[1] += 1
        elif t <= -0.5:
            nu[2] += 1
        elif t <= 0.5:
            nu[3] += 1
        elif t <= 1.5:
            nu[4] += 1
        elif t <= 2.5:
            nu[5] += 1
        else:
            nu[6] += 1
    chi2 = sum((nu[i] - count * pi[i]) ** 2 / (count * pi[i]) for i in range(7))
    return gammaincc(3, chi2 / 2)
