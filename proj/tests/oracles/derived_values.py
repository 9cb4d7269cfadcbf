#!/usr/bin/env python3
"""Exact values for the small hand-derived unit-test examples.

Run: python3 tests/oracles/derived_values.py  (prints; values are frozen into
tests/unit/*.cpp by hand)
"""

from fractions import Fraction as F
import itertools
import mpmath as mp

mp.mp.dps = 40


def fbeta(tp, fp, fn, beta):
    p = F(tp, tp + fp)
    r = F(tp, tp + fn)
    b2 = F(beta) ** 2
    return (1 + b2) * p * r / (b2 * p + r)


def pearson(x, y):
    n = len(x)
    x = [mp.mpf(v) for v in x]
    y = [mp.mpf(v) for v in y]
    sx, sy = sum(x), sum(y)
    sxy = sum(a * b for a, b in zip(x, y))
    sxx = sum(a * a for a in x)
    syy = sum(b * b for b in y)
    return (n * sxy - sx * sy) / mp.sqrt((n * sxx - sx ** 2) * (n * syy - sy ** 2))


def average_ranks(v):
    # rank = 1 + #smaller + (#equal - 1) / 2, by exhaustive comparison
    return [1 + sum(1 for b in v if b < a) + F(sum(1 for b in v if b == a) - 1, 2) for a in v]


# sentence F0.5, "He play a tennis" -> "He plays a tennis": TP=1, FP=0, FN=1
print("edit_f toy sentence:", float(fbeta(1, 0, 1, F(1, 2))))
# corpus F0.5: (1,0,1) + (0,1,1)
print("edit_f corpus example:", float(fbeta(1, 1, 2, F(1, 2))))

# Expected Wins: enumerate the comparison multiset
wins = {("A", "B"): 2, ("B", "A"): 1, ("A", "C"): 1, ("C", "A"): 1}
systems = "ABC"
for s in systems:
    shares = []
    for o in systems:
        if o == s:
            continue
        w, l = wins.get((s, o), 0), wins.get((o, s), 0)
        if w + l:
            shares.append(F(w, w + l))
    print("EW", s, sum(shares) / len(shares) if shares else 0)

print("pearson [1,2,3,5] [2,1,4,5]:", mp.nstr(pearson([1, 2, 3, 5], [2, 1, 4, 5]), 20))
rx, ry = average_ranks([1, 2, 2, 4]), average_ranks([1, 3, 2, 4])
print("ranks", rx, ry)
print("spearman [1,2,2,4] [1,3,2,4]:", mp.nstr(pearson([float(v) for v in rx], [float(v) for v in ry]), 20))
