"""Extended-precision reference values, computed independently of the package.

The functions follow the geometric derivation directly (cosine law,
Pythagoras) in mpmath at 50 digits.  Values quoted as literals in the tests
were produced with these functions and frozen.
"""

import mpmath as mp

mp.mp.dps = 50


def ac(t):
    t = mp.mpf(t)
    # cosine law in ABC with |AB| = 10, |BC| = 5, larger root
    return 10 * mp.cos(t) + mp.sqrt(100 * mp.cos(t) ** 2 - 75)


def ae(t):
    # right angle at C in triangle ACE, |CE| = 12
    return mp.sqrt(ac(t) ** 2 + 144)


def vol_p(t):
    t = mp.mpf(t)
    area_abc = mp.mpf(1) / 2 * 10 * ac(t) * mp.sin(t)
    return mp.mpf(2) / 3 * 24 * area_abc


def vol_q(t):
    # apex height of E' over plane A'B'D' from Heron on A'C'E' (sides x, 5 sqrt 3, 12)
    x = ae(t)
    a, b, c = x, 5 * mp.sqrt(3), mp.mpf(12)
    s = (a + b + c) / 2
    area = mp.sqrt(s * (s - a) * (s - b) * (s - c))
    height = 2 * area / b
    return mp.mpf(1) / 3 * (2 * height) * 25 * mp.sqrt(3)


def ratio(t):
    return vol_q(t) / vol_p(t)


def taylor(fn, n):
    return [float(c) for c in mp.taylor(fn, 0, n)]
