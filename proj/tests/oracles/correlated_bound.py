"""High-precision oracle for the correlated binary leakage envelope.

Enumerates every binary profile of the correlated prior, evaluates the
observation likelihood at an equal-observation point where each player's
f1-versus-f0 log ratio is -eps_o, and reports exp of player 0's leakage.
No closed form is used, so this independently checks the library's
CorrelatedLowerBound.

    python3 correlated_bound.py 0.25 0.5 0.3 8
"""

import itertools
import sys

import mpmath

mpmath.mp.dps = 50


def prior_mass(bits, alpha, beta):
    n = len(bits)
    first = bits[0]
    marginal = (1 - alpha) if first == 1 else alpha
    rest = bits[1:]
    others = 2 ** (n - 1) - 1
    if all(b == first for b in rest):
        return marginal * beta
    return marginal * (1 - beta) / others


def leakage_exp(alpha, beta, eps_o, n):
    alpha, beta, eps_o = map(mpmath.mpf, (alpha, beta, eps_o))
    cond = {0: mpmath.mpf(0), 1: mpmath.mpf(0)}
    marg = {0: alpha, 1: 1 - alpha}
    for bits in itertools.product((0, 1), repeat=n):
        like = mpmath.exp(-eps_o * sum(bits))
        cond[bits[0]] += prior_mass(bits, alpha, beta) * like
    p_o = cond[0] + cond[1]
    return max(cond[f] / marg[f] for f in (0, 1)) / p_o


if __name__ == "__main__":
    a, b, e = (mpmath.mpf(x) for x in sys.argv[1:4])
    print(mpmath.nstr(leakage_exp(a, b, e, int(sys.argv[4])), 30))
