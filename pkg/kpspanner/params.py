#!/usr/bin/env python3

"""
Spanner construction parameters.

Everything here derives from three numbers: the separation constant ``s``,
the dimension ``d`` and, for the improved constructions, the integer
``delta`` and target slack ``epsilon``.  The derived quantities are
properties so they can never disagree with their inputs.
"""

import enum
import math

from .check import checkepsilon, checkinteger, checkpositive


class SpannerAlgorithm(enum.Enum):
    """
    The constructions this package knows how to run.

    - ALG1: constant stretch, linear edge count.
    - ALG2: (5+epsilon) stretch, linear edge count, shortcut edges along
      c-node chains.
    - ALG3: ALG2 run over the singleton WSPD; (3+epsilon) stretch with
      O(n log n) edges.
    - COMPLETE: the complete k-partite graph itself.
    """

    ALG1 = "alg1"
    ALG2 = "alg2"
    ALG3 = "alg3"
    COMPLETE = "complete"


# Default shortcut depth when a caller picks s by hand (the value derived for
# epsilon = 0.5).
DEFAULT_DELTA = 7
DEFAULT_EPSILON = 0.5


class SpannerParams(object):
    """
    Separation constant and derived constants for one construction.
    """

    @staticmethod
    def limit_stretch_alg1(d):
        """
        The bound Algorithm-1 style construction converges to as s grows.
        """
        d = checkinteger("d", d, minimum=1, required=True)
        return (
            8.0
            * math.sqrt(d)
            * (d * math.ceil(0.5 * math.log2(d)) + d + 1)
            + 1.0
        )

    def __init__(self, s, d, delta=None, epsilon=None):
        self._s = checkpositive("s", s, required=True)
        self._d = checkinteger("d", d, minimum=1, required=True)
        self._delta = checkinteger("delta", delta, minimum=1)
        self._epsilon = None if epsilon is None else checkepsilon(epsilon)

    @property
    def s(self):
        return self._s

    @property
    def d(self):
        return self._d

    @property
    def delta(self):
        return self._delta

    @property
    def epsilon(self):
        return self._epsilon

    @property
    def spread(self):
        """
        1 + 4/s: the factor by which distances across a pair can differ.
        """
        return 1.0 + 4.0 / self._s

    @property
    def mu(self):
        return (
            int(math.ceil(math.log2(math.sqrt(self._d) * self.spread))) + 1
        )

    @property
    def zeta(self):
        if self._delta is None:
            raise ValueError("zeta requires delta to be set")
        return 2 * self._delta * (self.mu * self._d + 1)

    @property
    def t_prime(self):
        return (
            4.0
            * math.sqrt(self._d)
            * (self.mu * self._d + 1)
            * self.spread**3
        )

    @property
    def t_alg1(self):
        return 2.0 * self.t_prime + self.spread

    def case_inequalities(self, t=None):
        """
        Evaluate the two inductive-step inequalities for stretch bound t
        (default t_alg1): one multichromatic side, and both sides
        multichromatic.  Returns a pair of booleans.
        """
        if t is None:
            t = self.t_alg1
        s = self._s
        one_side = self.t_prime + self.spread + 4.0 * t / s <= t
        both_sides = self.spread + 8.0 * t / s <= t
        return (one_side, both_sides)

    def epsilon_constraints(self):
        """
        Check s and delta against the epsilon-derived requirements; returns
        False when epsilon or delta is unknown.
        """
        if (self._epsilon is None) or (self._delta is None):
            return False
        eps = self._epsilon
        slack = 1.0 + eps / 36.0
        two_delta = 2.0**self._delta
        return (
            (self._s >= 12.0 / eps)
            and (self.spread**2 <= slack)
            and (two_delta / (two_delta - 1.0) <= slack)
        )

    def bound(self, algorithm):
        """
        The stretch bound the construction targets with these parameters.
        """
        algorithm = SpannerAlgorithm(algorithm)
        if algorithm is SpannerAlgorithm.ALG1:
            return self.t_alg1
        elif algorithm is SpannerAlgorithm.COMPLETE:
            return 1.0

        eps = DEFAULT_EPSILON if self._epsilon is None else self._epsilon
        if algorithm is SpannerAlgorithm.ALG2:
            return 5.0 + eps
        return 3.0 + eps

    def rep_path_bound(self, algorithm):
        """
        Bound on the path from a point to its c-node's representative, as a
        multiple of the distance across the covering pair.
        """
        algorithm = SpannerAlgorithm(algorithm)
        if algorithm is SpannerAlgorithm.ALG1:
            return self.t_prime
        eps = DEFAULT_EPSILON if self._epsilon is None else self._epsilon
        return 2.0 + eps / 3.0

    def certified(self, algorithm):
        """
        Whether ``bound(algorithm)`` is guaranteed for these parameters.
        """
        algorithm = SpannerAlgorithm(algorithm)
        if algorithm is SpannerAlgorithm.COMPLETE:
            return True
        elif algorithm is SpannerAlgorithm.ALG1:
            return (self._s > 2) and all(self.case_inequalities())
        return self.epsilon_constraints()

    def to_dict(self):
        out = {
            "s": self._s,
            "d": self._d,
            "mu": self.mu,
            "t_prime": self.t_prime,
            "t_alg1": self.t_alg1,
        }
        if self._delta is not None:
            out["delta"] = self._delta
            out["zeta"] = self.zeta
        if self._epsilon is not None:
            out["epsilon"] = self._epsilon
        return out

    def __repr__(self):
        return "SpannerParams(s=%r, d=%r, delta=%r, epsilon=%r)" % (
            self._s,
            self._d,
            self._delta,
            self._epsilon,
        )


def _s_ok(s, epsilon):
    return (s >= 12.0 / epsilon) and (
        (1.0 + 4.0 / s) ** 2 <= 1.0 + epsilon / 36.0
    )


def derive_params(epsilon, d):
    """
    Choose the smallest integer s and smallest positive integer delta meeting
    the (5+epsilon) construction's requirements.
    """
    epsilon = checkepsilon(epsilon)
    d = checkinteger("d", d, minimum=1, required=True)

    # Closed-form estimate, then walk to the exact smallest integer.
    s = max(
        math.ceil(12.0 / epsilon),
        math.ceil(4.0 / (math.sqrt(1.0 + epsilon / 36.0) - 1.0)),
    )
    while not _s_ok(s, epsilon):
        s += 1
    while (s > 1) and _s_ok(s - 1, epsilon):
        s -= 1

    delta = 1
    slack = 1.0 + epsilon / 36.0
    while (2.0**delta) / (2.0**delta - 1.0) > slack:
        delta += 1

    return SpannerParams(s, d, delta=delta, epsilon=epsilon)
