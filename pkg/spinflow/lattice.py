"""
Microscopic and macroscopic lattice geometry of the chain.

The chain Λ = [1, N] is coarse-grained by a macroscopic lattice of spacing ξ,
whose sites sit at 1 + (M - 1)·ξ. An interval (q, k) of the macroscopic lattice
covers the microscopic sites [1 + (q - 1)·ξ, 1 + (q + k - 1)·ξ]. Intervals are
totally ordered by length first and position second, which is the order in
which the flow visits them.
"""
from collections import namedtuple
from spinflow.exceptions import (
    SpinflowUsageError, SpinflowSupportError, SpinflowTypeError)

PRECEDES = -1
EQUALS = 0
FOLLOWS = 1


class MicroRange(namedtuple('MicroRange', 'lo hi')):
    """
    Contiguous, inclusive range of microscopic sites (1-based)

    Parameters
    ----------
    lo : int
        First site of the range
    hi : int
        Last site of the range
    """

    __slots__ = ()

    def __new__(cls, lo, hi):
        lo = int(lo)
        hi = int(hi)
        if lo < 1 or hi < lo:
            raise SpinflowSupportError(
                "Invalid micro range [{}, {}], require 1 <= lo <= hi"
                .format(lo, hi))
        return super(MicroRange, cls).__new__(cls, lo, hi)

    @property
    def size(self):
        return self.hi - self.lo + 1

    @property
    def dim(self):
        return 2 ** self.size

    def sites(self):
        return range(self.lo, self.hi + 1)

    def contains(self, other):
        "Whether `other` (a MicroRange or a site index) lies inside the range"
        if isinstance(other, MicroRange):
            return self.lo <= other.lo and other.hi <= self.hi
        return self.lo <= other <= self.hi

    def strictly_contains(self, other):
        return self.contains(other) and self != other

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def touches(self, other):
        return self.lo <= other.hi + 1 and other.lo <= self.hi + 1

    def hull(self, other):
        return MicroRange(min(self.lo, other.lo), max(self.hi, other.hi))

    def union(self, other):
        if not self.touches(other):
            raise SpinflowSupportError(
                "Union of {} and {} is not contiguous".format(self, other))
        return self.hull(other)

    def shift(self, n_sites):
        return MicroRange(self.lo + n_sites, self.hi + n_sites)

    def __str__(self):
        return '[{},{}]'.format(self.lo, self.hi)


class Interval(namedtuple('Interval', 'q k')):
    """
    Interval of the macroscopic lattice

    Parameters
    ----------
    q : int
        Position Q of the interval in macroscopic units
    k : int
        Length ℓ of the interval in macroscopic units
    """

    __slots__ = ()

    def __new__(cls, q, k):
        q = int(q)
        k = int(k)
        if q < 1 or k < 1:
            raise SpinflowUsageError(
                "Invalid interval (q={}, k={}), both must be >= 1"
                .format(q, k))
        return super(Interval, cls).__new__(cls, q, k)

    @property
    def length(self):
        return self.k

    @property
    def key(self):
        "Sort key of the interval ordering (length first, then position)"
        return (self.k, self.q)

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def __str__(self):
        return '(q={},k={})'.format(self.q, self.k)


class MacroLattice(object):
    """
    The chain of `n_sites` microscopic sites together with its macroscopic
    lattice of spacing `xi`

    Parameters
    ----------
    n_sites : int
        Number of microscopic sites N
    xi : int
        Macroscopic spacing ξ. (N - 1)/ξ and ξ/3 must both be positive integers
    """

    def __init__(self, n_sites, xi=3):
        try:
            n_sites = int(n_sites)
            xi = int(xi)
        except (TypeError, ValueError):
            raise SpinflowTypeError(
                "N and ξ must be integers, got N={}, ξ={}".format(
                    repr(n_sites), repr(xi)))
        if xi <= 0 or xi % 3:
            raise SpinflowUsageError(
                "ξ/3 not integral: ξ={} must be a positive multiple of 3"
                .format(xi))
        if n_sites < 2 or (n_sites - 1) % xi:
            raise SpinflowUsageError(
                "(N-1)/ξ not integral: N={}, ξ={}".format(n_sites, xi))
        self._n_sites = n_sites
        self._xi = xi
        self._intervals = tuple(
            Interval(q, k) for k in range(1, self.n_edges + 1)
            for q in range(1, self.n_edges - k + 2))
        self._position = dict((a, i) for i, a in enumerate(self._intervals))

    @property
    def n_sites(self):
        return self._n_sites

    @property
    def xi(self):
        return self._xi

    @property
    def enlargement(self):
        "Number of sites (ξ/3) added on each side by the star enlargement"
        return self._xi // 3

    @property
    def n_edges(self):
        return (self._n_sites - 1) // self._xi

    @property
    def n_macro_sites(self):
        return self.n_edges + 1

    @property
    def chain(self):
        return MicroRange(1, self._n_sites)

    @property
    def full(self):
        "The largest interval Λ"
        return Interval(1, self.n_edges)

    def macro_sites(self):
        return [1 + (m - 1) * self._xi for m in range(1, self.n_macro_sites + 1)]

    def all_intervals(self):
        "All intervals in increasing order (Λ last)"
        return list(self._intervals)

    def proper_intervals(self):
        "All intervals visited by the local steps, i.e. all but Λ"
        return list(self._intervals[:-1])

    def check(self, a):
        if not isinstance(a, Interval):
            raise SpinflowUsageError(
                "Expected an Interval, got {}".format(repr(a)))
        if a.q + a.k - 1 > self.n_edges:
            raise SpinflowUsageError(
                "Interval {} does not fit inside Λ with {} macroscopic edges"
                .format(a, self.n_edges))
        return a

    def micro(self, a):
        self.check(a)
        return MicroRange(1 + (a.q - 1) * self._xi,
                          1 + (a.q + a.k - 1) * self._xi)

    def card(self, a):
        return a.k * self._xi + 1

    def compare(self, a, b):
        self.check(a)
        self.check(b)
        if a.key > b.key:
            return FOLLOWS
        elif a.key < b.key:
            return PRECEDES
        return EQUALS

    def successor(self, a):
        """
        Next interval in the order or None past Λ. None is accepted as the
        sentinel I₀ preceding the first interval
        """
        if a is None:
            return self._intervals[0]
        i = self._position[self.check(a)]
        return self._intervals[i + 1] if i + 1 < len(self._intervals) else None

    def predecessor(self, a):
        "Previous interval in the order or None (the sentinel I₀)"
        i = self._position[self.check(a)]
        return self._intervals[i - 1] if i > 0 else None

    def _check_proper(self, a, name):
        if self.check(a) == self.full:
            raise SpinflowUsageError(
                "{} is undefined on the full lattice Λ={}".format(name, a))

    def star(self, a):
        self._check_proper(a, 'star')
        r = self.micro(a)
        e = self.enlargement
        return MicroRange(max(1, r.lo - e), min(self._n_sites, r.hi + e))

    def bar_star(self, a):
        self._check_proper(a, 'bar_star')
        r = self.star(a)
        return MicroRange(max(1, r.lo - 2), min(self._n_sites, r.hi + 2))

    def covering(self, r):
        "Smallest interval whose micro range contains the micro range `r`"
        if not self.chain.contains(r):
            raise SpinflowSupportError(
                "{} lies outside the chain {}".format(r, self.chain))
        q = (r.lo - 1) // self._xi + 1
        last = -(-(r.hi - 1) // self._xi) + 1
        k = max(1, last - q)
        return Interval(min(q, self.n_edges - k + 1), k)

    def tilde_star(self, a):
        self._check_proper(a, 'tilde_star')
        return self.covering(self.star(a))

    def is_boundary(self, a):
        r = self.micro(a)
        return r.lo == 1 or r.hi == self._n_sites

    def translate(self, a, k_shift):
        "Shift by `k_shift` macroscopic edges, None if it leaves Λ"
        self.check(a)
        q = a.q + k_shift
        if q < 1 or q + a.k - 1 > self.n_edges:
            return None
        return Interval(q, a.k)

    def _target_range(self, a, b):
        return self.micro(a).union(self.micro(b))

    def growth_sets(self, i, j):
        """
        The three sets of intervals whose conjugation by e^{Z_{I*}} feeds the
        potential on `j` in case c) of the step on `i`

        Returns
        -------
        g1 : list(Interval)
            Active potentials K ≻ I overlapping I*, K ≠ J, with Ĩ* ∪ K = J
        g2 : list(Interval)
            Intervals K ≺ I whose diagonalized potential on K̄* is hooked by
            I*, i.e. K* ∩ I* ≠ ∅, K* ⊄ I*, Ĩ* ∪ K̃* = J
        g3 : list(Interval)
            Intervals K ≺ I with K* ⊂ I* but K̄* ⊄ I* (relevant when Ĩ* = J)
        """
        istar = self.star(i)
        target = self.micro(j)
        if not target.strictly_contains(istar):
            raise SpinflowUsageError(
                "star{}={} is not strictly contained in {}={}"
                .format(i, istar, j, target))
        tilde = self.tilde_star(i)
        g1, g2, g3 = [], [], []
        for k in self._intervals:
            if k > i:
                if (self.micro(k).intersects(istar) and k != j and
                        self._target_range(tilde, k) == target):
                    g1.append(k)
            elif k < i:
                kstar = self.star(k)
                if (kstar.intersects(istar) and not istar.contains(kstar) and
                    self._target_range(tilde,
                                       self.tilde_star(k)) == target):
                    g2.append(k)
                if (istar.strictly_contains(kstar) and
                        not istar.contains(self.bar_star(k))):
                    g3.append(k)
        return g1, g2, g3

    def grazing_set(self, i, j):
        """
        Intervals K ≺ I whose star misses I* while the two extra sites of K̄*
        reach into it (only possible for ξ < 9), routed to J = Ĩ* ∪ K̃*
        """
        istar = self.star(i)
        target = self.micro(j)
        if not target.strictly_contains(istar):
            raise SpinflowUsageError(
                "star{}={} is not strictly contained in {}={}"
                .format(i, istar, j, target))
        tilde = self.tilde_star(i)
        return [k for k in self._intervals
                if k < i and not self.star(k).intersects(istar) and
                self.bar_star(k).intersects(istar) and
                self._target_range(tilde, self.tilde_star(k)) == target]

    def targets(self, i):
        "Intervals J whose potential is updated by case c) in the step on `i`"
        istar = self.star(i)
        return [j for j in self._intervals
                if self.micro(j).strictly_contains(istar)]

    def __eq__(self, other):
        return (isinstance(other, MacroLattice) and
                self._n_sites == other._n_sites and self._xi == other._xi)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._n_sites, self._xi))

    def __repr__(self):
        return 'MacroLattice(n_sites={}, xi={})'.format(self._n_sites,
                                                         self._xi)
