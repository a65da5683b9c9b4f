"""Commutative semigroup and semiring contracts with pluggable instances.

Values are plain Python data (ints, floats, tuples, multisets); a contract
object carries the operations.  A formal identity is adjoined uniformly via
the IDENTITY sentinel, so empty sums are representable even when the
underlying semigroup has no identity of its own.  Summation never requires
subtraction or any other inverse: everything downstream runs on ``oplus``
(and ``otimes`` where a product is defined) alone.
"""

from __future__ import annotations

U64_MAX = 2**64 - 1
NEG_INF = float("-inf")
POS_INF = float("inf")


class FormalIdentity:
    """Adjoined identity element.  Use the module-level IDENTITY singleton."""

    __slots__ = ()

    def __repr__(self):
        return "IDENTITY"


IDENTITY = FormalIdentity()


def _checked_count_add(a, b):
    c = a + b
    if c > U64_MAX:
        raise OverflowError("count exceeds 64-bit range: %d" % c)
    return c


def _checked_count_mul(a, b):
    c = a * b
    if c > U64_MAX:
        raise OverflowError("count exceeds 64-bit range: %d" % c)
    return c


class Multiset:
    """Immutable multiset with positive integer multiplicities.

    Tokens are opaque hashable values.  Size is total multiplicity, so
    len(a.union(b)) == len(a) + len(b) always holds.
    """

    __slots__ = ("_counts",)

    def __init__(self, items=()):
        counts = {}
        if isinstance(items, dict):
            pairs = items.items()
        else:
            pairs = ((tok, 1) for tok in items)
        for tok, mult in pairs:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                counts[tok] = _checked_count_add(counts.get(tok, 0), mult)
        object.__setattr__(self, "_counts", counts)

    @classmethod
    def singleton(cls, token):
        return cls({token: 1})

    def union(self, other):
        counts = dict(self._counts)
        for tok, mult in other._counts.items():
            counts[tok] = _checked_count_add(counts.get(tok, 0), mult)
        return Multiset(counts)

    def count(self, token):
        return self._counts.get(token, 0)

    def items(self):
        """Pairs (token, multiplicity) in a deterministic order."""
        return tuple(sorted(self._counts.items(), key=lambda kv: repr(kv[0])))

    def tokens(self):
        return frozenset(self._counts)

    def max_multiplicity(self):
        return max(self._counts.values(), default=0)

    def __len__(self):
        return sum(self._counts.values())

    def __contains__(self, token):
        return token in self._counts

    def __eq__(self, other):
        return isinstance(other, Multiset) and self._counts == other._counts

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self):
        if not self._counts:
            return "Multiset()"
        return "Multiset({%s})" % ", ".join(
            "%r: %d" % kv for kv in self.items()
        )


class SemigroupContract:
    """A commutative associative operation over an opaque value domain."""

    name = "abstract"
    domain = "abstract"

    def oplus(self, a, b):
        raise NotImplementedError

    def sample(self, rng):
        """Draw a random domain value; used by axiom checks and verify."""
        raise NotImplementedError

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, self.name)


class SemiringContract(SemigroupContract):
    """Adds a product distributing over the sum, with both identities."""

    zero = None
    one = None
    commutative_product = True

    def otimes(self, a, b):
        raise NotImplementedError


def oplus(contract, a, b):
    """Sum in the identity-adjoined semigroup: IDENTITY absorbs."""
    if a is IDENTITY:
        return b
    if b is IDENTITY:
        return a
    return contract.oplus(a, b)


def otimes(contract, a, b):
    """Product in the identity-adjoined semiring: IDENTITY annihilates."""
    if a is IDENTITY or b is IDENTITY:
        return IDENTITY
    return contract.otimes(a, b)


def fold(contract, values):
    """Left-associated sum of an iterable, IDENTITY when empty."""
    acc = IDENTITY
    for v in values:
        acc = oplus(contract, acc, v)
    return acc


class NatSum(SemiringContract):
    """Naturals under addition; ordinary product.  Counts are 64-bit checked."""

    name = "nat-sum"
    domain = "naturals up to 2^64-1"
    zero = 0
    one = 1

    def oplus(self, a, b):
        return _checked_count_add(a, b)

    def otimes(self, a, b):
        return _checked_count_mul(a, b)

    def sample(self, rng):
        return rng.randrange(0, 1000)


class MaxWeight(SemigroupContract):
    """Extended reals under max.  No product, no inverse of any kind."""

    name = "max"
    domain = "reals with -inf"

    def oplus(self, a, b):
        return a if a >= b else b

    def sample(self, rng):
        if rng.random() < 0.1:
            return NEG_INF
        return float(rng.randrange(-10, 11))


class MinPlus(SemiringContract):
    """Tropical semiring: min as sum, + as product, +inf as zero."""

    name = "min-plus"
    domain = "reals with +inf"
    zero = POS_INF
    one = 0.0

    def oplus(self, a, b):
        return a if a <= b else b

    def otimes(self, a, b):
        return a + b

    def sample(self, rng):
        if rng.random() < 0.1:
            return POS_INF
        return float(rng.randrange(-10, 11))


class CountWeight(SemiringContract):
    """Pairs (count, weight): keep the larger weight, add counts on ties.

    Product multiplies counts and adds weights.  Zero is (0, -inf), one is
    (1, 0).  Counts are 64-bit checked.  The carrier is the zero plus
    pairs with count >= 1 and finite weight; mixed pairs such as
    (3, -inf) fall outside it and the semiring laws do not cover them.

    Tie detection compares float weights exactly, so distributivity holds
    only when weight sums are exact (integers, dyadics); rounding can turn
    distinct weights into a tie on one side of the law.
    """

    name = "count-weight"
    domain = "(0, -inf) or (64-bit count >= 1, finite weight)"
    zero = (0, NEG_INF)
    one = (1, 0.0)

    def oplus(self, a, b):
        if a[1] > b[1]:
            return a
        if a[1] < b[1]:
            return b
        return (_checked_count_add(a[0], b[0]), a[1])

    def otimes(self, a, b):
        return (_checked_count_mul(a[0], b[0]), a[1] + b[1])

    def sample(self, rng):
        if rng.random() < 0.08:
            return self.zero
        return (rng.randrange(1, 6), float(rng.randrange(-5, 6)))


class FreeMultiset(SemigroupContract):
    """Multisets of opaque tokens under multiset union.

    The instrumentation semigroup: running a computation over singleton
    tokens records exactly which inputs reached each result, with
    multiplicities witnessing any double counting.
    """

    name = "multiset"
    domain = "finite multisets of hashable tokens"

    def oplus(self, a, b):
        return a.union(b)

    def sample(self, rng):
        alphabet = ("t0", "t1", "t2", "t3", "t4", "t5")
        k = rng.randrange(1, 4)
        return Multiset(rng.choice(alphabet) for _ in range(k))


class WordSum(SemiringContract):
    """Formal sums of concatenation words; product concatenates pairwise.

    Noncommutative product: sums are multisets of words, and A (x) B is
    {uv : u in A, v in B} with multiplicities multiplied.
    """

    name = "word-sum"
    domain = "finite formal sums of words"
    zero = Multiset()
    one = Multiset({"": 1})
    commutative_product = False

    def oplus(self, a, b):
        return a.union(b)

    def otimes(self, a, b):
        counts = {}
        for u, cu in a._counts.items():
            for v, cv in b._counts.items():
                w = u + v
                counts[w] = _checked_count_add(
                    counts.get(w, 0), _checked_count_mul(cu, cv)
                )
        return Multiset(counts)

    def sample(self, rng):
        alphabet = "abcd"
        k = rng.randrange(0, 3)
        words = []
        for _ in range(k):
            n = rng.randrange(1, 3)
            words.append("".join(rng.choice(alphabet) for _ in range(n)))
        return Multiset(words)


class WitnessMax(SemigroupContract):
    """Pairs (score, witness subset): larger score wins, ties go to the
    lexicographically smallest witness.  Max under a total order, hence
    associative and commutative."""

    name = "witness-max"
    domain = "(score, sorted witness tuple)"

    def oplus(self, a, b):
        if a[0] > b[0]:
            return a
        if a[0] < b[0]:
            return b
        return a if a[1] <= b[1] else b

    def sample(self, rng):
        score = float(rng.randrange(-3, 4))
        members = sorted(rng.sample(range(5), rng.randrange(0, 3)))
        return (score, tuple(members))


NAT_SUM = NatSum()
MAX_WEIGHT = MaxWeight()
MIN_PLUS = MinPlus()
COUNT_WEIGHT = CountWeight()
FREE_MULTISET = FreeMultiset()
WORD_SUM = WordSum()
WITNESS_MAX = WitnessMax()

CONTRACTS = {
    c.name: c
    for c in (
        NAT_SUM,
        MAX_WEIGHT,
        MIN_PLUS,
        COUNT_WEIGHT,
        FREE_MULTISET,
        WORD_SUM,
        WITNESS_MAX,
    )
}


class CountingContract(SemigroupContract):
    """Wraps a contract and counts carrier-level oplus applications.

    Only genuine semigroup sums are counted; IDENTITY absorption happens
    above the contract and is free.
    """

    def __init__(self, base):
        self.base = base
        self.name = "counting:" + base.name
        self.domain = base.domain
        self.oplus_calls = 0

    def oplus(self, a, b):
        self.oplus_calls += 1
        return self.base.oplus(a, b)

    def sample(self, rng):
        return self.base.sample(rng)


class AxiomResult:
    def __init__(self, axiom, passed, counterexample=None):
        self.axiom = axiom
        self.passed = passed
        self.counterexample = counterexample

    def __repr__(self):
        tag = "pass" if self.passed else "FAIL"
        extra = "" if self.passed else " at %s" % self.counterexample
        return "<%s: %s%s>" % (self.axiom, tag, extra)


class AxiomReport:
    def __init__(self, results):
        self.results = results

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def __repr__(self):
        return "<AxiomReport %s>" % ("ok" if self.ok else self.failures())


def check_axioms(contract, sampler=None, trials=1000, seed=0):
    """Randomized check of the semigroup (and, if present, semiring) laws.

    Draws value triples from ``sampler`` (default: the contract's own
    ``sample``) and records the first counterexample per axiom.
    """
    import random as _random

    rng = _random.Random(seed)
    draw = sampler if sampler is not None else contract.sample
    is_semiring = isinstance(contract, SemiringContract)

    axioms = ["oplus-associative", "oplus-commutative"]
    if is_semiring:
        axioms += [
            "otimes-associative",
            "distributive-left",
            "distributive-right",
            "zero-additive-identity",
            "zero-annihilates",
            "one-multiplicative-identity",
        ]
        if contract.commutative_product:
            axioms.append("otimes-commutative")

    state = {name: AxiomResult(name, True) for name in axioms}

    def fail(name, triple):
        r = state[name]
        if r.passed:
            r.passed = False
            r.counterexample = repr(triple)

    for _ in range(trials):
        a, b, c = draw(rng), draw(rng), draw(rng)
        if contract.oplus(contract.oplus(a, b), c) != contract.oplus(
            a, contract.oplus(b, c)
        ):
            fail("oplus-associative", (a, b, c))
        if contract.oplus(a, b) != contract.oplus(b, a):
            fail("oplus-commutative", (a, b))
        if not is_semiring:
            continue
        if contract.otimes(contract.otimes(a, b), c) != contract.otimes(
            a, contract.otimes(b, c)
        ):
            fail("otimes-associative", (a, b, c))
        if contract.otimes(a, contract.oplus(b, c)) != contract.oplus(
            contract.otimes(a, b), contract.otimes(a, c)
        ):
            fail("distributive-left", (a, b, c))
        if contract.otimes(contract.oplus(b, c), a) != contract.oplus(
            contract.otimes(b, a), contract.otimes(c, a)
        ):
            fail("distributive-right", (a, b, c))
        if contract.oplus(a, contract.zero) != a:
            fail("zero-additive-identity", (a,))
        if (
            contract.otimes(a, contract.zero) != contract.zero
            or contract.otimes(contract.zero, a) != contract.zero
        ):
            fail("zero-annihilates", (a,))
        if (
            contract.otimes(a, contract.one) != a
            or contract.otimes(contract.one, a) != a
        ):
            fail("one-multiplicative-identity", (a,))
        if contract.commutative_product and contract.otimes(
            a, b
        ) != contract.otimes(b, a):
            fail("otimes-commutative", (a, b))

    return AxiomReport([state[name] for name in axioms])
