"""Sparse multivariate polynomials over exact rationals and a deterministic
Buchberger engine.

The generic engine handles arbitrary rational-coefficient polynomials; a
binomial fast path covers pure differences x^u - x^v (S-polynomials and
reductions of pure differences stay pure differences, so no coefficient
bookkeeping is needed).  buchberger() returns the unique reduced Groebner
basis: monic, fully auto-reduced, sorted by increasing leading monomial.
S-pair selection is the normal strategy (smallest lcm, ties by index pair)
with the product and chain criteria, under a configurable S-pair budget
that fails loudly rather than truncating.
"""

import heapq
import itertools
import math
from fractions import Fraction
from operator import add as _add, le as _le, sub as _sub

from .orders import TermOrder

DEFAULT_SPAIR_BUDGET = 10 ** 6


class BudgetExceeded(RuntimeError):
    """The S-pair budget ran out before the basis was finished."""


class NotTriangular(ValueError):
    """A lex basis that does not triangularize (positive-dimensional tail)."""


def monomial_mul(a, b):
    return tuple(map(_add, a, b))


def monomial_lcm(a, b):
    return tuple(map(max, a, b))


def monomial_divides(a, b):
    """True iff x^a divides x^b."""
    return all(map(_le, a, b))


def monomial_div(a, b):
    """Exponent vector of x^a / x^b (caller guarantees divisibility)."""
    return tuple(map(_sub, a, b))


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to Fractions."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=()):
        combined = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError("monomial arity mismatch")
            c = combined.get(mono, 0) + Fraction(coeff)
            if c:
                combined[mono] = c
            elif mono in combined:
                del combined[mono]
        self.nvars = nvars
        self.terms = tuple(sorted(combined.items()))

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, [((0,) * nvars, c)])

    @classmethod
    def variable(cls, nvars, i, exponent=1):
        mono = tuple(exponent if j == i else 0 for j in range(nvars))
        return cls(nvars, [(mono, 1)])

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.nvars, list(self.terms) + list(other.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.nvars,
                          list(self.terms) + [(m, -c) for m, c in other.terms])

    def __neg__(self):
        return Polynomial(self.nvars, [(m, -c) for m, c in self.terms])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, [(m, c * other) for m, c in self.terms])
        other = self._coerce(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = monomial_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, acc)

    __rmul__ = __mul__

    def __radd__(self, other):
        return self.__add__(other)

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("mixed ambient rings")
            return other
        return Polynomial.constant(self.nvars, other)

    def shift(self, mono, coeff=1):
        """Multiply by coeff * x^mono."""
        return Polynomial(self.nvars,
                          [(monomial_mul(m, mono), c * coeff) for m, c in self.terms])

    def leading_term(self, order):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=lambda t: order.key(t[0]))

    def monic(self, order):
        _, lc = self.leading_term(order)
        if lc == 1:
            return self
        return Polynomial(self.nvars, [(m, c / lc) for m, c in self.terms])

    def total_degree(self):
        return max((sum(m) for m, _ in self.terms), default=0)

    def variables(self):
        """Indices of variables that actually occur."""
        seen = set()
        for m, _ in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return seen

    def evaluate(self, point):
        """Exact evaluation at a vector of Fractions (or floats)."""
        total = 0
        for m, c in self.terms:
            val = c
            for x, e in zip(point, m):
                if e:
                    val *= x ** e
            total += val
        return total

    def as_pure_difference(self):
        """Return (u, v) if the (scaled) polynomial is x^u - x^v, else None."""
        if len(self.terms) != 2:
            return None
        (m1, c1), (m2, c2) = self.terms
        if c1 + c2 != 0:
            return None
        if c1 > 0:
            return (m1, m2)
        return (m2, m1)

    def render(self, names, order=None):
        """Human-readable string, terms sorted descending under order."""
        if not self.terms:
            return "0"
        terms = list(self.terms)
        if order is not None:
            terms.sort(key=lambda t: order.key(t[0]), reverse=True)
        else:
            terms.sort(reverse=True)
        parts = []
        for m, c in terms:
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i, e in enumerate(m) if e]
            mono = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                word = mono
            elif c == -1 and factors:
                word = f"-{mono}"
            elif factors:
                word = f"{c}*{mono}"
            else:
                word = str(c)
            parts.append(word)
        out = parts[0]
        for word in parts[1:]:
            if word.startswith("-"):
                out += " - " + word[1:]
            else:
                out += " + " + word
        return out

    def __repr__(self):
        return f"Polynomial({self.nvars}, {list(self.terms)!r})"


class Binomial:
    """Pure difference x^u - x^v between two monomials."""

    __slots__ = ("u", "v")

    def __init__(self, u, v):
        self.u = tuple(u)
        self.v = tuple(v)
        if len(self.u) != len(self.v):
            raise ValueError("exponent vectors must share arity")
        if self.u == self.v:
            raise ValueError("binomial sides must differ")

    @property
    def nvars(self):
        return len(self.u)

    def exponent_diff(self):
        return tuple(a - b for a, b in zip(self.u, self.v))

    def degrees(self):
        return (sum(self.u), sum(self.v))

    def strip_common(self):
        """Divide out the common monomial factor (coprime form)."""
        common = tuple(min(a, b) for a, b in zip(self.u, self.v))
        if not any(common):
            return self
        return Binomial(monomial_div(self.u, common), monomial_div(self.v, common))

    def is_coprime(self):
        return all(min(a, b) == 0 for a, b in zip(self.u, self.v))

    def canonical(self, order):
        """Coprime form with the larger monomial (under order) first."""
        b = self.strip_common()
        if order.key(b.u) >= order.key(b.v):
            return b
        return Binomial(b.v, b.u)

    def sign_free(self):
        """Orientation-independent key, for set comparisons."""
        return (self.u, self.v) if self.u >= self.v else (self.v, self.u)

    def to_polynomial(self):
        return Polynomial(self.nvars, [(self.u, 1), (self.v, -1)])

    def evaluate(self, point):
        pu = pv = 1
        for x, e in zip(point, self.u):
            if e:
                pu *= x ** e
        for x, e in zip(point, self.v):
            if e:
                pv *= x ** e
        return pu - pv

    def render(self, names):
        def side(m):
            parts = [f"{names[i]}^{e}" if e > 1 else names[i]
                     for i, e in enumerate(m) if e]
            return "*".join(parts) if parts else "1"

        return f"{side(self.u)} - {side(self.v)}"

    def __eq__(self, other):
        return isinstance(other, Binomial) and self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"Binomial({self.u!r}, {self.v!r})"


def _neg_key(key):
    return tuple(-x for x in key)


def reduce(f, G, order, top=False):
    """Full normal form of f modulo the polynomial list G.

    No term of the result is divisible by any leading monomial of G, and
    f minus the result lies in the ideal generated by G.  Reducers are
    tried in list order, so the result is deterministic.  With top=True
    (engine internal) reduction stops once the leading monomial is
    irreducible, leaving the tail untouched.
    """
    prepared = []
    masks = []
    for g in G:
        if isinstance(g, Binomial):
            g = g.to_polynomial()
        if g.is_zero():
            continue
        lm, lc = g.leading_term(order)
        tail = [(m, c) for m, c in g.terms if m != lm]
        prepared.append((lm, lc, tail))
        masks.append(_support_mask(lm))
    if isinstance(f, Binomial):
        f = f.to_polynomial()
    coeffs = dict(f.terms)
    heap = [(_neg_key(order.key(m)), m) for m in coeffs]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = coeffs.pop(m, None)
        if c is None or c == 0:
            continue
        hit = None
        mmask = _support_mask(m)
        for idx, (lm, lc, tail) in enumerate(prepared):
            if masks[idx] & ~mmask:
                continue
            if monomial_divides(lm, m):
                hit = (lm, lc, tail)
                break
        if hit is None:
            out[m] = c
            if top:
                out.update((m2, c2) for m2, c2 in coeffs.items() if c2)
                break
            continue
        lm, lc, tail = hit
        shift = monomial_div(m, lm)
        factor = c / lc
        for tm, tc in tail:
            m2 = monomial_mul(tm, shift)
            prev = coeffs.get(m2)
            if prev is None:
                coeffs[m2] = -factor * tc
                heapq.heappush(heap, (_neg_key(order.key(m2)), m2))
            else:
                nc = prev - factor * tc
                if nc:
                    coeffs[m2] = nc
                else:
                    del coeffs[m2]
    return Polynomial(f.nvars, out)


def _primitive(p, order):
    """Scale to integer coefficients, content one, positive leading sign."""
    if p.is_zero():
        return p
    denom = 1
    for _, c in p.terms:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    numer = 0
    for _, c in p.terms:
        numer = math.gcd(numer, abs(c.numerator * (denom // c.denominator)))
    scale = Fraction(denom, numer if numer else 1)
    _, lc = p.leading_term(order)
    if lc < 0:
        scale = -scale
    if scale == 1:
        return p
    return Polynomial(p.nvars, [(m, c * scale) for m, c in p.terms])


def s_polynomial(f, g, order):
    lmf, lcf = f.leading_term(order)
    lmg, lcg = g.leading_term(order)
    lcm = monomial_lcm(lmf, lmg)
    return (f.shift(monomial_div(lcm, lmf), Fraction(1, 1) / lcf)
            - g.shift(monomial_div(lcm, lmg), Fraction(1, 1) / lcg))


def _interreduce(polys, order, top=False):
    """Repeatedly normal-form each polynomial against the others."""
    polys = [p for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            rest = polys[:i] + polys[i + 1:]
            r = reduce(polys[i], rest, order, top=top)
            if r.terms != polys[i].terms:
                changed = True
            if r.is_zero():
                polys = rest
                break
            polys[i] = _primitive(r, order) if top else r.monic(order)
    return polys


def buchberger(F, order, budget=None):
    """The unique reduced Groebner basis of <F> under the given order.

    Raises BudgetExceeded when more than `budget` S-pairs would have to be
    treated (never returns a wrong partial answer).  When every input is a
    pure difference the computation runs on the binomial fast path.
    """
    if budget is None:
        budget = DEFAULT_SPAIR_BUDGET
    polys = []
    for f in F:
        if isinstance(f, Binomial):
            f = f.to_polynomial()
        if not f.is_zero():
            polys.append(f)
    if not polys:
        return []
    nvars = polys[0].nvars
    diffs = [p.monic(order).as_pure_difference() for p in polys]
    if all(d is not None for d in diffs):
        binomials = buchberger_binomials([Binomial(u, v) for u, v in diffs],
                                         order, budget)
        return [b.to_polynomial() for b in binomials]

    basis = _interreduce([_primitive(p, order) for p in polys], order, top=True)
    leads = [p.leading_term(order)[0] for p in basis]
    pairs = []
    done = set()
    for i, j in itertools.combinations(range(len(basis)), 2):
        heapq.heappush(pairs, (order.key(monomial_lcm(leads[i], leads[j])), i, j))
    processed = 0
    while pairs:
        lcm_key, i, j = heapq.heappop(pairs)
        if (i, j) in done:
            continue
        done.add((i, j))
        lcm = monomial_lcm(leads[i], leads[j])
        if monomial_mul(leads[i], leads[j]) == lcm:
            continue  # coprime leading monomials
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (monomial_divides(leads[k], lcm)
                    and (min(i, k), max(i, k)) in done
                    and (min(j, k), max(j, k)) in done):
                chained = True
                break
        if chained:
            continue
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"S-pair budget of {budget} exceeded")
        s = s_polynomial(basis[i], basis[j], order)
        r = reduce(s, basis, order, top=True)
        if r.is_zero():
            continue
        r = _primitive(r, order)
        basis.append(r)
        leads.append(r.leading_term(order)[0])
        new = len(basis) - 1
        for k in range(new):
            heapq.heappush(pairs,
                           (order.key(monomial_lcm(leads[k], leads[new])), k, new))
    return _finalize(basis, order, nvars)


def _finalize(basis, order, nvars):
    """Minimalize and auto-reduce a Groebner basis; sort ascending."""
    entries = [(p.leading_term(order)[0], p) for p in basis if not p.is_zero()]
    keep = []
    for idx, (lm, p) in enumerate(entries):
        redundant = False
        for jdx, (lm2, _) in enumerate(entries):
            if jdx == idx:
                continue
            if monomial_divides(lm2, lm) and (lm2 != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(p)
    reduced = []
    for i, p in enumerate(keep):
        rest = keep[:i] + keep[i + 1:]
        r = reduce(p, rest, order)
        reduced.append(r.monic(order))
    reduced.sort(key=lambda p: order.key(p.leading_term(order)[0]))
    return reduced


# --- binomial fast path ---------------------------------------------------


def _support_mask(m):
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


class _BinomialBasis:
    """Mutable rewriting system x^lead -> x^tail used inside the engine.

    Elements are indexed by a bucket on the smallest support variable of
    the lead, with a bitmask prefilter, so normal forms stay cheap even on
    bases with a few hundred elements.  Dead elements (lead divisible by a
    newer lead) stay in the arrays for S-pair processing but stop acting
    as reducers, mirroring the classic update procedure.
    """

    __slots__ = ("leads", "tails", "masks", "keys", "alive", "buckets",
                 "order", "_nf_cache")

    def __init__(self, order):
        self.order = order
        self.leads = []
        self.tails = []
        self.masks = []
        self.keys = []
        self.alive = []
        self.buckets = {}
        self._nf_cache = {}

    def add(self, lead, tail):
        idx = len(self.leads)
        self.leads.append(lead)
        self.tails.append(tail)
        self.masks.append(_support_mask(lead))
        self.keys.append(self.order.key(lead))
        self.alive.append(True)
        first = next(i for i, e in enumerate(lead) if e)
        self.buckets.setdefault(first, []).append(idx)
        self._nf_cache.clear()
        return idx

    def kill(self, idx):
        self.alive[idx] = False
        self._nf_cache.clear()

    def active(self):
        return [i for i, a in enumerate(self.alive) if a]

    def find_reducer(self, m, mmask):
        leads = self.leads
        masks = self.masks
        alive = self.alive
        buckets = self.buckets
        for v, e in enumerate(m):
            if not e:
                continue
            bucket = buckets.get(v)
            if not bucket:
                continue
            for idx in bucket:
                if not alive[idx] or masks[idx] & ~mmask:
                    continue
                if all(map(_le, leads[idx], m)):
                    return idx
        return -1

    def normal_form(self, m):
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        start = m
        while True:
            mmask = _support_mask(m)
            hit = self.find_reducer(m, mmask)
            if hit < 0:
                break
            lead = self.leads[hit]
            tail = self.tails[hit]
            m = tuple(x - a + b for x, a, b in zip(m, lead, tail))
        if len(self._nf_cache) < 1 << 20:
            self._nf_cache[start] = m
        return m


def buchberger_binomials(inputs, order, budget=None):
    """Reduced Groebner basis of an ideal generated by pure differences.

    Input and output are Binomial values; the output is the reduced basis
    under the given order (canonically oriented, tails in normal form,
    sorted by increasing leading monomial).  Pair pruning follows the
    Gebauer-Moeller update, selection is normal strategy.
    """
    if budget is None:
        budget = DEFAULT_SPAIR_BUDGET
    seen = set()
    start = []
    for b in inputs:
        u, v = b.u, b.v
        if order.key(u) < order.key(v):
            u, v = v, u
        if u == v or (u, v) in seen:
            continue
        seen.add((u, v))
        start.append((u, v))
    if not start:
        return []
    start.sort(key=lambda uv: (order.key(uv[0]), uv[1]))

    system = _BinomialBasis(order)
    leads = system.leads
    masks = system.masks
    pairs = {}  # (i, j) -> lcm of the leading monomials
    heap = []

    def update(new):
        """Gebauer-Moeller update: prune candidate and old pairs, retire leads.

        Candidates are scanned in increasing lcm order, so a single pass
        against the kept list implements the M/F criteria (a divisor's key
        is never larger than the dominated lcm's, and keys are injective).
        """
        mh = leads[new]
        mask_h = masks[new]
        cands = []
        for g in system.active():
            if g == new:
                continue
            lcm_hg = tuple(map(max, mh, leads[g]))
            cands.append((sum(lcm_hg), lcm_hg, g, not (mask_h & masks[g])))
        # ascending degree puts every divisor before what it dominates
        cands.sort()
        kept = []
        for deg_hg, lcm_hg, g, cop in cands:
            mask_hg = mask_h | masks[g]
            dominated = False
            for lcm_hp, mask_hp in kept:
                if mask_hp & ~mask_hg:
                    continue
                if all(map(_le, lcm_hp, lcm_hg)):
                    dominated = True
                    break
            if dominated:
                continue
            kept.append((lcm_hg, mask_hg))
            if cop:
                continue  # product criterion: never process coprime pairs
            pair = (g, new) if g < new else (new, g)
            pairs[pair] = (lcm_hg, mask_hg)
            heapq.heappush(heap, (order.key(lcm_hg), pair[0], pair[1]))
        # prune old pairs whose lcm is divisible by the new lead (chain criterion)
        stale = []
        for pair, (lcm_ij, mask_ij) in pairs.items():
            i, j = pair
            if i == new or j == new:
                continue
            if mask_h & ~mask_ij:
                continue
            if not all(map(_le, mh, lcm_ij)):
                continue
            if (tuple(map(max, leads[i], mh)) != lcm_ij
                    and tuple(map(max, leads[j], mh)) != lcm_ij):
                stale.append(pair)
        for pair in stale:
            del pairs[pair]
        for g in system.active():
            if g != new and not (mask_h & ~masks[g]) \
                    and all(map(_le, mh, leads[g])):
                system.kill(g)

    for u, v in start:
        nf_u = system.normal_form(u)
        nf_v = system.normal_form(v)
        if nf_u == nf_v:
            continue
        if order.key(nf_u) < order.key(nf_v):
            nf_u, nf_v = nf_v, nf_u
        idx = system.add(nf_u, nf_v)
        update(idx)

    processed = 0
    while pairs:
        while heap:
            _, i, j = heapq.heappop(heap)
            if (i, j) in pairs:
                del pairs[(i, j)]
                break
        else:
            break
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"S-pair budget of {budget} exceeded")
        li, lj = leads[i], leads[j]
        lcm = monomial_lcm(li, lj)
        a = system.normal_form(monomial_mul(monomial_div(lcm, li), system.tails[i]))
        b = system.normal_form(monomial_mul(monomial_div(lcm, lj), system.tails[j]))
        if a == b:
            continue
        if order.key(a) < order.key(b):
            a, b = b, a
        idx = system.add(a, b)
        update(idx)

    kept = sorted(system.active(), key=lambda i: system.keys[i])
    out = []
    for idx in kept:
        tail = system.normal_form(system.tails[idx])
        lead = leads[idx]
        if tail == lead:
            continue
        out.append(Binomial(lead, tail))
    out.sort(key=lambda bb: (order.key(bb.u), bb.v))
    return out


def eliminate_to_triangular(G, priority):
    """Sort a lex Groebner basis into triangular (back-substitution) shape.

    The output starts with a polynomial univariate in the lowest-priority
    indeterminate and each later polynomial introduces at most one new
    indeterminate.  Raises NotTriangular when the basis has a
    positive-dimensional tail and no such shape exists.
    """
    polys = []
    for g in G:
        if isinstance(g, Binomial):
            g = g.to_polynomial()
        if not g.is_zero():
            polys.append(g)
    if not polys:
        raise NotTriangular("not triangular: empty basis")
    nvars = polys[0].nvars
    order = TermOrder.lex(nvars, priority)
    polys = _interreduce(polys, order)
    polys.sort(key=lambda p: order.key(p.leading_term(order)[0]))
    seen = set()
    for p in polys:
        new = p.variables() - seen
        if len(new) > 1:
            raise NotTriangular("not triangular: "
                                f"{len(new)} new indeterminates in one polynomial")
        seen |= new
    if len(polys[0].variables()) != 1:
        raise NotTriangular("not triangular: no univariate polynomial")
    return polys


def ideal_equal(F, G, order, budget=None):
    """True iff the two generating sets span the same ideal."""
    gb_f = buchberger(F, order, budget)
    gb_g = buchberger(G, order, budget)
    for f in F:
        if isinstance(f, Binomial):
            f = f.to_polynomial()
        if not reduce(f, gb_g, order).is_zero():
            return False
    for g in G:
        if isinstance(g, Binomial):
            g = g.to_polynomial()
        if not reduce(g, gb_f, order).is_zero():
            return False
    return True
