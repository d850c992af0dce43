"""Conditional-independence algebra.

Cross-product differences (CPDs) and ratios (CPRs), the pairwise and
global Markov binomial ideals of an undirected graph, the integer-span
certificate behind the Hammersley-Clifford factorization argument, and
the lifted counterexample constructions that transport the four-cycle
phenomena to arbitrary non-chordal graphs.

A CPD for the statement "X independent of Y given Z" picks two joint
levels of X, two of Y and one of Z and equates the cross products of the
four marginal probabilities.  Saturated statements (X, Y, Z covering all
variables) need no marginalization, so their CPDs are binomials.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .graphs import binary_graph, build_graph_matrix, \
    saturated_separations, validate_partition
from .linalg import integer_span_member
from .models import Distribution
from .orders import TermOrder
from .polynomials import Binomial, Polynomial


@dataclass(frozen=True)
class CIStatement:
    """X independent of Y given Z (disjoint variable-name tuples)."""
    X: tuple
    Y: tuple
    Z: tuple

    def __post_init__(self):
        if not self.X or not self.Y:
            raise ValueError("X and Y must be nonempty")
        seen = set()
        for grp in (self.X, self.Y, self.Z):
            for name in grp:
                if name in seen:
                    raise ValueError(f"variable {name!r} repeated across blocks")
                seen.add(name)

    def is_saturated(self, space):
        return set(self.X) | set(self.Y) | set(self.Z) == set(space.names)


@dataclass(frozen=True)
class CpdSpec:
    """One cross-product difference instance of a CI statement."""
    statement: CIStatement
    x: tuple
    x2: tuple
    y: tuple
    y2: tuple
    z: tuple


def cpd_instances(stmt, space):
    """All CPD instances: unordered level pairs for X and for Y, every z."""
    xlevels = _joint_levels(space, stmt.X)
    ylevels = _joint_levels(space, stmt.Y)
    zlevels = _joint_levels(space, stmt.Z)
    out = []
    for x, x2 in combinations(xlevels, 2):
        for y, y2 in combinations(ylevels, 2):
            for z in zlevels:
                out.append(CpdSpec(stmt, x, x2, y, y2, z))
    return out


def _joint_levels(space, names):
    variables = [space.variables[space.var_index(n)] for n in names]
    return list(product(*[range(v.levels) for v in variables]))


def _marginal_states(space, assignment):
    """Indices of states agreeing with a partial {name: level} assignment."""
    positions = {space.var_index(n): lvl for n, lvl in assignment.items()}
    hits = []
    for idx, state in enumerate(space.states()):
        if all(state[p] == lvl for p, lvl in positions.items()):
            hits.append(idx)
    return hits


def _marginal_polynomial(space, assignment):
    m = space.size
    unit = [0] * m
    terms = []
    for idx in _marginal_states(space, assignment):
        mono = list(unit)
        mono[idx] = 1
        terms.append((tuple(mono), 1))
    return Polynomial(m, terms)


def _assignment(stmt, x, y, z):
    out = {}
    for name, lvl in zip(stmt.X, x):
        out[name] = lvl
    for name, lvl in zip(stmt.Y, y):
        out[name] = lvl
    for name, lvl in zip(stmt.Z, z):
        out[name] = lvl
    return out


def cpd_polynomial(spec, space):
    """The quadratic polynomial of one CPD instance."""
    stmt = spec.statement
    p_xy = _marginal_polynomial(space, _assignment(stmt, spec.x, spec.y, spec.z))
    p_x2y2 = _marginal_polynomial(space, _assignment(stmt, spec.x2, spec.y2, spec.z))
    p_x2y = _marginal_polynomial(space, _assignment(stmt, spec.x2, spec.y, spec.z))
    p_xy2 = _marginal_polynomial(space, _assignment(stmt, spec.x, spec.y2, spec.z))
    return p_xy * p_x2y2 - p_x2y * p_xy2


def _poly_signature(p):
    """Sign-normalized term tuple, for deduplication."""
    if not p.terms:
        return ()
    first = p.terms[0][1]
    if first < 0:
        p = -p
    return p.terms


def cpd_polynomials(stmt, space):
    """All CPD polynomials of a statement, deduplicated up to sign.

    Saturated statements yield pure-difference quadratic binomials, the
    rest quadratic polynomials in marginal sums.
    """
    seen = set()
    out = []
    for spec in cpd_instances(stmt, space):
        p = cpd_polynomial(spec, space)
        if p.is_zero():
            continue
        sig = _poly_signature(p)
        if sig in seen:
            continue
        seen.add(sig)
        out.append(p)
    return out


def saturated_cpd_binomials(stmt, space, order=None):
    """CPD binomials of a saturated statement, canonical and deduplicated."""
    if not stmt.is_saturated(space):
        raise ValueError("statement is not saturated")
    if order is None:
        order = TermOrder.grevlex(space.size)
    seen = set()
    out = []
    for p in cpd_polynomials(stmt, space):
        diff = p.as_pure_difference()
        if diff is None:
            raise AssertionError("saturated CPD did not come out binomial")
        b = Binomial(*diff).canonical(order)
        if b.sign_free() in seen:
            continue
        seen.add(b.sign_free())
        out.append(b)
    return out


def pairwise_ideal(g):
    """Generators from the nonedge statements X_i indep X_j given the rest."""
    space = g.space()
    order = TermOrder.grevlex(space.size)
    names = g.names
    seen = set()
    out = []
    for a, b in combinations(names, 2):
        if g.has_edge(a, b):
            continue
        rest = tuple(n for n in names if n not in (a, b))
        stmt = CIStatement((a,), (b,), rest)
        for binom in saturated_cpd_binomials(stmt, space, order):
            if binom.sign_free() in seen:
                continue
            seen.add(binom.sign_free())
            out.append(binom)
    return out


def global_ideal(g, cap=12):
    """Generators from all saturated separation statements of the graph."""
    space = g.space()
    order = TermOrder.grevlex(space.size)
    seen = set()
    out = []
    for sep in saturated_separations(g, cap):
        stmt = CIStatement(sep.X, sep.Y, sep.Z)
        for binom in saturated_cpd_binomials(stmt, space, order):
            if binom.sign_free() in seen:
                continue
            seen.add(binom.sign_free())
            out.append(binom)
    return out


def cpr(P, spec, space):
    """Cross-product ratio of a CPD instance; None when the denominator is 0."""
    stmt = spec.statement

    def prob(x, y):
        total = 0
        for idx in _marginal_states(space, _assignment(stmt, x, y, spec.z)):
            total += P[idx]
        return total

    num = prob(spec.x, spec.y) * prob(spec.x2, spec.y2)
    den = prob(spec.x2, spec.y) * prob(spec.x, spec.y2)
    if den == 0:
        return None
    return num / den


def hc_zspan_check(basis, pairwise):
    """True iff every basis exponent vector is an integer combination of the
    pairwise CPD vectors (the strengthened Hammersley-Clifford statement)."""
    lattice = [list(b.exponent_diff()) for b in pairwise]
    for b in basis:
        if not integer_span_member(list(b.exponent_diff()), lattice):
            return False
    return True


def exponential_degree_witness(n, cap=6):
    """Graph of n noninteracting binary pairs plus a degree-2^n witness.

    The graph on 2n binary variables has every edge except {X_i, X_{i+n}}.
    The witness binomial multiplies the states whose odd coordinates agree
    and whose even-coordinate parity matches (left side) or differs (right
    side); it lies in the toric ideal of the graph model and is of degree
    exactly 2^n per side.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds cap {cap}")
    names = [f"X{i}" for i in range(1, 2 * n + 1)]
    edges = [(names[i], names[j]) for i in range(2 * n) for j in range(i + 1, 2 * n)
             if j - i != n]
    g = binary_graph(names, edges)
    space = g.space()
    m = space.size
    u = [0] * m
    v = [0] * m
    for c in (0, 1):
        for evens in product((0, 1), repeat=n):
            state = []
            for k in range(n):
                state.append(c)        # odd position 2k+1
                state.append(evens[k])  # even position 2k+2
            idx = space.state_index(tuple(state))
            if sum(evens) % 2 == c:
                u[idx] += 1
            else:
                v[idx] += 1
    witness = Binomial(tuple(u), tuple(v))
    A = build_graph_matrix(g)
    if A.apply(witness.u) != A.apply(witness.v):
        raise AssertionError("witness violates the kernel condition")
    return g, witness


def _require_binary(g):
    if any(v.levels != 2 for v in g.variables):
        raise ValueError("lifted constructions need binary variables")


def _block_of(part):
    lookup = {}
    for label, block in zip("ABCDE", part.blocks()):
        for name in block:
            lookup[name] = label
    return lookup


def _block_state(g, part, pattern):
    """Full state in which every variable takes its block's pattern value."""
    i, j, k, l, m = pattern
    values = {"A": i, "B": j, "C": k, "D": l, "E": m}
    lookup = _block_of(part)
    return tuple(values[lookup[name]] for name in g.names)


# Block patterns (A, B, C, D, E) of the four supported atoms and of the
# swapped four composing the quartic witness.
_ATOM_PATTERNS = [(0, 1, 0, 0, 1), (0, 1, 1, 1, 1), (1, 0, 0, 1, 1), (1, 0, 1, 0, 1)]
_SWAP_PATTERNS = [(0, 1, 0, 1, 1), (0, 1, 1, 0, 1), (1, 0, 0, 0, 1), (1, 0, 1, 1, 1)]


def lift_ci_counterexample(g, part):
    """Block-constant distribution plus a quartic witness in the toric ideal.

    The distribution puts mass 1/4 on four block-constant states; every
    quadratic binomial of the toric ideal vanishes on it while the quartic
    witness does not, which is what rules out quadratic descriptions of
    non-chordal models.
    """
    _require_binary(g)
    validate_partition(g, part)
    space = g.space()
    m = space.size
    values = [Fraction(0)] * m
    u = [0] * m
    v = [0] * m
    for pattern in _ATOM_PATTERNS:
        idx = space.state_index(_block_state(g, part, pattern))
        values[idx] = Fraction(1, 4)
        u[idx] += 1
    for pattern in _SWAP_PATTERNS:
        v[space.state_index(_block_state(g, part, pattern))] += 1
    witness = Binomial(tuple(u), tuple(v))
    A = build_graph_matrix(g)
    if A.apply(witness.u) != A.apply(witness.v):
        raise AssertionError("lifted witness violates the kernel condition")
    return Distribution(values), witness


def lift_limit_potentials(g, part, n):
    """Pairwise-potential distribution whose n -> infinity limit leaves the
    model's parametrized image.

    Within-block edges of the four cycle blocks get agreement potentials n;
    the four block-crossing directions get n^(xy-y), n^(xy-y), n^(xy) and
    n^(-xy); everything touching E stays 1.  Exact rationals throughout; at
    n = 1 this is the uniform distribution.
    """
    _require_binary(g)
    validate_partition(g, part)
    if n < 1:
        raise ValueError("n must be at least 1")
    n = Fraction(n)
    lookup = _block_of(part)
    space = g.space()
    names = g.names

    def potential(block_a, block_b, x, y):
        if "E" in (block_a, block_b):
            return Fraction(1)
        if block_a == block_b:
            return n if x == y else Fraction(1)
        pair = block_a + block_b
        if pair in ("AB", "BC"):
            return n ** (x * y - y)
        if pair in ("BA", "CB"):
            return n ** (x * y - x)
        if pair in ("CD", "DC"):
            return n ** (x * y)
        if pair in ("AD", "DA"):
            return n ** (-x * y)
        raise AssertionError(f"unexpected block pair {pair}")

    weights = []
    for state in space.states():
        w = Fraction(1)
        for a, b in g.edges:
            ia, ib = space.var_index(a), space.var_index(b)
            w *= potential(lookup[a], lookup[b], state[ia], state[ib])
        weights.append(w)
    total = sum(weights)
    return Distribution([w / total for w in weights])
