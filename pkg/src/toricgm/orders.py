"""Term orders on exponent-vector monomials.

Three kinds: lexicographic, graded reverse lexicographic, and "cheapest"
orders that give one variable weight zero (grevlex tiebreak).  Cheapest
orders are what the lattice-ideal saturation passes run under: for a
homogeneous binomial, if the cheap variable divides the leading monomial
it divides the trailing one too, which is exactly what dividing out that
variable needs.

Orders are exposed through sort keys: key(u) < key(v) iff x^u < x^v.
All three are total, multiplicative and well-orders on nonnegative
exponent vectors.
"""


class TermOrder:
    """A term order of fixed arity with an indeterminate priority list."""

    __slots__ = ("kind", "nvars", "priority", "cheap_index", "_rev")

    def __init__(self, kind, nvars, priority=None, cheap_index=None):
        if kind not in ("lex", "grevlex", "cheapest"):
            raise ValueError(f"unknown term order kind {kind!r}")
        if priority is None:
            priority = tuple(range(nvars))
        else:
            priority = tuple(priority)
            if sorted(priority) != list(range(nvars)):
                raise ValueError("priority must be a permutation of the variables")
        if kind == "cheapest":
            if cheap_index is None or not 0 <= cheap_index < nvars:
                raise ValueError("cheapest order needs a valid variable index")
        self.kind = kind
        self.nvars = nvars
        self.priority = priority
        self.cheap_index = cheap_index
        self._rev = tuple(reversed(priority))

    @classmethod
    def lex(cls, nvars, priority=None):
        return cls("lex", nvars, priority)

    @classmethod
    def grevlex(cls, nvars, priority=None):
        return cls("grevlex", nvars, priority)

    @classmethod
    def cheapest(cls, cheap_index, nvars, priority=None):
        return cls("cheapest", nvars, priority, cheap_index)

    def key(self, m):
        """Sort key; larger key means larger monomial."""
        if self.kind == "lex":
            return tuple(m[p] for p in self.priority)
        if self.kind == "grevlex":
            return (sum(m), *(-m[p] for p in self._rev))
        deg = sum(m)
        return (deg - m[self.cheap_index], deg, *(-m[p] for p in self._rev))

    def greater(self, a, b):
        return self.key(a) > self.key(b)

    def max(self, monomials):
        return max(monomials, key=self.key)

    def name(self):
        if self.kind == "cheapest":
            return f"cheapest({self.cheap_index})"
        return self.kind

    def __eq__(self, other):
        return (isinstance(other, TermOrder)
                and (self.kind, self.nvars, self.priority, self.cheap_index)
                == (other.kind, other.nvars, other.priority, other.cheap_index))

    def __hash__(self):
        return hash((self.kind, self.nvars, self.priority, self.cheap_index))

    def __repr__(self):
        return f"TermOrder({self.name()}, nvars={self.nvars})"
