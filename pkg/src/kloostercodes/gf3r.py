"""Exact arithmetic in the finite fields GF(3^r).

Field elements are canonical integer indices in [0, q), q = 3^r: the index
encodes the coefficient vector of the residue polynomial in base 3, so 0 is
the additive identity and 1 the multiplicative identity.  A FieldContext
verifies its modulus irreducible at construction and precomputes log/antilog,
inverse and trace tables (r <= 8, i.e. q <= 6561), after which every
operation is a table lookup or an O(r) digit loop.  Contexts are immutable
and safe to share between workers.
"""

import json

import numpy as np

from .errors import DomainError, FieldConstructionError

# Shipped irreducible moduli, coefficient lists low degree first (monic).
# Smallest monic irreducible of each degree in the canonical base-3 index
# order; irreducibility is re-checked at construction.
DEFAULT_MODULI = {
    1: (0, 1),                      # x
    2: (1, 0, 1),                   # x^2 + 1
    3: (1, 2, 0, 1),                # x^3 + 2x + 1
    4: (2, 1, 0, 0, 1),             # x^4 + x + 2
    5: (1, 2, 0, 0, 0, 1),          # x^5 + 2x + 1
    6: (2, 1, 0, 0, 0, 0, 1),       # x^6 + x + 2
    7: (2, 0, 1, 0, 0, 0, 0, 1),    # x^7 + x^2 + 2
    8: (2, 0, 1, 0, 0, 0, 0, 0, 1), # x^8 + x^2 + 2
}


def format_poly(coeffs) -> str:
    """Render a coefficient list (low degree first) as a readable polynomial."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i] % 3
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = "x" if i == 1 else "x^%d" % i
            terms.append(var if c == 1 else "%d%s" % (c, var))
    return " + ".join(terms) if terms else "0"


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % 3
    return _poly_trim(out)


def _poly_mod(a, m):
    a = _poly_trim(a)
    dm = len(m) - 1
    inv_lead = m[-1]  # monic in all our uses, so 1
    assert inv_lead == 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % 3
        a = _poly_trim(a)
    return a


def _is_irreducible(m) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    import itertools

    r = len(m) - 1
    if r < 1:
        return False
    for d in range(1, r // 2 + 1):
        for tail in itertools.product(range(3), repeat=d):
            g = list(tail) + [1]
            if not _poly_mod(list(m), g):
                return False
    return True


class FieldContext:
    """The field GF(3^r) with a fixed irreducible modulus.

    Elements are plain ints in [0, q); all methods take and return such
    indices.  Use :func:`field_create` for the checked constructor wrapper.
    """

    def __init__(self, r: int, modulus=None):
        if r < 1:
            raise FieldConstructionError("field exponent r must be >= 1, got %r" % (r,))
        if modulus is None:
            if r not in DEFAULT_MODULI:
                raise FieldConstructionError(
                    "no shipped default modulus for r=%d (defaults cover r <= %d); "
                    "pass one explicitly" % (r, max(DEFAULT_MODULI))
                )
            modulus = DEFAULT_MODULI[r]
        modulus = tuple(int(c) % 3 for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldConstructionError(
                "modulus must be monic of degree %d over GF(3), got %s"
                % (r, format_poly(modulus))
            )
        if not _is_irreducible(modulus):
            raise FieldConstructionError(
                "modulus %s is reducible over GF(3)" % format_poly(modulus)
            )
        self.r = r
        self.q = 3 ** r
        self.modulus = modulus
        self._build_tables()

    # -- construction internals -------------------------------------------

    def _index_to_poly(self, x):
        out = []
        while x:
            out.append(x % 3)
            x //= 3
        return out

    def _poly_to_index(self, p):
        idx = 0
        for c in reversed(p):
            idx = idx * 3 + c
        return idx

    def _raw_mul(self, x: int, y: int) -> int:
        p = _poly_mod(_poly_mul(self._index_to_poly(x), self._index_to_poly(y)), self.modulus)
        return self._poly_to_index(p)

    def _build_tables(self):
        q = self.q
        # discrete log / antilog for some multiplicative generator
        exp = None
        for g in range(2, q):
            chain = [1]
            cur = g
            while cur != 1:
                chain.append(cur)
                cur = self._raw_mul(cur, g)
                if len(chain) > q:  # pragma: no cover - impossible for a field
                    raise FieldConstructionError("multiplicative structure broken")
            if len(chain) == q - 1:
                exp = chain
                break
        if exp is None:  # pragma: no cover
            raise FieldConstructionError("no multiplicative generator found")
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log
        self._inv = [0] * q
        for x in range(1, q):
            self._inv[x] = exp[(q - 1 - log[x]) % (q - 1)]

        # trace of the basis powers x^i, then the full table by linearity
        basis_tr = []
        for i in range(self.r):
            y = 3 ** i
            t = 0
            z = y
            for _ in range(self.r):
                t = self.add(t, z)
                z = self._raw_mul(self._raw_mul(z, z), z)
            basis_tr.append(t)
        digits = np.zeros((q, self.r), dtype=np.int8)
        idx = np.arange(q)
        for i in range(self.r):
            digits[:, i] = (idx // 3 ** i) % 3
        self._digits = digits
        self._pow3 = (3 ** np.arange(self.r)).astype(np.int64)
        self._trace = ((digits.astype(np.int64) @ np.array(basis_tr, dtype=np.int64)) % 3).astype(np.int8)

        # quadratic structure: the squares are the even powers of the generator
        sq = sorted(exp[i] for i in range(0, q - 1, 2))
        self._squares = tuple(sq)
        is_sq = [False] * q
        for s in sq:
            is_sq[s] = True
        self._is_square = is_sq
        self.epsilon = next(x for x in range(1, q) if not is_sq[x])

        # numpy views for the vectorized internals
        self._np_exp = np.array(exp, dtype=np.int64)
        self._np_log = np.array(log, dtype=np.int64)
        self._np_inv = np.array(self._inv, dtype=np.int64)

    # -- arithmetic --------------------------------------------------------

    def _check(self, x):
        if not (isinstance(x, (int, np.integer)) and 0 <= x < self.q):
            raise DomainError("element index %r out of range for GF(%d)" % (x, self.q))

    def add(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        z = 0
        p = 1
        while x or y:
            z += ((x % 3) + (y % 3)) % 3 * p
            x //= 3
            y //= 3
            p *= 3
        return z

    def neg(self, x: int) -> int:
        self._check(x)
        z = 0
        p = 1
        while x:
            z += (-(x % 3)) % 3 * p
            x //= 3
            p *= 3
        return z

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise DomainError("0 has no multiplicative inverse in GF(%d)" % self.q)
        return self._inv[x]

    def pow(self, x: int, e: int) -> int:
        self._check(x)
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DomainError("negative power of 0")
            return 0
        return self._exp[(self._log[x] * e) % (self.q - 1)]

    def trace(self, x: int) -> int:
        """Field trace down to GF(3), returned as an element of {0, 1, 2}."""
        self._check(x)
        return int(self._trace[x])

    def squares(self):
        """The (q-1)/2 nonzero squares, ascending."""
        return self._squares

    def is_square(self, x: int) -> bool:
        self._check(x)
        return self._is_square[x]

    # -- vectorized internals (element-index numpy arrays) ------------------

    def _mul_vec(self, a: int, arr):
        """a * arr elementwise; arr entries may include 0."""
        if a == 0:
            return np.zeros_like(arr)
        out = np.zeros_like(arr)
        nz = arr != 0
        out[nz] = self._np_exp[(self._np_log[arr[nz]] + self._log[a]) % (self.q - 1)]
        return out

    def _add_vec(self, xs, ys):
        d = (self._digits[xs].astype(np.int64) + self._digits[ys]) % 3
        return d @ self._pow3

    def _add_row(self, x: int):
        """Indices of x + y for every y, as one array."""
        d = (self._digits.astype(np.int64) + self._digits[x]) % 3
        return d @ self._pow3

    def __repr__(self):
        return "FieldContext(q=%d, modulus=%s)" % (self.q, format_poly(self.modulus))


def field_create(r: int, modulus=None) -> FieldContext:
    """Build GF(3^r), verifying the (given or default) modulus irreducible."""
    return FieldContext(r, modulus)


def field_ops(ctx: FieldContext, op: str, *operands):
    """Dispatch a named field operation: add, mul, neg, inv, pow, sub, trace."""
    table = {
        "add": ctx.add,
        "sub": ctx.sub,
        "mul": ctx.mul,
        "neg": ctx.neg,
        "inv": ctx.inv,
        "pow": ctx.pow,
        "trace": ctx.trace,
    }
    if op not in table:
        raise DomainError("unknown field operation %r" % (op,))
    return table[op](*operands)


def load_modulus_config(path) -> dict:
    """Read a modulus table mapping r -> coefficient list (low degree first).

    Accepts JSON ({"2": [1, 0, 1], ...}) or plain text lines of the form
    "r: c0 c1 ... cr" (colon optional).  Returned coefficients are not yet
    validated; FieldContext performs the irreducibility check.
    """
    text = open(path).read()
    out = {}
    try:
        data = json.loads(text)
    except ValueError:
        data = None
    if isinstance(data, dict):
        for k, v in data.items():
            out[int(k)] = tuple(int(c) for c in v)
        return out
    for line in text.splitlines():
        line = line.split("#", 1)[0].replace(":", " ").strip()
        if not line:
            continue
        parts = line.split()
        out[int(parts[0])] = tuple(int(c) for c in parts[1:])
    return out
