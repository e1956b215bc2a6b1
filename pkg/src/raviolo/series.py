"""One-, two- and three-variable raviolo series/distribution arithmetic.

Monomial indexing convention used everywhere (it matches mode indices of
fields): an integer index i < 0 stands for z^(-i-1) and i >= 0 stands for
Omega^i.  With this convention the single-variable product rule is simply
i*j -> i+j+1, dropped when the result is an invalid polar monomial, and
Omega*Omega = 0.

Taylor directions are truncated at an explicit order; polar supports are
finite.  All coefficients are Scalar.
"""

from fractions import Fraction
from math import factorial

from .scalars import Scalar, ZERO, ONE, Param, binom
from .scalars import K_PARAM, KAPPA_PARAM, XI_PARAM

DEFAULT_PARAMS = {p.name: p for p in (K_PARAM, KAPPA_PARAM, XI_PARAM)}


def _coeff(c):
    if isinstance(c, Scalar):
        return c
    return Scalar.from_rational(c)


def combine_indices(i, j):
    """Product of two monomials in the same variable; None means zero."""
    if i >= 0 and j >= 0:
        return None
    k = i + j + 1
    if (i >= 0 or j >= 0) and k < 0:
        return None  # z^n Omega^m = 0 for n > m
    return k


class RavSeries:
    """Element of K^(s) (or K_dist): twist tag, indexed coefficients."""

    def __init__(self, terms=None, trunc=8, twist=0):
        self.trunc = trunc
        self.twist = Fraction(twist)
        self.terms = {}
        if terms:
            for i, c in terms.items():
                c = _coeff(c)
                if not c.is_zero() and (i >= 0 or -i - 1 <= trunc):
                    self.terms[i] = c

    @staticmethod
    def zero(trunc=8, twist=0):
        return RavSeries({}, trunc, twist)

    @staticmethod
    def one(trunc=8, twist=0):
        return RavSeries({-1: ONE}, trunc, twist)

    @staticmethod
    def z_pow(n, trunc=8, twist=0):
        return RavSeries({-n - 1: ONE}, trunc, twist)

    @staticmethod
    def omega(m, trunc=8, twist=0):
        return RavSeries({m: ONE}, trunc, twist)

    def copy(self):
        r = RavSeries({}, self.trunc, self.twist)
        r.terms = dict(self.terms)
        return r

    def pole_order(self):
        """Largest m with a nonzero Omega^m coefficient, or None."""
        polar = [i for i in self.terms if i >= 0]
        return max(polar) if polar else None

    def __add__(self, other):
        assert self.twist == other.twist, "twist mismatch"
        r = RavSeries({}, min(self.trunc, other.trunc), self.twist)
        for src in (self.terms, other.terms):
            for i, c in src.items():
                s = r.terms.get(i, ZERO) + c
                if s.is_zero():
                    r.terms.pop(i, None)
                else:
                    r.terms[i] = s
        return RavSeries(r.terms, r.trunc, r.twist)

    def __neg__(self):
        return RavSeries({i: -c for i, c in self.terms.items()},
                         self.trunc, self.twist)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coeff(c)
        return RavSeries({i: c * v for i, v in self.terms.items()},
                         self.trunc, self.twist)

    def mul(self, other):
        """Product; twists add.  For exact polar output the partner's
        Taylor truncation should be at least the pole order."""
        r = {}
        for i, c1 in self.terms.items():
            for j, c2 in other.terms.items():
                k = combine_indices(i, j)
                if k is None:
                    continue
                s = r.get(k, ZERO) + c1 * c2
                if s.is_zero():
                    r.pop(k, None)
                else:
                    r[k] = s
        return RavSeries(r, min(self.trunc, other.trunc),
                         self.twist + other.twist)

    __mul__ = mul

    def dz(self):
        r = {}
        for i, c in self.terms.items():
            if i < 0:
                n = -i - 1
                if n > 0:
                    r[i + 1] = r.get(i + 1, ZERO) + n * c
            else:
                r[i + 1] = r.get(i + 1, ZERO) - (i + 1) * c
        return RavSeries(r, self.trunc - 1, self.twist)

    def residue(self):
        """Res dz: requires twist 1; the Omega^0 coefficient."""
        if self.twist != 1:
            raise ValueError("residue needs twist 1, got %s" % self.twist)
        return self.terms.get(0, ZERO)

    def __eq__(self, other):
        if not isinstance(other, RavSeries):
            return NotImplemented
        if self.twist != other.twist:
            return False
        t = min(self.trunc, other.trunc)

        def window(s):
            return {i: c for i, c in s.terms.items() if i >= 0 or -i - 1 <= t}
        return window(self) == window(other)

    def __str__(self):
        return format_series(self)

    __repr__ = __str__


def residue_pair(f, g):
    """Non-degenerate pairing <f, g> = Res(f*g); twists must sum to 1."""
    if f.twist + g.twist != 1:
        raise ValueError("twists must sum to 1")
    return f.mul(g).residue()


# ---------------------------------------------------------------- text

def format_series(f):
    if not f.terms:
        return "0"

    def monostr(i):
        if i == -1:
            return None
        if i < 0:
            return "z" if i == -2 else "z^%d" % (-i - 1)
        return "O[%d]" % i

    bits = []
    for i in sorted(f.terms, key=lambda i: (0, -i - 1) if i < 0 else (1, i)):
        c = f.terms[i]
        mono = monostr(i)
        if mono is None:
            cs = str(c)
            piece = "(%s)" % cs if (" + " in cs or " - " in cs) else cs
        else:
            if c == Scalar.one():
                piece = mono
            elif c == -Scalar.one():
                piece = "-" + mono
            else:
                cs = str(c)
                if " + " in cs or " - " in cs:
                    cs = "(%s)" % cs
                piece = "%s*%s" % (cs, mono)
        bits.append(piece)
    out = bits[0]
    for p in bits[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


class _Tok:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_while(self, pred):
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and pred(self.text[self.pos]):
            self.pos += 1
        return self.text[start:self.pos]


def parse_series(text, trunc=8, twist=0, params=None):
    """Parse the textual format `3*z^2 - 2*O[1] + K*O[3]` back to RavSeries."""
    params = DEFAULT_PARAMS if params is None else params
    tok = _Tok(text.strip())
    terms = {}

    def parse_scalar_atom():
        ch = tok.peek()
        if ch == "(":
            tok.pos += 1
            s = parse_scalar_sum()
            assert tok.peek() == ")", "expected ) at %d" % tok.pos
            tok.pos += 1
            return s
        if ch.isdigit():
            num = tok.take_while(lambda c: c.isdigit())
            val = Fraction(int(num))
            if tok.peek() == "/":
                tok.pos += 1
                den = tok.take_while(lambda c: c.isdigit())
                val /= int(den)
            return ("num", val)
        name = tok.take_while(lambda c: c.isalnum() or c == "_")
        if not name:
            raise ValueError("parse error at %d in %r" % (tok.pos, text))
        return ("name", name)

    def parse_scalar_sum():
        # a sum of products inside parentheses -> Scalar
        total = Scalar.zero()
        sign = 1
        if tok.peek() in "+-":
            sign = -1 if tok.peek() == "-" else 1
            tok.pos += 1
        while True:
            term = Scalar.from_rational(sign)
            while True:
                kind, val = _atom_scalar(parse_scalar_atom())
                term = term * val
                if tok.peek() == "*":
                    tok.pos += 1
                else:
                    break
            total = total + term
            ch = tok.peek()
            if ch in "+-":
                sign = -1 if ch == "-" else 1
                tok.pos += 1
            else:
                return total

    def _atom_scalar(atom):
        if isinstance(atom, Scalar):
            return ("scalar", atom)
        kind, val = atom
        if kind == "num":
            return ("num", Scalar.from_rational(val))
        if kind == "name":
            if val not in params:
                raise ValueError("unknown parameter %r" % val)
            return ("param", Scalar.param(params[val]))
        raise AssertionError

    sign = 1
    if tok.peek() in "+-":
        sign = -1 if tok.peek() == "-" else 1
        tok.pos += 1
    while True:
        coeff = Scalar.from_rational(sign)
        index = -1
        while True:
            ch = tok.peek()
            if ch == "z":
                tok.pos += 1
                power = 1
                if tok.peek() == "^":
                    tok.pos += 1
                    power = int(tok.take_while(lambda c: c.isdigit()))
                index = -power - 1
            elif ch == "O" and tok.text[tok.pos:tok.pos + 2] == "O[":
                tok.pos += 2
                m = int(tok.take_while(lambda c: c.isdigit()))
                assert tok.peek() == "]"
                tok.pos += 1
                index = m
            else:
                coeff = coeff * _atom_scalar(parse_scalar_atom())[1]
            if tok.peek() == "*":
                tok.pos += 1
            else:
                break
        prev = terms.get(index, ZERO)
        s = prev + coeff
        if s.is_zero():
            terms.pop(index, None)
        else:
            terms[index] = s
        ch = tok.peek()
        if ch == "":
            break
        assert ch in "+-", "unexpected %r at %d" % (ch, tok.pos)
        sign = -1 if ch == "-" else 1
        tok.pos += 1
    return RavSeries(terms, trunc, twist)


# ---------------------------------------------------------------- BiDist

class BiDist:
    """Bivariate distribution: {(i, j): Scalar} with the index convention
    above in each slot; canonical monomial order is z-part then w-part
    (Omega_z and Omega_w anticommute)."""

    def __init__(self, terms=None, ztr=8, wtr=8):
        self.ztr = ztr
        self.wtr = wtr
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = _coeff(c)
                if not c.is_zero():
                    self.terms[k] = c

    def copy(self):
        b = BiDist({}, self.ztr, self.wtr)
        b.terms = dict(self.terms)
        return b

    def _put(self, key, c):
        s = self.terms.get(key, ZERO) + c
        if s.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other):
        b = BiDist({}, min(self.ztr, other.ztr), min(self.wtr, other.wtr))
        for src in (self.terms, other.terms):
            for k, c in src.items():
                b._put(k, c)
        return b

    def __neg__(self):
        return BiDist({k: -c for k, c in self.terms.items()},
                      self.ztr, self.wtr)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coeff(c)
        return BiDist({k: c * v for k, v in self.terms.items()},
                      self.ztr, self.wtr)

    def mul_z(self):
        b = BiDist({}, self.ztr + 1, self.wtr)
        for (i, j), c in self.terms.items():
            if i == 0:
                continue
            b._put((i - 1, j), c)
        return b

    def mul_w(self):
        b = BiDist({}, self.ztr, self.wtr + 1)
        for (i, j), c in self.terms.items():
            if j == 0:
                continue
            b._put((i, j - 1), c)
        return b

    def mul_z_minus_w(self):
        return self.mul_z() - self.mul_w()

    def mul_omega_z(self, m):
        """Left multiplication by Omega^m_z (needs ztr >= m for exactness)."""
        assert self.ztr >= m, "insufficient z truncation for Omega^%d_z" % m
        b = BiDist({}, self.ztr, self.wtr)
        for (i, j), c in self.terms.items():
            if i >= 0:
                continue
            k = m + i + 1
            if k < 0:
                continue
            b._put((k, j), c)
        return b

    def mul_omega_w(self, m):
        """Left multiplication by Omega^m_w; passes the z monomial."""
        assert self.wtr >= m, "insufficient w truncation for Omega^%d_w" % m
        b = BiDist({}, self.ztr, self.wtr)
        for (i, j), c in self.terms.items():
            if j >= 0:
                continue
            k = m + j + 1
            if k < 0:
                continue
            sign = -1 if i >= 0 else 1
            b._put((i, k), sign * c)
        return b

    def dz(self):
        b = BiDist({}, self.ztr - 1, self.wtr)
        for (i, j), c in self.terms.items():
            if i < 0:
                n = -i - 1
                if n > 0:
                    b._put((i + 1, j), n * c)
            else:
                b._put((i + 1, j), -(i + 1) * c)
        return b

    def dw(self):
        b = BiDist({}, self.ztr, self.wtr - 1)
        for (i, j), c in self.terms.items():
            if j < 0:
                n = -j - 1
                if n > 0:
                    b._put((i, j + 1), n * c)
            else:
                b._put((i, j + 1), -(j + 1) * c)
        return b

    def mul_series_z(self, f):
        """Right-multiply by a RavSeries in z; its monomials commute left
        past the w part (Koszul sign when both are Omegas)."""
        b = BiDist({}, min(self.ztr, f.trunc), self.wtr)
        for (i, j), c in self.terms.items():
            for i2, c2 in f.terms.items():
                k = combine_indices(i, i2)
                if k is None:
                    continue
                sign = -1 if (i2 >= 0 and j >= 0) else 1
                b._put((k, j), sign * (c * c2))
        return b

    def mul_series_w(self, g):
        """Right-multiply by a RavSeries in w."""
        b = BiDist({}, self.ztr, min(self.wtr, g.trunc))
        for (i, j), c in self.terms.items():
            for j2, c2 in g.terms.items():
                k = combine_indices(j, j2)
                if k is None:
                    continue
                b._put((i, k), c * c2)
        return b

    def residue_z(self):
        """Res_z dz: picks the Omega^0_z row, leaving a series in w."""
        r = {}
        for (i, j), c in self.terms.items():
            if i == 0:
                r[j] = r.get(j, ZERO) + c
        return RavSeries(r, self.wtr)

    def is_zero_within(self, zt=None, wt=None):
        zt = self.ztr if zt is None else min(zt, self.ztr)
        wt = self.wtr if wt is None else min(wt, self.wtr)
        for (i, j), c in self.terms.items():
            if (i >= 0 or -i - 1 <= zt) and (j >= 0 or -j - 1 <= wt):
                if not c.is_zero():
                    return False
        return True

    def eq_within(self, other, zt=None, wt=None):
        return (self - other).is_zero_within(zt, wt)

    def __eq__(self, other):
        if not isinstance(other, BiDist):
            return NotImplemented
        return (self - other).is_zero_within()


# ------------------------------------------------------------ delta

class DeltaKernel:
    """Delta^(j) and its plus/minus halves; variant in {full, plus, minus}."""

    def __init__(self, variant="full", j=0):
        assert variant in ("full", "plus", "minus")
        assert j >= 0
        self.variant = variant
        self.j = j


def delta_expand(kernel, trunc=8):
    """Explicit BiDist for Delta^(j) (= (1/j!) d_w^j Delta) truncated on
    the Taylor indices at `trunc`."""
    j = kernel.j
    b = BiDist({}, trunc, trunc)
    if kernel.variant in ("minus", "full"):
        # sum_{a>=0} C(a+j, j) w^a Omega^(a+j)_z
        for a in range(trunc + 1):
            b._put((a + j, -a - 1), Scalar.from_rational(binom(a + j, j)))
    if kernel.variant in ("plus", "full"):
        # sum_{a>=0} (-1)^(j+1) C(a+j, j) z^a Omega^(a+j)_w
        for a in range(trunc + 1):
            b._put((-a - 1, a + j),
                   Scalar.from_rational((-1) ** (j + 1) * binom(a + j, j)))
    return b


def apply_delta(f, trunc=None):
    """Res_z dz Delta(z-w) f(z), computed through the kernel contraction."""
    t = f.trunc if trunc is None else trunc
    need = max([t] + [i for i in f.terms if i >= 0])
    d = delta_expand(DeltaKernel("full", 0), need)
    return RavSeries(d.mul_series_z(f).residue_z().terms, t)


def delta_decompose(f, N):
    """Decompose f = sum_i d_w^i Delta(z-w) g^(i)(w), i = 0..N.

    Returns (glist, None) on success or (None, failure) where failure is
    a (condition_name, witness) pair naming the violated hypothesis.
    """
    T = min(f.ztr, f.wtr)
    # condition (1): (z-w)^(N+1) f = 0
    g = f
    for _ in range(N + 1):
        g = g.mul_z_minus_w()
    if not g.is_zero_within():
        key = next(k for k, c in g.terms.items() if not c.is_zero())
        return None, ("vanishing", key)
    # condition (2): (Omega^m_z - sum_j (w-z)^j C(m+j,j) Omega^(m+j)_w) f = 0
    for m in range(0, T + N + 1):
        if m > min(f.ztr, f.wtr) - N:
            break
        lhs = f.mul_omega_z(m)
        for j in range(N + 1):
            h = f
            for _ in range(j):
                h = h.mul_w() - h.mul_z()
            h = h.mul_omega_w(m + j).scale(binom(m + j, j))
            lhs = lhs - h
        if not lhs.is_zero_within():
            key = next(k for k, c in lhs.terms.items() if not c.is_zero())
            return None, ("omega-replacement", (m, key))
    # extraction: g^(n)(w) = (1/n!) Res_z dz (z-w)^n f
    glist = []
    for n in range(N + 1):
        acc = {}
        for i in range(n + 1):
            c_i = binom(n, i) * Fraction((-1) ** (n - i))
            shift = n - i  # multiply by w^(n-i)
            for (zi, wj), c in f.terms.items():
                if zi != i:
                    continue
                if wj >= 0 and wj - shift < 0:
                    continue  # w^s Omega^m = 0 for s > m
                wk = wj - shift
                s = acc.get(wk, ZERO) + (c_i / factorial(n)) * c
                if s.is_zero():
                    acc.pop(wk, None)
                else:
                    acc[wk] = s
        # every contribution to the w^p coefficient, p <= wtr, uses f
        # entries of taylor depth <= p, so the extraction is reliable to
        # the full window; truncating at wtr - n would drop coefficients
        # whose Delta_+ image still lands inside the comparison window
        glist.append(RavSeries(acc, f.wtr))
    # verify the rebuild
    rebuilt = delta_build(glist, min(f.ztr, f.wtr))
    if not rebuilt.eq_within(f, f.ztr - N, f.wtr - N):
        diff = rebuilt - f
        key = next(k for k, c in diff.terms.items() if not c.is_zero())
        return None, ("rebuild", key)
    return glist, None


def delta_build(glist, trunc=8):
    """sum_i d_w^i Delta(z-w) g^(i)(w) as a BiDist."""
    total = BiDist({}, trunc, trunc)
    for i, g in enumerate(glist):
        k = delta_expand(DeltaKernel("full", i), trunc).scale(
            Fraction(factorial(i)))
        total = total + k.mul_series_w(g)
    return total


# ------------------------------------------------------------ trivariate

class TriElement:
    """Canonical form in the trivariate ring with towers Omega_z, Omega_w,
    Omega_{z-w} over C[[z,w]].

    Keys: ('0',a,b) = z^a w^b; ('z',b,c) = w^b Om^c_z; ('w',a,c) = z^a Om^c_w;
    ('d',b,c) = w^b Om^c_{z-w}; ('dz',i,j) = Om^i_{z-w} Om^j_z;
    ('wd',i,j) = Om^i_w Om^j_{z-w}.
    """

    def __init__(self, terms=None, trunc=8):
        self.trunc = trunc
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = _coeff(c)
                if not c.is_zero():
                    self.terms[k] = c

    def _put(self, key, c):
        s = self.terms.get(key, ZERO) + c
        if s.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other):
        t = TriElement({}, min(self.trunc, other.trunc))
        for src in (self.terms, other.terms):
            for k, c in src.items():
                t._put(k, c)
        return t

    def __neg__(self):
        return TriElement({k: -c for k, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TriElement):
            return NotImplemented
        t = min(self.trunc, other.trunc)

        def window(e):
            out = {}
            for k, c in e.terms.items():
                tag = k[0]
                tay = ((k[1] + k[2]) if tag == "0" else
                       k[1] if tag in ("z", "w", "d") else 0)
                if tay <= t:
                    out[k] = c
            return out
        return window(self) == window(other)


# raw term: (Scalar coeff, a, b, omlist) with omlist a tuple of (x, m),
# x in {'z','w','d'}, kept in written order.

def raw_dz(terms):
    out = []
    for c, a, b, oms in terms:
        if a > 0:
            out.append((a * c, a - 1, b, oms))
        for idx, (x, m) in enumerate(oms):
            if x == "z":
                d = -(m + 1)
            elif x == "d":
                d = -(m + 1)
            else:
                continue
            noms = oms[:idx] + ((x, m + 1),) + oms[idx + 1:]
            out.append((d * c, a, b, noms))
    return out


def raw_dw(terms):
    out = []
    for c, a, b, oms in terms:
        if b > 0:
            out.append((b * c, a, b - 1, oms))
        for idx, (x, m) in enumerate(oms):
            if x == "w":
                d = -(m + 1)
            elif x == "d":
                d = m + 1
            else:
                continue
            noms = oms[:idx] + ((x, m + 1),) + oms[idx + 1:]
            out.append((d * c, a, b, noms))
    return out


_REL_CACHE = {}


def _zw_relation(a, b):
    """Rewrite of Om^a_z Om^b_w as a dict over canonical deg-2 keys."""
    if (a, b) in _REL_CACHE:
        return _REL_CACHE[(a, b)]
    base = [
        (ONE, 0, 0, (("d", 0), ("z", 0))),
        (ONE, 0, 0, (("w", 0), ("d", 0))),
        (ONE, 0, 0, (("z", 0), ("w", 0))),
    ]
    terms = base
    for _ in range(a):
        terms = raw_dz(terms)
    for _ in range(b):
        terms = raw_dw(terms)
    # collect the dz / wd families; the zw term is
    # (-1)^(a+b) a! b! Om^a_z Om^b_w exactly.
    out = {}
    for c, x, y, oms in terms:
        assert x == 0 and y == 0 and len(oms) == 2
        (x1, m1), (x2, m2) = oms
        pair = (x1, x2)
        if pair == ("z", "w"):
            continue
        if pair == ("d", "z"):
            key = ("dz", m1, m2)
        elif pair == ("w", "d"):
            key = ("wd", m1, m2)
        else:
            raise AssertionError(pair)
        s = out.get(key, ZERO) + c
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    scale = -Fraction((-1) ** (a + b), factorial(a) * factorial(b))
    rel = {k: scale * c for k, c in out.items()}
    _REL_CACHE[(a, b)] = rel
    return rel


def tri_normalize(raw_terms, trunc=8):
    """Canonical TriElement from raw (coeff, a, b, omlist) terms."""
    t = TriElement({}, trunc)
    work = [(_coeff(c), a, b, tuple(oms)) for c, a, b, oms in raw_terms]
    while work:
        c, a, b, oms = work.pop()
        if c.is_zero():
            continue
        if len(oms) >= 3:
            continue  # degree >= 3 vanishes
        if len(oms) == 2 and oms[0][0] == oms[1][0]:
            continue  # same tower squares to zero
        if len(oms) == 0:
            t._put(("0", a, b), c)
            continue
        if len(oms) == 1:
            x, m = oms[0]
            if x == "z":
                if a > 0:  # z Om^m_z = Om^(m-1)_z
                    if m - a >= 0:
                        t._put(("z", b, m - a), c)
                    continue
                t._put(("z", b, m), c)
            elif x == "w":
                if b > 0:
                    if m - b >= 0:
                        t._put(("w", a, m - b), c)
                    continue
                t._put(("w", a, m), c)
            else:  # z-w tower: z^a = ((z-w)+w)^a, (z-w) reduces
                if a > 0:
                    for i in range(a + 1):
                        if m - i < 0:
                            continue
                        t._put(("d", a + b - i, m - i),
                               Fraction(binom(a, i)) * c)
                    continue
                t._put(("d", b, m), c)
            continue
        # degree 2: sort the pair into a fixed written order
        (x1, m1), (x2, m2) = oms
        order = {"d": 0, "z": 1, "w": 2}
        swap_map = {("z", "d"): ("d", "z"), ("d", "w"): ("w", "d"),
                    ("w", "z"): ("z", "w")}
        if (x1, x2) in swap_map:
            work.append((-c, a, b, ((x2, m2), (x1, m1))))
            continue
        if (x1, x2) == ("d", "z"):
            if a > 0:  # z reduces against Om_z
                if m2 - 1 >= 0:
                    work.append((c, a - 1, b, (("d", m1), ("z", m2 - 1))))
                continue
            if b > 0:  # w = z - (z-w)
                if m2 - 1 >= 0:
                    work.append((c, a, b - 1, (("d", m1), ("z", m2 - 1))))
                if m1 - 1 >= 0:
                    work.append((-c, a, b - 1, (("d", m1 - 1), ("z", m2))))
                continue
            t._put(("dz", m1, m2), c)
            continue
        if (x1, x2) == ("w", "d"):
            if b > 0:  # w reduces against Om_w
                if m1 - 1 >= 0:
                    work.append((c, a, b - 1, (("w", m1 - 1), ("d", m2))))
                continue
            if a > 0:  # z = w + (z-w)
                if m1 - 1 >= 0:
                    work.append((c, a - 1, b, (("w", m1 - 1), ("d", m2))))
                if m2 - 1 >= 0:
                    work.append((c, a - 1, b, (("w", m1), ("d", m2 - 1))))
                continue
            t._put(("wd", m1, m2), c)
            continue
        assert (x1, x2) == ("z", "w")
        if a > 0:
            if m1 - 1 >= 0:
                work.append((c, a - 1, b, (("z", m1 - 1), ("w", m2))))
            continue
        if b > 0:
            if m2 - 1 >= 0:
                work.append((c, a, b - 1, (("z", m1), ("w", m2 - 1))))
            continue
        for key, rc in _zw_relation(m1, m2).items():
            t._put(key, _coeff(rc) * c)
    return t


def expand_region(e, region, trunc=8):
    """Image of a TriElement under one of the three expansion maps.

    w_near_0 / z_near_0 return a BiDist in (z, w); z_near_w returns a
    BiDist whose first slot is u = z-w and second slot is w.
    """
    assert region in ("w_near_0", "z_near_0", "z_near_w")
    out = BiDist({}, trunc, trunc)

    def put(i, j, c):
        out._put((i, j), c)

    for key, c in e.terms.items():
        tag = key[0]
        if region == "z_near_w":
            _expand_near_w(key, c, trunc, put)
            continue
        if tag == "0":
            a, b = key[1], key[2]
            put(-a - 1, -b - 1, c)
        elif tag == "z":
            b, m = key[1], key[2]
            put(m, -b - 1, c)
        elif tag == "w":
            a, m = key[1], key[2]
            put(-a - 1, m, c)
        elif tag == "d":
            b, m = key[1], key[2]
            if region == "w_near_0":
                # Om^m_{z-w} -> sum_a C(m+a,a) w^a Om^(m+a)_z
                for a in range(trunc + 1):
                    put(m + a, -(a + b) - 1, Fraction(binom(m + a, a)) * c)
            else:
                # Om^m_{z-w} -> (-1)^m sum_a C(m+a,a) z^a Om^(m+a)_w
                for a in range(trunc + 1):
                    j = combine_indices(-b - 1, m + a)
                    if j is None:
                        continue
                    put(-a - 1, j,
                        Fraction((-1) ** m * binom(m + a, a)) * c)
        elif tag == "dz":
            i, j = key[1], key[2]
            if region == "w_near_0":
                continue  # lands in Om_z Om_z = 0
            # Om^i_{z-w} -> z-expansion, then pair with Om^j_z
            for a in range(j + 1):
                put(j - a, i + a,
                    -Fraction((-1) ** i * binom(i + a, a)) * c)
        elif tag == "wd":
            i, j = key[1], key[2]
            if region == "z_near_0":
                continue  # lands in Om_w Om_w = 0
            for a in range(i + 1):
                put(j + a, i - a, -Fraction(binom(j + a, a)) * c)
        else:
            raise AssertionError(key)
    return out


def _expand_near_w(key, c, trunc, put):
    """z_near_w map: coordinates (u = z-w, w); Om^m_z re-expanded."""
    tag = key[0]
    if tag == "0":
        a, b = key[1], key[2]
        # z^a = (u + w)^a
        for i in range(a + 1):
            put(-i - 1, -(a - i + b) - 1, Fraction(binom(a, i)) * c)
    elif tag == "z":
        b, m = key[1], key[2]
        # Om^m_z -> sum_n (-1)^n C(n+m,n) u^n Om^(m+n)_w
        for n in range(trunc + 1):
            j = combine_indices(-b - 1, m + n)
            if j is None:
                continue
            put(-n - 1, j, Fraction((-1) ** n * binom(n + m, n)) * c)
    elif tag == "w":
        a, m = key[1], key[2]
        for i in range(a + 1):
            j = combine_indices(-(a - i) - 1, m)
            if j is None:
                continue
            put(-i - 1, j, Fraction(binom(a, i)) * c)
    elif tag == "d":
        b, m = key[1], key[2]
        put(m, -b - 1, c)
    elif tag == "dz":
        i, j = key[1], key[2]
        for n in range(i + 1):
            put(i - n, j + n, Fraction((-1) ** n * binom(n + j, n)) * c)
    elif tag == "wd":
        i, j = key[1], key[2]
        put(j, i, -c)
    else:
        raise AssertionError(key)
