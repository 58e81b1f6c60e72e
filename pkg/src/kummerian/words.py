"""Free-group words, presentations of pro-p groups, and their text formats.

Words are stored as tuples of ``(generator_index, exponent)`` letters in freely
reduced form.  Exponents are Python ints or truncated p-adic integers
(:class:`~kummerian.padic.PadicScalar`).

Text grammar for words::

    word := term+
    term := atom ('^' int)?
    atom := ident | '[' word ',' word ']' | '(' word ')'
    int  := '-'? digit+ ('_p')?

An ``int`` followed by ``_p`` is a truncated p-adic exponent, which needs a
declared prime and precision.  Generator indices are 0-based internally and
1-based in all user-facing text.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .padic import Exponent, PadicScalar, is_prime

Letter = tuple  # (generator index, exponent)


def _is_zero(e: Exponent) -> bool:
    return e.is_zero() if isinstance(e, PadicScalar) else e == 0


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    if isinstance(a, PadicScalar) or isinstance(b, PadicScalar):
        return b + a if not isinstance(a, PadicScalar) else a + b
    return a + b


def _mul_exp(a: Exponent, n: Exponent) -> Exponent:
    if isinstance(a, PadicScalar):
        return a * n
    if isinstance(n, PadicScalar):
        return n * a
    return a * n


def _neg_exp(e: Exponent) -> Exponent:
    return -e


def free_reduce(letters: Iterable[Letter]) -> tuple:
    out: list = []
    for g, e in letters:
        if _is_zero(e):
            continue
        if out and out[-1][0] == g:
            merged = _add_exp(out[-1][1], e)
            out.pop()
            if not _is_zero(merged):
                out.append((g, merged))
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def gen(cls, i: int, e: Exponent = 1) -> "Word":
        return cls(((i, e),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, _neg_exp(e)) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        if len(self.letters) == 1:
            g, e = self.letters[0]
            return Word(((g, _mul_exp(e, n)),))
        return Word(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def has_truncated(self) -> bool:
        return any(isinstance(e, PadicScalar) for _, e in self.letters)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def render(self, names: Sequence[str] | None = None) -> str:
        return render_word(self, names)

    def __repr__(self):
        return f"Word({self.render()})"


IDENTITY = Word()


def commutator(a: Word, b: Word) -> Word:
    return a.inverse() * b.inverse() * a * b


def exponent_sums(w: Word, d: int | None = None) -> list[int]:
    """Signed exponent sum per generator; truncated exponents count by residue."""
    if d is None:
        d = w.max_generator() + 1
    sums = [0] * d
    for g, e in w:
        sums[g] += int(e)
    return sums


def render_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w.letters:
        return "1"
    parts = []
    for g, e in w:
        name = names[g] if names is not None else f"x{g + 1}"
        if isinstance(e, PadicScalar):
            parts.append(f"{name}^{e.residue}_p")
        elif e == 1:
            parts.append(name)
        else:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


# ----------------------------------------------------------------------------
# Parsing


class WordSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at column {pos + 1}")


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+(?:_p)?)|(?P<sym>[\^\[\],()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _WordParser:
    def __init__(self, text: str, names: Sequence[str], p: int | None, precision: int | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {n: k for k, n in enumerate(names)}
        self.p = p
        self.precision = precision

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value=None):
        kind, val, pos = self.peek()
        if kind is None:
            raise WordSyntaxError("unexpected end of input", pos, self.text)
        if value is not None and val != value:
            raise WordSyntaxError(f"expected {value!r}, found {val!r}", pos, self.text)
        self.i += 1
        return kind, val, pos

    def word(self) -> Word:
        kind, val, pos = self.peek()
        if kind is None or val in (",", "]", ")"):
            raise WordSyntaxError("expected a generator, '[' or '('", pos, self.text)
        w = IDENTITY
        while True:
            kind, val, _ = self.peek()
            if kind is None or val in (",", "]", ")"):
                return w
            w = w * self.term()

    def term(self) -> Word:
        a = self.atom()
        kind, val, _ = self.peek()
        if val == "^":
            self.take()
            e = self.exponent()
            if isinstance(e, PadicScalar):
                if len(a) == 1:
                    g, e0 = a.letters[0]
                    return Word(((g, e * e0),))
                return a ** symmetric_residue(e)
            return a**e
        return a

    def exponent(self) -> Exponent:
        kind, val, pos = self.take()
        if kind != "int":
            raise WordSyntaxError(f"expected an integer exponent, found {val!r}", pos, self.text)
        if val.endswith("_p"):
            if self.p is None or self.precision is None:
                raise WordSyntaxError("truncated exponent without a declared precision", pos, self.text)
            return PadicScalar(self.p, self.precision, int(val[:-2]))
        return int(val)

    def atom(self) -> Word:
        kind, val, pos = self.take()
        if kind == "ident":
            if val not in self.index:
                raise WordSyntaxError(f"unknown generator {val!r}", pos, self.text)
            return Word.gen(self.index[val])
        if val == "[":
            a = self.word()
            self.take(",")
            b = self.word()
            self.take("]")
            return commutator(a, b)
        if val == "(":
            a = self.word()
            self.take(")")
            return a
        raise WordSyntaxError(f"unexpected token {val!r}", pos, self.text)

    def parse(self) -> Word:
        kind, val, pos = self.peek()
        if kind is None:
            raise WordSyntaxError("empty word", pos, self.text)
        if val == "1" and len(self.tokens) == 1:
            return IDENTITY
        w = self.word()
        kind, val, pos = self.peek()
        if kind is not None:
            raise WordSyntaxError(f"unexpected token {val!r}", pos, self.text)
        return w


def parse_word(text: str, names: Sequence[str], p: int | None = None, precision: int | None = None) -> Word:
    return _WordParser(text, names, p, precision).parse()


# ----------------------------------------------------------------------------
# Presentations


class FrattiniError(ValueError):
    """A relator does not lie in the Frattini subgroup S^p[S,S]."""


@dataclass(frozen=True)
class Presentation:
    p: int
    names: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "relators", tuple(self.relators))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        for j, r in enumerate(self.relators):
            if r.max_generator() >= self.d:
                raise ValueError(f"relator {j + 1} uses a generator outside x1..x{self.d}")
            for g, e in r:
                if isinstance(e, PadicScalar) and e.p != self.p:
                    raise ValueError(f"relator {j + 1} has an exponent over p={e.p}")
            sums = exponent_sums(r, self.d)
            bad = [i for i, s in enumerate(sums) if s % self.p]
            if bad:
                i = bad[0]
                raise FrattiniError(
                    f"relator {j + 1} has exponent sum {sums[i]} in {self.names[i]}, not divisible by {self.p}"
                )

    @property
    def d(self) -> int:
        return len(self.names)

    @classmethod
    def free(cls, p: int, d: int, prefix: str = "x") -> "Presentation":
        return cls(p, tuple(f"{prefix}{i + 1}" for i in range(d)), ())

    @classmethod
    def from_strings(cls, p: int, names: Sequence[str], relators: Sequence[str]) -> "Presentation":
        return cls(p, tuple(names), tuple(parse_word(r, names) for r in relators))

    def render(self) -> str:
        rels = ", ".join(r.render(self.names) for r in self.relators)
        return f"<{', '.join(self.names)} | {rels}> (p={self.p})"


def is_frattini_valid(p: int, d: int, relators: Iterable[Word]) -> bool:
    return all(s % p == 0 for r in relators for s in exponent_sums(r, d))


def free_product(P1: Presentation, P2: Presentation) -> Presentation:
    if P1.p != P2.p:
        raise ValueError(f"prime mismatch: {P1.p} vs {P2.p}")
    names = list(P1.names)
    taken = set(names)
    for n in P2.names:
        m = n
        k = 2
        while m in taken:
            m = f"{n}_{k}"
            k += 1
        names.append(m)
        taken.add(m)
    shift = P1.d
    moved = tuple(Word(tuple((g + shift, e) for g, e in r)) for r in P2.relators)
    return Presentation(P1.p, tuple(names), P1.relators + moved)


# ----------------------------------------------------------------------------
# Presentation files


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class PresentationFile:
    presentation: Presentation
    precision: int | None = None
    theta: tuple | None = None


def parse_presentation(text: str) -> PresentationFile:
    p = precision = None
    names: list[str] | None = None
    rels: list[tuple[str, int, int]] = []
    theta = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        key, _, rest = stripped.partition(" ")
        rest_col = col0 + len(key) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        try:
            if key == "p":
                p = int(rest)
                if not is_prime(p):
                    raise PresentationSyntaxError(f"{p} is not prime", lineno, rest_col)
            elif key == "precision":
                precision = int(rest)
                if precision < 1:
                    raise PresentationSyntaxError("precision must be >= 1", lineno, rest_col)
            elif key == "gens":
                names = rest.split()
                if not names:
                    raise PresentationSyntaxError("no generators listed", lineno, rest_col)
            elif key == "rel":
                rels.append((rest, lineno, rest_col))
            elif key == "theta":
                theta = tuple(int(t) for t in rest.replace(" ", "").split(","))
            else:
                raise PresentationSyntaxError(f"unknown directive {key!r}", lineno, col0)
        except ValueError as exc:
            if isinstance(exc, PresentationSyntaxError):
                raise
            raise PresentationSyntaxError(str(exc), lineno, rest_col) from None
    if p is None:
        raise PresentationSyntaxError("missing 'p' line", 1)
    if names is None:
        raise PresentationSyntaxError("missing 'gens' line", 1)
    words = []
    for text_, lineno, col in rels:
        try:
            words.append(parse_word(text_, names, p, precision))
        except WordSyntaxError as exc:
            raise PresentationSyntaxError(str(exc).rsplit(" at column", 1)[0], lineno, col + exc.pos) from None
    try:
        pres = Presentation(p, tuple(names), tuple(words))
    except FrattiniError as exc:
        raise PresentationSyntaxError(str(exc), rels[0][1] if rels else 1) from None
    if theta is not None and len(theta) != len(names):
        raise PresentationSyntaxError(f"theta has {len(theta)} values for {len(names)} generators", 1)
    return PresentationFile(pres, precision, theta)


def render_presentation(pf: PresentationFile) -> str:
    P = pf.presentation
    lines = [f"p {P.p}"]
    if pf.precision is not None:
        lines.append(f"precision {pf.precision}")
    lines.append("gens " + " ".join(P.names))
    lines += [f"rel {r.render(P.names)}" for r in P.relators]
    if pf.theta is not None:
        lines.append("theta " + ",".join(str(t) for t in pf.theta))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# Random words and the lower p-central series


@dataclass
class RandomSource:
    seed: int = 0
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed & 0xFFFFFFFFFFFFFFFF)

    def fork(self) -> "RandomSource":
        return RandomSource(self._rng.getrandbits(64))

    def randint(self, a: int, b: int) -> int:
        return self._rng.randint(a, b)

    def randrange(self, n: int) -> int:
        return self._rng.randrange(n)

    def choice(self, seq):
        return self._rng.choice(seq)

    def random(self) -> float:
        return self._rng.random()

    def word(self, d: int, length: int = 4, max_exp: int = 3) -> Word:
        letters = []
        for _ in range(length):
            e = self._rng.randint(1, max_exp) * self._rng.choice((1, -1))
            letters.append((self._rng.randrange(d), e))
        return Word(tuple(letters))

    def frattini_word(self, p: int, d: int, length: int = 4, max_exp: int = 3) -> Word:
        """A random word whose exponent sums are all divisible by p."""
        w = self.word(d, length, max_exp)
        sums = exponent_sums(w, d)
        fix = tuple((i, -(s % p) + p * self._rng.randint(-1, 1)) for i, s in enumerate(sums))
        return w * Word(fix)


def sample_lower_p_central(
    P: Presentation,
    i: int,
    rng: RandomSource,
    *,
    base: Word | None = None,
    mode: str | None = None,
    length: int = 3,
) -> Word:
    """A word of S^(i,p), built from S^(1,p) = S by random p-th powers and commutators.

    ``mode`` forces the top-level step ("power" or "commutator"); ``base`` fixes
    the depth-1 word.
    """
    if not 1 <= i <= 6:
        raise ValueError("sampling depth must be between 1 and 6")
    d = max(P.d, 1)
    if i == 1:
        return base if base is not None else rng.word(d, rng.randint(1, length))
    h = sample_lower_p_central(P, i - 1, rng, base=base, length=length)
    step = mode or rng.choice(("power", "commutator", "both"))
    if step == "power":
        return h ** P.p
    g = rng.word(d, rng.randint(1, 2))
    c = commutator(g, h) if rng.random() < 0.5 else commutator(h, g)
    if step == "commutator":
        return c
    h2 = sample_lower_p_central(P, i - 1, rng, length=length)
    return c * h2**P.p


def k_generator(g: Word, h: Word, theta) -> Word:
    """The generator h^(-theta(g)) g h g^-1 of K(G); theta(h) must be 1 at working precision.

    ``theta`` is an :class:`~kummerian.cocycle.Orientation`.
    """
    th = theta.of_word(h)
    if th.residue != 1 % th.modulus:
        raise ValueError(f"theta(h) = {th} is not 1; h is not in Ker(theta) at this precision")
    if not h:
        return IDENTITY
    lam = -theta.of_word(g)
    lam = PadicScalar(lam.p, lam.precision, lam.residue)
    if len(h) == 1:
        gi, e = h.letters[0]
        hp = Word(((gi, lam * e),))
    else:
        # powers of composite words carry the integer representative of least absolute value
        hp = h ** symmetric_residue(lam)
    return hp * g * h * g.inverse()


def symmetric_residue(x: PadicScalar) -> int:
    r, m = x.residue, x.modulus
    return r - m if 2 * r > m else r
