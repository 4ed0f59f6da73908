"""Free associative polynomials with exact coefficients, a small expression
parser, and a terminating rewrite engine.

Rewriting strategy (part of the contract, since the rule sets are not
confluent by construction): each term is normalized independently; within a
word, match positions are scanned left to right and at each position the
rules are tried in list order; the first match is replaced and the resulting
words are normalized again.  Rules must be length-decreasing (or
length-preserving and lexicographically decreasing), which makes every
reduction terminate.
"""

from __future__ import annotations

from .errors import DomainError, ParseError
from .fields import Field

class FreeAlgebra:
    """Context object: an ordered alphabet over a coefficient field."""

    def __init__(self, field: Field, alphabet):
        self.field = field
        self.alphabet = tuple(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DomainError("alphabet symbols must be distinct")
        if not all(s and s.isalpha() for s in self.alphabet):
            raise DomainError("alphabet symbols must be nonempty alphabetic words")
        self.index = {s: i for i, s in enumerate(self.alphabet)}

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra) and self.field == other.field
                and self.alphabet == other.alphabet)

    def __hash__(self):
        return hash((self.field, self.alphabet))

    def zero(self) -> "FreePoly":
        return FreePoly(self, {})

    def one(self) -> "FreePoly":
        return FreePoly(self, {(): self.field.one})

    def const(self, c) -> "FreePoly":
        c = self.field.of(c)
        return FreePoly(self, {(): c} if c else {})

    def symbol(self, s: str) -> "FreePoly":
        if s not in self.index:
            raise DomainError(f"unknown symbol {s!r}")
        return FreePoly(self, {(s,): self.field.one})

    def word(self, symbols) -> "FreePoly":
        w = tuple(symbols)
        for s in w:
            if s not in self.index:
                raise DomainError(f"unknown symbol {s!r}")
        return FreePoly(self, {w: self.field.one})

    def word_key(self, w):
        return (len(w), tuple(self.index[s] for s in w))

    def parse(self, text: str, bindings=None) -> "FreePoly":
        return _Parser(self, text, bindings or {}).parse()


class FreePoly:
    """Formal sum of words; ``terms`` maps a word tuple to a nonzero scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def _lift(self, other):
        if isinstance(other, FreePoly):
            if other.algebra != self.algebra:
                raise DomainError("operands live in different free algebras")
            return other
        return self.algebra.const(other)

    def __add__(self, other):
        other = self._lift(other)
        f = self.algebra.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = f.add(out.get(w, f.zero), c)
        return FreePoly(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.algebra.field
        return FreePoly(self.algebra, {w: f.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        f = self.algebra.field
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = f.add(out.get(w, f.zero), f.mul(c1, c2))
        return FreePoly(self.algebra, out)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("powers must be nonnegative integers")
        acc = self.algebra.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def scale(self, c) -> "FreePoly":
        f = self.algebra.field
        c = f.of(c)
        return FreePoly(self.algebra, {w: f.mul(c, x) for w, x in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, FreePoly):
            return self.algebra == other.algebra and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda it: self.algebra.word_key(it[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.algebra.field
        parts = []
        for w, c in self.sorted_terms():
            s = f.format(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            body = _format_word(w)
            if body:
                chunk = body if s in ("1", "1/1") else f"{s}*{body}"
            else:
                chunk = s
            if not parts:
                parts.append(("-" if neg else "") + chunk)
            else:
                parts.append(("- " if neg else "+ ") + chunk)
        return " ".join(parts)

    __repr__ = __str__


def _format_word(w) -> str:
    if not w:
        return ""
    runs = []
    for s in w:
        if runs and runs[-1][0] == s:
            runs[-1][1] += 1
        else:
            runs.append([s, 1])
    return "*".join(s if n == 1 else f"{s}^{n}" for s, n in runs)


class RewriteRule:
    """``lhs -> rhs`` with every rhs word strictly shorter than the lhs, or
    of equal length and lexicographically smaller; this makes any rewriting
    sequence terminate."""

    __slots__ = ("algebra", "lhs", "rhs")

    def __init__(self, algebra: FreeAlgebra, lhs, rhs: FreePoly):
        lhs = tuple(lhs)
        if not lhs:
            raise DomainError("rewrite rule needs a nonempty left-hand side")
        for s in lhs:
            if s not in algebra.index:
                raise DomainError(f"unknown symbol {s!r} in rule")
        if rhs.algebra != algebra:
            raise DomainError("rule sides live in different free algebras")
        key = algebra.word_key(lhs)
        for w in rhs.terms:
            if algebra.word_key(w) >= key:
                raise DomainError(
                    f"non-decreasing rule: {_format_word(w)} does not precede {_format_word(lhs)}")
        self.algebra = algebra
        self.lhs = lhs
        self.rhs = rhs

    def __repr__(self):
        return f"RewriteRule({_format_word(self.lhs)} -> {self.rhs})"


def _first_match(word, rules):
    for pos in range(len(word)):
        for rule in rules:
            end = pos + len(rule.lhs)
            if end <= len(word) and word[pos:end] == rule.lhs:
                return pos, rule
    return None


def reduce_poly(p: FreePoly, rules) -> FreePoly:
    """Normal form of every term under the fixed strategy, then recombined.

    Reduction is termwise, hence linear by construction."""
    for r in rules:
        if r.algebra != p.algebra:
            raise DomainError("rules live in a different free algebra")
    f = p.algebra.field
    out = {}
    stack = list(p.terms.items())
    while stack:
        word, coeff = stack.pop()
        hit = _first_match(word, rules)
        if hit is None:
            acc = f.add(out.get(word, f.zero), coeff)
            if acc:
                out[word] = acc
            elif word in out:
                del out[word]
            continue
        pos, rule = hit
        tail = word[pos + len(rule.lhs):]
        head = word[:pos]
        for w2, c2 in rule.rhs.terms.items():
            stack.append((head + w2 + tail, f.mul(coeff, c2)))
    return FreePoly(p.algebra, out)


def verify_reduction(combination: FreePoly, expected: FreePoly, rules):
    """Reduce the combination and compare with the expected polynomial.

    Returns ``(ok, residual)`` where the residual is the difference; a
    mismatch is data, not an error."""
    got = reduce_poly(combination, rules)
    return got == expected, got - expected


def span_closure(algebra: FreeAlgebra, rules, max_degree: int):
    """All words up to ``max_degree`` in normal form (no rule applies)."""
    from .errors import CapabilityError

    if max_degree > 12:
        raise CapabilityError("word enumeration is limited to degree 12")
    out = [()]
    level = [()]
    for _ in range(max_degree):
        nxt = []
        for w in level:
            for s in algebra.alphabet:
                nxt.append(w + (s,))
        level = nxt
        out.extend(level)
    return [w for w in out if _first_match(w, rules) is None]


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_OPS = set("+-*^()")


class _Parser:
    def __init__(self, algebra: FreeAlgebra, text: str, bindings):
        self.algebra = algebra
        self.text = text
        self.bindings = bindings
        self.pos = 0
        self.tokens = self._tokenize()
        self.cursor = 0

    def _tokenize(self):
        tokens = []
        i, text = 0, self.text
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in _OPS:
                tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j < len(text) and text[j] == "/" and j + 1 < len(text) and text[j + 1].isdigit():
                    k = j + 1
                    while k < len(text) and text[k].isdigit():
                        k += 1
                    tokens.append(("frac", (int(text[i:j]), int(text[j + 1:k])), i))
                    i = k
                else:
                    tokens.append(("int", int(text[i:j]), i))
                    i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("word", text[i:j], i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r}", position=i)
        tokens.append(("end", None, len(text)))
        return tokens

    def _peek(self):
        return self.tokens[self.cursor]

    def _next(self):
        tok = self.tokens[self.cursor]
        self.cursor += 1
        return tok

    def parse(self) -> FreePoly:
        poly = self._expr()
        kind, _, pos = self._peek()
        if kind != "end":
            raise ParseError("trailing input", position=pos)
        return poly

    def _expr(self) -> FreePoly:
        negate = False
        if self._peek()[0] == "-":
            self._next()
            negate = True
        acc = self._term()
        if negate:
            acc = -acc
        while self._peek()[0] in ("+", "-"):
            op = self._next()[0]
            term = self._term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def _term(self) -> FreePoly:
        acc = self._factor()
        while True:
            kind = self._peek()[0]
            if kind == "*":
                self._next()
                acc = acc * self._factor()
            elif kind in ("int", "frac", "word", "("):
                acc = acc * self._factor()
            else:
                return acc

    def _factor(self) -> FreePoly:
        base = self._atom()
        if self._peek()[0] == "^":
            self._next()
            kind, value, pos = self._next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", position=pos)
            base = base**value
        return base

    def _atom(self) -> FreePoly:
        kind, value, pos = self._next()
        if kind == "int":
            return self.algebra.const(value)
        if kind == "frac":
            num, den = value
            f = self.algebra.field
            den_val = f.of(den)
            if not den_val:
                raise ParseError(f"denominator {den} vanishes in this field", position=pos)
            return self.algebra.const(f.div(f.of(num), den_val))
        if kind == "(":
            inner = self._expr()
            k, _, p2 = self._next()
            if k != ")":
                raise ParseError("expected ')'", position=p2)
            return inner
        if kind == "word":
            if value in self.bindings:
                return self.bindings[value]
            if value in self.algebra.index:
                return self.algebra.symbol(value)
            if all(c in self.algebra.index for c in value):
                return self.algebra.word(tuple(value))
            raise ParseError(f"unknown symbol {value!r}", position=pos)
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input",
                         position=pos)
