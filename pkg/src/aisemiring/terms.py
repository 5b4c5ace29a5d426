"""Term algebra of the free additively idempotent semiring.

A word is a nonempty sequence of variables (an element of the free
semigroup); a term is a finite nonempty *set* of words written as a formal
sum. Addition of terms is set union, multiplication concatenates words
pairwise, so duplicate summands always collapse.

Variable names are a single letter followed by optional digits ("x", "x1",
"y12"), which makes juxtaposed words such as ``x1x2`` tokenize uniquely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Variable = str

_VARIABLE_RE = re.compile(r"[A-Za-z][0-9]*")


class TermSyntaxError(ValueError):
    """Input text does not match the term grammar."""


def _check_variable(name: str) -> str:
    if _VARIABLE_RE.fullmatch(name) is None:
        raise TermSyntaxError(f"illegal variable name {name!r}")
    return name


class Word:
    """Nonempty sequence of variables; ``*`` concatenates."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Variable]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("a word needs at least one letter")
        for x in letters:
            _check_variable(x)
        self.letters = letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def sort_key(self) -> tuple[int, tuple[Variable, ...]]:
        return (len(self.letters), self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "".join(self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


class Term:
    """Finite nonempty set of words, stored in a canonical order.

    Summands are kept sorted length-then-lexicographically with duplicates
    removed, so structural equality coincides with set equality and printing
    is deterministic.
    """

    __slots__ = ("words",)

    def __init__(self, words: Iterable[Word]):
        ws = tuple(sorted(set(words), key=Word.sort_key))
        if not ws:
            raise ValueError("a term needs at least one summand")
        self.words = ws

    @staticmethod
    def of(*words: Word | str) -> "Term":
        return Term(parse_word(w) if isinstance(w, str) else w for w in words)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in set(self.words)

    def __add__(self, other: "Term") -> "Term":
        return Term(self.words + other.words)

    def __mul__(self, other: "Term") -> "Term":
        return Term(a * b for a in self.words for b in other.words)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Term) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def __lt__(self, other: "Term") -> bool:
        return tuple(w.sort_key() for w in self.words) < tuple(
            w.sort_key() for w in other.words
        )

    def __str__(self) -> str:
        return print_term(self)

    def __repr__(self) -> str:
        return f"Term({print_term(self)!r})"


def add(s: Term, t: Term) -> Term:
    return s + t


def mul(s: Term, t: Term) -> Term:
    return s * t


def parse_word(text: str) -> Word:
    """Parse a single word: variables juxtaposed or separated by ``*``/space."""
    letters: list[Variable] = []
    for token in re.split(r"[\s*]+", text.strip()):
        if not token:
            continue
        pos = 0
        while pos < len(token):
            m = _VARIABLE_RE.match(token, pos)
            if m is None:
                raise TermSyntaxError(
                    f"illegal identifier starting at {token[pos:]!r}"
                )
            letters.append(m.group())
            pos = m.end()
    if not letters:
        raise TermSyntaxError(f"empty word in {text!r}")
    return Word(letters)


def parse_term(text: str) -> Term:
    """Parse ``w1 + w2 + ...`` where each summand is a word.

    Duplicate summands collapse; the grammar has no parentheses because
    every term is a flat sum of words.
    """
    if not text or not text.strip():
        raise TermSyntaxError("empty term")
    words = []
    for chunk in text.split("+"):
        if not chunk.strip():
            raise TermSyntaxError(f"empty summand in {text!r}")
        words.append(parse_word(chunk))
    return Term(words)


def print_term(t: Term) -> str:
    return " + ".join(str(w) for w in t.words)


def content(item: Word | Term) -> frozenset[Variable]:
    """Set of variables occurring in a word or term."""
    if isinstance(item, Word):
        return frozenset(item.letters)
    return frozenset(x for w in item.words for x in w.letters)


def length(w: Word) -> int:
    """Number of letters, counting multiplicities."""
    return len(w)


def occ(x: Variable, w: Word) -> int:
    """Number of occurrences of variable ``x`` in word ``w``."""
    return w.letters.count(x)


def is_linear(w: Word) -> bool:
    """True iff every variable of ``w`` occurs exactly once."""
    return len(set(w.letters)) == len(w.letters)


def factors2(item: Word | Term) -> frozenset[Word]:
    """All contiguous two-letter factors of a word (or of every summand)."""
    if isinstance(item, Term):
        return frozenset(f for w in item.words for f in factors2(w))
    ls = item.letters
    return frozenset(Word(ls[i : i + 2]) for i in range(len(ls) - 1))


def subwords2(item: Word | Term) -> frozenset[Word]:
    """All two-letter scattered subwords (order-preserving subsequences)."""
    if isinstance(item, Term):
        return frozenset(f for w in item.words for f in subwords2(w))
    ls = item.letters
    return frozenset(
        Word((ls[i], ls[j]))
        for i in range(len(ls))
        for j in range(i + 1, len(ls))
    )


def level(k: int, u: Term) -> frozenset[Word]:
    """Summands of ``u`` of length exactly ``k``."""
    if k < 1:
        raise ValueError("level index must be >= 1")
    return frozenset(w for w in u.words if len(w) == k)


def level_geq(k: int, u: Term) -> frozenset[Word]:
    """Summands of ``u`` of length at least ``k``."""
    if k < 1:
        raise ValueError("level index must be >= 1")
    return frozenset(w for w in u.words if len(w) >= k)


def delta(u: Term) -> frozenset[frozenset[Variable]]:
    """Variable sets meeting every summand in exactly one letter.

    Returns all Z subseteq content(u) such that for each summand w the
    intersection Z & content(w) is a single variable occurring exactly once
    in w. Found by backtracking over summands rather than enumerating all
    subsets, so it stays fast on many-variable terms.
    """
    summands = u.words
    found: set[frozenset[Variable]] = set()

    def walk(i: int, state: dict[Variable, bool]) -> None:
        if i == len(summands):
            found.add(frozenset(v for v, inz in state.items() if inz))
            return
        w = summands[i]
        vars_w = sorted(set(w.letters))
        chosen = [v for v in vars_w if state.get(v) is True]
        if len(chosen) > 1:
            return
        if len(chosen) == 1:
            x = chosen[0]
            if occ(x, w) != 1:
                return
            nxt = dict(state)
            for v in vars_w:
                if v != x:
                    nxt[v] = False
            walk(i + 1, nxt)
            return
        for x in vars_w:
            if state.get(x) is False or occ(x, w) != 1:
                continue
            nxt = dict(state)
            nxt[x] = True
            for v in vars_w:
                if v != x:
                    nxt[v] = False
            walk(i + 1, nxt)

    walk(0, {})
    return frozenset(found)


class Substitution:
    """Finite map from variables to terms, extended homomorphically.

    Variables outside the map are fixed. Applying to a word multiplies the
    images of its letters; applying to a term unions the images of its
    summands.
    """

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping[Variable, Term] | None = None):
        self.mapping = dict(mapping or {})
        for x in self.mapping:
            _check_variable(x)

    def image_of(self, x: Variable) -> Term:
        img = self.mapping.get(x)
        return img if img is not None else Term([Word((x,))])

    def __call__(self, item: Word | Term) -> Term:
        if isinstance(item, Word):
            result = self.image_of(item.letters[0])
            for x in item.letters[1:]:
                result = result * self.image_of(x)
            return result
        out = self(item.words[0])
        for w in item.words[1:]:
            out = out + self(w)
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Substitution) and self.mapping == other.mapping

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{x} := {print_term(t)}" for x, t in sorted(self.mapping.items())
        )
        return f"Substitution({inner})"


def apply(phi: Substitution, item: Word | Term) -> Term:
    return phi(item)


def commutative_normalize(t: Term) -> Term:
    """Sort the letters of each word; summands made equal collapse."""
    return Term(Word(sorted(w.letters)) for w in t.words)


@dataclass(frozen=True)
class SubtermWitness:
    """Witness that u embeds into v: v = left . u . right + rest."""

    left: tuple[Variable, ...]
    right: tuple[Variable, ...]
    rest: Term | None


def wrap(t: Term, left: tuple[Variable, ...] = (), right: tuple[Variable, ...] = (),
         rest: Term | None = None) -> Term:
    """Build ``left . t . right + rest`` with possibly-empty word contexts."""
    wrapped = Term(Word(left + w.letters + right) for w in t.words)
    return wrapped if rest is None else wrapped + rest


def is_subterm(u: Term, v: Term) -> SubtermWitness | None:
    """Find word contexts showing u is a subterm of v, or None.

    The contexts are searched among factorizations of v's own words, which
    is complete: any successful embedding must send the first summand of u
    into some word of v.
    """
    anchor = u.words[0].letters
    v_words = set(v.words)
    tried: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    for x in v.words:
        ls = x.letters
        for i in range(len(ls) - len(anchor) + 1):
            if ls[i : i + len(anchor)] != anchor:
                continue
            left, right = ls[:i], ls[i + len(anchor):]
            if (left, right) in tried:
                continue
            tried.add((left, right))
            image = {Word(left + w.letters + right) for w in u.words}
            if image <= v_words:
                leftover = v_words - image
                return SubtermWitness(
                    left, right, Term(leftover) if leftover else None
                )
    return None
