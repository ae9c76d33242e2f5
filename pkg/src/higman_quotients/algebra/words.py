"""Group words over generators a_0 .. a_m as lists of (generator, exponent).

Exponents are plain integers here; reduction mod p^n happens where a word is
mapped into a finite group.
"""

from typing import Iterable, List, Sequence, Tuple

Letter = Tuple[int, int]
Word = List[Letter]


def free_reduce(word: Iterable[Letter]) -> Word:
    """Merge adjacent equal generators and drop zero exponents (with cascade)."""
    out: Word = []
    for gen, exp in word:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return out


def invert(word: Sequence[Letter]) -> Word:
    return [(gen, -exp) for gen, exp in reversed(word)]


def concat(*words: Sequence[Letter]) -> Word:
    out: Word = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def commutator(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    return concat(invert(u), invert(v), u, v)


def left_normed(*words: Sequence[Letter]) -> Word:
    """[[...[w1, w2], w3], ...]."""
    if not words:
        return []
    acc = free_reduce(words[0])
    for w in words[1:]:
        acc = commutator(acc, w)
    return acc


def power(word: Sequence[Letter], e: int) -> Word:
    if e < 0:
        return power(invert(word), -e)
    return free_reduce(list(word) * e)


def generators(word: Sequence[Letter]) -> List[int]:
    return sorted({gen for gen, _ in word})


def length(word: Sequence[Letter]) -> int:
    return sum(abs(exp) for _, exp in word)
