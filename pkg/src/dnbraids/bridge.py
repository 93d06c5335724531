"""Passing between the type B and type D Artin groups.

Type D sits inside the quotient of the type B Artin group by the normal
closure of ``s_0^2``, with ``t_0 -> s_0 s_1 s_0`` and ``t_i -> s_i``.  The
cosets of that index-two subgroup are represented by ``{1, s_0}``; scanning a B
word while remembering the current coset rewrites it as a D word.

>>> from dnbraids.coxeter import CoxeterType
>>> from dnbraids.garside import parse_word, format_word
>>> B4 = CoxeterType("B", 4)
>>> format_word(rewrite_B_to_D(parse_word(B4, "s0 s1 s0 s2")))
't0 t2'
>>> format_word(embed_D_to_B(parse_word(CoxeterType("D", 4), "t0^-1 t3")))
's0 s1^-1 s0 s3'
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coxeter import CoxeterType, SignedPermutation, enumerate_group
from .garside import ArtinWord, index_of, letter_of, lift_word, words_equal
from .errors import UsageError


def type_b(rank: int) -> CoxeterType:
    return CoxeterType("B", rank)


def type_d(rank: int) -> CoxeterType:
    return CoxeterType("D", rank)


def coset_bit(word: ArtinWord) -> int:
    """Parity of the number of ``s_0^{+-1}`` letters (0 means the image lies in W(D))."""
    return sum(1 for k in word.letters if abs(k) == 1) % 2


def rewrite_B_to_D(word: ArtinWord) -> ArtinWord:
    if word.ctype.family != "B":
        raise UsageError(f"expected a type B word, got {word.ctype}")
    if coset_bit(word):
        raise UsageError("word has an odd number of s0 letters; its image lies in the coset s0 W(D)")
    D = type_d(word.ctype.rank)
    out = []
    flipped = False
    for k in word.letters:
        i = abs(k) - 1
        if i == 0:
            flipped = not flipped
            continue
        target = 0 if (flipped and i == 1) else i
        out.append(letter_of(D, target, 1 if k > 0 else -1))
    return ArtinWord(D, tuple(out))


def embed_D_to_B(word: ArtinWord) -> ArtinWord:
    if word.ctype.family != "D":
        raise UsageError(f"expected a type D word, got {word.ctype}")
    out: list[int] = []
    for k in word.letters:
        sign = 1 if k > 0 else -1
        if abs(k) == 1:
            out += [1, 2 * sign, 1]
        else:
            out.append(k)
    return ArtinWord(type_b(word.ctype.rank), tuple(out))


def q_B(word: ArtinWord) -> ArtinWord:
    """Forget ``s_0``; ``s_i`` becomes the braid generator ``sig_i``."""
    if word.ctype.family != "B":
        raise UsageError(f"expected a type B word, got {word.ctype}")
    A = CoxeterType("A", word.ctype.rank)
    return ArtinWord(A, tuple(k - (1 if k > 0 else -1) for k in word.letters if abs(k) != 1))


def q_D(word: ArtinWord) -> ArtinWord:
    """``t_0`` and ``t_1`` both become ``sig_1``; ``t_i`` becomes ``sig_i``."""
    if word.ctype.family != "D":
        raise UsageError(f"expected a type D word, got {word.ctype}")
    A = CoxeterType("A", word.ctype.rank)
    out = []
    for k in word.letters:
        i = index_of(word.ctype, k)
        out.append((1 if k > 0 else -1) * max(i, 1))
    return ArtinWord(A, tuple(out))


def lift_compare(x: SignedPermutation) -> bool:
    """Does the B positive lift of x rewrite to the D positive lift of x?"""
    if not x.in_type_d():
        raise UsageError(f"{x} is not in W(D)")
    n = x.ctype.rank
    xb = SignedPermutation(type_b(n), x.window)
    xd = SignedPermutation(type_d(n), x.window)
    return words_equal(rewrite_B_to_D(lift_word(xb)), lift_word(xd))


# ---------------------------------------------------------------- relation checks


@dataclass
class CheckReport:
    name: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def coxeter_matrix_entry(ctype: CoxeterType, i: int, j: int) -> int:
    if i == j:
        return 1
    a, b = sorted((i, j))
    if ctype.family == "D":
        if a == 0:
            return 3 if b == 2 else 2
        return 3 if b == a + 1 else 2
    if ctype.family == "B" and a == 0:
        return 4 if b == 1 else 2
    return 3 if b == a + 1 else 2


def braid_relations(ctype: CoxeterType) -> list[tuple[ArtinWord, ArtinWord]]:
    """Both sides of every defining braid relation of the Artin group."""
    rels = []
    idx = list(ctype.generator_indices)
    for p, i in enumerate(idx):
        for j in idx[p + 1 :]:
            m = coxeter_matrix_entry(ctype, i, j)
            gi, gj = letter_of(ctype, i), letter_of(ctype, j)
            lhs = tuple(gi if k % 2 == 0 else gj for k in range(m))
            rhs = tuple(gj if k % 2 == 0 else gi for k in range(m))
            rels.append((ArtinWord(ctype, lhs), ArtinWord(ctype, rhs)))
    return rels


def relations_dn_check(rank: int) -> CheckReport:
    """Embed both sides of each D relation into type B, rewrite back, compare in A(D)."""
    D = type_d(rank)
    report = CheckReport(f"relations D_{rank}")
    for lhs, rhs in braid_relations(D):
        report.instances += 1
        a, b = rewrite_B_to_D(embed_D_to_B(lhs)), rewrite_B_to_D(embed_D_to_B(rhs))
        if not words_equal(a, b):
            report.failures.append(f"{lhs} = {rhs}")
    return report


def conjugation_by_s0(word: ArtinWord) -> ArtinWord:
    """Rewrite of ``s_0 * embed(word) * s_0``: the diagram automorphism swapping t_0, t_1."""
    B = type_b(word.ctype.rank)
    s0 = ArtinWord(B, (1,))
    return rewrite_B_to_D(s0 * embed_D_to_B(word) * s0)


def random_word(ctype: CoxeterType, length: int, rng: random.Random) -> ArtinWord:
    letters = [
        letter_of(ctype, rng.choice(ctype.generator_indices), rng.choice((1, -1)))
        for _ in range(length)
    ]
    return ArtinWord(ctype, tuple(letters))


def comp_check(rank: int, samples: int = 200, seed: int = 0) -> CheckReport:
    """Projection to type A commutes with the embedding, on generators and random words."""
    D = type_d(rank)
    rng = random.Random(seed)
    words = [ArtinWord(D, (letter_of(D, i),)) for i in D.generator_indices]
    words += [random_word(D, rng.randint(0, 20), rng) for _ in range(samples)]
    report = CheckReport(f"projection D_{rank}")
    for w in words:
        report.instances += 1
        if not words_equal(q_B(embed_D_to_B(w)), q_D(w)):
            report.failures.append(str(w))
    return report


def lifts_check(rank: int) -> CheckReport:
    D = type_d(rank)
    report = CheckReport(f"lifts D_{rank}")
    for x in enumerate_group(D):
        report.instances += 1
        if not lift_compare(x):
            report.failures.append(str(x))
    return report
