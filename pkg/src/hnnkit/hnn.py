"""Multiple HNN extensions: pinches, Britton reduction and canonical forms.

The extension is described by a base-group oracle, stable letters s_i and
pairs of associated subgroups (U_i, V_i) with matched generator lists; the
defining relations are s_i^-1 u_ij s_i = v_ij.  The isomorphism between U_i
and V_i acts generator-wise on rewrites, which is exactly what the subgroup
oracles' membership_with_rewrite provides.

Canonical forms are built by a single left-to-right fold over letters.  The
working state is an alternating list [g0, (i,e), g1, ..., gl] of base keys
and signed stable markers.  Appending a stable letter either removes a pinch
(s_i^-1 u s_i with u in U_i, or s_i v s_i^-1 with v in V_i) or splits the
last segment g = r * u along a left coset of the crossed subgroup, pushing
the image of u across the stable letter.  The result is the unique normal
form: two words represent the same group element iff they fold to equal
keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .base_groups import AbelianOracle, BallCache, BaseGroupOracle, RadiusCapError, base_geodesic_length
from .subgroups import CyclicSubgroup, SubgroupOracle, SubgroupWord
from .words import Alphabet, Word, free_reduce, format_word


class AssociatedPair:
    """One stable letter's subgroup pair with the generator-wise isomorphism."""

    def __init__(self, u: SubgroupOracle, v: SubgroupOracle):
        if len(u.generator_words) != len(v.generator_words):
            raise ValueError(
                "associated subgroups must have the same number of generators "
                f"({len(u.generator_words)} vs {len(v.generator_words)})"
            )
        self.u = u
        self.v = v
        self._cyclic = isinstance(u, CyclicSubgroup) and isinstance(v, CyclicSubgroup)

    def _map(self, src: SubgroupOracle, dst: SubgroupOracle, key):
        if self._cyclic:
            n = src._multiple_of(key)  # type: ignore[attr-defined]
            if n is None:
                return None
            base: AbelianOracle = dst.base  # type: ignore[assignment]
            return base._norm([n * x for x in dst.vector])  # type: ignore[attr-defined]
        sw = src.membership_with_rewrite(key)
        if sw is None:
            return None
        return dst.evaluate_subgroup_word(sw)

    def phi(self, key):
        """Image in V of an element of U, or None if not a member."""
        return self._map(self.u, self.v, key)

    def phi_inv(self, key):
        return self._map(self.v, self.u, key)


class HnnSpec(BaseGroupOracle):
    """A multiple HNN extension, usable as an element oracle for ball builds."""

    def __init__(self, base: BaseGroupOracle, stable_names: Sequence[str],
                 pairs: Sequence[AssociatedPair], name: str = ""):
        if len(stable_names) != len(pairs):
            raise ValueError("one associated pair per stable letter required")
        self.base = base
        self.name = name
        self.pairs = tuple(pairs)
        base_names = [g.name for g in base.alphabet.generators]
        self.alphabet = Alphabet.make(base_names, list(stable_names))
        self.n_base_letters = 2 * len(base_names)
        # base letter ids agree between the base alphabet and the full one
        for g, h in zip(base.alphabet.generators, self.alphabet.generators):
            assert (g.name, g.index) == (h.name, h.index)
        self.relators = tuple(self._make_relators())

    def _make_relators(self) -> list[Word]:
        rels = [Word(self.alphabet, r.ids) for r in self.base.relators]
        for i, pair in enumerate(self.pairs):
            s_pos = self.n_base_letters + 2 * i
            for uw, vw in zip(pair.u.generator_words, pair.v.generator_words):
                ids = (
                    (s_pos ^ 1,)
                    + uw.ids
                    + (s_pos,)
                    + tuple(lid ^ 1 for lid in reversed(vw.ids))
                )
                rels.append(Word(self.alphabet, ids))
        return rels

    def stable_of_letter(self, lid: int) -> tuple[int, int]:
        """(pair index, sign) of a stable letter id."""
        rel = lid - self.n_base_letters
        return rel >> 1, (1 if rel % 2 == 0 else -1)

    def stable_letter_id(self, i: int, sign: int) -> int:
        return self.n_base_letters + 2 * i + (0 if sign > 0 else 1)

    # -- the fold ------------------------------------------------------------

    def _append_base_key(self, segs: list, bkey):
        segs[-1] = self.base.mult_key(segs[-1], bkey)

    def _append_stable(self, segs: list, i: int, eps: int):
        pair = self.pairs[i]
        if len(segs) >= 3 and segs[-2] == (i, -eps):
            img = pair.phi(segs[-1]) if eps > 0 else pair.phi_inv(segs[-1])
            if img is not None:
                segs.pop()
                segs.pop()
                segs[-1] = self.base.mult_key(segs[-1], img)
                return
        sub = pair.u if eps > 0 else pair.v
        tail = segs[-1]
        r = sub.coset_rep_left(tail)
        u = self.base.mult_key(self.base.inv_key(r), tail)
        img = pair.phi(u) if eps > 0 else pair.phi_inv(u)
        if img is None:
            raise AssertionError("coset split produced a non-member factor")
        segs[-1] = r
        segs.append((i, eps))
        segs.append(img)

    def _fold_letters(self, segs: list, ids) -> list:
        nb = self.n_base_letters
        for lid in ids:
            if lid < nb:
                segs[-1] = self.base.apply_letter(segs[-1], lid)
            else:
                i, eps = self.stable_of_letter(lid)
                self._append_stable(segs, i, eps)
        return segs

    def _fold_key_onto(self, segs: list, tail) -> list:
        """Fold the (marker, base, marker, base, ...) tail of a key onto segs."""
        for pos, part in enumerate(tail):
            if pos % 2 == 0:
                i, eps = part
                self._append_stable(segs, i, eps)
            else:
                self._append_base_key(segs, part)
        return segs

    # -- oracle interface ------------------------------------------------------

    def identity_key(self):
        return (self.base.identity_key(),)

    def apply_letter(self, key, lid: int):
        if lid < self.n_base_letters:
            return key[:-1] + (self.base.apply_letter(key[-1], lid),)
        segs = list(key)
        i, eps = self.stable_of_letter(lid)
        self._append_stable(segs, i, eps)
        return tuple(segs)

    def apply_letter_left(self, lid: int, key):
        if lid < self.n_base_letters:
            b = self.base.apply_letter(self.base.identity_key(), lid)
            segs = [b]
        else:
            segs = [self.base.identity_key()]
            i, eps = self.stable_of_letter(lid)
            self._append_stable(segs, i, eps)
        self._append_base_key(segs, key[0])
        return tuple(self._fold_key_onto(segs, key[1:]))

    def mult_key(self, k1, k2):
        segs = list(k1)
        self._append_base_key(segs, k2[0])
        return tuple(self._fold_key_onto(segs, k2[1:]))

    def inv_key(self, key):
        segs = [self.base.inv_key(key[-1])]
        for pos in range(len(key) - 2, -1, -1):
            part = key[pos]
            if pos % 2 == 1:
                i, eps = part
                self._append_stable(segs, i, -eps)
            else:
                self._append_base_key(segs, self.base.inv_key(part))
        return tuple(segs)

    def evaluate(self, word: Word):
        if word.alphabet != self.alphabet:
            raise ValueError("word is over a different alphabet")
        return tuple(self._fold_letters([self.base.identity_key()], word.ids))

    def key_str(self, key) -> str:
        parts = []
        for pos, part in enumerate(key):
            if pos % 2 == 0:
                parts.append(self.base.key_str(part))
            else:
                i, eps = part
                name = self.alphabet.stable_generators[i].name
                parts.append(name if eps > 0 else name + "'")
        return "|".join(parts)

    def word_of_key(self, key) -> Word:
        """Some word spelling the element: base segments expanded in place."""
        ids: list[int] = []
        for pos, part in enumerate(key):
            if pos % 2 == 0:
                ids.extend(self.base.word_of_key(part).ids)
            else:
                i, eps = part
                ids.append(self.stable_letter_id(i, eps))
        return Word(self.alphabet, tuple(ids))

    def lift_base_word(self, w: Word) -> Word:
        """The same base word, viewed over the full alphabet."""
        if w.alphabet != self.base.alphabet:
            raise ValueError("expected a word over the base alphabet")
        return Word(self.alphabet, w.ids)


@dataclass(frozen=True)
class NormalForm:
    """Canonical Britton-reduced, coset-normalized representative."""

    spec: HnnSpec = field(compare=False, repr=False)
    key: tuple = field(compare=True)

    def __hash__(self):
        return hash(self.key)

    @property
    def base_segments(self) -> tuple:
        return self.key[0::2]

    @property
    def stable_markers(self) -> tuple:
        return self.key[1::2]

    def is_identity(self) -> bool:
        return len(self.key) == 1 and self.spec.base.is_identity(self.key[0])

    def __str__(self):
        return self.spec.key_str(self.key)


@dataclass(frozen=True)
class Pinch:
    start: int           # index of the opening stable letter in the word
    end: int             # index of the closing stable letter
    pair_index: int
    direction: str       # "s'us" (segment in U_i) or "svs'" (segment in V_i)
    rewrite: SubgroupWord


def find_pinch(spec: HnnSpec, w: Word) -> Optional[Pinch]:
    """Leftmost innermost pinch of a freely reduced word, or None."""
    nb = spec.n_base_letters
    positions = [(pos, lid) for pos, lid in enumerate(w.ids) if lid >= nb]
    for (q, lq), (p, lp) in zip(positions, positions[1:]):
        i, sq = spec.stable_of_letter(lq)
        i2, sp = spec.stable_of_letter(lp)
        if i != i2 or sq != -sp:
            continue
        seg = Word(spec.base.alphabet, w.ids[q + 1 : p])
        key = spec.base.evaluate(seg)
        sub = spec.pairs[i].u if sq < 0 else spec.pairs[i].v
        sw = sub.membership_with_rewrite(key)
        if sw is not None:
            direction = "s'us" if sq < 0 else "svs'"
            return Pinch(q, p, i, direction, sw)
    return None


def britton_reduce(spec: HnnSpec, w: Word) -> Word:
    """Repeatedly remove pinches until the word is stable letter reduced."""
    w = free_reduce(w)
    while True:
        pinch = find_pinch(spec, w)
        if pinch is None:
            return w
        pair = spec.pairs[pinch.pair_index]
        target = pair.v if pinch.direction == "s'us" else pair.u
        image = target.expand(pinch.rewrite)
        ids = w.ids[: pinch.start] + image.ids + w.ids[pinch.end + 1 :]
        w = free_reduce(Word(spec.alphabet, ids))


def normal_form(spec: HnnSpec, w: Word) -> NormalForm:
    return NormalForm(spec, spec.evaluate(w))


def multiply(spec: HnnSpec, x: NormalForm, y: NormalForm) -> NormalForm:
    return NormalForm(spec, spec.mult_key(x.key, y.key))


def invert_el(spec: HnnSpec, x: NormalForm) -> NormalForm:
    return NormalForm(spec, spec.inv_key(x.key))


def stable_letter_signature(nf: NormalForm) -> tuple[tuple[str, int], ...]:
    """Projection onto the sequence of signed stable letters."""
    names = [g.name for g in nf.spec.alphabet.stable_generators]
    return tuple((names[i], eps) for (i, eps) in nf.stable_markers)


def signature_of_key(spec: HnnSpec, key) -> tuple:
    return key[1::2]


# -- isometric verification ----------------------------------------------------


@dataclass
class ConditionReport:
    passed: bool
    witnesses: list = field(default_factory=list)
    witness_count: int = 0
    max_witnesses: int = 8

    def fail(self, witness: str):
        self.passed = False
        self.witness_count += 1
        if len(self.witnesses) < self.max_witnesses:
            self.witnesses.append(witness)


@dataclass
class IsometricReport:
    strip_equidistant: ConditionReport
    geodesic: ConditionReport
    totally_geodesic: ConditionReport
    max_len: int
    incomplete: bool = False

    @property
    def passed(self) -> bool:
        return (
            not self.incomplete
            and self.strip_equidistant.passed
            and self.geodesic.passed
            and self.totally_geodesic.passed
        )

    def lines(self) -> list[str]:
        out = []
        for label, cond in (
            ("strip-equidistant", self.strip_equidistant),
            ("geodesic", self.geodesic),
            ("totally-geodesic", self.totally_geodesic),
        ):
            status = "PASS" if cond.passed else "FAIL"
            out.append(f"{label:18s} {status}")
            for wit in cond.witnesses:
                out.append(f"  witness: {wit}")
            hidden = cond.witness_count - len(cond.witnesses)
            if hidden > 0:
                out.append(f"  ... and {hidden} more witnesses")
        if self.incomplete:
            out.append("report INCOMPLETE: ball cap exceeded")
        return out


def _parses_in_language(ids: tuple[int, ...], blocks: list[tuple[int, ...]]) -> bool:
    """Can ids be split into a literal concatenation of the given blocks?"""
    n = len(ids)
    reachable = [False] * (n + 1)
    reachable[0] = True
    for p in range(n):
        if not reachable[p]:
            continue
        for b in blocks:
            q = p + len(b)
            if q <= n and ids[p:q] == b:
                reachable[q] = True
    return reachable[n]


def _reduced_subgroup_words(m: int, cap: int, weights: list[int]):
    """Index-reduced subgroup words whose literal expansion length is <= cap."""
    stack: list[tuple[SubgroupWord, int]] = [((), 0)]
    while stack:
        sw, length = stack.pop()
        yield sw
        for j in range(m):
            for s in (1, -1):
                if sw and sw[-1] == (j, -s):
                    continue
                l2 = length + weights[j]
                if l2 <= cap:
                    stack.append((sw + ((j, s),), l2))


def verify_isometric(spec: HnnSpec, max_len: int,
                     cache: Optional[BallCache] = None,
                     mem_cap: Optional[int] = None) -> IsometricReport:
    """Check strip equidistance plus the geodesic and totally geodesic conditions.

    The first two conditions are exact.  The totally-geodesic condition is
    verified over every subgroup element within the base ball of radius
    max_len, with every geodesic representative enumerated from the ball's
    predecessor links.
    """
    from .cayley import BallCapError, build_ball, geodesics_of

    from .limits import DEFAULT_MEM_CAP

    base = spec.base
    if mem_cap is None:
        mem_cap = DEFAULT_MEM_CAP
    if cache is None:
        cache = BallCache(base, cap_elements=mem_cap)
    gen_lens = [
        [base_geodesic_length(base, gw, cache) for gw in sub.generator_words]
        for pair in spec.pairs
        for sub in (pair.u, pair.v)
    ]
    if max_len < max(max(ls) for ls in gen_lens):
        raise ValueError("max_len must be at least the longest generator word")

    strip = ConditionReport(True)
    for i, pair in enumerate(spec.pairs):
        for j, (uw, vw) in enumerate(zip(pair.u.generator_words, pair.v.generator_words)):
            lu = base_geodesic_length(base, uw, cache)
            lv = base_geodesic_length(base, vw, cache)
            if lu != lv:
                strip.fail(
                    f"pair {i} generator {j}: |{format_word(uw)}|={lu} != |{format_word(vw)}|={lv}"
                )

    geo = ConditionReport(True)
    incomplete = False
    try:
        for i, pair in enumerate(spec.pairs):
            for side, sub in (("U", pair.u), ("V", pair.v)):
                weights = [len(gw) for gw in sub.generator_words]
                for sw in _reduced_subgroup_words(len(weights), max_len, weights):
                    if not sw:
                        continue
                    expansion = sub.expand(sw)
                    want = len(expansion)
                    got = base_geodesic_length(base, expansion, cache)
                    if got != want:
                        geo.fail(
                            f"pair {i} {side}: expansion {format_word(expansion)} "
                            f"has length {got} < {want}"
                        )
    except RadiusCapError:
        incomplete = True

    total = ConditionReport(True)
    try:
        ball = build_ball(base, max_len, mem_cap=mem_cap)
        blocks_per_sub = {}
        for i, pair in enumerate(spec.pairs):
            for side, sub in (("U", pair.u), ("V", pair.v)):
                blocks = [gw.ids for gw in sub.generator_words]
                blocks += [tuple(l ^ 1 for l in reversed(b)) for b in blocks]
                blocks_per_sub[(i, side)] = blocks
        for key in ball.keys:
            for i, pair in enumerate(spec.pairs):
                for side, sub in (("U", pair.u), ("V", pair.v)):
                    if not sub.contains(key):
                        continue
                    for geod in geodesics_of(ball, key):
                        if not _parses_in_language(geod.ids, blocks_per_sub[(i, side)]):
                            total.fail(
                                f"pair {i} {side}: geodesic {format_word(geod)} of "
                                f"{base.key_str(key)} is outside the generator language"
                            )
    except (BallCapError, RadiusCapError):
        incomplete = True

    return IsometricReport(strip, geo, total, max_len, incomplete)
