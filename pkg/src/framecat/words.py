"""Bounded word saturation over a typed alphabet.

Shared engine behind bounded localization and homotopy-category
presentations: morphisms are composable words of letters, a congruence is
generated by local rewrite rules, and we saturate a union-find over all
words up to a length budget.  Nothing here guesses: if the saturation has
not visibly stabilized strictly below the budget, callers are told so.

A word is a pair (src_object, tuple_of_letters); the empty tuple is the
identity at src_object.  A rule is a pair of words with equal endpoints,
applied as a two-way local rewrite.
"""

from dataclasses import dataclass

MAX_WORDS = 200_000


@dataclass(frozen=True)
class Letter:
    name: str
    inverse: bool
    src: str
    tgt: str

    def key(self):
        return (self.name, self.inverse)


def word_src(word):
    return word[0]


def word_tgt(word):
    o, letters = word
    return letters[-1].tgt if letters else o


def _word_key(word):
    o, letters = word
    return (len(letters), tuple(l.key() for l in letters), o)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller canonical key as root for determinism
        if _word_key(rb) < _word_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _enumerate_words(objects, letters, cap):
    by_src = {}
    for l in letters:
        by_src.setdefault(l.src, []).append(l)
    words = [(o, ()) for o in objects]
    frontier = list(words)
    while frontier:
        word = frontier.pop()
        o, ls = word
        if len(ls) == cap:
            continue
        here = ls[-1].tgt if ls else o
        for l in by_src.get(here, ()):
            nxt = (o, ls + (l,))
            words.append(nxt)
            if len(words) > MAX_WORDS:
                raise OverflowError("word carrier exceeds MAX_WORDS")
            frontier.append(nxt)
    return words


def _check_rule(rule):
    (ao, al), (bo, bl) = rule
    if word_src((ao, al)) != word_src((bo, bl)) or \
       word_tgt((ao, al)) != word_tgt((bo, bl)):
        raise ValueError("rule sides must share endpoints")


def _apply_rules(objects, letters, rules, cap):
    words = _enumerate_words(objects, letters, cap)
    uf = _UnionFind()
    for w in words:
        uf.add(w)
    sides = []
    for a, b in rules:
        _check_rule((a, b))
        sides.append((a, b))
        sides.append((b, a))
    changed = True
    while changed:
        changed = False
        for word in words:
            o, ls = word
            n = len(ls)
            for (so, sl), (to, tl) in sides:
                m = len(sl)
                if n - m + len(tl) > cap:
                    continue
                for k in range(n - m + 1):
                    seam = ls[k - 1].tgt if k > 0 else o
                    if seam != so:
                        continue
                    if ls[k:k + m] != sl:
                        continue
                    new = (o, ls[:k] + tl + ls[k + m:])
                    if uf.union(word, new):
                        changed = True
    return words, uf


class Saturation:
    def __init__(self, objects, letters, rules, budget, words, uf, stabilized):
        self.objects = tuple(objects)
        self.letters = tuple(letters)
        self.rules = list(rules)
        self.budget = budget
        self._words = words
        self._uf = uf
        self.stabilized = stabilized
        self._classes = {}
        for w in words:
            self._classes.setdefault(uf.find(w), []).append(w)
        self._rep = {root: min(members, key=_word_key)
                     for root, members in self._classes.items()}

    def class_words(self):
        return self._classes

    def class_id(self, word):
        """Presented-category morphism id of a word (after presenting)."""
        return self._mor_of_root[self._uf.find(word)]

    def hom_counts(self):
        counts = {}
        for root in self._classes:
            rep = self._rep[root]
            key = (word_src(rep), word_tgt(rep))
            counts[key] = counts.get(key, 0) + 1
        return counts

    def _normalize(self, word):
        """Greedy shrinking rewrites; returns a word in the carrier or None."""
        shrinking = []
        for a, b in self.rules:
            if len(b[1]) < len(a[1]):
                shrinking.append((a, b))
            elif len(a[1]) < len(b[1]):
                shrinking.append((b, a))
        o, ls = word
        changed = True
        while changed:
            changed = False
            for (so, sl), (to, tl) in shrinking:
                m = len(sl)
                for k in range(len(ls) - m + 1):
                    seam = ls[k - 1].tgt if k > 0 else o
                    if seam == so and ls[k:k + m] == sl:
                        ls = ls[:k] + tl + ls[k + m:]
                        changed = True
                        break
                if changed:
                    break
        if len(ls) > self.budget:
            return None
        return (o, ls)

    def present_category(self):
        """Build the presented FinCategory, or (None, None) if some composite
        cannot be normalized into the budget."""
        from .fincat import FinCategory, Morphism

        roots = sorted(self._classes, key=lambda r: (word_src(self._rep[r]),
                                                     word_tgt(self._rep[r]),
                                                     _word_key(self._rep[r])))
        mor_of_root = {}
        morphisms = []
        identity = {}
        for i, root in enumerate(roots):
            rep = self._rep[root]
            mid = f"loc{i}"
            mor_of_root[root] = mid
            morphisms.append(Morphism(mid, word_src(rep), word_tgt(rep)))
            if not rep[1]:
                identity[rep[0]] = mid
        self._mor_of_root = mor_of_root
        compose = {}
        for ra in roots:
            a = self._rep[ra]
            for rb in roots:
                b = self._rep[rb]
                if word_tgt(a) != word_src(b):
                    continue
                concat = (a[0], a[1] + b[1])
                norm = self._normalize(concat)
                if norm is None or norm not in self._uf.parent:
                    return None, None
                compose[(mor_of_root[rb], mor_of_root[ra])] = \
                    mor_of_root[self._uf.find(norm)]
        cat = FinCategory(self.objects, morphisms, identity, compose)
        class_rep = {mor_of_root[r]: self._rep[r] for r in roots}
        return cat, class_rep


def saturate(objects, letters, rules, budget):
    """Saturate the congruence over words of length <= budget.

    stabilized is True only when raising the budget by one neither created
    a genuinely new class nor merged two previously distinct ones.
    """
    if budget < 2:
        raise ValueError("budget must be at least 2")
    try:
        words_full, uf_full = _apply_rules(objects, letters, rules, budget)
        words_cut, uf_cut = _apply_rules(objects, letters, rules, budget - 1)
    except OverflowError:
        return Saturation(objects, letters, rules, budget, [(o, ()) for o in objects],
                          _trivial_uf(objects), False)

    short = set(words_cut)
    # (a) no new classes: every budget-length class touches a shorter word
    classes_full = {}
    for w in words_full:
        classes_full.setdefault(uf_full.find(w), []).append(w)
    no_new = all(any(v in short for v in members)
                 for members in classes_full.values())
    # (b) no new merges among shorter words
    restriction = {}
    same_merges = True
    for w in words_cut:
        r_full = uf_full.find(w)
        r_cut = uf_cut.find(w)
        if r_full in restriction:
            if restriction[r_full] != r_cut:
                same_merges = False
                break
        else:
            restriction[r_full] = r_cut
    stabilized = no_new and same_merges
    return Saturation(objects, letters, rules, budget, words_full, uf_full,
                      stabilized)


def _trivial_uf(objects):
    uf = _UnionFind()
    for o in objects:
        uf.add((o, ()))
    return uf
