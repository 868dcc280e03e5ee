"""Generator of filler sentences with one planted pattern instance."""

import random

from scalemine.patterns import match_slots

FILLER = ("pain my legs i feel with it was for hours today doctor back of in hands night "
          "meds is has been to after work arms flare week").split()
SKIPPABLE = ("really quite so truly extremely rather pretty somewhat totally too the a").split()


def literal_words(patterns):
    words = set()
    for p in patterns:
        for slots in (p.prefix, p.connective, p.suffix):
            for slot in slots:
                for alt in slot:
                    words.update(alt)
    return words


def _realize(slots, rnd):
    out = []
    for slot in slots:
        alts = list(slot)
        if () in alts and rnd.random() < 0.5:
            continue
        alt = rnd.choice([a for a in alts if a] or alts)
        out.extend(alt)
    return out


def plant(pattern, inventory, rnd: random.Random, max_skip=3):
    """Return (tokens, x_index, y_index, x_lemma, y_lemma) with the pattern planted in filler."""
    forms = sorted(inventory.surface_forms)
    x, y = rnd.choice(forms), rnd.choice(forms)
    k = rnd.randint(0, max_skip)
    gaps = ["pre", "mid_left", "mid_right"] if pattern.prefix else ["mid_left", "mid_right"]
    fill = {g: [] for g in gaps}
    for _ in range(k):
        fill[rnd.choice(gaps)].append(rnd.choice(SKIPPABLE))

    body = []
    if pattern.prefix:
        body += _realize(pattern.prefix, rnd) + fill["pre"]
    xi = len(body)
    body.append(x)
    body += fill["mid_left"]
    body += _realize(pattern.connective, rnd)
    body += fill["mid_right"]
    yi = len(body)
    body.append(y)
    body += _realize(pattern.suffix, rnd)

    before = [rnd.choice(FILLER) for _ in range(rnd.randint(0, 8))]
    after = [rnd.choice(FILLER) for _ in range(rnd.randint(0, 8))]
    tokens = before + body + after + ["."]
    return tokens, len(before) + xi, len(before) + yi, inventory.lemma_of(x), inventory.lemma_of(y)


def accepting_patterns(tokens, xi, yi, patterns):
    """Ids of patterns whose literals, ignoring skippable words, fit the planted span."""
    skip = set(SKIPPABLE)
    left = [w for w in tokens[:xi] if w not in skip]
    mid = [w for w in tokens[xi + 1:yi] if w not in skip]
    after = [w for w in tokens[yi + 1:] if w not in skip]
    ids = set()
    for p in patterns:
        if match_slots(mid, 0, p.connective) != len(mid):
            continue
        if p.prefix and not any(match_slots(left, i, p.prefix) == len(left) for i in range(len(left))):
            continue
        if p.suffix and not match_slots(after, 0, p.suffix):
            continue
        ids.add(p.pattern_id)
    return ids
