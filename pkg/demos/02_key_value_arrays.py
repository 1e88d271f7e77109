"""
Extending key-value arrays
==========================

Support of a longer pattern is derived from the ending positions of its
prefix and suffix patterns, without rescanning the sequence.
"""
from negspm import (
    GapConstraint, SequenceDatabase, build_item_index, join, negpair, parse_pattern,
)
from negspm.matcher import extend

db = SequenceDatabase.from_strings(["baacaac"])
gap = GapConstraint(0, 1)
s = db.sequences[0]
index = build_item_index(s)
for item, positions in sorted(index.positions.items()):
    print(db.alphabet.token(item), positions)

# length 2 arrays come straight from the item positions
a, c = db.alphabet.id("a"), db.alphabet.id("c")
aa = extend(index.array(a), index[a], index, gap)
ac_not_b = extend(index.array(a), index[c], index, gap, negative=db.alphabet.id("b"))
print("a[0,1]a      ", aa.as_dict())
print("a[0,1,!b]c   ", ac_not_b.as_dict())

# joining them: the suffix of the first equals the prefix of the second
p = parse_pattern("a[0,1]a", db.alphabet, gap)
q = parse_pattern("a[0,1,!b]c", db.alphabet, gap)
print("join ->", join(p, q))
t, arr = negpair(p, q, aa, ac_not_b, index, gap)
print("a[0,1]a[0,1,!b]c", arr.as_dict(), "support", arr.support)
