"""
Mining a two-sequence toy database
==================================

Frequent positive and negative patterns of {baacaac, ababccbb} under the
gap [0,1] and threshold 0.13.
"""
from negspm import GapConstraint, SequenceDatabase, Threshold, format_pattern, mine, parse_pattern
from negspm.matcher import brute_force_support

db = SequenceDatabase.from_strings(["baacaac", "ababccbb"])
gap = GapConstraint(0, 1)
rho = Threshold.parse("0.13")
print("L =", db.total_length, " alphabet =", db.alphabet.symbols)

# mine() runs all levels until one comes back empty
result = mine(db, rho, gap)
for level in result.levels:
    for entry in level:
        rec = entry.record
        print(f"{format_pattern(entry.pattern, db.alphabet, gap):14s} sup={rec.total_sup:2d} "
              f"ofs={rec.ofs:3d} rate={float(rec.rate):.4f}")

# level statistics: candidates evaluated vs frequent
for s in result.stats.levels:
    print(f"length {s.length}: {s.candidates} candidates -> {s.frequent} frequent")

# a length-3 negative pattern, checked by brute-force enumeration
p = parse_pattern("a[0,1]a[0,1,!b]c", db.alphabet, gap)
for s in db.sequences:
    n, occ = brute_force_support(p, s, gap)
    print(f"sequence {s.seq_id + 1}: {n} occurrences {occ}")
