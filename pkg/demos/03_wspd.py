# # Well-separated pair decomposition over the hierarchy
#
# Every ordered pair of distinct sites is covered by exactly one pair of
# hierarchy nodes, and each pair is far apart compared with its sizes.

# +
from collections import Counter

from diskroute.geom import build_udg
from diskroute.hierarchy import build_emst, build_hierarchy
from diskroute.verify import check_separation, check_wspd_partition
from diskroute.wspd import build_wspd, find_representing_pair
from diskroute.instances import generate

pts = generate("chain", 120, seed=0)
h = build_hierarchy(build_emst(build_udg(pts)))
w = build_wspd(h, c=13)
print(len(w), "pairs for", 120 * 119 // 2, "unordered site pairs")
print(Counter((p.u.size, p.v.size) for p in w.pairs).most_common(5))

# +
pair, rev = find_representing_pair(w, 3, 110)
print("sizes", pair.u.size, pair.v.size, "reversed:", rev)
print("partition problems:", check_wspd_partition(w))
print("separation problems:", check_separation(w))
