# # Balanced EMST hierarchy and interval labels
#
# The Euclidean minimum spanning tree is split recursively at the edge that
# best balances the two sides.  Labels come from a postorder walk, so every
# node of the hierarchy owns a contiguous label interval.

# +
from diskroute.geom import build_udg
from diskroute.hierarchy import build_emst, build_hierarchy, height_bound
from diskroute.instances import generate

pts = generate("strip", 80, seed=2)
tree = build_emst(build_udg(pts))
h = build_hierarchy(tree)
print("EMST max degree:", tree.max_degree())
print("height", h.height, "<= bound", height_bound(80))

# +
root = h.root
for child in root.children:
    print("child size", child.size, "interval", child.interval)

# First lines of the dump: depth size lo hi and the removed edge
print("\n".join(h.dump().splitlines()[:6]))
