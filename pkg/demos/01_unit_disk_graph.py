# # Unit disk graphs and shortest paths
#
# Sites are points in the plane; two sites are joined when they are at most
# one unit apart.  Everything else in the package is built on this graph.

# +
import numpy as np

from diskroute.geom import build_udg, density_upper_bound, graph_diameter, shortest_paths
from diskroute.instances import generate

pts = generate("uniform-square", 60, seed=1)
g = build_udg(pts)
print(g.n, "sites,", g.num_edges(), "edges")

# +
spt = shortest_paths(g, 0)
far = int(np.argmax(spt.dist))
print("farthest site from 0:", far, "at distance", round(spt.dist[far], 3))
print("path:", spt.path_to(far))

# +
print("diameter D =", round(graph_diameter(g), 3))
print("density bound =", density_upper_bound(pts))
