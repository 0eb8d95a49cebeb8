# # Dense inputs: nets, bridges and the extended scheme
#
# Many nearly coincident sites blow up the density.  The sites are thinned to
# a small net, a few bridge sites keep the net connected, and packets hop to
# the nearest net site, ride the inner scheme and hop off at the end.

# +
import random

from diskroute.density import build_extended_scheme, route_extended
from diskroute.geom import build_udg, density_upper_bound
from diskroute.instances import generate
from diskroute.router import measure_stretch, summarize

pts = generate("clustered", 300, seed=0)
g = build_udg(pts)
ext = build_extended_scheme(g, epsilon=1.0)
print("density bound", density_upper_bound(pts))
print("|R| =", len(ext.nets.R), "bridges =", len(ext.nets.bridges), "|Z| =", len(ext.nets.Z))

# +
rng = random.Random(1)
pairs = [tuple(rng.sample(range(300), 2)) for _ in range(500)]
recs = measure_stretch(ext, g, pairs, router=lambda sc, s, t: route_extended(sc, g, s, t))
print(summarize(recs))
