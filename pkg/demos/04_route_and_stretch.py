# # Building a scheme and routing packets
#
# Preprocessing stores, at each site, its label, a small local table and the
# pairs assigned to it.  The router only reads the current table, the target
# label and the packet header.

# +
import random

from diskroute.geom import build_udg
from diskroute.instances import generate
from diskroute.router import measure_stretch, route, summarize
from diskroute.scheme import build_scheme

pts = generate("chain", 200, seed=0)
scheme = build_scheme(pts, c_override=13)
print({k: scheme.stats[k] for k in ("num_pairs", "height", "label_bits", "max_table_bits")})

# +
tr = route(scheme, 0, 199)
print("delivered in", tr.step_count, "steps, distance", round(tr.distance, 3))
print("pushes:", sum(e[0] == "push" for e in tr.events), "max stack", tr.max_stack)

# +
rng = random.Random(0)
pairs = [tuple(rng.sample(range(200), 2)) for _ in range(300)]
print(summarize(measure_stretch(scheme, build_udg(pts), pairs)))
