#!/usr/bin/env python3
"""Generates core/data/fixture_network.json, the bundled 12-zone network.

Layout: 12 inner nodes on a 6x2 ladder (1-6 top row, 7-12 bottom row),
12 edge nodes (13-24) on an outer express ring, one zone per edge node.
Corridors: Express1 (ring), Express2 (top row), Express3 (bottom row),
Minor1 (column 1), Major1 (column 3), Slip1 (column 4), Minor2 (column 6).
Edge nodes reach the ladder through Access ramps; zones reach their edge
node through Connector links. Link ids are "<corridor>:<from>-<to>".
"""
import json
import sys

CLASS = {
    # per-lane capacity veh/h, free-flow speed m/s, cost rate /m, supplement1, road quality
    "express": (2000.0, 22.0, 0.0005, 0.2, 0.0),
    "major": (1600.0, 16.0, 0.0, 0.0, 0.1),
    "minor": (1200.0, 12.5, 0.0, 0.0, 0.3),
    "slip": (900.0, 10.0, 0.0, 0.0, 0.5),
}

nodes, links, edges, zones = [], [], [], []

for i in range(1, 13):
    nodes.append({"id": str(i), "kind": "inner-node", "label": f"inner {i}"})
for i in range(13, 25):
    nodes.append({"id": str(i), "kind": "edge-node", "label": f"edge {i}"})
for z in range(1, 13):
    nodes.append({"id": f"C{z}", "kind": "zone-centroid", "label": f"parking lot Z{z}"})


def road(corridor, a, b, length, lanes, cls, both=True, quality=None):
    cap, speed, rate, sup1, q = CLASS[cls]
    for f, t in ((a, b), (b, a)) if both else ((a, b),):
        lid = f"{corridor}:{f}-{t}"
        links.append({
            "id": lid, "from_node": f, "to_node": t, "length": length,
            "lanes": lanes, "free_flow_speed": speed, "capacity": cap * lanes,
            "cost_rate": rate, "supplement1": sup1, "supplement2": 0.0,
            "road_quality": q if quality is None else quality, "road_class": cls,
        })
        edges.append({"id": f"e{f}-{t}", "link_ids": [lid]})


# Express1: ring 13..18 (top), 18-24 (east side), 24..19 (bottom), 19-13 (west side)
ring = [str(i) for i in range(13, 19)] + [str(i) for i in range(24, 18, -1)]
for i, a in enumerate(ring):
    b = ring[(i + 1) % len(ring)]
    side = {("18", "24"), ("19", "13")}
    road("Express1", a, b, 1600.0 if (a, b) in side else 1000.0, 5, "express")
for i in range(1, 6):
    road("Express2", str(i), str(i + 1), 1000.0, 5, "express")
for i in range(7, 12):
    road("Express3", str(i), str(i + 1), 1000.0, 5, "express")
road("Minor1", "1", "7", 800.0, 3, "minor")
road("Major1", "3", "9", 800.0, 4, "major")
road("Slip1", "4", "10", 800.0, 2, "slip")
road("Minor2", "6", "12", 800.0, 3, "minor")
for i in range(1, 13):
    road("Access", str(i + 12), str(i), 400.0, 3, "slip")

# zones clockwise from the north-west: Z1..Z6 on 13..18, Z7..Z12 on 24..19
zone_nodes = [str(i) for i in range(13, 19)] + [str(i) for i in range(24, 18, -1)]
for z, n in enumerate(zone_nodes, start=1):
    road("Connector", f"C{z}", n, 100.0, 5, "express", quality=0.0)
    zones.append({"id": f"Z{z}", "centroid_node": f"C{z}", "name": f"Zone {z}"})

doc = {"nodes": nodes, "links": links, "edges": edges, "zones": zones}
out = json.dumps(doc, indent=2) + "\n"
if len(sys.argv) > 1:
    open(sys.argv[1], "w").write(out)
else:
    sys.stdout.write(out)
