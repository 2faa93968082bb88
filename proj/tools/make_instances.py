#!/usr/bin/env python3
"""Writes the small benchmark graphs used by the tests as DIMACS edge files.

The graphs are rebuilt from their textbook constructions:
  myciel5         Mycielski construction applied to K_2 four times
  1-Insertions_4  generalized Mycielskian with two copy layers, applied to K_2
                  three times (67 vertices, 232 edges)
  queen6_6        6x6 queen graph
  petersen, c5, k5 small sanity graphs
"""
import itertools
import pathlib
import sys


def layered_mycielskian(n, edges, layers):
    # vertex v in layer j -> j*n + v (0-based), apex last
    out = set()
    for (u, v) in edges:
        out.add((u, v))
        for j in range(1, layers + 1):
            out.add((j * n + u, (j - 1) * n + v))
            out.add((j * n + v, (j - 1) * n + u))
    apex = (layers + 1) * n
    for v in range(n):
        out.add((layers * n + v, apex))
    return apex + 1, sorted(tuple(sorted(e)) for e in out)


def mycielski(steps):
    n, edges = 2, [(0, 1)]
    for _ in range(steps):
        n, edges = layered_mycielskian(n, edges, 1)
    return n, edges


def insertions(copies, steps):
    n, edges = 2, [(0, 1)]
    for _ in range(steps):
        n, edges = layered_mycielskian(n, edges, copies + 1)
    return n, edges


def queen(rows, cols):
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    edges = []
    for a, b in itertools.combinations(range(len(cells)), 2):
        (r1, c1), (r2, c2) = cells[a], cells[b]
        if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
            edges.append((a, b))
    return len(cells), edges


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return 10, sorted(tuple(sorted(e)) for e in outer + spokes + inner)


def write(path, name, n, edges):
    lines = [f"c {name}", f"p edge {n} {len(edges)}"]
    lines += [f"e {u + 1} {v + 1}" for (u, v) in edges]
    path.write_text("\n".join(lines) + "\n")


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    root.mkdir(parents=True, exist_ok=True)
    graphs = {
        "myciel5": mycielski(4),
        "1-Insertions_4": insertions(1, 3),
        "queen6_6": queen(6, 6),
        "petersen": petersen(),
        "c5": (5, [(i, (i + 1) % 5) for i in range(5)]),
        "k5": (5, list(itertools.combinations(range(5), 2))),
    }
    for name, (n, edges) in graphs.items():
        write(root / f"{name}.col", name, n, edges)
        print(f"{name}: n={n} m={len(edges)}")


if __name__ == "__main__":
    main()
