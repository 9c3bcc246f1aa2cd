#!/usr/bin/env python3
"""Regenerate the bundled category files in data/.

Every admissible F block is written out explicitly, rows and columns as
[e, mu, nu] / [f, rho, sigma] triples.
"""
import itertools
import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def cplx(z):
    z = complex(z)
    return [z.real, z.imag]


def fusion_from_rule(rank, rule):
    n = {}
    for a, b in itertools.product(range(rank), repeat=2):
        for c in rule(a, b):
            n[(a, b, c)] = n.get((a, b, c), 0) + 1
    return n


def f_blocks(rank, n, value):
    """value(a,b,c,d,e,f) gives the entry; multiplicity-free only."""
    blocks = []
    for a, b, c, d in itertools.product(range(rank), repeat=4):
        rows = [e for e in range(rank) if n.get((a, b, e)) and n.get((e, c, d))]
        cols = [f for f in range(rank) if n.get((b, c, f)) and n.get((a, f, d))]
        if not rows:
            continue
        assert len(rows) == len(cols)
        blocks.append({
            "abcd": [a, b, c, d],
            "rows": [[e, 0, 0] for e in rows],
            "cols": [[f, 0, 0] for f in cols],
            "matrix": [[cplx(value(a, b, c, d, e, f)) for f in cols] for e in rows],
        })
    return blocks


def category(name, labels, dual, qdim, rule, value, group, grading, actions=None):
    rank = len(labels)
    n = fusion_from_rule(rank, rule)
    doc = {
        "name": name,
        "rank": rank,
        "labels": labels,
        "dual": dual,
        "qdim": qdim,
        "group": group,
        "grading": grading,
        "N": [[a, b, c, v] for (a, b, c), v in sorted(n.items())],
        "F": f_blocks(rank, n, value),
    }
    if actions:
        doc["action"] = actions
    return doc


def cyclic(k, names=None):
    names = names or [str(i) for i in range(k)]
    return {"elements": names, "table": [[(i + j) % k for j in range(k)] for i in range(k)]}


TRIVIAL_GROUP = {"elements": ["e"], "table": [[0]]}


def vec_z2():
    return category("vec_z2", ["0", "1"], [0, 1], [1, 1],
                    lambda a, b: [(a + b) % 2], lambda *_: 1,
                    cyclic(2), [0, 1],
                    [{"name": "trivial", "perm": {"0": [0, 1], "1": [0, 1]}}])


def vec_z3():
    return category("vec_z3", ["0", "1", "2"], [0, 2, 1], [1, 1, 1],
                    lambda a, b: [(a + b) % 3], lambda *_: 1,
                    cyclic(2, ["e", "s"]), [0, 0, 0],
                    [{"name": "inversion", "perm": {"e": [0, 1, 2], "s": [0, 2, 1]}}])


def vec_s3():
    # label g*3+a stands for s^g r^a
    def mul(x, y):
        g, a = divmod(x, 3)
        h, b = divmod(y, 3)
        a2 = (-a) % 3 if h else a
        return ((g + h) % 2) * 3 + (a2 + b) % 3

    inv = [next(y for y in range(6) if mul(x, y) == 0) for x in range(6)]
    return category("vec_s3", ["e", "r", "r2", "s", "sr", "sr2"], inv, [1] * 6,
                    lambda a, b: [mul(a, b)], lambda *_: 1,
                    TRIVIAL_GROUP, [0] * 6)


def ising():
    one, psi, sig = 0, 1, 2

    def rule(a, b):
        if a == sig and b == sig:
            return [one, psi]
        if sig in (a, b):
            return [sig]
        return [a ^ b]

    def value(a, b, c, d, e, f):
        if (a, b, c, d) == (sig, sig, sig, sig):
            return (-1 if e == psi and f == psi else 1) / math.sqrt(2)
        if (a, b, c, d) in ((psi, sig, psi, sig), (sig, psi, sig, psi)):
            return -1
        return 1

    return category("ising", ["1", "psi", "sigma"], [0, 1, 2], [1, 1, math.sqrt(2)],
                    rule, value, cyclic(2), [0, 0, 1])


def fib():
    phi = (1 + math.sqrt(5)) / 2

    def rule(a, b):
        if a == 1 and b == 1:
            return [0, 1]
        return [a ^ b]

    def value(a, b, c, d, e, f):
        if (a, b, c, d) == (1, 1, 1, 1):
            m = [[1 / phi, 1 / math.sqrt(phi)], [1 / math.sqrt(phi), -1 / phi]]
            return m[e][f]
        return 1

    return category("fib", ["1", "tau"], [0, 1], [1, phi], rule, value, TRIVIAL_GROUP, [0, 0])


def dump(doc):
    """One top-level key per line, one N entry or F block per line."""
    lines = []
    for key, val in doc.items():
        if key in ("N", "F", "action"):
            inner = ",\n  ".join(json.dumps(x) for x in val)
            lines.append(f' "{key}": [\n  {inner}\n ]')
        else:
            lines.append(f" {json.dumps(key)}: {json.dumps(val)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def main():
    OUT.mkdir(exist_ok=True)
    for make in (vec_z2, vec_z3, vec_s3, ising, fib):
        doc = make()
        path = OUT / f"{doc['name']}.json"
        path.write_text(dump(doc))
        print(path)


if __name__ == "__main__":
    main()
