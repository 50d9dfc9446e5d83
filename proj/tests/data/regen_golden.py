#!/usr/bin/env python3
"""Regenerates the golden TSVs under tests/data/golden/.

Independent reimplementation of the measurement pipeline: its own CoNLL
parsing, token pruning, brute-force crossing counts and brute-force
placement grids. Shares no code with the C++ library; agreement is byte
level, so formatting and accumulation order mirror the documented output
contract (shortest round-trip floats, left-to-right sums).
"""

import os
import unicodedata

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURE = os.path.join(HERE, "fixture_10.conll")
GOLDEN = os.path.join(HERE, "golden")

TOOL_LINE = "# depcross 0.1.0"

CANONICAL_INGEST = (
    "format=conllx\n"
    "null.cpostags=\n"
    "null.forms=NULL\n"
    "null.postags=\n"
    "punct.cpostags=PUNCT\n"
    "punct.deprels=\n"
    "punct.forms=\n"
    "punct.postags=PUNCT\n"
    "punct.unicode_forms=1"
)
CANONICAL_OPTIONS = "min_group_size=1\nstddev=population"


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def hex64(v: int) -> str:
    return format(v, "016x")


def fmt(x: float) -> str:
    if x == 0.0:
        return "0"
    r = repr(float(x))
    if r.endswith(".0"):
        r = r[:-2]
    return r


# ---------------------------------------------------------------- parsing

def parse_corpus(path):
    """Returns a list of sentence dicts: {'ok': bool, 'tokens': [...]} where
    each token is (form, cpostag, postag, deprel, head)."""
    with open(path, "rb") as f:
        raw = f.read().decode("utf-8")
    sentences = []
    current = []
    failed = False

    def flush():
        nonlocal current, failed
        if current or failed:
            sentences.append({"ok": not failed, "tokens": current})
        current = []
        failed = False

    for line in raw.split("\n"):
        if line.endswith("\r"):
            line = line[:-1]
        if line == "":
            flush()
            continue
        if line.startswith("#"):
            continue
        if failed:
            continue
        cols = line.split("\t")
        if len(cols) < 8:
            failed = True
            continue
        idx, form, _, cpostag, postag, _, head, deprel = cols[:8]

        def ascii_digits(s):
            return bool(s) and all("0" <= ch <= "9" for ch in s)

        if not ascii_digits(idx) or int(idx) != len(current) + 1:
            failed = True
            continue
        if not ascii_digits(head):
            failed = True
            continue
        h = int(head)
        def field(s):
            return "" if s == "_" else s
        current.append((form, field(cpostag), field(postag), field(deprel), h))
    flush()

    for s in sentences:
        if not s["ok"]:
            continue
        n = len(s["tokens"])
        for i, tok in enumerate(s["tokens"], 1):
            if tok[4] > n or tok[4] == i:
                s["ok"] = False
                break
    return sentences


# ----------------------------------------------------- prune and filter

def classify(form, cpostag, postag, deprel):
    if form.upper() == "NULL":
        return "null"
    if form and all(unicodedata.category(ch)[0] in "PS" for ch in form):
        return "punct"
    if cpostag == "PUNCT" or postag == "PUNCT":
        return "punct"
    return "word"


def prune(tokens):
    """Drops non-word tokens, re-heading survivors through original links.
    Returns (heads list) or None for a cycle through removed tokens."""
    n = len(tokens)
    classes = [classify(t[0], t[1], t[2], t[3]) for t in tokens]
    new_index = [0] * (n + 1)
    kept = 0
    for v in range(1, n + 1):
        if classes[v - 1] == "word":
            kept += 1
            new_index[v] = kept
    heads = []
    for v in range(1, n + 1):
        if new_index[v] == 0:
            continue
        h = tokens[v - 1][4]
        steps = 0
        while h != 0 and new_index[h] == 0:
            h = tokens[h - 1][4]
            steps += 1
            if steps > n:
                return None
        heads.append(0 if h == 0 else new_index[h])
    return heads


def filter_heads(heads):
    n = len(heads)
    if n == 0:
        return "not_tree"
    root = 0
    for v in range(1, n + 1):
        h = heads[v - 1]
        if h < 0 or h > n or h == v:
            return "not_tree"
        if h == 0:
            if root:
                return "not_tree"
            root = v
    if root == 0:
        return "not_tree"
    state = [0] * (n + 1)
    state[root] = 2
    for v in range(1, n + 1):
        u = v
        chain = []
        while state[u] == 0:
            state[u] = 1
            chain.append(u)
            u = heads[u - 1]
        if state[u] == 1:
            return "not_tree"
        for w in chain:
            state[w] = 2
    deg = degrees(heads)
    if any(d == n - 1 for d in deg[1:]):
        return "star"
    return "included"


# ------------------------------------------------------------- metrics

def degrees(heads):
    n = len(heads)
    deg = [0] * (n + 1)
    for v in range(1, n + 1):
        h = heads[v - 1]
        if h != 0:
            deg[v] += 1
            deg[h] += 1
    return deg


def edges_of(heads):
    out = []
    for v in range(1, len(heads) + 1):
        h = heads[v - 1]
        if h != 0:
            out.append((min(v, h), max(v, h)))
    out.sort()
    return out


def count_crossings(edges):
    c = 0
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            (a1, b1), (a2, b2) = edges[i], edges[j]
            if len({a1, b1, a2, b2}) < 4:
                continue
            lo, hi = (edges[i], edges[j]) if a1 < a2 else (edges[j], edges[i])
            if lo[0] < hi[0] < lo[1] < hi[1]:
                c += 1
    return c


_PLACEMENTS = {}


def placements(n, d1, d2):
    """Brute-force placement grid: all joint positions of one edge of each
    length, counting the disjoint ones (beta) and the crossing ones (alpha)."""
    key = (n, min(d1, d2), max(d1, d2))
    if key in _PLACEMENTS:
        return _PLACEMENTS[key]
    n, d1, d2 = key[0], key[1], key[2]
    alpha = beta = 0
    for s1 in range(1, n - d1 + 1):
        t1 = s1 + d1
        for s2 in range(1, n - d2 + 1):
            t2 = s2 + d2
            if len({s1, t1, s2, t2}) < 4:
                continue
            beta += 1
            inside = (s1 < s2 < t1) + (s1 < t2 < t1)
            if inside == 1:
                alpha += 1
    _PLACEMENTS[key] = (alpha, beta)
    return alpha, beta


def crossing_probability(n, d1, d2):
    alpha, beta = placements(n, d1, d2)
    if beta == 0:
        raise ValueError("no disjoint placement")
    return alpha / beta


def expected_crossings(n, edges):
    total = 0.0
    comp = 0.0
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            (a1, b1), (a2, b2) = edges[i], edges[j]
            if len({a1, b1, a2, b2}) < 4:
                continue
            p = crossing_probability(n, b1 - a1, b2 - a2)
            y = p - comp
            tmp = total + y
            comp = (tmp - total) - y
            total = tmp
    return total


def sentence_row(ordinal, heads):
    n = len(heads)
    edges = edges_of(heads)
    deg = degrees(heads)
    sum_sq = sum(d * d for d in deg[1:])
    q = (n * (n - 1) - sum_sq) // 2
    c = count_crossings(edges)
    d_total = sum(b - a for a, b in edges)
    k2 = float(sum_sq) / float(n)
    lin = 4.0 - 6.0 / float(n)
    hub = (k2 - lin) / (float(n - 1) - lin)
    e0 = q / 3.0
    e2 = expected_crossings(n, edges)
    delta0 = (e0 - float(c)) / float(q)
    delta2 = (e2 - float(c)) / float(q)
    return {
        "sentence": ordinal, "n": n, "c_true": c, "q": q, "d": d_total,
        "k2": k2, "h": hub, "e0": e0, "e2": e2,
        "delta0": delta0, "delta2": delta2,
    }


# ---------------------------------------------------------- aggregation

def mean(xs):
    s = 0.0
    for x in xs:
        s += x
    return s / float(len(xs))


def median(xs):
    v = sorted(xs)
    m = len(v) // 2
    return v[m] if len(v) % 2 else (v[m - 1] + v[m]) / 2.0


def stddev_pop(xs, mu):
    if len(xs) == 1:
        return 0.0
    ss = 0.0
    for x in xs:
        ss += (x - mu) * (x - mu)
    return (ss / float(len(xs))) ** 0.5


# ------------------------------------------------------------- writers

def write(path, text):
    with open(path, "wb") as f:
        f.write(text.encode("utf-8"))


def main():
    os.makedirs(GOLDEN, exist_ok=True)
    fingerprint = hex64(
        fnv1a64((CANONICAL_INGEST + "\n" + CANONICAL_OPTIONS).encode()))

    sentences = parse_corpus(FIXTURE)
    rows = []
    tally = {"included": 0, "malformed": 0, "not_tree": 0, "star": 0}
    for ordinal, sent in enumerate(sentences, 1):
        if not sent["ok"]:
            tally["malformed"] += 1
            continue
        heads = prune(sent["tokens"])
        if heads is None:
            tally["malformed"] += 1
            continue
        decision = filter_heads(heads)
        if decision == "included":
            tally["included"] += 1
            rows.append(sentence_row(ordinal, heads))
        elif decision == "star":
            tally["star"] += 1
        else:
            tally["not_tree"] += 1
    raw = len(sentences)

    stem = "fixture_10"
    cols = "sentence\tn\tc_true\tq\td\tk2\th\te0\te2\tdelta0\tdelta2"
    lines = [TOOL_LINE, "# config: " + fingerprint, "# treebank: " + stem,
             cols]
    for r in rows:
        lines.append("\t".join([
            str(r["sentence"]), str(r["n"]), str(r["c_true"]), str(r["q"]),
            str(r["d"]), fmt(r["k2"]), fmt(r["h"]), fmt(r["e0"]),
            fmt(r["e2"]), fmt(r["delta0"]), fmt(r["delta2"])]))
    write(os.path.join(GOLDEN, stem + ".sentences.tsv"),
          "\n".join(lines) + "\n")

    c_avg = mean([float(r["c_true"]) for r in rows])
    d0 = [r["delta0"] for r in rows]
    d2 = [r["delta2"] for r in rows]
    d2_avg = mean(d2)
    summary_line = "\t".join([
        stem, str(raw), str(tally["included"]), str(tally["malformed"]),
        str(tally["not_tree"]), str(tally["star"]), fmt(c_avg),
        fmt(mean(d0)), fmt(d2_avg), fmt(median(d2)),
        fmt(stddev_pop(d2, d2_avg))])
    write(os.path.join(GOLDEN, "summary.tsv"), "\n".join([
        TOOL_LINE, "# config: " + fingerprint, "# stddev: population",
        "treebank\tsentences\tincluded\texcluded_malformed\t"
        "excluded_not_tree\texcluded_star\tc_true_avg\tdelta0_avg\t"
        "delta2_avg\tdelta2_median\tdelta2_stddev",
        summary_line]) + "\n")

    groups = {}
    for r in rows:
        groups.setdefault(r["n"], []).append(r)
    group_lines = []
    g0, g2 = [], []
    for n in sorted(groups):
        grp = groups[n]
        m0 = mean([r["delta0"] for r in grp])
        m2 = mean([r["delta2"] for r in grp])
        group_lines.append(
            "\t".join([str(n), str(len(grp)), fmt(m0), fmt(m2)]))
        g0.append(m0)
        g2.append(m2)
    write(os.path.join(GOLDEN, stem + ".bylength.tsv"), "\n".join([
        TOOL_LINE, "# config: " + fingerprint, "# treebank: " + stem,
        "n\tsentences\tdelta0_mean\tdelta2_mean"] + group_lines) + "\n")

    g2_avg = mean(g2)
    write(os.path.join(GOLDEN, "bylength.tsv"), "\n".join([
        TOOL_LINE, "# config: " + fingerprint, "# stddev: population",
        "treebank\tlengths\tdelta0_avg\tdelta2_avg\tdelta2_median\t"
        "delta2_stddev",
        "\t".join([stem, str(len(group_lines)), fmt(mean(g0)), fmt(g2_avg),
                   fmt(median(g2)), fmt(stddev_pop(g2, g2_avg))])]) + "\n")

    for n in (4, 5):
        lines = [TOOL_LINE, "# n: " + str(n), "d1\td2\tp"]
        for d1 in range(1, n):
            for d2 in range(d1, n):
                alpha, beta = placements(n, d1, d2)
                if beta == 0:
                    continue
                lines.append(
                    "\t".join([str(d1), str(d2), fmt(alpha / beta)]))
        write(os.path.join(GOLDEN, "probmap_%d.tsv" % n),
              "\n".join(lines) + "\n")

    print("wrote goldens for %d sentences (%d included)" %
          (raw, tally["included"]))


if __name__ == "__main__":
    main()
