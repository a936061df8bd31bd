#!/usr/bin/env python3
"""Cut a small, self-consistent WNDB directory out of a full WordNet.

Every noun/verb sense of the seed words is kept together with its whole
hypernym ancestry.  Data lines are rewritten with fresh byte offsets and
pointers to dropped synsets are removed, so the result loads with any WNDB
reader.  Used to build ``tests/data/wordnet-mini``.

    python scripts/make_wordnet_subset.py /path/to/wordnet/dict tests/data/wordnet-mini
"""
import argparse
import shutil
import sys
from pathlib import Path

SEED_WORDS = """
entity cat dog canine car automobile vehicle motor_vehicle bike bicycle motorcycle
red carmine scarlet vermilion colour color
museum gallery collection building house home city town country village
trip journey excursion tour travel apartment flat motor-bike
book library author history culture art painting science student teacher school
university product company people hotel boy beach institution object artefact artifact
exhibit image world countryside acceleration model perusal study exploration
london existence result footprint body sponsor sport charge fee physician public
animal mammal feline pet region influence abstraction reference
drive walk ride join reserve rent visit see hold contain build read write learn
teach buy sell make create open close show display own have run move go combine
allude distribute base house dedicate originate illustrate document establish
charge sponsor expand include cause view care be exist find keep give take use
""".split()


def read_lines(path):
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8").split("\n")


def load_data(path):
    synsets = {}
    for line in read_lines(path):
        if not line or line.startswith("  "):
            continue
        synsets[int(line.split(" ", 1)[0])] = line
    return synsets


def load_index(path):
    index = {}
    for line in read_lines(path):
        if not line or line.startswith("  "):
            continue
        f = line.split()
        p_cnt = int(f[3])
        index[f[0]] = [int(o) for o in f[4 + p_cnt + 2:]]
    return index


def parse_line(line):
    body, _, gloss = line.partition("|")
    f = body.split()
    w_cnt = int(f[3], 16)
    k = 4 + 2 * w_cnt
    p_cnt = int(f[k])
    ptrs = [f[k + 1 + 4 * i: k + 5 + 4 * i] for i in range(p_cnt)]
    rest = f[k + 1 + 4 * p_cnt:]
    return f, w_cnt, ptrs, rest, gloss


def build(src: Path, dst: Path, words):
    dst.mkdir(parents=True, exist_ok=True)
    for pos, ss in (("noun", "n"), ("verb", "v")):
        data = load_data(src / f"data.{pos}")
        index = load_index(src / f"index.{pos}")
        keep = set()
        stack = [o for w in words for o in index.get(w.lower().replace("-", "_"), [])]
        while stack:
            off = stack.pop()
            if off in keep:
                continue
            keep.add(off)
            _, _, ptrs, _, _ = parse_line(data[off])
            stack.extend(int(p[1]) for p in ptrs if p[0] in ("@", "@i") and p[2] == ss)
        order = sorted(keep)
        # offsets are fixed-width, so line lengths do not depend on them
        header = [l for l in read_lines(src / f"data.{pos}") if l.startswith("  ")]
        header_bytes = sum(len(l.encode()) + 1 for l in header)
        new_offset = {}
        pos_bytes = header_bytes
        kept_lines = {}
        for off in order:
            f, w_cnt, ptrs, rest, gloss = parse_line(data[off])
            ptrs = [p for p in ptrs if p[2] == ss and int(p[1]) in keep]
            kept_lines[off] = (f, w_cnt, ptrs, rest, gloss)
        for off in order:
            new_offset[off] = pos_bytes
            pos_bytes += len(render(kept_lines[off], off, {o: o for o in keep}).encode()) + 1
        out = list(header)
        for off in order:
            out.append(render(kept_lines[off], new_offset[off], new_offset))
        (dst / f"data.{pos}").write_bytes(("\n".join(out) + "\n").encode())

        lemmas = {}
        for off in order:
            f, w_cnt, *_ = kept_lines[off]
            for i in range(w_cnt):
                lemma = f[4 + 2 * i].lower().split("(")[0]
                lemmas.setdefault(lemma, [])
        idx_lines = []
        for lemma in sorted(lemmas):
            offs = [o for o in index.get(lemma, []) if o in keep]
            if not offs:
                continue
            ptr_syms = sorted({p[0] for o in offs for p in kept_lines[o][2]})
            idx_lines.append(" ".join([lemma, ss, str(len(offs)), str(len(ptr_syms)), *ptr_syms,
                                       str(len(offs)), "0", *(f"{new_offset[o]:08d}" for o in offs)]) + "  ")
        (dst / f"index.{pos}").write_text("\n".join(idx_lines) + "\n")

        known = {l.split()[0] for l in idx_lines}
        exc = [l for l in read_lines(src / f"{pos}.exc") if l and all(b in known for b in l.split()[1:])]
        (dst / f"{pos}.exc").write_text("\n".join(exc) + "\n")
    for extra in ("LICENSE",):
        if (src / extra).exists():
            shutil.copy(src / extra, dst / extra)


def render(parsed, offset, offsets):
    f, w_cnt, ptrs, rest, gloss = parsed
    head = [f"{offset:08d}", f[1], f[2], f[3], *f[4: 4 + 2 * w_cnt], f"{len(ptrs):03d}"]
    for sym, target, tpos, st in ptrs:
        head += [sym, f"{offsets[int(target)]:08d}", tpos, st]
    return " ".join(head + rest) + " |" + gloss


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("source")
    parser.add_argument("dest")
    args = parser.parse_args(argv)
    build(Path(args.source), Path(args.dest), SEED_WORDS)


if __name__ == "__main__":
    sys.exit(main())
