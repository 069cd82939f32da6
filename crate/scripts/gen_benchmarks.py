#!/usr/bin/env python3
"""Writes the shipped benchmark domains and problems under crates/core/benchmarks."""

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "crates" / "core" / "benchmarks"


def write(rel, text):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def goal_lines(goals):
    """One `goal` line per (target, formula); a bare tuple is a single goal."""
    if isinstance(goals, tuple):
        goals = [goals]
    return "".join(f"goal {target} {formula}\n" for target, formula in goals)


def number():
    agents = ["a", "b"]
    lines = [
        "# Two agents take turns peeking at a number in a box.",
        "domain number",
        "agents " + " ".join(agents),
    ]
    lines += [f"var peeking_{a} : bool" for a in agents]
    lines += ["var n : int 0..9", "observation number", ""]
    nobody = " ".join(f"(= peeking_{a} false)" for a in agents)
    for a in agents:
        lines += [
            f"action peek_{a}",
            f"  pre (and {nobody})",
            f"  eff peeking_{a} := true",
            "end",
            f"action return_{a}",
            f"  pre (= peeking_{a} true)",
            f"  eff peeking_{a} := false",
            "end",
        ]
    lines += ["action add", "  eff n += 1", "end", "action subtract", "  eff n -= 1", "end"]
    write("number/domain.gjp", "\n".join(lines) + "\n")

    g = "(a b)"
    goals = {
        "N0": f"(EB {g} (< n 2))",
        "N1": f"(DB {g} (< n 2))",
        "N2": f"(CB {g} (< n 2))",
        "N3": f"(and (EB {g} (< n 2)) (not (CB {g} (< n 2))))",
        "N4": f"(and (EB {g} (EB {g} (< n 2))) (not (CB {g} (< n 2))))",
        "N5": f"(and (not (EB {g} (= n 1))) (not (EB {g} (= n 2))) (CB {g} (< n 2)))",
        "N6": f"(and (B a (CB {g} (= n 2))) (B b (CB {g} (= n 1))))",
    }
    for pid, goal in goals.items():
        n = 1 if pid == "N5" else 2
        write(
            f"number/{pid}.gjp",
            f"problem {pid}\ndomain number\n"
            f"init peeking_a = false, peeking_b = false, n = {n}\n"
            f"goal true {goal}\n",
        )
    write(
        "number/plan1.trace",
        "# peek(a), return(a), subtract, peek(b)\n"
        "trace plan1\ndomain number\n"
        "init peeking_a = false, peeking_b = false, n = 2\n"
        "do peek_a\ndo return_a\ndo subtract\ndo peek_b\n",
    )


def grapevine():
    agents = ["a", "b", "c", "d"]
    lines = [
        "# Four agents in two rooms, each with a secret to share or lie about.",
        "domain grapevine",
        "agents " + " ".join(agents),
    ]
    lines += [f"var loc_{a} : enum room1 room2" for a in agents]
    lines += [f"var shr_{a} : enum none room1 room2" for a in agents]
    lines += [f"var sct_{a} : enum t f" for a in agents]
    lines += ["observation grapevine", ""]

    def reset(keep=None):
        return ", ".join(f"shr_{k} := none" for k in agents if k != keep)

    for i in agents:
        for src, dst in (("1", "2"), ("2", "1")):
            lines += [
                f"action move_{i}_{src}{dst}",
                f"  pre (= loc_{i} room{src})",
                f"  eff loc_{i} := room{dst}, {reset()}",
                "end",
            ]
    other = {"t": "f", "f": "t"}
    for i in agents:
        for j in agents:
            for v in ("t", "f"):
                for kind, said in (("share", v), ("lie", other[v])):
                    lines += [
                        f"action {kind}_{i}_{j}_{v}",
                        f"  pre (B {i} (= sct_{j} {v}))",
                        f"  eff sct_{j} := {said}, shr_{j} := loc_{i}, {reset(j)}",
                        "end",
                    ]
    write("grapevine/domain.gjp", "\n".join(lines) + "\n")

    g = "(a b c d)"
    goals = {
        "G0": ("true", f"(CB {g} (= sct_a t))"),
        "G1": [("true", f"(EB {g} (= sct_a t))"), ("unknown", f"(CB {g} (= sct_a t))")],
        "G2": [("true", f"(EB {g} (EB {g} (= sct_a t)))"), ("unknown", f"(CB {g} (= sct_a t))")],
        "G3": ("true", f"(and (B b (CB {g} (= sct_a f))) (CB (a c d) (= sct_a t)))"),
        "G4": ("true", f"(and (CB (b c) (CB {g} (= sct_a f))) (CB (a d) (= sct_a t)))"),
        "G5": [("true", f"(DB {g} (EB {g} (= sct_a t)))"), ("unknown", f"(CB {g} (= sct_a t))")],
        "G6": [("true", f"(DB {g} (EB {g} (= sct_a t)))"), ("unknown", f"(B a (EB {g} (= sct_a t)))")],
    }
    init = (
        "init " + ", ".join(f"loc_{a} = room1" for a in agents) + "\n"
        "init " + ", ".join(f"shr_{a} = none" for a in agents) + "\n"
        "init " + ", ".join(f"sct_{a} = t" for a in agents) + "\n"
    )
    for pid, gs in goals.items():
        write(f"grapevine/{pid}.gjp", f"problem {pid}\ndomain grapevine\n{init}{goal_lines(gs)}")


def bbl():
    cams = ["a", "b"]
    lines = [
        "# Two cameras on a grid turning in 45 degree steps; headings in degrees.",
        "domain bbl",
        "agents " + " ".join(cams),
    ]
    lines += [f"var dir_{c} : int -135..180" for c in cams]
    lines += [f"var o{k} : int 1..3" for k in (1, 2, 3)]
    lines += ["observation bbl", ""]
    for c in cams:
        lines += [
            f"action turn_{c}_cw",
            f"  pre (> dir_{c} -135)",
            f"  eff dir_{c} -= 45",
            "end",
            f"action turn_{c}_cw_wrap",
            f"  pre (= dir_{c} -135)",
            f"  eff dir_{c} := 180",
            "end",
            f"action turn_{c}_ccw",
            f"  pre (< dir_{c} 180)",
            f"  eff dir_{c} += 45",
            "end",
            f"action turn_{c}_ccw_wrap",
            f"  pre (= dir_{c} 180)",
            f"  eff dir_{c} := -135",
            "end",
        ]
    write("bbl/domain.gjp", "\n".join(lines) + "\n")

    g = "(a b)"
    goals = {
        "BBL0": ("true", f"(CB {g} (= o2 2))"),
        "BBL1": [("true", f"(EB {g} (= o2 2))"), ("unknown", f"(CB {g} (= o2 2))")],
        "BBL2": ("true", f"(CB {g} (= o1 1))"),
        "BBL3": ("true", f"(CB {g} (and (= o1 1) (= o2 2)))"),
        "BBL4": ("true", f"(EB {g} (and (= o1 1) (= o2 2) (= o3 3)))"),
        "BBL5": ("true", f"(EB {g} (< o1 o2))"),
        "BBL6": ("true", f"(DB {g} (< o1 o2))"),
    }
    for pid, gs in goals.items():
        write(
            f"bbl/{pid}.gjp",
            f"problem {pid}\ndomain bbl\n"
            "init dir_a = -135, dir_b = 90, o1 = 1, o2 = 2, o3 = 3\n" + goal_lines(gs),
        )


if __name__ == "__main__":
    number()
    grapevine()
    bbl()
