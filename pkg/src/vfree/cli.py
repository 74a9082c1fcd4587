"""``vfree`` command line: one graph-of-groups file in, one reproducible report out.

Exit status: 0 when the subcommand's claim held, 1 for a negative answer
(word is not the identity, no k found), 2 for unreadable input or usage
errors, 3 for an invalid graph, 4 when the ball budget ran out and 5 when
verification found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .dehn import UncertifiedError, build_engine, format_rules
from .graph import GraphSpecError, InvalidGraphError, describe, plan, read_graph, star_size
from .normal_forms import UnknownLetterError, VirtuallyFreeGroup
from .oracle import DEFAULT_BUDGET, BudgetExceeded, GeodesicOracle
from .words import AlphabetError, format_word, parse_word

EXIT_OK = 0
EXIT_NO = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4
EXIT_COUNTEREXAMPLE = 5

SUBCOMMANDS = ("build", "ball", "verify", "minimal-k", "rules", "reduce", "wp", "len")


@dataclass
class RunConfig:
    input: Path
    subcommand: str
    k: int | None = None
    max_len: int = 8
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    emit: Path | None = None
    radius: int = 5
    word: str = ""
    samples: int = 0
    paranoid: bool = False
    timings: bool = False
    letters: str | None = None

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError("--max-len must be at least 1")
        if self.budget < 1:
            raise ValueError("--budget must be at least 1")
        if self.k is not None and self.k < 2:
            raise ValueError("--k must be at least 2")
        if self.radius < 0:
            raise ValueError("--radius must be non-negative")


@dataclass
class Report:
    lines: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    status: int = EXIT_OK

    def add(self, line: str = "") -> None:
        self.lines.append(line)

    def text(self) -> str:
        body = "\n".join(self.lines)
        return f"{body}\nsummary: {json.dumps(self.summary, sort_keys=True)}\n"


def emit_report(report: Report) -> str:
    return report.text()


def run(config: RunConfig) -> Report:
    report = Report()
    started = time.perf_counter()
    report.summary["command"] = config.subcommand
    try:
        graph = read_graph(config.input)
        p = plan(graph)
    except (GraphSpecError, OSError) as exc:
        report.add(f"error: cannot read {config.input}: {exc}")
        report.status = EXIT_PARSE
        return report
    except InvalidGraphError as exc:
        report.add("error: invalid graph of groups")
        for d in exc.diagnostics:
            report.add(f"  {d}")
        report.status = EXIT_INVALID
        return report

    size, k_plan = star_size(p)
    report.add(f"group: {len(graph.vertices)} vertex group(s), {len(graph.edges)} edge(s), {len(p.steps) - 1} step(s) after base")
    report.add(f"X' ({size} letters): {' '.join(p.alphabet)}")
    report.add(f"guaranteed k': {k_plan}")
    report.summary.update({"letters": size, "k_guaranteed": k_plan})

    group = VirtuallyFreeGroup(p)
    try:
        alphabet = p.alphabet if config.letters is None else p.alphabet.sub(config.letters.split())
    except AlphabetError as exc:
        report.add(f"error: bad --letters: {exc}")
        report.status = EXIT_PARSE
        return report
    if config.letters is not None:
        report.add(f"restricted to: {' '.join(alphabet)}")
        report.summary["restricted_letters"] = len(alphabet)
    oracle = GeodesicOracle(group, alphabet, budget=config.budget)
    try:
        _dispatch(config, p, group, oracle, report)
    except BudgetExceeded as exc:
        report.add(f"error: {exc}")
        report.status = EXIT_BUDGET
    except (AlphabetError, UnknownLetterError) as exc:
        report.add(f"error: bad word: {exc}")
        report.status = EXIT_PARSE
    except UncertifiedError as exc:
        report.add(f"error: {exc}")
        report.status = EXIT_COUNTEREXAMPLE
    report.summary["status"] = report.status
    if config.timings:
        report.summary["seconds"] = round(time.perf_counter() - started, 3)
    return report


def _dispatch(config: RunConfig, p, group, oracle: GeodesicOracle, report: Report) -> None:
    cmd = config.subcommand
    if cmd == "build":
        report.add("plan:")
        for line in describe(p):
            report.add(f"  {line}")
        report.summary["k_sequence"] = [s.k_after for s in p.steps]
        return

    if cmd == "ball":
        oracle.ball.grow(config.radius)
        sizes = oracle.ball.sizes()
        report.add(f"growth: {' '.join(map(str, sizes))}")
        report.summary.update({"radius": config.radius, "growth": sizes, "ball_size": len(oracle.ball)})
        return

    if cmd == "verify":
        k = config.k or p.k
        result = oracle.verify_locally_excluding(k, config.max_len)
        F = oracle.build_exclusion_set(k)
        report.add(f"k={k}, max length {config.max_len}, |F|={len(F)}")
        report.add(f"checked per length: {' '.join(map(str, result.counts))}")
        report.summary.update({"k": k, "max_len": config.max_len, "forbidden": len(F),
                               "checked": result.counts, "ok": result.ok})
        if config.emit:
            config.emit.write_text("".join(line + "\n" for line in F.lines()), encoding="utf-8")
        if not result.ok:
            report.add(f"counterexample: {format_word(result.counterexample)}")
            report.summary["counterexample"] = format_word(result.counterexample)
            report.status = EXIT_COUNTEREXAMPLE
            return
        report.add("ok")
        if config.samples:
            bad = _sample_check(config, group, oracle, k)
            report.add(f"random cross-check: {config.samples} words (seed {config.seed}), {bad} disagreement(s)")
            report.summary.update({"samples": config.samples, "seed": config.seed, "disagreements": bad})
            if bad:
                report.status = EXIT_COUNTEREXAMPLE
        return

    if cmd == "minimal-k":
        k = oracle.minimal_k(config.max_len)
        report.add(f"empirical minimal k (words up to length {config.max_len}): {k if k is not None else 'none'}")
        report.add(f"guaranteed k': {p.k}")
        report.summary.update({"max_len": config.max_len, "k_empirical": k})
        if k is None:
            report.status = EXIT_NO
        return

    engine = build_engine(oracle, config.k, verify_len=config.max_len, paranoid=config.paranoid)
    report.summary.update({"k": engine.k, "certificate": engine.certificate})

    if cmd == "rules":
        lines = format_rules(engine.rules)
        report.add(f"{len(lines)} rule(s) at k={engine.k} ({engine.certificate})")
        report.lines.extend(lines)
        report.summary["rules"] = len(lines)
        if config.emit:
            config.emit.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return

    w = parse_word(config.word, oracle.alphabet)
    if cmd == "reduce":
        r = engine.rewrite(w)
        report.add(f"reduced: {format_word(r)}")
        report.add(f"length: {len(r)}")
        report.summary.update({"input_length": len(w), "length": len(r)})
    elif cmd == "wp":
        st = engine.run(w)
        ident = len(st) == 0
        report.add(f"identity: {'yes' if ident else 'no'}")
        report.add(f"stack: {format_word(st.contents)}")
        report.add(f"length: {len(st)}")
        report.summary.update({"identity": ident, "length": len(st)})
        if not ident:
            report.status = EXIT_NO
    elif cmd == "len":
        st = engine.run(w)
        report.add(f"length: {len(st)}")
        report.add(f"geodesic: {format_word(st.contents)}")
        report.summary.update({"length": len(st)})


def _sample_check(config: RunConfig, group, oracle: GeodesicOracle, k: int) -> int:
    engine = build_engine(oracle, k, verify_len=config.max_len, paranoid=config.paranoid)
    rng = random.Random(config.seed)
    letters = group.alphabet.letters
    bad = 0
    for _ in range(config.samples):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, 30)))
        st = engine.run(w)
        g = group.evaluate(w)
        if (len(st) == 0) != g.is_identity() or group.evaluate(st.word()) != g \
                or len(st) != oracle.element_length(g):
            bad += 1
    return bad


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", type=Path, help="graph of groups (JSON)")
        sp.add_argument("--k", type=int, default=None, help="locality constant (default: plan's k')")
        sp.add_argument("--max-len", type=int, default=8, help="longest word checked exhaustively")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="ball size limit")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--emit", type=Path, default=None, help="write F (verify) or rules (rules) here")
        sp.add_argument("--paranoid", action="store_true", help="re-check the whole stack after each push")
        sp.add_argument("--timings", action="store_true", help="add wall time to the summary")
        if name in ("ball", "verify", "minimal-k"):
            sp.add_argument("--letters", default=None,
                            help="use only these letters of X' (must be closed under inverses)")
        if name == "ball":
            sp.add_argument("--radius", type=int, default=5)
        if name == "verify":
            sp.add_argument("--samples", type=int, default=0, help="random pushdown cross-checks")
        if name in ("reduce", "wp", "len"):
            sp.add_argument("--word", required=True, help="whitespace-separated letters")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            input=args.input, subcommand=args.subcommand, k=args.k, max_len=args.max_len,
            budget=args.budget, seed=args.seed, emit=args.emit, radius=getattr(args, "radius", 5),
            word=getattr(args, "word", ""), samples=getattr(args, "samples", 0),
            paranoid=args.paranoid, timings=args.timings, letters=getattr(args, "letters", None))
    except ValueError as exc:
        print(f"vfree: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = run(config)
    sys.stdout.write(emit_report(report))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
