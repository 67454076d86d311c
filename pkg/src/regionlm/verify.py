"""Seeded oracle-equivalence suites behind ``regionlm verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import algebra
from .catalog import WORKED
from .generate import FAMILIES, random_lm_case, random_regionset
from .lm import compile_lm, direct_ranking
from .oracle import NaiveCounter, naive_op
from .query import evaluate, format_query, parse_query
from .rewrite import check_equivalent, compare_sets, rewrite_all

OP_NAMES = ("CONTAINING", "CONTAINED_BY", "SCALE", "AND", "OR")

# looked up at call time so tests can substitute a faulty operator
ENGINE_OPS = {
    "CONTAINING": algebra.containing,
    "CONTAINED_BY": algebra.contained_by,
    "SCALE": lambda r, f: algebra.scale(f, r),
    "AND": algebra.and_,
    "OR": algebra.or_,
}


@dataclass
class Report:
    lines: list[str] = field(default_factory=list)
    passed: bool = True

    def text(self):
        return "".join(line + "\n" for line in self.lines)


def verify_ops(trials: int, seed: int, rel_tol=1e-12) -> Report:
    """Each trial checks all five operators on one random operand pair."""
    rng = random.Random(f"ops:{seed}")
    per_op = {op: 0 for op in OP_NAMES}
    ok_trials = 0
    first = None
    for trial in range(trials):
        r1, r2 = random_regionset(rng), random_regionset(rng)
        f = rng.choice((0.2, 0.5, 2.0, rng.uniform(1e-3, 10.0)))
        trial_ok = True
        for op in OP_NAMES:
            other = f if op == "SCALE" else r2
            diff = compare_sets(ENGINE_OPS[op](r1, other), naive_op(op, r1, other), rel_tol)
            if diff is None:
                per_op[op] += 1
                continue
            trial_ok = False
            if first is None:
                ext, got, want = diff
                first = (
                    f"counterexample: trial {trial} {op}: region {ext} engine={got!r} oracle={want!r}\n"
                    f"  R1={r1.to_tsv()!r}\n  R2={(f if op == 'SCALE' else r2.to_tsv())!r}"
                )
        ok_trials += trial_ok
    report = Report()
    for op in OP_NAMES:
        report.lines.append(f"{op}: {per_op[op]}/{trials} pass")
    if first:
        report.lines.append(first)
    report.lines.append(f"{ok_trials}/{trials} pass")
    report.passed = ok_trials == trials
    return report


def check_correspondence(text, index, spec, rel_tol=1e-9):
    """Compare the compiled query with direct arithmetic on one corpus.

    Returns ``None`` on agreement, otherwise ``(extent, algebra, direct)``
    with ``None`` standing for an absent region.
    """
    got = evaluate(compile_lm(spec), index).as_dict()
    want = {
        ext: s for ext, s in direct_ranking(spec, index, NaiveCounter(text)).items() if s > 0
    }
    for ext in sorted(set(got) | set(want)):
        a, b = got.get(ext), want.get(ext)
        if a is None or b is None or not math.isclose(a, b, rel_tol=rel_tol, abs_tol=0.0):
            return ext, a, b
    return None


def verify_lm(trials: int, seed: int, families=FAMILIES, rel_tol=1e-9) -> Report:
    report = Report()
    total = ok = 0
    first = None
    for family in families:
        rng = random.Random(f"lm:{family}:{seed}")
        passed = 0
        for trial in range(trials):
            text, index, spec = random_lm_case(rng, family)
            diff = check_correspondence(text, index, spec, rel_tol)
            if diff is None:
                passed += 1
            elif first is None:
                ext, a, b = diff
                first = (
                    f"counterexample: {family} trial {trial}: region {ext} algebra={a!r} direct={b!r}\n"
                    f"  query: {format_query(compile_lm(spec))}\n  corpus: {text}"
                )
        report.lines.append(f"{family}: {passed}/{trials} pass")
        total += trials
        ok += passed
    if first:
        report.lines.append(first)
    report.lines.append(f"{ok}/{total} pass")
    report.passed = ok == total
    return report


def verify_rewrites(trials: int, seed: int) -> Report:
    """Check every worked alternative against its original and compiled forms."""
    report = Report()
    for w in WORKED:
        alternative = parse_query(w.alternative)
        for label, source in (("original", parse_query(w.original)), ("compiled", compile_lm(w.spec))):
            reachable = alternative in rewrite_all(source)
            verdict = check_equivalent(source, alternative, trials, seed, levels=w.levels)
            status = "pass" if verdict and reachable else "FAIL"
            report.lines.append(
                f"{w.name} [{label}]: {verdict.trials}/{trials} trials "
                f"{'equivalent' if verdict else 'NOT equivalent'}, "
                f"derived by rewriting: {'yes' if reachable else 'no'}: {status}"
            )
            report.lines.append(f"  {format_query(source)}")
            report.lines.append(f"  ~ {format_query(alternative)}")
            if not verdict:
                report.lines.append("  " + verdict.counterexample.describe())
            report.passed &= bool(verdict) and reachable
    report.lines.append("all pairs pass" if report.passed else "some pairs FAIL")
    return report


SUITES = {"ops": verify_ops, "lm": verify_lm, "rewrites": verify_rewrites}
