#!/usr/bin/env python3
"""End-to-end exercise of the limitlab_py bindings.

Build the module first (either profile works):

    cargo build -p limitlab-py

Then run this script from anywhere; it locates the compiled library under
target/, gives it an importable name, and walks through every exposed
entry point with small assertions.
"""

import os
import sys
import tempfile


def locate_module():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    stems = {"linux": "liblimitlab_py.so", "darwin": "liblimitlab_py.dylib"}
    built = stems.get(sys.platform.split("-")[0], "liblimitlab_py.so")
    for profile in ("release", "debug"):
        candidate = os.path.join(root, "target", profile, built)
        if os.path.exists(candidate):
            importable = os.path.join(os.path.dirname(candidate), "limitlab_py.so")
            if not os.path.exists(importable) or (
                os.path.getmtime(importable) < os.path.getmtime(candidate)
            ):
                try:
                    if os.path.lexists(importable):
                        os.remove(importable)
                    os.symlink(built, importable)
                except OSError:
                    import shutil

                    shutil.copy2(candidate, importable)
            sys.path.insert(0, os.path.dirname(candidate))
            return
    sys.exit("build the module first: cargo build -p limitlab-py")


locate_module()
import limitlab_py as ll  # noqa: E402


def check(label, condition):
    status = "ok" if condition else "FAIL"
    print(f"  {label}: {status}")
    if not condition:
        sys.exit(1)


print("languages and alphabets")
ab = ll.Alphabet("ab")
full = ll.Language.pattern(ab, "(a|b)+")
small = ll.Language.finite(ab, ["a", "ab"])
check("pattern is infinite", full.cardinality() is None)
check("finite size", small.cardinality() == 2)
check("membership", full.contains("ba") and not small.contains("ba"))
check("subset", small.is_subset(full))
check("enumeration", full.enumerate(4, 3) == ["a", "b", "aa", "ab"])

print("metrics")
counting = ll.Metric.counting(full)
lo, hi, exact = counting.distance(small, full)
check("counting reciprocal", exact == "1/2" and lo == hi == 0.5)
symdiff = ll.Metric.symdiff(2)
lo, hi, exact = symdiff.distance(ll.Language.finite(ab, ["a"]), ll.Language.finite(ab, ["b"]))
check("symdiff weights", exact == "3/4")

print("learners and texts")
learner = ll.Learner.range()
hypothesis = learner.hypothesize(ab, ["a", "ab", "a"])
check("range hypothesis", hypothesis.equals(small))
text = ll.Text.canonical(full)
check("canonical items", [text.item(k) for k in (1, 2, 3)] == ["a", "b", "aa"])
check("prefix", text.prefix(2) == ["a", "b"])

print("simulation")
trace = ll.simulate(learner, text, full, counting, 100)
check("trace length", len(trace) == 100)
check("never settles on a finite stand-in", trace.stabilized_at() is None)
check("convergence point", trace.convergence("1/8") == 9)
check("step shape", trace.step(4)["distance"][2] == "1/4")

print("locking")
found = ll.search_locking(full, learner, counting, "1/4")
check("locking prefix found", found is not None and found["passed"])
check("no exact lock on an infinite target",
      ll.search_locking(full, learner, ll.Metric.exact(), "1/4") is None)

print("tell-tales")
a = ll.Alphabet("a")
unary_full = ll.Language.pattern(a, "a+")
report = ll.telltale_check([ll.Language.finite(a, ["a"]), unary_full])
check("family learnable", report["verdict"] == "LEARNABLE")
check("frozen witness", report["verdicts"][1] == ("WITNESS", ["aa"]))

print("chains")
chain = ll.chain_convergence(unary_full, ll.Metric.counting(unary_full), 80)
check("chain verdict", chain["verdict"] == "CONVERGING")
check("last rung", chain["rungs"][-1] == ("1/64", 65))

print("adversary")
run = ll.adversary(ll.Learner.memorizing(unary_full, 3), unary_full, 60)
check("obstruction witnessed", run["obstruction"])
check("words stay inside", set(run["words"]) <= set(unary_full.enumerate(60, 60)))

print("metric axioms")
axioms = ll.metric_axioms(symdiff, [small, full, ll.Language.finite(ab, ["b"])])
check("axioms pass", axioms["passed"] and axioms["violations"] == [])

print("config runner")
config = {
    "experiment": "simulate",
    "alphabet": "ab",
    "target": {"kind": "pattern", "pattern": "(a|b)+"},
    "learner": {"kind": "range"},
    "metric": {"kind": "counting", "L_inf": {"kind": "pattern", "pattern": "(a|b)+"}},
    "text": {"kind": "canonical"},
    "horizon": 40,
}
with tempfile.TemporaryDirectory() as scratch:
    path = os.path.join(scratch, "config.json")
    with open(path, "w") as handle:
        import json

        json.dump(config, handle)
    verdict = ll.run_config(path, out_dir=os.path.join(scratch, "out"))
    check("runner verdict", "exact_stabilization=NONE" in verdict)
    check("artifacts written",
          os.path.exists(os.path.join(scratch, "out", "trace.csv")))
check("catalog lists experiments", "experiments:" in ll.builtin_catalog())

print("all smoke checks passed")
