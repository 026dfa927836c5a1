"""Batch front end: synthesize, verify, apply, classify, compose.

All files are JSON with exact scalars (integer and fraction strings,
radical towers spelled out); no floats anywhere.  A job file names a
surface, a partition, and the matching list of target jets:

    {"surface": "torus", "partition": [2, 1], "jets": [...],
     "pinned": [...]}                                   # pinned optional

With ``from`` and ``to`` keys in place of ``jets`` the job asks for a
word moving one configuration to the other while fixing the pinned jets.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 invalid
input (parse, validation, or certification failure), 3 internal
verification failure, 4 question outside the decidable scope.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automorphisms import apply_jet, word_concat, word_from_json, word_to_json
from .dantesque import (HYPOTHESIS_NOT_MET, ISOMORPHIC, descriptor_from_json,
                        descriptor_invariants, isomorphism_decide,
                        singularity_name)
from .errors import JetmoveError, RootInForbiddenRegion
from .surfaces import jet_from_json, jet_to_json, standard_config
from .transitivity import synth_pair, synth_sphere, synth_torus

OK = 0
NEGATIVE = 1
INVALID = 2
INTERNAL = 3
OUT_OF_SCOPE = 4

_PARSE_ERRORS = (OSError, json.JSONDecodeError, KeyError, TypeError,
                 ValueError, IndexError)


def _interval(w) -> str:
    if isinstance(w, tuple) and len(w) == 2:
        return f"({w[0]}, {w[1]})"
    return str(w)


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _job_jets(job: dict, key: str) -> list:
    jets = [jet_from_json(d) for d in job[key]]
    for j in jets:
        if j.surface != job["surface"]:
            raise JetmoveError(f"{key} jet surface differs from job surface")
    return jets


def _job_config(job: dict, key: str = "jets") -> list:
    jets = _job_jets(job, key)
    if "partition" in job and list(job["partition"]) != [j.order for j in jets]:
        raise JetmoveError(f"partition does not match the {key} jet orders")
    return jets


def _first_mismatch(i: int, got, want) -> str:
    if got.center != want.center:
        return f"jet {i}: image center differs from target center"
    if got.order != want.order:
        return f"jet {i}: image order {got.order}, target order {want.order}"
    if (got.chart, got.transposed) != (want.chart, want.transposed):
        return f"jet {i}: image and target use different canonical charts"
    for gi, (a, b) in enumerate(zip(got.graphs, want.graphs)):
        for k, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
            if x != y:
                return (f"jet {i}, graph {gi}, coefficient {k}: "
                        f"image {x}, target {y}")
    return f"jet {i}: images differ"


def cmd_synth(args) -> int:
    try:
        job = _load(args.job)
        if "from" in job and "to" in job:
            sources = _job_config(job, "from")
            targets = _job_config(job, "to")
            pinned = _job_jets(job, "pinned") if "pinned" in job else []
            word = synth_pair(sources, targets, pinned)
        else:
            targets = _job_config(job)
            sources = standard_config(job["surface"],
                                      [j.order for j in targets]).jets
            if "pinned" in job:
                pinned = _job_jets(job, "pinned")
                word = synth_pair(sources, targets, pinned)
            else:
                pinned = []
                word = synth_torus(targets) if job["surface"] == "torus" \
                    else synth_sphere(targets)
    except RootInForbiddenRegion as e:
        print(f"certification failed: {e} (witness {_interval(e.witness)})",
              file=sys.stderr)
        return INVALID
    except JetmoveError as e:
        print(f"invalid job: {e}", file=sys.stderr)
        return INVALID
    except _PARSE_ERRORS as e:
        print(f"cannot read job: {e}", file=sys.stderr)
        return INVALID
    except AssertionError:
        print("internal verification failure", file=sys.stderr)
        return INTERNAL

    # independent re-check before anything is written
    for s, t in zip(list(sources) + list(pinned), list(targets) + list(pinned)):
        if apply_jet(word, s) != t:
            print("internal verification failure", file=sys.stderr)
            return INTERNAL
    with open(args.out, "w") as fh:
        json.dump(word_to_json(word), fh, indent=2)
        fh.write("\n")
    for g in word.generators:
        print(g)
    print(f"wrote {len(word)} generators to {args.out}")
    return OK


def cmd_verify(args) -> int:
    try:
        word = word_from_json(_load(args.word))
        from_jets = _job_config(_load(args.from_job))
        to_jets = _job_config(_load(args.to_job))
        if len(from_jets) != len(to_jets):
            raise JetmoveError("from and to configurations differ in length")
    except RootInForbiddenRegion as e:
        print(f"certification failed: {e} (witness {_interval(e.witness)})",
              file=sys.stderr)
        return INVALID
    except (JetmoveError, *_PARSE_ERRORS) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return INVALID
    for i, (s, t) in enumerate(zip(from_jets, to_jets)):
        got = apply_jet(word, s)
        if got != t:
            print(_first_mismatch(i, got, t))
            return NEGATIVE
    print(f"ok: {len(from_jets)} jets verified")
    return OK


def cmd_apply(args) -> int:
    try:
        word = word_from_json(_load(args.word))
        jet = jet_from_json(_load(args.jet))
        out = apply_jet(word, jet)
    except RootInForbiddenRegion as e:
        print(f"certification failed: {e} (witness {_interval(e.witness)})",
              file=sys.stderr)
        return INVALID
    except (JetmoveError, *_PARSE_ERRORS) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return INVALID
    json.dump(jet_to_json(out), sys.stdout, indent=2)
    print()
    return OK


def _describe(d) -> str:
    inv = descriptor_invariants(d)
    kind = "orientable" if inv.orientable else "nonorientable"
    sings = ", ".join(singularity_name(e) for e in inv.singularities) or "none"
    return (f"euler {inv.euler}, resolution {kind} genus {inv.genus}, "
            f"singularities {sings}")


def cmd_classify(args) -> int:
    try:
        d1 = descriptor_from_json(_load(args.first))
        d2 = descriptor_from_json(_load(args.second))
    except (JetmoveError, *_PARSE_ERRORS) as e:
        print(f"invalid descriptor: {e}", file=sys.stderr)
        return INVALID
    verdict = isomorphism_decide(d1, d2)
    print(verdict)
    print(f"  {args.first}: {_describe(d1)}")
    print(f"  {args.second}: {_describe(d2)}")
    if verdict == ISOMORPHIC:
        return OK
    if verdict == HYPOTHESIS_NOT_MET:
        return OUT_OF_SCOPE
    return NEGATIVE


def cmd_compose(args) -> int:
    try:
        w1 = word_from_json(_load(args.first))
        w2 = word_from_json(_load(args.second))
        w = word_concat(w1, w2)
    except RootInForbiddenRegion as e:
        print(f"certification failed: {e} (witness {_interval(e.witness)})",
              file=sys.stderr)
        return INVALID
    except (JetmoveError, *_PARSE_ERRORS) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return INVALID
    with open(args.out, "w") as fh:
        json.dump(word_to_json(w), fh, indent=2)
        fh.write("\n")
    print(f"wrote {len(w)} generators to {args.out}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jetmove",
        description="exact automorphism synthesis and surface classification")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a word for a job file")
    p.add_argument("--job", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a word against two configurations")
    p.add_argument("--word", required=True)
    p.add_argument("--from", dest="from_job", required=True)
    p.add_argument("--to", dest="to_job", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("apply", help="apply a word to a single jet")
    p.add_argument("--word", required=True)
    p.add_argument("--jet", required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("classify", help="decide isomorphism of two descriptors")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compose", help="concatenate two words")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compose)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
