#!/usr/bin/env python3
"""Regenerate the worked-proof fixtures under tests/fixtures/.

Each fixture is a step-by-step interchange proof of one of the three
degree-9 commutativity identities, stated as the sequence of intermediate
monomials; the redex for each step is recovered by matching the printed
result against every single application available at that point.
"""

from __future__ import annotations

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from interchange.rewrite import apply_redex, find_redexes
from interchange.terms import parse_monomial
from interchange.witness import Proof, ProofStep, proof_to_json, verify_proof

# component id -> (start monomial, intermediate results ending in the
# permuted start monomial)
PROOF_SEQUENCES = {
    3981: (
        "(a∘b∘c)•(d∘(e•f)∘(g•h)∘i)",
        [
            "((a∘b)•(d∘(e•f)∘(g•h)))∘(c•i)",
            "(a•(d∘(e•f)))∘(b•g•h)∘(c•i)",
            "((a∘(b•g))•(d∘(e•f)∘h))∘(c•i)",
            "(a∘(b•g)∘c)•(d∘(e•f)∘h∘i)",
            "((a∘(b•g))•(d∘(e•f)))∘(c•(h∘i))",
            "(a•d)∘((b•g•e•f)∘(c•(h∘i)))",
            "((a∘(b•g•e))•(d∘f))∘(c•(h∘i))",
            "(a∘(b•g•e)∘c)•(d∘f∘h∘i)",
            "((a∘(b•g•e))•(d∘f∘h))∘(c•i)",
            "(a•(d∘f))∘(b•g•e•h)∘(c•i)",
            "((a∘(b•g))•(d∘f∘(e•h)))∘(c•i)",
            "(a∘(b•g)∘c)•(d∘f∘(e•h)∘i)",
            "((a∘(b•g))•(d∘f))∘(c•((e•h)∘i))",
            "(a•d)∘(b•g•f)∘(c•((e•h)∘i))",
            "(a•d)∘((b∘c)•((g•f)∘(e•h)∘i))",
            "(a∘b∘c)•(d∘(g•f)∘(e•h)∘i)",
        ],
    ),
    3989: (
        "(a•b)∘(c•d•e•f)∘(g•h•i)",
        [
            "((a∘(c•d))•(b∘(e•f)))∘(g•h•i)",
            "(a∘(c•d)∘g)•(b∘(e•f)∘(h•i))",
            "(a∘(c•d)∘g)•(b∘((e∘h)•(f∘i)))",
            "((a∘(c•d))•b)∘(g•(e∘h)•(f∘i))",
            "(a∘(c•d)∘(g•(e∘h)))•(b∘f∘i)",
            "((a∘(c•d))•(b∘f))∘(g•(e∘h)•i)",
            "(a•b)∘(c•d•f)∘(g•(e∘h)•i)",
            "(a•b)∘((c∘g)•((d•f)∘((e∘h)•i)))",
            "(a∘c∘g)•(b∘(d•f)∘((e∘h)•i))",
            "(a•(b∘(d•f)))∘((c∘g)•(e∘h)•i)",
            "(a∘((c∘g)•(e∘h)))•(b∘(d•f)∘i)",
            "(a∘(c•e)∘(g•h))•(b∘(d•f)∘i)",
            "((a∘(c•e))•(b∘(d•f)))∘(g•h•i)",
            "(a•b)∘(c•e•d•f)∘(g•h•i)",
        ],
    ),
    3994: (
        "(a•b)∘(c•((d•e)∘(f•g)∘(h•i)))",
        [
            "(a•b)∘(c•((d•e)∘((f∘h)•(g∘i))))",
            "(a•b)∘(c•(d∘f∘h)•(e∘g∘i))",
            "(a∘c)•(b∘((d∘f∘h)•(e∘g∘i)))",
            "(a∘c)•(b∘((d∘f)•(e∘g))∘(h•i))",
            "(a•(b∘((d∘f)•(e∘g))))∘(c•h•i)",
            "(a∘(c•h))•(b∘((d∘f)•(e∘g))∘i)",
            "(a∘(c•h))•(b∘(d•e)∘(f•g)∘i)",
            "(a•(b∘(d•e)))∘(c•h•((f•g)∘i))",
            "(a∘c)•(b∘(d•e)∘(h•((f•g)∘i)))",
            "(a•b)∘(c•((d•e)∘(h•((f•g)∘i))))",
            "(a•b)∘(c•(d∘h)•(e∘(f•g)∘i))",
            "(a∘(c•(d∘h)))•(b∘e∘(f•g)∘i)",
            "(a•(b∘e∘(f•g)))∘(c•(d∘h)•i)",
            "(a∘c)•(b∘e∘(f•g)∘((d∘h)•i))",
            "(a∘c)•(b∘e∘((f∘d∘h)•(g∘i)))",
            "(a•(b∘e))∘(c•(f∘d∘h)•(g∘i))",
            "(a∘(c•(f∘d∘h)))•(b∘e∘g∘i)",
            "(a•b)∘(c•(f∘d∘h)•(e∘g∘i))",
            "(a•b)∘(c•((f•e)∘((d∘h)•(g∘i))))",
            "(a•b)∘(c•((f•e)∘(d•g)∘(h•i)))",
        ],
    ),
}


def build_proof(start_text: str, result_texts: "list[str]") -> Proof:
    current = parse_monomial(start_text, 9)
    steps = []
    for text in result_texts:
        target = parse_monomial(text, 9)
        matches = [
            redex
            for redex in find_redexes(current.shape)
            if apply_redex(current, redex) == target
        ]
        if not matches:
            raise SystemExit(f"no single application turns\n  {text}\ninto the next step")
        steps.append(ProofStep(matches[0], target))
        current = target
    proof = Proof(parse_monomial(start_text, 9), tuple(steps))
    outcome = verify_proof(proof)
    if not outcome.valid:
        raise SystemExit(f"generated proof does not replay: {outcome}")
    return proof


def main() -> None:
    fixture_dir = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")
    os.makedirs(fixture_dir, exist_ok=True)
    for component_id, (start, results) in sorted(PROOF_SEQUENCES.items()):
        proof = build_proof(start, results)
        path = os.path.join(fixture_dir, f"proof_component_{component_id}.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(proof_to_json(proof), handle, ensure_ascii=False, indent=1)
            handle.write("\n")
        print(f"wrote {path} ({len(proof)} steps)")


if __name__ == "__main__":
    main()
