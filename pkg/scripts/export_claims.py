#!/usr/bin/env python3
"""Dump the built-in claim catalogue (and the built-in sequences) as a JSON
document of the same shape `rc verify --claims-file` consumes.

Run: python scripts/export_claims.py > claims.json
"""

import json
import sys

from rc.congruence import builtin_claims, claim_to_json
from rc.sequences import builtin_names, get_sequence, sequence_to_json


def main():
    doc = {
        "sequences": [sequence_to_json(get_sequence(name)) for name in builtin_names()],
        "claims": [claim_to_json(c) for c in builtin_claims()],
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
