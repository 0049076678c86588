#!/usr/bin/env python3
"""Validate config files and lorentz_verify reports against the shipped schemas.

usage: validate_schema.py SCHEMA_DIR (--config FILE | --report FILE)...
"""
import json
import sys
from pathlib import Path

import jsonschema
from referencing import Registry, Resource


def main(argv):
    if len(argv) < 4 or len(argv) % 2:
        print(__doc__, file=sys.stderr)
        return 2
    schema_dir = Path(argv[1])
    config_schema = json.loads((schema_dir / "config.schema.json").read_text())
    report_schema = json.loads((schema_dir / "report.schema.json").read_text())
    registry = Registry().with_resources(
        [(s["$id"], Resource.from_contents(s)) for s in (config_schema, report_schema)]
        + [("config.schema.json", Resource.from_contents(config_schema))]
    )
    failures = 0
    for kind, path in zip(argv[2::2], argv[3::2]):
        schema = {"--config": config_schema, "--report": report_schema}.get(kind)
        if schema is None:
            print(f"unknown flag {kind}", file=sys.stderr)
            return 2
        validator = jsonschema.Draft202012Validator(
            schema, registry=registry, format_checker=jsonschema.FormatChecker()
        )
        doc = json.loads(Path(path).read_text())
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)
        print(f"{path}: {'ok' if not errors else 'INVALID'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
