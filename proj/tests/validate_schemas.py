"""Validates CLI JSON output and the shipped run configs against schemas/."""

import json
import subprocess
import sys
from pathlib import Path

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def main() -> int:
    exe, root = sys.argv[1], Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in (root / "schemas").glob("*.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )

    def validator(name):
        Draft202012Validator.check_schema(schemas[name])
        return Draft202012Validator(schemas[name], registry=registry)

    unit = ["--p", "2", "--alpha", "1", "--R", "1", "--sigma-min", "1", "--sigma-max", "1"]
    cases = [
        ("bound_n.schema.json", ["bound-n", "--model", m, "--r", "1", "--eps", "0.05", "--b", "1", *unit])
        for m in ["main", "main-tau", "bounded", "mds-subgaussian", "mds-bounded", "fixed-mds"]
    ]
    cases.append(("bound_n.schema.json",
                  ["bound-n", "--r", "0.5", "--eps", "0.01", "--beta-as-printed", *unit]))
    cases.append(("bound_eps.schema.json", ["bound-eps", "--r", "1", "--n", "256", *unit]))
    cases.append(("bound_eps.schema.json", ["bound-eps", "--r", "1", "--n", "5", *unit]))

    failures = 0
    for schema, args in cases:
        out = subprocess.run([exe, *args], capture_output=True, text=True, check=True).stdout
        errors = list(validator(schema).iter_errors(json.loads(out)))
        status = "ok" if not errors else "INVALID: " + "; ".join(e.message for e in errors)
        print(f"{schema} {' '.join(args[:3])}: {status}")
        failures += bool(errors)

    config_validator = validator("run_config.schema.json")
    for path in sorted((root / "configs").glob("*.json")):
        errors = list(config_validator.iter_errors(json.loads(path.read_text())))
        status = "ok" if not errors else "INVALID: " + "; ".join(e.message for e in errors)
        print(f"run_config {path.name}: {status}")
        failures += bool(errors)

    bad = json.loads((root / "configs" / "fig2_uniform.json").read_text())
    bad["unexpected"] = 1
    if config_validator.is_valid(bad):
        print("run_config schema accepted an unknown key")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
