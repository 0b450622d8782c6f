"""Run the verification campaign from a JSON config and write the report.

    python scripts/run_campaign.py                      # defaults: dims 2..6, 100 trials
    python scripts/run_campaign.py --config cfg.json --out report.json

Config keys are the fields of ``CampaignConfig``.
"""

import argparse
import json
import sys
import time

from ordercone.campaign import CampaignConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config", help="JSON file with CampaignConfig fields")
    ap.add_argument("--out", default="campaign_report.json")
    args = ap.parse_args()
    fields = {}
    if args.config:
        with open(args.config) as fh:
            fields = json.load(fh)
    for key in ("dims", "kinds"):
        if key in fields:
            fields[key] = tuple(fields[key])
    cfg = CampaignConfig(**fields)
    t0 = time.perf_counter()
    report = cfg.run()
    with open(args.out, "w") as fh:
        json.dump(report.to_json(), fh, indent=1, sort_keys=True)
    print(report.summary())
    print(f"wall time {time.perf_counter() - t0:.1f}s, report in {args.out}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
