# Copyright 2026 The polopt Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuild data/nsw_dw.csv from the causaldata 0.1.5 source distribution.

The NSW experimental sample (Dehejia-Wahba subset, 445 units) ships as
nsw_mixtape.dta inside the sdist. Every download is checked against a pinned
SHA-256 before use. Earnings are converted to thousands of dollars.

    python3 scripts/fetch_nsw.py [--sdist causaldata-0.1.5.tar.gz] [--out data/nsw_dw.csv]
"""

import argparse
import hashlib
import io
import subprocess
import sys
import tarfile
import tempfile
from pathlib import Path

import pandas as pd

SDIST_SHA256 = "5604fb84000c6a8ae3e93630b3624e9f2af4f8700e4465ec3586998b3522fd1c"
DTA_SHA256 = "e4a64e4436c2c178f47d6c82a371d20f1596b82b44862ce24bf13c71ac797339"
CSV_SHA256 = "385c70b338ebd96f80098735b646ca610df801af4e97bdd61338525163de3a96"
DTA_MEMBER = "causaldata-0.1.5/causaldata/nsw_mixtape/nsw_mixtape.dta"

RENAME = {"educ": "education", "hisp": "hispanic", "marr": "married"}
COLUMNS = ["id", "treat", "age", "education", "black", "hispanic", "married",
           "nodegree", "re74", "re75", "re78"]
EARNINGS = ["re74", "re75", "re78"]


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def check(label: str, data: bytes, want: str) -> None:
    got = sha256(data)
    if got != want:
        sys.exit(f"{label}: sha256 {got} does not match pinned {want}")


def download_sdist(dest: Path) -> Path:
    subprocess.run(
        [sys.executable, "-m", "pip", "download", "causaldata==0.1.5",
         "--no-deps", "--no-binary", ":all:", "--dest", str(dest)],
        check=True)
    return next(dest.glob("causaldata-0.1.5*.tar.gz"))


def to_csv(dta: bytes) -> bytes:
    df = pd.read_stata(io.BytesIO(dta)).rename(columns=RENAME)
    df.insert(0, "id", range(1, len(df) + 1))
    lines = [",".join(COLUMNS)]
    for row in df.itertuples(index=False):
        cells = []
        for col in COLUMNS:
            v = getattr(row, col)
            if col in EARNINGS:
                cells.append(f"{round(float(v), 3) / 1000:.6f}")
            else:
                cells.append(str(int(v)))
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sdist", type=Path, help="already downloaded sdist")
    ap.add_argument("--out", type=Path, default=Path("data/nsw_dw.csv"))
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        sdist = args.sdist or download_sdist(Path(tmp))
        blob = sdist.read_bytes()
        check(sdist.name, blob, SDIST_SHA256)
        with tarfile.open(fileobj=io.BytesIO(blob)) as tar:
            dta = tar.extractfile(DTA_MEMBER).read()
    check("nsw_mixtape.dta", dta, DTA_SHA256)

    csv = to_csv(dta)
    check(str(args.out), csv, CSV_SHA256)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(csv)
    rows = csv.count(b"\n") - 1
    print(f"wrote {args.out} ({rows} rows)")


if __name__ == "__main__":
    main()
