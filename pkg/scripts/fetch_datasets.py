#!/usr/bin/env python3
"""Fetch and prepare the benchmark datasets into the repository data/ dir.

Sources
-------
pendigits      LIBSVM multiclass collection (native train/test split)
shuttle        UCI statlog shuttle (native 43500/14500 split; .Z compressed
               train archive, decompressed via `gzip -d`)
skin_nonskin   LIBSVM binary collection (single file; deterministically
               shuffled and split 220543/24507, seed below, 7 rows dropped
               to match the published counts)
page_blocks    UCI page-blocks (.Z compressed; converted to svmlight and
               split 4500/973)
waveform       generated locally from the classic three-class waveform
               process (4400/600); no download involved

Every prepared file is parsed back and its (rows, attributes, classes)
shape checked against the published description; the sha256 of each final
file is printed so runs can be compared across machines.

Usage:  python scripts/fetch_datasets.py [--data-dir data] [--only NAME]
        python scripts/fetch_datasets.py --verify   # check existing files
"""

import argparse
import hashlib
import shutil
import subprocess
import sys
import tempfile
import urllib.request
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from elmboost import Dataset, dump_svmlight, parse_svmlight, synthetic

LIBSVM = "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets"
UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

SPLIT_SEED = 20_150_421

# file name -> (rows, attributes, classes) from the published descriptions
EXPECTED = {
    "pendigits": (7494, 16, 10),
    "pendigits.t": (3498, 16, 10),
    "shuttle": (43500, 9, 7),
    "shuttle.t": (14500, 9, 7),
    "skin_nonskin": (220543, 3, 2),
    "skin_nonskin.t": (24507, 3, 2),
    "page_blocks": (4500, 10, 5),
    "page_blocks.t": (973, 10, 5),
    "waveform": (4400, 21, 3),
    "waveform.t": (600, 21, 3),
}


def download(url: str, dest: Path) -> Path:
    print(f"  downloading {url}")
    with urllib.request.urlopen(url) as response, open(dest, "wb") as out:
        shutil.copyfileobj(response, out)
    return dest


def decompress_z(path: Path) -> Path:
    # gzip understands the old unix compress (.Z) container
    subprocess.run(["gzip", "-df", str(path)], check=True)
    return path.with_suffix("")


def table_to_svmlight(rows: list[list[float]], label_last: bool) -> str:
    lines = []
    for row in rows:
        label, values = (row[-1], row[:-1]) if label_last else (row[0], row[1:])
        parts = [str(int(label))]
        parts.extend(f"{j + 1}:{v!r}" for j, v in enumerate(values) if v != 0.0)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def split_dataset(ds: Dataset, n_train: int, n_test: int) -> tuple[Dataset, Dataset]:
    order = np.random.default_rng(SPLIT_SEED).permutation(ds.n_samples)
    return ds.subset(order[:n_train]), ds.subset(order[n_train : n_train + n_test])


def fetch_pendigits(data_dir: Path, work: Path) -> None:
    for name, url_name in (("pendigits", "pendigits"), ("pendigits.t", "pendigits.t")):
        download(f"{LIBSVM}/multiclass/{url_name}", data_dir / name)


def fetch_shuttle(data_dir: Path, work: Path) -> None:
    train_z = download(f"{UCI}/statlog/shuttle/shuttle.trn.Z", work / "shuttle.trn.Z")
    train_raw = decompress_z(train_z)
    test_raw = download(f"{UCI}/statlog/shuttle/shuttle.tst", work / "shuttle.tst")
    for source, name in ((train_raw, "shuttle"), (test_raw, "shuttle.t")):
        rows = [
            [float(v) for v in line.split()]
            for line in source.read_text().splitlines()
            if line.strip()
        ]
        (data_dir / name).write_text(table_to_svmlight(rows, label_last=True))


def fetch_skin(data_dir: Path, work: Path) -> None:
    raw = download(f"{LIBSVM}/binary/skin_nonskin", work / "skin_nonskin")
    with open(raw, "rb") as handle:
        full = parse_svmlight(handle)
    train, test = split_dataset(full, 220_543, 24_507)
    (data_dir / "skin_nonskin").write_text(dump_svmlight(train))
    (data_dir / "skin_nonskin.t").write_text(dump_svmlight(test))


def fetch_page_blocks(data_dir: Path, work: Path) -> None:
    archive = download(f"{UCI}/page-blocks/page-blocks.data.Z", work / "page-blocks.data.Z")
    table = decompress_z(archive)
    rows = [
        [float(v) for v in line.split()]
        for line in table.read_text().splitlines()
        if line.strip()
    ]
    full = parse_svmlight(table_to_svmlight(rows, label_last=True))
    train, test = split_dataset(full, 4500, 973)
    (data_dir / "page_blocks").write_text(dump_svmlight(train))
    (data_dir / "page_blocks.t").write_text(dump_svmlight(test))


def fetch_waveform(data_dir: Path, work: Path) -> None:
    (data_dir / "waveform").write_text(dump_svmlight(synthetic.waveform(4400, seed=94301)))
    (data_dir / "waveform.t").write_text(dump_svmlight(synthetic.waveform(600, seed=94302)))


FETCHERS = {
    "pendigits": fetch_pendigits,
    "shuttle": fetch_shuttle,
    "skin_nonskin": fetch_skin,
    "page_blocks": fetch_page_blocks,
    "waveform": fetch_waveform,
}


def verify(data_dir: Path) -> bool:
    ok = True
    for name, (rows, attrs, classes) in EXPECTED.items():
        path = data_dir / name
        if not path.exists():
            print(f"  MISSING {name}")
            ok = False
            continue
        with open(path, "rb") as handle:
            ds = parse_svmlight(handle, expected_dims=attrs)
        shape = (ds.n_samples, ds.n_features, ds.n_classes)
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        status = "ok" if shape == (rows, attrs, classes) else f"SHAPE MISMATCH {shape}"
        if shape != (rows, attrs, classes):
            ok = False
        print(f"  {name}: {status}  sha256={digest[:16]}...")
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", default=Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--only", choices=sorted(FETCHERS), help="fetch a single dataset")
    parser.add_argument("--verify", action="store_true", help="only verify existing files")
    args = parser.parse_args()

    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)

    if not args.verify:
        targets = [args.only] if args.only else sorted(FETCHERS)
        with tempfile.TemporaryDirectory() as tmp:
            for name in targets:
                print(f"{name}:")
                try:
                    FETCHERS[name](data_dir, Path(tmp))
                except Exception as exc:  # keep going; verify reports the gaps
                    print(f"  FAILED: {exc}")

    print("verifying:")
    return 0 if verify(data_dir) else 1


if __name__ == "__main__":
    sys.exit(main())
