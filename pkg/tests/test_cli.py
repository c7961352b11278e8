import json

import numpy as np
import pytest

from depthcue import io
from depthcue.cli import main
from depthcue.pipeline import run_bench
from depthcue.testcards import bimodal_card


@pytest.fixture(scope="module")
def card_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli_inputs")
    rgb, near = bimodal_card(128)
    img = root / "card.png"
    pfm = root / "card.pfm"
    io.save_image(rgb, str(img), 8)
    io.save_pfm(10.0 + 90.0 * near, str(pfm))
    return img, pfm


def test_run_smoke_with_disparity(card_files, tmp_path):
    img, pfm = card_files
    out = tmp_path / "out"
    code = main(
        [
            "--input", str(img),
            "--depth", str(pfm),
            "--depth-kind", "disparity",
            "--profile", "two-layer",
            "--out", str(out),
        ]
    )
    assert code == 0
    assert (out / "card_enhanced.png").exists()
    report = json.loads((out / "report.json").read_text())
    assert report["failed"] == 0
    entry = report["images"][0]
    assert entry["profile"] == "two-layer"
    for stage in ("load", "depth", "decompose", "retarget", "parallax"):
        assert stage in entry["timings_s"]


def test_resize_to_full_hd(card_files, tmp_path):
    img, pfm = card_files
    out = tmp_path / "out"
    code = main(
        [
            "--input", str(img),
            "--depth", str(pfm),
            "--resize", "1920x1080",
            "--out", str(out),
        ]
    )
    assert code == 0
    produced = io.load_image(str(out / "card_enhanced.png"))
    assert produced.shape[:2] == (1080, 1920)


def test_depth_prior_fallback(card_files, tmp_path):
    img, _ = card_files
    out = tmp_path / "out"
    code = main(
        [
            "--input", str(img),
            "--depth-prior", "vertical-gradient",
            "--out", str(out),
        ]
    )
    assert code == 0
    assert (out / "card_enhanced.png").exists()


def test_two_layer_flat_depth_degrades_to_continuous(tmp_path):
    rgb, _ = bimodal_card(96)
    img = tmp_path / "flat.png"
    pfm = tmp_path / "flat.pfm"
    io.save_image(rgb, str(img), 8)
    io.save_pfm(np.full((96, 96), 42.0), str(pfm))
    out = tmp_path / "out"
    code = main(
        ["--input", str(img), "--depth", str(pfm), "--profile", "two-layer", "--out", str(out)]
    )
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["images"][0]["profile"] == "continuous"


def test_export_layers_and_trajectory(card_files, tmp_path):
    img, pfm = card_files
    out = tmp_path / "out"
    code = main(
        [
            "--input", str(img),
            "--depth", str(pfm),
            "--profile", "two-layer",
            "--export-layers",
            "--trajectory", "sin:4",
            "--out", str(out),
        ]
    )
    assert code == 0
    manifest = json.loads((out / "card_layers" / "manifest.json").read_text())
    assert [l["nearness"] for l in manifest["layers"]] == sorted(
        l["nearness"] for l in manifest["layers"]
    )
    for i in range(4):
        assert (out / "card_frames" / f"frame_{i:04d}.png").exists()


def test_trajectory_from_pose_file(card_files, tmp_path):
    img, pfm = card_files
    poses = tmp_path / "poses.json"
    poses.write_text(json.dumps([[0.0, 0.0], [1.0, 0.0]]))
    out = tmp_path / "out"
    code = main(
        [
            "--input", str(img),
            "--depth", str(pfm),
            "--trajectory", f"file:{poses}",
            "--out", str(out),
        ]
    )
    assert code == 0
    assert (out / "card_frames" / "frame_0001.png").exists()


def test_config_file_with_flag_override(card_files, tmp_path):
    img, pfm = card_files
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "retarget.detail_gain": 2.5,
                "retarget.ablation": "1,1,0,0",
                "parallax.layer_count": 2,
                "out_dir": str(tmp_path / "from_config"),
            }
        )
    )
    out = tmp_path / "from_flag"
    code = main(
        ["--input", str(img), "--depth", str(pfm), "--config", str(cfg), "--out", str(out)]
    )
    assert code == 0
    assert (out / "card_enhanced.png").exists()  # flag out dir wins
    assert not (tmp_path / "from_config").exists()


def test_unknown_config_key_is_exit_2(card_files, tmp_path):
    img, _ = card_files
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"retarget.sharpness": 2.0}))
    assert main(["--input", str(img), "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2


def test_missing_input_is_exit_2(tmp_path):
    assert main(["--input", str(tmp_path / "nope.png"), "--out", str(tmp_path / "o")]) == 2


def test_bad_ablation_flag_is_exit_2(card_files, tmp_path):
    img, _ = card_files
    assert main(["--input", str(img), "--ablation", "1,1", "--out", str(tmp_path / "o")]) == 2


def test_corrupt_image_gives_exit_1_but_batch_continues(card_files, tmp_path):
    img, pfm = card_files
    broken = tmp_path / "broken.png"
    broken.write_bytes(b"\x89PNG\r\n\x1a\n garbage")
    out = tmp_path / "out"
    code = main(
        ["--input", str(img), "--input", str(broken), "--depth", str(pfm), "--out", str(out)]
    )
    assert code == 1
    report = json.loads((out / "report.json").read_text())
    assert report["failed"] == 1
    assert (out / "card_enhanced.png").exists()
    errors = [e for e in report["images"] if "error" in e]
    assert len(errors) == 1


def test_ablation_study_panel(card_files, tmp_path):
    img, pfm = card_files
    out = tmp_path / "out"
    code = main(
        [
            "--input", str(img),
            "--depth", str(pfm),
            "--profile", "two-layer",
            "--ablation-study",
            "--out", str(out),
        ]
    )
    assert code == 0
    report = json.loads((out / "card_ablation.json").read_text())
    assert len(report["configs"]) == 5
    assert report["configs"][0]["psnr_vs_input"] >= 60.0
    panel = io.load_image(report["panel"])
    assert panel.shape[1] == 5 * 128  # five tiles side by side


def test_single_run_ablation_toggles(card_files, tmp_path):
    img, pfm = card_files
    out_off = tmp_path / "off"
    out_on = tmp_path / "on"
    assert main(["--input", str(img), "--depth", str(pfm), "--out", str(out_on)]) == 0
    assert (
        main(
            [
                "--input", str(img),
                "--depth", str(pfm),
                "--ablation", "0,0,0,0",
                "--out", str(out_off),
            ]
        )
        == 0
    )
    a = io.load_image(str(out_on / "card_enhanced.png"))
    b = io.load_image(str(out_off / "card_enhanced.png"))
    assert np.max(np.abs(a - b)) > 1e-3  # toggles really disable the operators
    orig = io.load_image(str(img))
    assert np.max(np.abs(b - orig)) <= 2.0 / 255.0  # all-off reproduces the input


def test_determinism_across_runs_and_thread_counts(card_files, tmp_path):
    img, pfm = card_files
    blobs = []
    for name, threads in (("a", 1), ("b", 1), ("c", 4)):
        out = tmp_path / name
        code = main(
            [
                "--input", str(img),
                "--depth", str(pfm),
                "--threads", str(threads),
                "--out", str(out),
            ]
        )
        assert code == 0
        blobs.append((out / "card_enhanced.png").read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]


def test_bench_guided_filter_sanity():
    report = run_bench("guided-filter")
    sanity = report["sanity_64"]
    assert sanity["max_abs_diff"] <= 1e-6
    assert sanity["fast_s"] <= sanity["reference_s"]
    assert report["fullhd_radius16"]["median_s"] > 0


def test_bench_pipeline_stage_accounting():
    report = run_bench("pipeline")
    run = report["median_run"]
    stages = [run[s] for s in ("load", "depth", "decompose", "retarget", "parallax")]
    assert all(s >= 0 for s in stages)
    assert sum(stages) <= run["total"] * 1.05
