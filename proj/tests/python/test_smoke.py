"""End-to-end sanity checks for the native module via its python surface."""

import math

import numpy as np
import pytest

import cadet


def test_density_anchors():
    assert cadet.density_value(0) == pytest.approx(0.0, abs=1e-12)
    assert cadet.density_value(3) == pytest.approx(0.5, abs=1e-12)
    assert cadet.density_value(15) == pytest.approx(1.0, abs=1e-12)
    assert cadet.density_value(10**6) == pytest.approx(1.0, abs=1e-12)
    assert cadet.density_value(7, log_base_count=64) == pytest.approx(
        math.log(8) / math.log(64), abs=1e-12
    )


def test_small_helpers():
    assert cadet.sample_name(7) == "000007"
    assert cadet.wrap_to_pi(math.pi) == pytest.approx(-math.pi)
    assert cadet.wrap_to_pi(0.25) == pytest.approx(0.25)
    alpha = cadet.compute_alpha([0.0, 1.5, 10.0], 1.0)
    assert -math.pi <= alpha <= math.pi


def test_rasterize_default_preset():
    cfg = cadet.bev_preset("default")
    assert (cfg.rows, cfg.cols, cfg.layer_count) == (700, 800, 6)

    rng = np.random.default_rng(3)
    pts = rng.uniform([0.0, -40.0, -0.2], [70.0, 40.0, 2.3], size=(500, 3))
    out = cadet.rasterize(pts, cfg)
    assert out["data"].shape == (6, 700, 800)
    assert out["data"].dtype == np.float32
    assert len(out["meta"]) == 6
    assert out["meta"][0] == {"group": "slice", "feature": "max_height", "slice_index": 0}
    assert out["meta"][5] == {"group": "cloud", "feature": "density", "slice_index": -1}
    int(out["config_hash"], 16)  # 16 hex digits
    assert len(out["config_hash"]) == 16
    assert out["data"].max() > 0.0

    empty = cadet.rasterize(np.zeros((0, 3)), cfg)
    assert not empty["data"].any()
    assert empty["config_hash"] == out["config_hash"]


def test_bev_config_text_round_trip():
    cfg = cadet.bev_preset("max_min_density")
    back = cadet.parse_bev_config(cadet.write_bev_config(cfg))
    assert back.layer_count == cfg.layer_count == 3
    assert (back.rows, back.cols) == (cfg.rows, cfg.cols)
    back.validate()


def test_label_round_trip():
    label = cadet.ObjectLabel()
    label.class_name = "Car"
    label.truncation = 0.12
    label.occlusion_flag = 0
    label.alpha = -1.25
    label.left, label.top, label.right, label.bottom = 100.0, 80.0, 220.0, 170.0
    label.height, label.width, label.length = 1.52, 1.68, 4.21
    label.location = [2.0, 1.4, 20.0]
    label.rotation_y = 0.3
    label.validate()

    (back,) = cadet.parse_label_file(cadet.write_label_file([label]))
    assert back.class_name == "Car"
    assert back.rotation_y == pytest.approx(0.3, abs=0.005)
    assert np.asarray(back.location) == pytest.approx([2.0, 1.4, 20.0], abs=0.005)


def test_calib_round_trip():
    cam = cadet.CameraModel(700.0, 700.0, 621.0, 187.5, 1242, 375)
    calib = cadet.CalibrationSet.for_camera(cam)
    calib.validate()
    back = cadet.parse_calib_file(cadet.write_calib_file(calib))
    assert np.allclose(np.asarray(back.p2), np.asarray(calib.p2), rtol=1e-10, atol=1e-10)
    assert np.allclose(
        np.asarray(back.tr_velo_to_cam), np.asarray(calib.tr_velo_to_cam),
        rtol=1e-10, atol=1e-10,
    )


def test_plane_round_trip():
    plane = cadet.GroundPlane()
    plane.normal = [0.0, -1.0, 0.0]
    plane.d = 1.7
    plane.validate()
    back = cadet.parse_plane_file(cadet.write_plane_file(plane))
    assert back.camera_height() == pytest.approx(1.7, abs=1e-10)
    assert np.asarray(back.normal) == pytest.approx([0.0, -1.0, 0.0], abs=1e-10)


def test_velodyne_bits():
    rng = np.random.default_rng(9)
    pts = rng.uniform(-50, 50, size=(64, 3)).astype(np.float32).astype(np.float64)
    intensity = rng.uniform(0, 1, size=64).astype(np.float32)
    blob = cadet.write_velodyne_bin(pts, intensity)
    assert len(blob) == 64 * 16
    back_pts, back_intensity = cadet.read_velodyne_bin(blob)
    assert (back_pts == pts).all()
    assert (back_intensity == intensity).all()
    assert cadet.write_velodyne_bin(back_pts, back_intensity) == blob


def test_occlusion_votes():
    depth = np.full((100, 100), 20.0, dtype=np.float32)
    depth[:, :50] = 5.0
    cam = cadet.CameraModel(100.0, 100.0, 50.0, 50.0, 100, 100)

    assert cadet.vertex_occluded(depth, 20, 20, 16.0)
    assert not cadet.vertex_occluded(depth, 80, 20, 16.0)

    def at_pixel(u, v, d=16.0):
        return [(u - 50.0) * d / 100.0, (v - 50.0) * d / 100.0, d]

    corners = np.array(
        [at_pixel(u, v) for u, v in [(20.5, 20.5), (20.5, 70.5), (30.5, 45.5),
                                     (40.5, 60.5), (60.5, 25.5), (70.5, 45.5),
                                     (80.5, 65.5), (85.5, 30.5)]]
    )
    verdict = cadet.object_occluded(depth, corners, cam)
    assert verdict["occluded"] is True
    assert verdict["occluded_count"] == 4
    assert verdict["vertex_occluded"][:4] == [True] * 4


def test_generate_validate_stats(tmp_path):
    out = tmp_path / "ds"
    report = cadet.generate_dataset(str(out), samples=2, seed=1, reset_interval=1)
    assert report["samples"] == 2
    assert report["labeled_objects"] >= 0
    assert set(report["class_counts"]) <= {"Car", "Pedestrian"}
    assert report["oracle_comparisons"] >= report["oracle_disagreements"]

    assert cadet.validate_dataset(str(out)) == []
    assert (out / "label_2" / "000000.txt").exists()
    assert (out / "velodyne" / "000001.bin").exists()

    csv = cadet.dataset_stats_csv(str(out))
    assert csv.startswith("#")
    assert "samples,," in csv


def test_errors_surface_as_cadet_error(tmp_path):
    with pytest.raises(cadet.CadetError):
        cadet.parse_label_file("Car 1 2\n")
    with pytest.raises(cadet.CadetError):
        cadet.bev_preset("no_such_preset")
    assert cadet.validate_dataset(str(tmp_path / "missing")) != []
