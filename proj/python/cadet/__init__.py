"""Synthetic KITTI-style dataset toolkit (native extension wrapper)."""

from ._cadet import (
    BevConfig,
    CadetError,
    CalibrationSet,
    CameraModel,
    GroundPlane,
    ObjectLabel,
    bev_preset,
    compute_alpha,
    dataset_stats_csv,
    density_value,
    generate_dataset,
    object_occluded,
    parse_bev_config,
    parse_calib_file,
    parse_label_file,
    parse_plane_file,
    rasterize,
    read_velodyne_bin,
    sample_name,
    validate_dataset,
    vertex_occluded,
    wrap_to_pi,
    write_bev_config,
    write_calib_file,
    write_label_file,
    write_plane_file,
    write_velodyne_bin,
)

__version__ = "0.1.0"

__all__ = [
    "BevConfig",
    "CadetError",
    "CalibrationSet",
    "CameraModel",
    "GroundPlane",
    "ObjectLabel",
    "bev_preset",
    "compute_alpha",
    "dataset_stats_csv",
    "density_value",
    "generate_dataset",
    "object_occluded",
    "parse_bev_config",
    "parse_calib_file",
    "parse_label_file",
    "parse_plane_file",
    "rasterize",
    "read_velodyne_bin",
    "sample_name",
    "validate_dataset",
    "vertex_occluded",
    "wrap_to_pi",
    "write_bev_config",
    "write_calib_file",
    "write_label_file",
    "write_plane_file",
    "write_velodyne_bin",
]
