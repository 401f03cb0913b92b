//! On-disk dataset format and synthetic dataset generation.
//!
//! A dataset is a directory holding `manifest.json` plus one raw data file
//! per partition. The manifest carries the partition metadata the planners
//! need (id, count, bounds); data files are headerless little-endian
//! row-major coordinate arrays, 8 bytes per scalar, so a file is valid iff
//! its byte length equals `count * dims * 8`. Bounds must contain their
//! points but need not be tight, and an empty partition is a zero-length
//! file whose bounds describe the region it was drawn from.

use std::fs;
use std::path::{Component, Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Aabb;
use crate::ordering::PartitionMeta;
use crate::scalar::{Scalar, ScalarKind};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Manifest entry for one partition. `lo`/`hi` are the declared bounds,
/// `path` is relative to the dataset directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "S: serde::de::DeserializeOwned"))]
pub struct ManifestPartition<S: Scalar> {
    pub id: String,
    pub path: String,
    pub count: u64,
    pub lo: Vec<S>,
    pub hi: Vec<S>,
}

impl<S: Scalar> ManifestPartition<S> {
    pub fn bounds(&self) -> Aabb<S> {
        Aabb::new(self.lo.clone(), self.hi.clone())
    }

    pub fn meta(&self) -> PartitionMeta<S> {
        PartitionMeta { id: self.id.clone(), bounds: self.bounds(), count: self.count }
    }
}

/// Dataset manifest: name, dimensionality, scalar kind, and the partition
/// table. Serialized as JSON with this exact field order; writing the same
/// manifest twice yields identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "S: serde::de::DeserializeOwned"))]
pub struct Manifest<S: Scalar> {
    pub name: String,
    pub dims: usize,
    pub scalar_kind: ScalarKind,
    pub partitions: Vec<ManifestPartition<S>>,
}

impl<S: Scalar> Manifest<S> {
    /// Structural checks that do not touch data files: positive dims, the
    /// scalar kind matching `S`, unique ids, well-formed in-range bounds of
    /// the right length, and safe relative paths.
    pub fn validate(&self) -> Result<()> {
        if self.dims == 0 {
            return Err(Error::InvalidManifest("dims must be at least 1".into()));
        }
        if self.scalar_kind != S::KIND {
            return Err(Error::InvalidManifest(format!(
                "scalar kind {} does not match requested {}",
                self.scalar_kind,
                S::KIND
            )));
        }
        let mut ids: Vec<&str> = self.partitions.iter().map(|p| p.id.as_str()).collect();
        ids.sort_unstable();
        for pair in ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicatePartitionId(pair[0].to_string()));
            }
        }
        for p in &self.partitions {
            if p.lo.len() != self.dims || p.hi.len() != self.dims {
                return Err(Error::InvalidManifest(format!(
                    "partition `{}` bounds have wrong dimension",
                    p.id
                )));
            }
            for d in 0..self.dims {
                if !p.lo[d].in_range() || !p.hi[d].in_range() {
                    return Err(Error::InvalidManifest(format!(
                        "partition `{}` bounds out of range in dim {d}",
                        p.id
                    )));
                }
                if p.hi[d] < p.lo[d] {
                    return Err(Error::InvalidManifest(format!(
                        "partition `{}` has lo > hi in dim {d}",
                        p.id
                    )));
                }
            }
            let rel = Path::new(&p.path);
            let safe = !p.path.is_empty()
                && rel.is_relative()
                && rel.components().all(|c| matches!(c, Component::Normal(_)));
            if !safe {
                return Err(Error::InvalidManifest(format!(
                    "partition `{}` path `{}` is not a plain relative path",
                    p.id, p.path
                )));
            }
        }
        Ok(())
    }

    pub fn partition(&self, id: &str) -> Result<&ManifestPartition<S>> {
        self.partitions
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| Error::UnknownPartition(id.to_string()))
    }

    /// Planner view of every partition, in manifest order.
    pub fn partition_metas(&self) -> Vec<PartitionMeta<S>> {
        self.partitions.iter().map(|p| p.meta()).collect()
    }

    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("manifest serializes");
        bytes.push(b'\n');
        bytes
    }
}

/// Row-major coordinate block: `len()` points of `dims` coordinates each.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<S> {
    dims: usize,
    coords: Vec<S>,
}

impl<S: Scalar> PointSet<S> {
    /// Panics unless `coords.len()` is a multiple of `dims`.
    pub fn new(dims: usize, coords: Vec<S>) -> Self {
        assert!(dims > 0, "points must have at least one dimension");
        assert_eq!(coords.len() % dims, 0, "coordinate array not divisible by dims");
        PointSet { dims, coords }
    }

    pub fn empty(dims: usize) -> Self {
        Self::new(dims, Vec::new())
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, row: usize) -> &[S] {
        &self.coords[row * self.dims..(row + 1) * self.dims]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[S]> {
        self.coords.chunks_exact(self.dims)
    }

    pub fn push(&mut self, point: &[S]) {
        assert_eq!(point.len(), self.dims, "point dimension mismatch");
        self.coords.extend_from_slice(point);
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }
}

/// Count and tight bounds of a point set; empty sets have no bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionStats<S: Scalar> {
    pub count: u64,
    pub bounds: Option<Aabb<S>>,
}

/// Tight per-dimension min/max over the points, single pass.
pub fn compute_stats<S: Scalar>(points: &PointSet<S>) -> PartitionStats<S> {
    if points.is_empty() {
        return PartitionStats { count: 0, bounds: None };
    }
    let dims = points.dims();
    let mut lo = points.point(0).to_vec();
    let mut hi = lo.clone();
    for p in points.iter().skip(1) {
        for d in 0..dims {
            if p[d] < lo[d] {
                lo[d] = p[d];
            }
            if hi[d] < p[d] {
                hi[d] = p[d];
            }
        }
    }
    PartitionStats { count: points.len() as u64, bounds: Some(Aabb::new(lo, hi)) }
}

/// An opened dataset of a known scalar kind.
#[derive(Debug, Clone)]
pub struct DatasetHandle<S: Scalar> {
    pub root: PathBuf,
    pub manifest: Manifest<S>,
}

/// An opened dataset whose scalar kind was discovered from the manifest.
pub enum Dataset {
    F64(DatasetHandle<f64>),
    I64(DatasetHandle<i64>),
}

impl Dataset {
    pub fn scalar_kind(&self) -> ScalarKind {
        match self {
            Dataset::F64(_) => ScalarKind::Float64,
            Dataset::I64(_) => ScalarKind::Int64,
        }
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

/// Open a dataset directory, dispatching on the manifest's scalar kind.
pub fn open_dataset(dir: &Path) -> Result<Dataset> {
    #[derive(Deserialize)]
    struct Probe {
        scalar_kind: ScalarKind,
    }
    let path = dir.join(MANIFEST_FILE);
    let bytes = fs::read(&path).map_err(|e| io_err(&path, e))?;
    let probe: Probe = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Json { path: path.clone(), source: e })?;
    match probe.scalar_kind {
        ScalarKind::Float64 => Ok(Dataset::F64(DatasetHandle::open(dir)?)),
        ScalarKind::Int64 => Ok(Dataset::I64(DatasetHandle::open(dir)?)),
    }
}

impl<S: Scalar> DatasetHandle<S> {
    /// Open a dataset directory whose manifest must declare scalar kind `S`.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        let bytes = fs::read(&path).map_err(|e| io_err(&path, e))?;
        let manifest: Manifest<S> =
            serde_json::from_slice(&bytes).map_err(|e| Error::Json { path: path.clone(), source: e })?;
        manifest.validate()?;
        Ok(DatasetHandle { root: dir.to_path_buf(), manifest })
    }

    /// Read one partition's points. The file length must match the manifest
    /// count exactly, and every coordinate must be storable (finite floats,
    /// integers in range). With `validate`, every point must also lie inside
    /// the declared bounds; violations name the partition and row.
    pub fn read_partition(&self, id: &str, validate: bool) -> Result<PointSet<S>> {
        let part = self.manifest.partition(id)?;
        let dims = self.manifest.dims;
        let path = self.root.join(&part.path);
        let bytes = fs::read(&path).map_err(|e| io_err(&path, e))?;
        let expected = part.count as usize * dims * 8;
        if bytes.len() != expected {
            return Err(Error::PartitionData {
                id: id.to_string(),
                reason: format!(
                    "file length {} does not match count {} x dims {dims} x 8 = {expected}",
                    bytes.len(),
                    part.count
                ),
            });
        }
        let mut coords = Vec::with_capacity(part.count as usize * dims);
        for (i, chunk) in bytes.chunks_exact(8).enumerate() {
            let v = S::from_le_bytes(chunk.try_into().expect("8-byte chunk"));
            if !v.in_range() {
                return Err(Error::PartitionData {
                    id: id.to_string(),
                    reason: format!("row {}: coordinate {v} out of range", i / dims),
                });
            }
            coords.push(v);
        }
        let points = PointSet::new(dims, coords);
        if validate {
            let bounds = part.bounds();
            for (row, p) in points.iter().enumerate() {
                if !bounds.contains(p) {
                    return Err(Error::PartitionData {
                        id: id.to_string(),
                        reason: format!("row {row}: point outside declared bounds"),
                    });
                }
            }
        }
        Ok(points)
    }

    /// Full consistency sweep used by `stats --verify`: every check failure
    /// across the dataset, not just the first.
    pub fn verify(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if let Err(e) = self.manifest.validate() {
            problems.push(e.to_string());
        }
        for part in &self.manifest.partitions {
            match self.read_partition(&part.id, true) {
                Ok(points) => {
                    if points.len() as u64 != part.count {
                        problems.push(format!(
                            "partition `{}`: read {} points, manifest says {}",
                            part.id,
                            points.len(),
                            part.count
                        ));
                    }
                }
                Err(e) => problems.push(e.to_string()),
            }
        }
        problems
    }
}

/// Write a dataset directory: every partition file, then the manifest.
///
/// `data` pairs with `manifest.partitions` by index. Counts must match,
/// every point must be in range and inside its declared bounds, and the
/// manifest itself must validate.
pub fn write_dataset<S: Scalar>(dir: &Path, manifest: &Manifest<S>, data: &[PointSet<S>]) -> Result<()> {
    manifest.validate()?;
    if manifest.partitions.len() != data.len() {
        return Err(Error::InvalidManifest(format!(
            "{} partitions in manifest but {} data blocks",
            manifest.partitions.len(),
            data.len()
        )));
    }
    for (part, points) in manifest.partitions.iter().zip(data) {
        if points.dims() != manifest.dims {
            return Err(Error::DimensionMismatch { expected: manifest.dims, actual: points.dims() });
        }
        if points.len() as u64 != part.count {
            return Err(Error::PartitionData {
                id: part.id.clone(),
                reason: format!("count {} does not match {} data points", part.count, points.len()),
            });
        }
        let bounds = part.bounds();
        for (row, p) in points.iter().enumerate() {
            if !p.iter().all(|v| v.in_range()) {
                return Err(Error::PartitionData {
                    id: part.id.clone(),
                    reason: format!("row {row}: coordinate out of range"),
                });
            }
            if !bounds.contains(p) {
                return Err(Error::PartitionData {
                    id: part.id.clone(),
                    reason: format!("row {row}: point outside declared bounds"),
                });
            }
        }
    }
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for (part, points) in manifest.partitions.iter().zip(data) {
        let mut bytes = Vec::with_capacity(points.coords().len() * 8);
        for v in points.coords() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        let path = dir.join(&part.path);
        fs::write(&path, bytes).map_err(|e| io_err(&path, e))?;
    }
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, manifest.to_json_bytes()).map_err(|e| io_err(&path, e))?;
    Ok(())
}

/// Spatial arrangement of generated partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Layout {
    /// Disjoint axis-aligned grid cells tiling a cube, one per partition;
    /// non-adjacent cells are separated by at least a full cell.
    UniformGridCells,
    /// Gaussian point clouds around random centers, tight bounds; clusters
    /// may overlap.
    GaussianClusters,
    /// Uniform points inside random, heavily overlapping boxes; the declared
    /// bounds are the sampling box, generally not minimal.
    OverlappingRandomBoxes,
    /// Built-in four-partition occlusion scenario (2-d, float64): an origin
    /// box `O`, a candidate behind it, one in front, and one farther out in
    /// front, one point at each box center.
    #[value(name = "fig3")]
    Fig3,
}

impl std::fmt::Display for Layout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Layout::UniformGridCells => "uniform-grid-cells",
            Layout::GaussianClusters => "gaussian-clusters",
            Layout::OverlappingRandomBoxes => "overlapping-random-boxes",
            Layout::Fig3 => "fig3",
        })
    }
}

/// Parameters of a synthetic dataset. The same spec always generates the
/// same dataset, byte for byte.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    /// Dataset name; derived from the other fields when absent. Keep it
    /// path-independent so regeneration elsewhere is identical.
    pub name: Option<String>,
    pub dims: usize,
    pub partitions: usize,
    /// Inclusive range of points per partition, sampled independently.
    pub points: (u64, u64),
    pub layout: Layout,
    pub seed: u64,
    /// Absolute amount added on both sides of every declared bound, in
    /// coordinate units. Models non-minimal bounds.
    pub slack: f64,
}

impl GeneratorSpec {
    fn default_name(&self, kind: ScalarKind) -> String {
        if self.layout == Layout::Fig3 {
            return "fig3".into();
        }
        format!(
            "{}-{}d-{}-p{}x{}-{}-s{}",
            self.layout, self.dims, kind, self.partitions, self.points.0, self.points.1, self.seed
        )
    }
}

fn widen<S: Scalar>(bounds: Aabb<S>, slack: f64) -> Aabb<S> {
    if slack == 0.0 {
        return bounds;
    }
    let lo = bounds.lo().iter().map(|v| S::from_f64(v.to_f64() - slack)).collect();
    let hi = bounds.hi().iter().map(|v| S::from_f64(v.to_f64() + slack)).collect();
    Aabb::new(lo, hi)
}

/// Standard normal via Box-Muller; two uniforms per draw keeps the RNG
/// stream layout-independent.
fn normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Generate a synthetic dataset in memory.
///
/// Partition ids are zero-padded (`P00`, `P01`, ...) so lexicographic and
/// numeric order agree. Every partition carries bounds, even when it drew
/// zero points. `spec.seed` fully determines the output.
pub fn generate_synthetic<S: Scalar>(spec: &GeneratorSpec) -> Result<(Manifest<S>, Vec<PointSet<S>>)> {
    if spec.dims == 0 {
        return Err(Error::InvalidGenerator("dims must be at least 1".into()));
    }
    if spec.partitions == 0 {
        return Err(Error::InvalidGenerator("need at least one partition".into()));
    }
    if spec.points.0 > spec.points.1 {
        return Err(Error::InvalidGenerator("points range is inverted".into()));
    }
    if spec.slack < 0.0 || !spec.slack.is_finite() {
        return Err(Error::InvalidGenerator("slack must be finite and non-negative".into()));
    }
    if spec.layout == Layout::Fig3 {
        return generate_fig3(spec);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // Regions first, with a dedicated sub-seed per partition, so the point
    // streams cannot shift when counts change.
    let regions: Vec<Aabb<S>> = match spec.layout {
        Layout::UniformGridCells => {
            let cells_per_axis = (spec.partitions as f64).powf(1.0 / spec.dims as f64).ceil() as usize;
            let cell = 100.0;
            (0..spec.partitions)
                .map(|i| {
                    let mut idx = i;
                    let mut lo = Vec::with_capacity(spec.dims);
                    let mut hi = Vec::with_capacity(spec.dims);
                    for _ in 0..spec.dims {
                        let c = (idx % cells_per_axis) as f64;
                        idx /= cells_per_axis;
                        lo.push(S::from_f64(c * cell));
                        hi.push(S::from_f64((c + 1.0) * cell));
                    }
                    Aabb::new(lo, hi)
                })
                .collect()
        }
        Layout::OverlappingRandomBoxes => (0..spec.partitions)
            .map(|_| {
                let mut lo = Vec::with_capacity(spec.dims);
                let mut hi = Vec::with_capacity(spec.dims);
                for _ in 0..spec.dims {
                    let a: f64 = rng.gen_range(0.0..1000.0);
                    let b: f64 = rng.gen_range(0.0..1000.0);
                    // At least unit extent so integer rounding keeps lo <= hi.
                    lo.push(S::from_f64(a.min(b)));
                    hi.push(S::from_f64(a.max(b).max(a.min(b) + 1.0)));
                }
                Aabb::new(lo, hi)
            })
            .collect(),
        Layout::GaussianClusters => (0..spec.partitions)
            .map(|_| {
                // Placeholder region at the cluster center; replaced by tight
                // stats after sampling, or kept degenerate for empty clusters.
                let center: Vec<S> =
                    (0..spec.dims).map(|_| S::from_f64(rng.gen_range(0.0..1000.0))).collect();
                Aabb::from_point(&center)
            })
            .collect(),
        Layout::Fig3 => unreachable!("handled above"),
    };
    let sub_seeds: Vec<u64> = (0..spec.partitions).map(|_| rng.gen()).collect();

    let pad = (spec.partitions.saturating_sub(1)).to_string().len().max(1);
    let mut partitions = Vec::with_capacity(spec.partitions);
    let mut blocks = Vec::with_capacity(spec.partitions);
    for (i, region) in regions.iter().enumerate() {
        let mut prng = ChaCha8Rng::seed_from_u64(sub_seeds[i]);
        let count = prng.gen_range(spec.points.0..=spec.points.1);
        let mut points = PointSet::empty(spec.dims);
        let mut buf = Vec::with_capacity(spec.dims);
        for _ in 0..count {
            buf.clear();
            match spec.layout {
                Layout::GaussianClusters => {
                    for d in 0..spec.dims {
                        let center = region.lo()[d].to_f64();
                        buf.push(S::from_f64(center + 30.0 * normal(&mut prng)));
                    }
                }
                _ => {
                    for d in 0..spec.dims {
                        buf.push(S::sample(&mut prng, region.lo()[d], region.hi()[d]));
                    }
                }
            }
            points.push(&buf);
        }
        let bounds = match spec.layout {
            Layout::GaussianClusters => {
                compute_stats(&points).bounds.unwrap_or_else(|| region.clone())
            }
            _ => region.clone(),
        };
        let bounds = widen::<S>(bounds, spec.slack);
        let id = format!("P{i:0pad$}");
        partitions.push(ManifestPartition {
            id: id.clone(),
            path: format!("{id}.bin"),
            count,
            lo: bounds.lo().to_vec(),
            hi: bounds.hi().to_vec(),
        });
        blocks.push(points);
    }

    let manifest = Manifest {
        name: spec.name.clone().unwrap_or_else(|| spec.default_name(S::KIND)),
        dims: spec.dims,
        scalar_kind: S::KIND,
        partitions,
    };
    manifest.validate()?;
    Ok((manifest, blocks))
}

fn generate_fig3<S: Scalar>(spec: &GeneratorSpec) -> Result<(Manifest<S>, Vec<PointSet<S>>)> {
    if S::KIND != ScalarKind::Float64 {
        return Err(Error::InvalidGenerator("fig3 layout is float64 only".into()));
    }
    if spec.dims != 2 {
        return Err(Error::InvalidGenerator("fig3 layout is 2-dimensional".into()));
    }
    let boxes: [(&str, [f64; 2], [f64; 2]); 4] = [
        ("O", [-3.0, 0.0], [0.0, 3.0]),
        ("P1", [-5.0, 2.0], [-4.0, 3.0]),
        ("P2", [1.0, 2.0], [2.0, 3.0]),
        ("P3", [4.0, 0.0], [5.0, 2.0]),
    ];
    let mut partitions = Vec::new();
    let mut blocks = Vec::new();
    for (id, lo, hi) in boxes {
        let center = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        let point: Vec<S> = center.iter().map(|&v| S::from_f64(v)).collect();
        let bounds = widen::<S>(
            Aabb::new(lo.iter().map(|&v| S::from_f64(v)).collect(), hi.iter().map(|&v| S::from_f64(v)).collect()),
            spec.slack,
        );
        partitions.push(ManifestPartition {
            id: id.to_string(),
            path: format!("{id}.bin"),
            count: 1,
            lo: bounds.lo().to_vec(),
            hi: bounds.hi().to_vec(),
        });
        let mut points = PointSet::empty(2);
        points.push(&point);
        blocks.push(points);
    }
    let manifest = Manifest {
        name: spec.name.clone().unwrap_or_else(|| "fig3".into()),
        dims: 2,
        scalar_kind: S::KIND,
        partitions,
    };
    Ok((manifest, blocks))
}

/// Generate and write in one step, returning the manifest.
pub fn generate_to_dir<S: Scalar>(spec: &GeneratorSpec, dir: &Path) -> Result<Manifest<S>> {
    let (manifest, blocks) = generate_synthetic::<S>(spec)?;
    write_dataset(dir, &manifest, &blocks)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(layout: Layout) -> GeneratorSpec {
        GeneratorSpec {
            name: None,
            dims: 2,
            partitions: 9,
            points: (4, 4),
            layout,
            seed: 7,
            slack: 0.0,
        }
    }

    #[test]
    fn fig3_layout_is_the_canonical_fixture() {
        let (manifest, blocks) = generate_synthetic::<f64>(&spec(Layout::Fig3)).unwrap();
        assert_eq!(manifest.name, "fig3");
        assert_eq!(manifest.dims, 2);
        let ids: Vec<&str> = manifest.partitions.iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, vec!["O", "P1", "P2", "P3"]);
        assert_eq!(manifest.partitions[0].lo, vec![-3.0, 0.0]);
        assert_eq!(manifest.partitions[0].hi, vec![0.0, 3.0]);
        assert_eq!(manifest.partitions[3].lo, vec![4.0, 0.0]);
        assert_eq!(blocks[0].point(0), &[-1.5, 1.5]);
        assert_eq!(blocks[3].point(0), &[4.5, 1.0]);
    }

    #[test]
    fn fig3_rejects_int64_and_wrong_dims() {
        assert!(matches!(
            generate_synthetic::<i64>(&spec(Layout::Fig3)),
            Err(Error::InvalidGenerator(_))
        ));
        let mut s = spec(Layout::Fig3);
        s.dims = 3;
        assert!(matches!(generate_synthetic::<f64>(&s), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn same_seed_generates_identical_datasets() {
        for layout in [Layout::UniformGridCells, Layout::GaussianClusters, Layout::OverlappingRandomBoxes] {
            let a = generate_synthetic::<f64>(&spec(layout)).unwrap();
            let b = generate_synthetic::<f64>(&spec(layout)).unwrap();
            assert_eq!(a, b, "layout {layout} not deterministic");
            let mut other = spec(layout);
            other.seed = 8;
            let c = generate_synthetic::<f64>(&other).unwrap();
            assert_ne!(a.1, c.1, "layout {layout} ignores the seed");
        }
    }

    #[test]
    fn generated_points_live_inside_declared_bounds() {
        fn check<S: Scalar>(layout: Layout) {
            let (manifest, blocks) = generate_synthetic::<S>(&spec(layout)).unwrap();
            for (part, points) in manifest.partitions.iter().zip(&blocks) {
                let bounds = part.bounds();
                for p in points.iter() {
                    assert!(bounds.contains(p), "{layout} ({}): point escaped bounds", S::KIND);
                }
            }
        }
        for layout in [Layout::UniformGridCells, Layout::GaussianClusters, Layout::OverlappingRandomBoxes] {
            check::<f64>(layout);
            check::<i64>(layout);
        }
    }

    #[test]
    fn grid_cells_are_disjoint_and_separated_when_nonadjacent() {
        let mut s = spec(Layout::UniformGridCells);
        s.partitions = 9; // 3x3 grid in 2-d
        let (manifest, _) = generate_synthetic::<f64>(&s).unwrap();
        let boxes: Vec<Aabb<f64>> = manifest.partitions.iter().map(|p| p.bounds()).collect();
        // Cells 0 (corner) and 8 (opposite corner) are non-adjacent.
        assert!(boxes[0].bmin_dist_sq(&boxes[8]) > 0.0);
        // Cells 0 and 1 share a face.
        assert_eq!(boxes[0].bmin_dist_sq(&boxes[1]), 0.0);
    }

    #[test]
    fn slack_widens_bounds_but_keeps_points_inside() {
        let mut s = spec(Layout::GaussianClusters);
        s.slack = 5.0;
        let (manifest, blocks) = generate_synthetic::<f64>(&s).unwrap();
        let tight = {
            let mut t = s.clone();
            t.slack = 0.0;
            generate_synthetic::<f64>(&t).unwrap().0
        };
        for (wide, narrow) in manifest.partitions.iter().zip(&tight.partitions) {
            for d in 0..2 {
                assert!(wide.lo[d] < narrow.lo[d]);
                assert!(wide.hi[d] > narrow.hi[d]);
            }
        }
        for (part, points) in manifest.partitions.iter().zip(&blocks) {
            let bounds = part.bounds();
            for p in points.iter() {
                assert!(bounds.contains(p));
            }
        }
    }

    #[test]
    fn empty_partitions_are_zero_length_files_with_bounds() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = spec(Layout::UniformGridCells);
        s.points = (0, 0);
        let manifest = generate_to_dir::<f64>(&s, dir.path()).unwrap();
        for part in &manifest.partitions {
            assert_eq!(part.count, 0);
            assert_eq!(part.lo.len(), 2);
            assert_eq!(fs::metadata(dir.path().join(&part.path)).unwrap().len(), 0);
        }
        let handle = DatasetHandle::<f64>::open(dir.path()).unwrap();
        assert!(handle.verify().is_empty());
        assert!(handle.read_partition("P0", true).unwrap().is_empty());
    }

    #[test]
    fn round_trip_preserves_f64_and_i64_exactly() {
        for layout in [Layout::GaussianClusters, Layout::OverlappingRandomBoxes] {
            let dir = tempfile::tempdir().unwrap();
            let (manifest, blocks) = generate_synthetic::<i64>(&spec(layout)).unwrap();
            write_dataset(dir.path(), &manifest, &blocks).unwrap();
            let handle = DatasetHandle::<i64>::open(dir.path()).unwrap();
            assert_eq!(handle.manifest, manifest);
            for (part, block) in manifest.partitions.iter().zip(&blocks) {
                assert_eq!(&handle.read_partition(&part.id, true).unwrap(), block);
            }
        }
        let dir = tempfile::tempdir().unwrap();
        let (manifest, blocks) = generate_synthetic::<f64>(&spec(Layout::GaussianClusters)).unwrap();
        write_dataset(dir.path(), &manifest, &blocks).unwrap();
        let handle = DatasetHandle::<f64>::open(dir.path()).unwrap();
        // Tight float bounds must survive the JSON manifest to the last ulp,
        // or points on a bound fail containment after reopening.
        assert_eq!(handle.manifest, manifest);
        for (part, block) in manifest.partitions.iter().zip(&blocks) {
            assert_eq!(&handle.read_partition(&part.id, true).unwrap(), block);
        }
    }

    #[test]
    fn manifest_bytes_are_stable() {
        let (manifest, _) = generate_synthetic::<f64>(&spec(Layout::UniformGridCells)).unwrap();
        assert_eq!(manifest.to_json_bytes(), manifest.to_json_bytes());
        let text = String::from_utf8(manifest.to_json_bytes()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["name", "dims", "scalar_kind", "partitions"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        let part = &value["partitions"][0];
        for key in ["id", "path", "count", "lo", "hi"] {
            assert!(part.get(key).is_some(), "missing partition {key}");
        }
    }

    #[test]
    fn compute_stats_examples() {
        let mut points = PointSet::empty(2);
        points.push(&[1.0, 2.0]);
        points.push(&[3.0, 0.0]);
        let stats = compute_stats(&points);
        assert_eq!(stats.count, 2);
        assert_eq!(stats.bounds, Some(Aabb::new(vec![1.0, 0.0], vec![3.0, 2.0])));

        let single = compute_stats(&{
            let mut p = PointSet::empty(2);
            p.push(&[5.0, 5.0]);
            p
        });
        assert_eq!(single.bounds, Some(Aabb::from_point(&[5.0, 5.0])));

        assert_eq!(compute_stats(&PointSet::<f64>::empty(2)), PartitionStats { count: 0, bounds: None });
    }

    #[test]
    fn truncated_file_is_rejected_with_partition_and_length() {
        let dir = tempfile::tempdir().unwrap();
        generate_to_dir::<f64>(&spec(Layout::Fig3), dir.path()).unwrap();
        let victim = dir.path().join("P2.bin");
        let bytes = fs::read(&victim).unwrap();
        fs::write(&victim, &bytes[..8]).unwrap();
        let handle = DatasetHandle::<f64>::open(dir.path()).unwrap();
        match handle.read_partition("P2", false) {
            Err(Error::PartitionData { id, reason }) => {
                assert_eq!(id, "P2");
                assert!(reason.contains("length"), "unhelpful reason: {reason}");
            }
            other => panic!("expected partition data error, got {other:?}"),
        }
        assert!(!handle.verify().is_empty());
    }

    #[test]
    fn out_of_bounds_point_is_caught_by_validation_with_row() {
        let dir = tempfile::tempdir().unwrap();
        let (mut manifest, blocks) = generate_synthetic::<f64>(&spec(Layout::Fig3)).unwrap();
        write_dataset(dir.path(), &manifest, &blocks).unwrap();
        // Shrink P3's declared bounds so its stored point falls outside.
        manifest.partitions[3].hi = vec![4.2, 0.5];
        fs::write(dir.path().join(MANIFEST_FILE), manifest.to_json_bytes()).unwrap();
        let handle = DatasetHandle::<f64>::open(dir.path()).unwrap();
        assert!(handle.read_partition("P3", false).is_ok());
        match handle.read_partition("P3", true) {
            Err(Error::PartitionData { id, reason }) => {
                assert_eq!(id, "P3");
                assert!(reason.contains("row 0"), "missing row index: {reason}");
            }
            other => panic!("expected bounds violation, got {other:?}"),
        }
    }

    #[test]
    fn write_rejects_inconsistent_metadata() {
        let dir = tempfile::tempdir().unwrap();
        let (mut manifest, blocks) = generate_synthetic::<f64>(&spec(Layout::Fig3)).unwrap();
        manifest.partitions[1].count = 2;
        assert!(matches!(
            write_dataset(dir.path(), &manifest, &blocks),
            Err(Error::PartitionData { .. })
        ));
    }

    #[test]
    fn open_dataset_dispatches_on_scalar_kind() {
        let dir = tempfile::tempdir().unwrap();
        generate_to_dir::<i64>(&spec(Layout::UniformGridCells), dir.path()).unwrap();
        match open_dataset(dir.path()).unwrap() {
            Dataset::I64(handle) => assert_eq!(handle.manifest.scalar_kind, ScalarKind::Int64),
            Dataset::F64(_) => panic!("wrong dispatch"),
        }
        assert!(matches!(
            DatasetHandle::<f64>::open(dir.path()),
            Err(Error::InvalidManifest(_))
        ));
    }

    #[test]
    fn unknown_partition_id_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        generate_to_dir::<f64>(&spec(Layout::Fig3), dir.path()).unwrap();
        let handle = DatasetHandle::<f64>::open(dir.path()).unwrap();
        assert!(matches!(
            handle.read_partition("nope", false),
            Err(Error::UnknownPartition(_))
        ));
    }
}
