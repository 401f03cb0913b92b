//! Synthetic datasets on disk: generate the built-in layouts, inspect the
//! manifest and per-partition stats, check determinism byte for byte, and
//! see what verification reports for a corrupted data file.
//!
//! Run with `cargo run --example generate_datasets`.

use aknn::storage::{
    compute_stats, generate_to_dir, open_dataset, Dataset, DatasetHandle, GeneratorSpec, Layout,
};

fn spec(layout: Layout, seed: u64, slack: f64) -> GeneratorSpec {
    GeneratorSpec {
        name: None,
        dims: 2,
        partitions: 6,
        points: (8, 15),
        layout,
        seed,
        slack,
    }
}

fn show<S: aknn::Scalar>(handle: &DatasetHandle<S>) -> aknn::Result<()> {
    let m = &handle.manifest;
    println!("{} ({}d, {}):", m.name, m.dims, m.scalar_kind);
    for part in &m.partitions {
        let points = handle.read_partition(&part.id, true)?;
        let stats = compute_stats(&points);
        print!("  {}: {} points, declared {:?}..{:?}", part.id, part.count, part.lo, part.hi);
        match stats.bounds {
            Some(b) => println!(", tight {:?}..{:?}", b.lo(), b.hi()),
            None => println!(", empty"),
        }
    }
    Ok(())
}

fn main() -> aknn::Result<()> {
    let root = tempfile::tempdir().expect("temp dir");

    // Each layout stresses the pruners differently: disjoint grid cells are
    // the easy case, overlapping boxes the hard one.
    for layout in [Layout::UniformGridCells, Layout::GaussianClusters, Layout::OverlappingRandomBoxes] {
        let dir = root.path().join(layout.to_string());
        generate_to_dir::<f64>(&spec(layout, 42, 0.0), &dir)?;
        match open_dataset(&dir)? {
            Dataset::F64(h) => show(&h)?,
            Dataset::I64(h) => show(&h)?,
        }
        println!();
    }

    // Slack widens declared bounds past the tight point extent, imitating
    // partitioners that never shrink their boxes.
    let dir = root.path().join("slack");
    let manifest = generate_to_dir::<f64>(&spec(Layout::UniformGridCells, 42, 3.0), &dir)?;
    let p0 = &manifest.partitions[0];
    println!("with slack 3.0, {} declares {:?}..{:?}\n", p0.id, p0.lo, p0.hi);

    // Integer coordinates use the same layouts; points land on the lattice.
    let dir = root.path().join("ints");
    let m = generate_to_dir::<i64>(&spec(Layout::GaussianClusters, 7, 0.0), &dir)?;
    println!("{}: first bounds {:?}..{:?}\n", m.name, m.partitions[0].lo, m.partitions[0].hi);

    // The fixed occlusion scenario ships as a layout of its own.
    let dir = root.path().join("fig3");
    let m = generate_to_dir::<f64>(
        &GeneratorSpec { partitions: 4, ..spec(Layout::Fig3, 0, 0.0) },
        &dir,
    )?;
    println!("{}: partitions {:?}\n", m.name, m.partitions.iter().map(|p| &p.id).collect::<Vec<_>>());

    // Same spec, different directory: identical bytes, manifest and data.
    let again = root.path().join("again");
    let regen = generate_to_dir::<f64>(&spec(Layout::OverlappingRandomBoxes, 42, 0.0), &again)?;
    let first = root.path().join(Layout::OverlappingRandomBoxes.to_string());
    let mut files = vec!["manifest.json".to_string()];
    files.extend(regen.partitions.iter().map(|p| p.path.clone()));
    for file in &files {
        let a = std::fs::read(first.join(file)).expect("read");
        let b = std::fs::read(again.join(file)).expect("read");
        println!("{file}: {} bytes, regeneration identical: {}", a.len(), a == b);
    }
    println!();

    // Verification re-reads every partition and checks counts and bounds
    // containment. Corrupt one coordinate and it names the file.
    let victim = first.join(&regen.partitions[3].path);
    let mut bytes = std::fs::read(&victim).expect("read");
    let last = bytes.len() - 1;
    bytes[last] ^= 0x41;
    std::fs::write(&victim, bytes).expect("write");
    let handle = match open_dataset(&first)? {
        Dataset::F64(h) => h,
        Dataset::I64(_) => unreachable!("generated as float64"),
    };
    for problem in handle.verify() {
        println!("verify: {problem}");
    }
    Ok(())
}
