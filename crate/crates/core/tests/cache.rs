use std::fs;

use modwzw::affine;
use modwzw::cli::cache::{self, DiskCache, CACHE_SCHEMA};
use modwzw::liealg::{SimpleLieAlgebra, DEFAULT_WEYL_CAP};
use modwzw::theory::ModularSource;

fn a1() -> SimpleLieAlgebra {
    SimpleLieAlgebra::new("A1".parse().unwrap())
}

#[test]
fn roundtrip_reproduces_modular_data() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = DiskCache::new(dir.path(), DEFAULT_WEYL_CAP);
    let fresh = c.wzw(&a1(), 1).unwrap();
    let mut c2 = DiskCache::new(dir.path(), DEFAULT_WEYL_CAP);
    let cached = c2.wzw(&a1(), 1).unwrap();
    assert_eq!(fresh, cached);
    assert_eq!(fresh, affine::kac_peterson(&a1(), 1, DEFAULT_WEYL_CAP).unwrap());
}

#[test]
fn hit_skips_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = DiskCache::new(dir.path(), DEFAULT_WEYL_CAP);
    c.wzw(&a1(), 3).unwrap();
    c.wzw(&a1(), 3).unwrap();
    c.wzw(&a1(), 3).unwrap();
    assert_eq!((c.hits, c.misses), (2, 1));
    assert!(c.warnings.is_empty());
}

#[test]
fn version_mismatch_is_invalidated() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = DiskCache::new(dir.path(), DEFAULT_WEYL_CAP);
    let md = c.wzw(&a1(), 2).unwrap();
    let path = c.path_for(a1().spec, 2);
    let text = fs::read_to_string(&path).unwrap();
    let stale = text.replace(
        &format!("\"schema\": {CACHE_SCHEMA}"),
        &format!("\"schema\": {}", CACHE_SCHEMA + 1),
    );
    assert_ne!(text, stale);
    fs::write(&path, stale).unwrap();
    let again = c.wzw(&a1(), 2).unwrap();
    assert_eq!(again, md);
    assert_eq!(c.misses, 2);
    assert_eq!(c.warnings.len(), 1);
    // The recomputed entry replaced the stale one.
    assert!(cache::decode(&fs::read_to_string(&path).unwrap(), a1().spec, 2).is_ok());
}

#[test]
fn truncated_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = DiskCache::new(dir.path(), DEFAULT_WEYL_CAP);
    let md = c.wzw(&a1(), 2).unwrap();
    let path = c.path_for(a1().spec, 2);
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert_eq!(c.wzw(&a1(), 2).unwrap(), md);
    assert_eq!((c.hits, c.misses), (0, 2));
    // Perturbed numbers parse but fail the modular checks.
    let bad = fs::read_to_string(&path).unwrap().replacen("e-1\"", "e0\"", 1);
    fs::write(&path, bad).unwrap();
    assert_eq!(c.wzw(&a1(), 2).unwrap(), md);
    assert_eq!(c.misses, 3);
}

#[test]
fn no_temporary_files_left_behind() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = DiskCache::new(dir.path(), DEFAULT_WEYL_CAP);
    c.wzw(&a1(), 4).unwrap();
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, ["A1_k4.json"]);
}
