//! Embeds a SHA-256 of the crate sources as the catalog provenance hash.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

fn collect(dir: &Path, out: &mut Vec<PathBuf>) {
    for entry in fs::read_dir(dir).expect("readable source directory") {
        let path = entry.expect("directory entry").path();
        if path.is_dir() {
            collect(&path, out);
        } else if path.extension().is_some_and(|e| e == "rs") {
            out.push(path);
        }
    }
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let mut files = Vec::new();
    collect(&root.join("src"), &mut files);
    files.sort();
    let mut hasher = Sha256::new();
    for f in &files {
        hasher.update(f.strip_prefix(root).unwrap().to_string_lossy().as_bytes());
        hasher.update([0]);
        hasher.update(fs::read(f).expect("readable source file"));
        hasher.update([0]);
    }
    println!("cargo:rustc-env=CHORDALM_CODE_HASH={}", hex::encode(hasher.finalize()));
    println!("cargo:rerun-if-changed=src");
}
