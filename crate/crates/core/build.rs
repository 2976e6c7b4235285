use sha2::{Digest, Sha256};
use std::fs;
use std::path::Path;

// Refuse to build if any golden file drifted from its recorded checksum.
fn main() {
    let dir = Path::new("golden");
    println!("cargo:rerun-if-changed=golden");
    let manifest = fs::read_to_string(dir.join("SHA256SUMS")).expect("golden/SHA256SUMS missing");
    for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
        let (want, name) = line
            .split_once("  ")
            .unwrap_or_else(|| panic!("malformed SHA256SUMS line: {line}"));
        println!("cargo:rerun-if-changed=golden/{name}");
        let bytes = fs::read(dir.join(name)).unwrap_or_else(|e| panic!("golden/{name}: {e}"));
        let got = hex::encode(Sha256::digest(&bytes));
        if got != want {
            panic!("golden/{name}: checksum mismatch (manifest {want}, file {got})");
        }
    }
}
