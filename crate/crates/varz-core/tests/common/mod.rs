#![allow(dead_code)]

pub mod props;

use std::path::{Path, PathBuf};

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

/// Writes an executable stand-in for a NEC engine into `dir`. It reads the
/// pointer file, echoes the deck's File ID line and then replays the
/// two-block fixture listing (minus its own File ID). `pre` runs first.
#[cfg(unix)]
pub fn stub_engine(dir: &Path, pre: &str) -> PathBuf {
    use std::os::unix::fs::PermissionsExt;

    let body: String =
        fixture("two_block_listing.out").lines().filter(|l| !l.contains("File ID")).map(|l| format!("{l}\n")).collect();
    let body_path = dir.join("stub-body.out");
    std::fs::write(&body_path, body).unwrap();
    let path = dir.join("stub-engine.sh");
    let script = format!(
        "#!/bin/sh\nset -e\nin=$(sed -n 1p INFILE.DAT)\nout=$(sed -n 2p INFILE.DAT)\n{pre}\n\
         grep 'File ID' \"$in\" | sed 's/^CM /                               /' > \"$out\"\n\
         cat '{}' >> \"$out\"\n",
        body_path.display()
    );
    std::fs::write(&path, script).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    path
}

/// Writes an executable shell script with the given body.
#[cfg(unix)]
pub fn script(dir: &Path, name: &str, body: &str) -> PathBuf {
    use std::os::unix::fs::PermissionsExt;

    let path = dir.join(name);
    std::fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    path
}

/// Published radical-inverse check values `(n, φ_b(n))`.
pub const BASE_2_TABLE: &[(u64, f64)] = &[
    (0, 0.0), (2, 0.25), (3, 0.75), (4, 0.125), (6, 0.375), (7, 0.875), (15, 0.9375),
    (120, 0.1171875), (121, 0.6171875), (532, 0.1572265625),
];
pub const BASE_3_TABLE: &[(u64, f64)] = &[
    (0, 0.0), (2, 2.0 / 3.0), (3, 1.0 / 9.0), (7, 5.0 / 9.0), (120, 0.164609053497942), (532, 0.422496570544719),
];
pub const BASE_5_TABLE: &[(u64, f64)] = &[
    (0, 0.0), (1, 0.2), (2, 0.4), (3, 0.6), (4, 0.8), (5, 0.04), (7, 0.44), (17, 0.52),
    (121, 0.392), (532, 0.4544),
];

/// Loaded-bowtie rows at 800 and 1655 MHz with their tabulated VSWR.
pub const VSWR_ANCHORS: &[(f64, f64)] = &[(800.0, 6.43), (1655.0, 2.00)];

/// Published loaded-bowtie bands at VSWR ≤ 2: `(f_lo, f_hi, width, frac_pct)`.
pub const LOADED_BANDS: &[(f64, f64, f64, f64)] = &[
    (1655.0, 1865.0, 210.0, 11.9),
    (3185.0, 5210.0, 2025.0, 48.2),
    (6365.0, 8345.0, 1980.0, 26.9),
    (11420.0, 11675.0, 255.0, 2.21),
];
