//! Every example builds with the test target and exits cleanly.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "ore_operators",
    "partial_fractions",
    "realize_gm_ga",
    "non_realizable",
    "local_blocks",
    "galois_orbits",
    "sl2_certificate",
    "cyclic_descent",
    "parse_expressions",
];

fn examples_dir() -> PathBuf {
    // target/<profile>/deps/<this test> -> target/<profile>/examples
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("examples")
}

#[test]
fn examples_exit_zero() {
    let dir = examples_dir();
    for name in EXAMPLES {
        let path = dir.join(format!("{}{}", name, std::env::consts::EXE_SUFFIX));
        if !path.exists() {
            let status = Command::new(env!("CARGO"))
                .args(["build", "-q", "--example", name])
                .current_dir(env!("CARGO_MANIFEST_DIR"))
                .status()
                .unwrap();
            assert!(status.success(), "building {}", name);
        }
        let o = Command::new(&path).output().unwrap();
        assert!(o.status.success(), "{}: {}", name, String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{} printed nothing", name);
    }
}
