//! Builds `examples/demo.c` against the generated header and the shared
//! library. Skipped when no C compiler is on the path.

use std::path::{Path, PathBuf};
use std::process::Command;

fn shared_library_dir() -> PathBuf {
    // target/<profile>/deps/c_header-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_compiles_links_and_runs() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = shared_library_dir();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler ({cc})");
        return;
    }
    let so = ["libseshadri_ffi.so", "libseshadri_ffi.dylib"]
        .iter()
        .any(|name| lib_dir.join(name).exists());
    if !so {
        eprintln!("skipping: no shared library in {}", lib_dir.display());
        return;
    }

    let out_dir = std::env::temp_dir().join(format!("seshadri-c-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("demo");
    let status = Command::new(&cc)
        .arg(crate_dir.join("examples/demo.c"))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(format!("-I{}", crate_dir.join("include").display()))
        .arg(format!("-L{}", lib_dir.display()))
        .arg("-lseshadri_ffi")
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");

    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8(run.stdout).unwrap();
    std::fs::remove_dir_all(&out_dir).unwrap();
    assert!(run.status.success(), "{stdout}");
    assert_eq!(
        stdout.lines().collect::<Vec<_>>()[..2],
        ["4/3 < sqrt(2)", "verify: 0"]
    );
    assert!(stdout.contains("alpha too large: 4 "), "{stdout}");
}
