// Compiles and runs a small C program against the generated header and the
// static library. Skipped when no C compiler is on PATH.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "secondlargest.h"

int main(void) {
    double l[3] = {4.0, 4.0, 4.0}, t[3] = {5.0, 9.0, 10.0}, a[3] = {4.0, 4.0, 4.0};
    SlConfig *x = NULL, *y = NULL;
    if (sl_config_new(l, t, a, 3, SL_BASELINE_POWER_CAP, 0.2, 100.0, &x) != SL_STATUS_OK) return 1;
    double f = 0.0;
    if (sl_cdf_second_largest(x, 54.0, &f) != SL_STATUS_OK) return 2;
    printf("%.17g\n", f);
    t[1] = 0.0;
    if (sl_config_new(l, t, a, 3, SL_BASELINE_POWER_CAP, 0.2, 100.0, &y) != SL_STATUS_INVALID_ARGUMENT) return 3;
    if (strstr(sl_last_error(), "theta[1]") == NULL) return 4;
    if (sl_config_from_fixture("Ex3_1", SL_SIDE_Y, &y) != SL_STATUS_OK) return 5;
    bool ok = false;
    char *rec = NULL;
    if (sl_run_theorem("T3_1", x, y, 4.001, 100.0, 512, &ok, &rec) != SL_STATUS_OK || !ok) return 6;
    printf("%s\n", rec);
    sl_string_free(rec);
    sl_config_free(x);
    sl_config_free(y);
    return 0;
}
"#;

// `cargo test` leaves the fresh archive next to the test binary in deps/;
// `cargo build` copies it one level up.
fn static_lib() -> Option<PathBuf> {
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    [deps.clone(), deps.parent()?.to_path_buf()]
        .into_iter()
        .map(|d| d.join("libsecondlargest_ffi.a"))
        .find(|p| p.exists())
}

#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping");
        return;
    };
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("sl_check.c");
    let exe = tmp.join("sl_check");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let f: f64 = lines.next().unwrap().parse().unwrap();
    assert!((f - 0.036_280_074_239_176_93).abs() < 1e-16);
    assert!(lines.next().unwrap().starts_with("T3_1 hypotheses:"));
}
